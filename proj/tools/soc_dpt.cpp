#include "socdpt/cli.hpp"

int main(int argc, char** argv) { return socdpt::run(argc, argv); }
