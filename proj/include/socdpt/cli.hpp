#pragma once

namespace socdpt {

/// Exit codes: 0 success, 1 invalid input, 2 numerical failure flagged in output.
int run(int argc, const char* const* argv);

}  // namespace socdpt
