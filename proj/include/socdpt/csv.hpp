#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "socdpt/meanfield.hpp"
#include "socdpt/moments.hpp"

namespace socdpt {

/// `%.12e`, the float format of every CSV this project writes.
std::string format_real(double value);

/// Columns t, re_alpha, im_alpha, re_beta, im_beta, sx, sy, sz, energy.
void write_trajectory_csv(const Trajectory<double>& traj, const Derived<double>& d,
                          const std::filesystem::path& path, int stride = 1);

/// Columns t, n_r, n_l, re_c, im_c, w, re_u, im_u, re_v, im_v, re_p, im_p, q_r, q_l, e_hz.
void write_moments_csv(const MomentTrajectory<double>& mt, const std::filesystem::path& path,
                       int stride = 1);

/// Opens for binary writing (LF line endings), throwing with the path on failure.
class CsvFile {
 public:
  explicit CsvFile(const std::filesystem::path& path);

  void row(const std::vector<std::string>& fields);
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace socdpt
