#include "socdpt/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace socdpt {

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", value);
  return buf;
}

CsvFile::CsvFile(const std::filesystem::path& path) : path_(path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw std::runtime_error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
}

void CsvFile::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_.put(',');
    out_ << fields[i];
  }
  out_.put('\n');
  if (!out_) throw std::runtime_error("write failed: " + path_.string());
}

void CsvFile::close() {
  out_.close();
  if (!out_) throw std::runtime_error("close failed: " + path_.string());
}

void write_trajectory_csv(const Trajectory<double>& traj, const Derived<double>& d,
                          const std::filesystem::path& path, int stride) {
  CsvFile csv(path);
  csv.row({"t", "re_alpha", "im_alpha", "re_beta", "im_beta", "sx", "sy", "sz", "energy"});
  const auto step = static_cast<std::size_t>(std::max(stride, 1));
  for (std::size_t i = 0; i < traj.states.size(); i += step) {
    const auto& psi = traj.states[i];
    const auto s = bloch(psi);
    csv.row({format_real(traj.times[i]), format_real(psi(0).real()), format_real(psi(0).imag()),
             format_real(psi(1).real()), format_real(psi(1).imag()), format_real(s.sx),
             format_real(s.sy), format_real(s.sz), format_real(mean_field_energy(psi, d))});
  }
  csv.close();
}

void write_moments_csv(const MomentTrajectory<double>& mt, const std::filesystem::path& path,
                       int stride) {
  CsvFile csv(path);
  csv.row({"t", "n_r", "n_l", "re_c", "im_c", "w", "re_u", "im_u", "re_v", "im_v", "re_p", "im_p",
           "q_r", "q_l", "e_hz"});
  const auto step = static_cast<std::size_t>(std::max(stride, 1));
  for (std::size_t i = 0; i < mt.states.size(); i += step) {
    const auto& m = mt.states[i];
    csv.row({format_real(mt.times[i]), format_real(m.n_r), format_real(m.n_l), format_real(m.c.real()),
             format_real(m.c.imag()), format_real(m.w), format_real(m.u.real()), format_real(m.u.imag()),
             format_real(m.v.real()), format_real(m.v.imag()), format_real(m.p.real()),
             format_real(m.p.imag()), format_real(m.q_r), format_real(m.q_l),
             format_real(hz_parameter(m, mt.n_atoms).e_hz)});
  }
  csv.close();
}

}  // namespace socdpt
