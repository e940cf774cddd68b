#include "qsl/bounds.hpp"

#include "qsl/dynamics.hpp"
#include "qsl/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsl {

namespace {

constexpr double kPi = std::numbers::pi;

Matrix symmetric3_hamiltonian(const Eigen::Matrix3d& h, double b_y) {
  ParameterVector pv;
  pv.couplings.push_back(h);
  pv.fields.emplace_back(0.0, b_y, 0.0);
  return assemble(pv, InteractionGraph::complete(3),
                  SymmetryClass::full_permutation());
}

}  // namespace

double mt_bound(double overlap, double delta_h) {
  if (overlap < 0.0 || overlap > 1.0)
    throw std::invalid_argument("overlap must lie in [0, 1]");
  if (delta_h <= 0.0)
    throw std::invalid_argument("delta_h must be positive");
  return std::acos(overlap) / delta_h;
}

QslReport mt_report(double overlap, double delta_h) {
  return {overlap, delta_h, mt_bound(overlap, delta_h)};
}

double two_level_time(double p1, double overlap) {
  if (p1 <= 0.0 || p1 >= 1.0)
    throw std::invalid_argument("occupation must lie in (0, 1)");
  return mt_bound(overlap, std::sqrt(p1 * (1.0 - p1)));
}

std::array<double, 8> symmetric3_spectrum(const Eigen::Matrix3d& h) {
  const double hxx = h(0, 0), hyy = h(1, 1), hzz = h(2, 2);
  const double hxy = h(0, 1), hxz = h(0, 2), hyz = h(1, 2);
  const double s = hxx + hyy + hzz;
  const double f =
      std::sqrt(std::max(0.0, hxx * hxx + hyy * hyy + hzz * hzz +
                                  3.0 * (hxy * hxy + hxz * hxz + hyz * hyz) -
                                  hxx * hyy - hxx * hzz - hyy * hzz));
  std::array<double, 8> e{-s, -s, -s, -s, s - 2 * f, s - 2 * f, s + 2 * f, s + 2 * f};
  std::sort(e.begin(), e.end());
  return e;
}

TwoLevelCoupling two_eigenvalue_hxx(double h_yy, double h_zz, double h_xy,
                                    double h_yz, double h_xz) {
  const double denom = h_yy + h_zz;
  if (std::abs(denom) < 1e-12)
    throw std::invalid_argument("h_yy + h_zz must be nonzero");
  const double h_xx =
      (-h_yy * h_zz + h_xy * h_xy + h_yz * h_yz + h_xz * h_xz) / denom;
  const double eta = (h_yy * h_yy + h_zz * h_zz + h_xy * h_xy + h_yz * h_yz +
                      h_xz * h_xz + h_yy * h_zz) /
                     denom;
  return {h_xx, eta};
}

Ghz5LevelSpectrum ghz5level_spectrum(const Eigen::Matrix3d& h, double b_y) {
  const Spectrum s = eigendecompose(symmetric3_hamiltonian(h, b_y));
  Ghz5LevelSpectrum out;
  for (int k = 0; k < 8; ++k) out.eigenvalues[static_cast<std::size_t>(k)] = s.eigenvalues(k);
  const double diag = h(0, 0) + h(1, 1) + h(2, 2);
  out.closed_form = {-diag + b_y, -diag + b_y, -diag - b_y, -diag - b_y};
  std::sort(out.closed_form.begin(), out.closed_form.end());
  return out;
}

double ghz_two_body_time(int n_sites) {
  if (n_sites < 3) throw std::invalid_argument("formula applies for N >= 3");
  const double half = std::ceil(n_sites / 2.0);
  return kPi * half * half / 2.0;
}

double sequential_ghz_time(int n_sites) {
  if (n_sites < 2) throw std::invalid_argument("sequence needs N >= 2");
  return static_cast<double>(n_sites) * n_sites * kPi;
}

double energy_for_deadline(double t_min_at_unit_bandwidth, double t) {
  if (t <= 0.0) throw std::invalid_argument("deadline must be positive");
  return t_min_at_unit_bandwidth / t;
}

Matrix hadamard_hamiltonian() {
  const double r2 = std::sqrt(2.0);
  Matrix h(2, 2);
  h << (r2 - 2.0) / 4.0, 1.0 / (2.0 * r2), 1.0 / (2.0 * r2), -(2.0 + r2) / 4.0;
  return kPi * h;
}

}  // namespace qsl
