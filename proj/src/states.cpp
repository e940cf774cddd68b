#include "qsl/states.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qsl {

namespace {

Eigen::Index dim_of(int n_sites) {
  if (n_sites < 1 || n_sites > 24)
    throw std::invalid_argument("n_sites out of supported range");
  return Eigen::Index{1} << n_sites;
}

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace

Vector zero_state(int n_sites) {
  Vector psi = Vector::Zero(dim_of(n_sites));
  psi(0) = 1.0;
  return psi;
}

Vector ghz(int n_sites) {
  if (n_sites < 2) throw std::invalid_argument("ghz needs n >= 2");
  Vector psi = Vector::Zero(dim_of(n_sites));
  const double a = 1.0 / std::sqrt(2.0);
  psi(0) = a;
  psi(psi.size() - 1) = a;
  return psi;
}

Vector w_state(int n_sites) {
  if (n_sites < 2) throw std::invalid_argument("w state needs n >= 2");
  return dicke(n_sites, 1);
}

Vector dicke(int n_sites, int k) {
  if (k < 0 || k > n_sites) throw std::invalid_argument("excitation count out of range");
  Vector psi = Vector::Zero(dim_of(n_sites));
  const double a = 1.0 / std::sqrt(binomial(n_sites, k));
  for (Eigen::Index b = 0; b < psi.size(); ++b)
    if (std::popcount(static_cast<unsigned>(b)) == k) psi(b) = a;
  return psi;
}

Vector ame52() {
  Vector psi = Vector::Zero(32);
  const double a = 1.0 / std::sqrt(8.0);
  // Kets read s1...s5 with site 1 as the most significant bit.
  for (int b : {0b01111, 0b10011, 0b10101, 0b11100}) psi(b) = a;
  for (int b : {0b00000, 0b00110, 0b01001, 0b11010}) psi(b) = -a;
  return psi;
}

Vector apply_site_permutation(const Vector& psi, const Permutation& perm) {
  const int n = sites_of_dim(psi.size());
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("permutation length mismatch");
  Vector out = Vector::Zero(psi.size());
  for (Eigen::Index b = 0; b < psi.size(); ++b) {
    Eigen::Index target = 0;
    for (int s = 0; s < n; ++s) {
      const Eigen::Index bit = (b >> (n - 1 - s)) & 1;
      target |= bit << (n - 1 - perm[s]);
    }
    out(target) = psi(b);
  }
  return out;
}

InvarianceResult is_invariant(const Vector& psi, const Permutation& perm,
                              double tol) {
  const double residual = (apply_site_permutation(psi, perm) - psi).norm();
  return {residual <= tol, residual};
}

}  // namespace qsl
