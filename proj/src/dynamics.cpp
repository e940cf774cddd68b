#include "qsl/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsl {

Spectrum eigendecompose(const Matrix& hamiltonian) {
  if (hamiltonian.rows() != hamiltonian.cols())
    throw std::invalid_argument("hamiltonian must be square");
  const double scale = std::max(1.0, max_abs(hamiltonian));
  if (max_abs(hamiltonian - hamiltonian.adjoint()) > 1e-10 * scale)
    throw std::invalid_argument("hamiltonian is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hamiltonian);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

void check_bandwidth(const Spectrum& s) {
  if (s.bandwidth() <= 1e-12 * std::max(1.0, std::abs(s.max())))
    throw ZeroBandwidthError{};
}

}  // namespace

Matrix normalize_bandwidth(const Matrix& hamiltonian) {
  const Spectrum s = eigendecompose(hamiltonian);
  check_bandwidth(s);
  const Eigen::Index d = hamiltonian.rows();
  return (hamiltonian - s.min() * Matrix::Identity(d, d)) / s.bandwidth();
}

Spectrum normalize_bandwidth(const Spectrum& spectrum) {
  check_bandwidth(spectrum);
  Spectrum out;
  out.eigenvalues =
      (spectrum.eigenvalues.array() - spectrum.min()) / spectrum.bandwidth();
  out.eigenvectors = spectrum.eigenvectors;
  return out;
}

Vector evolve(const Spectrum& spectrum, double t, const Vector& psi0) {
  if (spectrum.eigenvectors.rows() != psi0.size())
    throw std::invalid_argument("state dimension mismatch");
  Vector w = spectrum.eigenvectors.adjoint() * psi0;
  for (Eigen::Index k = 0; k < w.size(); ++k)
    w(k) *= std::exp(Complex(0.0, -spectrum.eigenvalues(k) * t));
  return spectrum.eigenvectors * w;
}

Vector evolve(const Matrix& hamiltonian, double t, const Vector& psi0) {
  return evolve(eigendecompose(hamiltonian), t, psi0);
}

double fidelity(const Vector& a, const Vector& b) {
  const double o = overlap_abs(a, b);
  return o * o;
}

double overlap_abs(const Vector& a, const Vector& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("state dimension mismatch");
  return std::abs(a.dot(b));
}

double energy_stddev(const Matrix& hamiltonian, const Vector& psi) {
  if (hamiltonian.cols() != psi.size())
    throw std::invalid_argument("state dimension mismatch");
  const Vector w = hamiltonian * psi;
  const double mean = psi.dot(w).real();
  const double var = w.squaredNorm() - mean * mean;
  return std::sqrt(std::max(0.0, var));
}

double energy_stddev(const Spectrum& spectrum, const Vector& psi) {
  const Vector w = spectrum.eigenvectors.adjoint() * psi;
  double mean = 0.0, second = 0.0;
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    const double p = std::norm(w(k));
    mean += p * spectrum.eigenvalues(k);
    second += p * spectrum.eigenvalues(k) * spectrum.eigenvalues(k);
  }
  return std::sqrt(std::max(0.0, second - mean * mean));
}

std::vector<double> component_fidelities(const Vector& psi,
                                         const std::vector<Vector>& basis) {
  std::vector<double> out;
  out.reserve(basis.size());
  for (const auto& b : basis) out.push_back(fidelity(b, psi));
  return out;
}

int count_distinct_levels(const RealVector& ascending, double gap_tol) {
  if (ascending.size() == 0) return 0;
  int count = 1;
  for (Eigen::Index k = 1; k < ascending.size(); ++k)
    if (ascending(k) - ascending(k - 1) > gap_tol) ++count;
  return count;
}

int count_active_levels(const Spectrum& spectrum, const Vector& psi,
                        double gap_tol, double weight_tol) {
  const Vector w = spectrum.eigenvectors.adjoint() * psi;
  int count = 0;
  double cluster_weight = 0.0;
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    cluster_weight += std::norm(w(k));
    const bool last = k + 1 == w.size();
    if (last ||
        spectrum.eigenvalues(k + 1) - spectrum.eigenvalues(k) > gap_tol) {
      if (cluster_weight > weight_tol) ++count;
      cluster_weight = 0.0;
    }
  }
  return count;
}

}  // namespace qsl
