#pragma once

#include "qsl/linalg.hpp"

#include <stdexcept>
#include <vector>

namespace qsl {

struct ZeroBandwidthError : std::runtime_error {
  ZeroBandwidthError() : std::runtime_error("zero energy bandwidth") {}
};

/// Eigenvalues ascending, eigenvector columns orthonormal.
struct Spectrum {
  RealVector eigenvalues;
  Matrix eigenvectors;

  double min() const { return eigenvalues(0); }
  double max() const { return eigenvalues(eigenvalues.size() - 1); }
  double bandwidth() const { return max() - min(); }
};

Spectrum eigendecompose(const Matrix& hamiltonian);

/// H -> (H - E_min 1) / (E_max - E_min): spectrum mapped onto [0, 1],
/// eigenvectors unchanged. Throws ZeroBandwidthError if E_max - E_min
/// <= 1e-12 * max(1, |E_max|).
Matrix normalize_bandwidth(const Matrix& hamiltonian);
Spectrum normalize_bandwidth(const Spectrum& spectrum);

/// |psi(t)> = V diag(exp(-i E_k t)) V^dag |psi0>, hbar = 1.
Vector evolve(const Spectrum& spectrum, double t, const Vector& psi0);
Vector evolve(const Matrix& hamiltonian, double t, const Vector& psi0);

/// |<a|b>|^2.
double fidelity(const Vector& a, const Vector& b);
double overlap_abs(const Vector& a, const Vector& b);

/// sqrt(<H^2> - <H>^2) in |psi>, clipped at 0 against round-off.
double energy_stddev(const Matrix& hamiltonian, const Vector& psi);
double energy_stddev(const Spectrum& spectrum, const Vector& psi);

std::vector<double> component_fidelities(const Vector& psi,
                                         const std::vector<Vector>& basis);

struct FidelitySeries {
  std::vector<double> times;
  std::vector<double> values;
};

/// Distinct eigenvalue count with absolute gap tolerance (pass
/// 1e-8 * bandwidth for the relative convention).
int count_distinct_levels(const RealVector& ascending, double gap_tol);

/// Distinct levels carrying weight from |psi|: levels are clustered with
/// gap_tol, a cluster counts when its total occupation exceeds weight_tol.
int count_active_levels(const Spectrum& spectrum, const Vector& psi,
                        double gap_tol, double weight_tol = 1e-9);

}  // namespace qsl
