#pragma once

#include "qsl/linalg.hpp"

#include <array>

namespace qsl {

/// Mandelstam-Tamm data for one initial/target pair.
struct QslReport {
  double overlap;   // |<psi(0)|psi_target>|
  double delta_h;   // energy standard deviation, energy units
  double t_min;     // arccos(overlap) / delta_h, natural units
};

/// t_min = arccos(overlap) / delta_h with hbar = 1.
double mt_bound(double overlap, double delta_h);

QslReport mt_report(double overlap, double delta_h);

/// Minimal time for a two-level Hamiltonian normalized to levels {0, 1}
/// with upper-level occupation p1: arccos(overlap) / sqrt(p1 (1 - p1)).
double two_level_time(double p1, double overlap);

/// Closed-form spectrum of the zero-field isotropic symmetric K3
/// Hamiltonian: {-(hxx+hyy+hzz)} x4, {hxx+hyy+hzz -+ 2F} x2 each.
/// Returned ascending.
std::array<double, 8> symmetric3_spectrum(const Eigen::Matrix3d& h);

struct TwoLevelCoupling {
  double h_xx;  // diagonal coupling closing the spectrum to two values
  double eta;   // resulting levels {-eta x6, 3 eta x2}
};

/// Coupling choice for which the zero-field K3 spectrum collapses to two
/// eigenvalues. Requires h_yy + h_zz != 0.
TwoLevelCoupling two_eigenvalue_hxx(double h_yy, double h_zz, double h_xy,
                                    double h_yz, double h_xz);

struct Ghz5LevelSpectrum {
  std::array<double, 8> eigenvalues;  // numeric, ascending
  std::array<double, 4> closed_form;  // -(hxx+hyy+hzz) -+ b_y, x2 each, ascending
};

/// Spectrum of the K3 isotropic symmetric Hamiltonian with a uniform y
/// field. Four eigenvalues follow the printed closed form; the other four
/// are reported from the numeric eigensolver.
Ghz5LevelSpectrum ghz5level_spectrum(const Eigen::Matrix3d& h, double b_y);

/// pi * ceil(N/2)^2 / 2, N >= 3.
double ghz_two_body_time(int n_sites);

/// N^2 pi for the gate-by-gate construction at unit total bandwidth.
double sequential_ghz_time(int n_sites);

/// Required energy range to meet deadline t given the unit-bandwidth
/// minimal time: |E| = t_min / t.
double energy_for_deadline(double t_min_at_unit_bandwidth, double t);

/// 2x2 Hamiltonian whose t = 1 propagator is the Hadamard gate.
Matrix hadamard_hamiltonian();

}  // namespace qsl
