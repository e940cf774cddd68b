#pragma once

#include "qsl/linalg.hpp"
#include "qsl/operators.hpp"

namespace qsl {

// Computational basis convention: basis index is the integer whose binary
// expansion reads s_1...s_N with site 1 (internally site 0) as the most
// significant bit.

Vector zero_state(int n_sites);
Vector ghz(int n_sites);
Vector w_state(int n_sites);
Vector dicke(int n_sites, int k);
/// The 8-term absolutely maximally entangled state of five qubits.
Vector ame52();

Vector apply_site_permutation(const Vector& psi, const Permutation& perm);

struct InvarianceResult {
  bool invariant;
  double residual;  // || P psi - psi ||_2
};

InvarianceResult is_invariant(const Vector& psi, const Permutation& perm,
                              double tol = 1e-10);

}  // namespace qsl
