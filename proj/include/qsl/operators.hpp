#pragma once

#include "qsl/linalg.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qsl {

/// Pauli direction label. Canonical order X < Y < Z indexes 3-vectors and
/// 3x3 coupling matrices throughout.
enum class Axis : int { X = 0, Y = 1, Z = 2 };

Matrix pauli(Axis axis);

using Edge = std::pair<int, int>;  // canonical orientation: first < second

/// Set of coupled qubit pairs. Sites are 0-based, edges stored in canonical
/// orientation and sorted.
struct InteractionGraph {
  int n_sites = 0;
  std::vector<Edge> edges;

  static InteractionGraph complete(int n);
  /// Open chain 0-1-...-(n-1), no wrap-around edge.
  static InteractionGraph chain(int n);
  /// Sites on a ring with periodic boundary, coupling all pairs at ring
  /// distance <= range.
  static InteractionGraph ring(int n, int range);
  static InteractionGraph from_edges(int n, std::vector<Edge> edges);

  bool has_edge(int i, int j) const;
};

/// Site permutation: site i maps to perm[i].
using Permutation = std::vector<int>;

Permutation identity_permutation(int n);
Permutation transposition(int n, int i, int j);
/// Product of disjoint transpositions.
Permutation swaps_to_permutation(int n, const std::vector<Edge>& swaps);

/// Symmetry imposed on the Hamiltonian parameters.
struct SymmetryClass {
  enum class Kind { FullPermutation, PairSwapProduct, Unconstrained, ThreeBodyDiagonal };

  Kind kind = Kind::Unconstrained;
  std::vector<Edge> swaps;  // PairSwapProduct generator, 0-based

  static SymmetryClass full_permutation() { return {Kind::FullPermutation, {}}; }
  static SymmetryClass pair_swap_product(std::vector<Edge> swaps);
  static SymmetryClass unconstrained() { return {Kind::Unconstrained, {}}; }
  static SymmetryClass three_body_diagonal() { return {Kind::ThreeBodyDiagonal, {}}; }

  /// Generating permutations (identity excluded for Unconstrained).
  std::vector<Permutation> generators(int n_sites) const;
  /// All group elements, identity first, deterministic order.
  std::vector<Permutation> group_elements(int n_sites) const;
};

/// Orbits of edges and sites under the symmetry group, with the per-edge
/// transport needed to place one orbit matrix on every orbit member.
struct OrbitDecomposition {
  std::vector<std::vector<int>> edge_orbits;  // edge indices, orbit rep first
  std::vector<bool> edge_symmetric;           // orbit matrix must satisfy h = h^T
  std::vector<std::vector<int>> site_orbits;
  std::vector<int> edge_orbit_of;
  std::vector<bool> edge_reversed;  // orbit matrix enters transposed on this edge
  std::vector<int> site_orbit_of;
};

OrbitDecomposition orbit_decomposition(const InteractionGraph& graph,
                                       const SymmetryClass& sym);

/// Free real parameters: 6 or 9 per edge orbit (symmetric flag), 3 per site
/// orbit; 3 for ThreeBodyDiagonal. `symmetric_couplings` forces the stricter
/// 6-parameter convention on every orbit.
int parameter_count(const InteractionGraph& graph, const SymmetryClass& sym,
                    bool symmetric_couplings = false);

/// Couplings and fields organized by symmetry orbits, in energy units.
struct ParameterVector {
  std::vector<Eigen::Matrix3d> couplings;  // one per edge orbit, canonical orientation
  std::vector<Eigen::Vector3d> fields;     // one per site orbit
  Eigen::Vector3d three_body = Eigen::Vector3d::Zero();
};

Matrix pauli_embed(int n_sites, int site, Axis axis);
Matrix swap_operator(int n_sites, int i, int j);
Matrix permutation_operator(int n_sites, const Permutation& perm);

Matrix assemble(const ParameterVector& params, const InteractionGraph& graph,
                const SymmetryClass& sym);

/// H = hx X.X.X + hy Y.Y.Y + hz Z.Z.Z on three qubits.
Matrix three_body_hamiltonian(const Eigen::Vector3d& h);

/// Flat real parametrization of the symmetry-constrained Hamiltonian family.
/// assemble() is linear in the flat vector: H(p) = sum_k p_k B_k with fixed
/// Hermitian basis operators B_k.
class ParameterSpace {
 public:
  ParameterSpace(InteractionGraph graph, SymmetryClass sym,
                 bool symmetric_couplings = false);

  int dim() const { return static_cast<int>(basis_.size()); }
  int state_dim() const { return 1 << graph_.n_sites; }
  const InteractionGraph& graph() const { return graph_; }
  const SymmetryClass& symmetry() const { return sym_; }
  const OrbitDecomposition& orbits() const { return orbits_; }
  const std::vector<std::string>& parameter_names() const { return names_; }
  const std::vector<Matrix>& basis_operators() const { return basis_; }

  Matrix assemble(const Eigen::VectorXd& p) const;
  void assemble_into(const Eigen::VectorXd& p, Matrix& out) const;

  Eigen::VectorXd flatten(const ParameterVector& pv) const;
  ParameterVector unflatten(const Eigen::VectorXd& p) const;

 private:
  InteractionGraph graph_;
  SymmetryClass sym_;
  bool symmetric_couplings_;
  OrbitDecomposition orbits_;
  std::vector<Matrix> basis_;
  std::vector<std::string> names_;
};

}  // namespace qsl
