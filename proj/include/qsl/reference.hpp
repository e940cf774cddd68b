#pragma once

#include "qsl/dynamics.hpp"
#include "qsl/linalg.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace qsl {

enum class Family { W, Ghz };
enum class GraphKind { Complete, Chain };

struct CombinationNotInCatalog : std::out_of_range {
  explicit CombinationNotInCatalog(const std::string& what)
      : std::out_of_range(what) {}
};

/// One catalog operator: the printed matrix including its prefactor and
/// identity shift, the claimed minimal time, and the exact expression kept
/// for documentation.
struct ReferenceEntry {
  std::string label;
  Family family;
  int n_sites;
  GraphKind graph;
  Matrix hamiltonian;
  double claimed_time;
  bool exact;  // false: time printed to two decimals only
  std::string expression;
};

ReferenceEntry reference_hamiltonian(Family family, int n_sites,
                                     GraphKind graph = GraphKind::Complete);
const std::vector<ReferenceEntry>& reference_catalog();

struct VerifyReport {
  double fidelity_at_claimed_time;
  double best_fidelity_in_window;  // claimed_time +- 0.05 for approximate entries
  double best_time_in_window;
  double spectrum_min;  // of the printed operator
  double spectrum_max;
  bool prefactor_normalized;  // printed spectrum already spans [0, 1]
  double delta_h_zero_state;  // under the re-normalized operator
  int distinct_levels;        // re-normalized, gap tolerance 1e-8
  int active_levels;          // levels occupied by |0...0>
  bool claim_met;
};

/// Evolves |0...0> under the bandwidth-normalized entry and checks the
/// claimed time: exact entries at fidelity 1 - 1e-6, approximate entries
/// maximized over the +-0.05 window at 1 - 1e-4.
VerifyReport verify_entry(const ReferenceEntry& entry);

/// The compact unnormalized families: cross-coupling W form for any
/// N in 3..7, the odd-N GHZ form, and the separately printed N = 4 GHZ
/// form. Throws CombinationNotInCatalog otherwise.
Matrix unnormalized_family(Family family, int n_sites);

std::string family_name(Family family);
std::string graph_kind_name(GraphKind graph);

}  // namespace qsl
