#include "qsl/reference.hpp"

#include "qsl/operators.hpp"
#include "qsl/states.hpp"

#include <cmath>
#include <numbers>

namespace qsl {

namespace {

constexpr double kPi = std::numbers::pi;

Matrix two_site(int n, int i, Axis a, int j, Axis b) {
  return Matrix(pauli_embed(n, i, a) * pauli_embed(n, j, b));
}

/// sum_{i<j} (c_xz (XZ + ZX) + ...) over the complete graph, one term per
/// (axis pair, coefficient) entry; the pair is applied in both orientations
/// when the axes differ.
struct PairTerm {
  Axis a;
  Axis b;
  double coef;
};

Matrix complete_graph_sum(int n, const std::vector<PairTerm>& terms) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix out = Matrix::Zero(dim, dim);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (const auto& t : terms) {
        out += t.coef * two_site(n, i, t.a, j, t.b);
        if (t.a != t.b) out += t.coef * two_site(n, j, t.a, i, t.b);
      }
  return out;
}

Matrix field_sum(int n, Axis axis) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix out = Matrix::Zero(dim, dim);
  for (int i = 0; i < n; ++i) out += pauli_embed(n, i, axis);
  return out;
}

Matrix w_catalog_matrix(int n, double field_x, double shift, double prefactor) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix h = complete_graph_sum(n, {{Axis::X, Axis::Z, 1.0}});
  h += field_x * field_sum(n, Axis::X);
  h += shift * Matrix::Identity(dim, dim);
  return prefactor * h;
}

Matrix ghz_odd_catalog_matrix(int n, double shift, double prefactor) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix h = complete_graph_sum(
      n, {{Axis::X, Axis::X, 1.0}, {Axis::Y, Axis::Y, -1.0}, {Axis::Z, Axis::Z, 1.0}});
  h += 2.0 * field_sum(n, Axis::Y);
  h += shift * Matrix::Identity(dim, dim);
  return prefactor * h;
}

std::vector<ReferenceEntry> build_catalog() {
  std::vector<ReferenceEntry> entries;
  const double r2 = std::sqrt(2.0);

  // W states, complete graph. Cross xz couplings with an x field that grows
  // with N; the identity shift and prefactor are kept exactly as printed.
  {
    const double c = 1.0 / (4.0 * std::sqrt(3.0));
    entries.push_back({"W3", Family::W, 3, GraphKind::Complete,
                       w_catalog_matrix(3, 0.0, 2.0 * std::sqrt(3.0), c), kPi,
                       true,
                       "(1/(4 sqrt(3))) [sum_{i<j} (XZ + ZX) + 2 sqrt(3) I]"});
  }
  {
    const double c = 1.0 / (4.0 * std::sqrt(22.0));
    entries.push_back(
        {"W4", Family::W, 4, GraphKind::Complete,
         w_catalog_matrix(4, -1.0, 2.0 * std::sqrt(22.0), c),
         std::sqrt(11.0) * kPi / r2, true,
         "(1/(4 sqrt(22))) [sum_{i<j} (XZ + ZX) - sum_i X + 2 sqrt(22) I]"});
  }
  entries.push_back(
      {"W5", Family::W, 5, GraphKind::Complete,
       w_catalog_matrix(5, -2.0, 18.0, 1.0 / 36.0), 9.0 * kPi / std::sqrt(5.0),
       true, "(1/36) [sum_{i<j} (XZ + ZX) - 2 sum_i X + 18 I]"});
  {
    const double root = std::sqrt(3.0 * (41.0 + std::sqrt(921.0)));
    entries.push_back(
        {"W6", Family::W, 6, GraphKind::Complete,
         w_catalog_matrix(6, -3.0, -2.0 * root, 1.0 / (4.0 * root)), 18.76,
         false,
         "(1/(4 sqrt(3 (41 + sqrt(921))))) [sum_{i<j} (XZ + ZX) - 3 sum_i X "
         "- 2 sqrt(3 (41 + sqrt(921))) I]"});
  }
  {
    const double root = 16.0 + std::sqrt(31.0);
    entries.push_back(
        {"W7", Family::W, 7, GraphKind::Complete,
         w_catalog_matrix(7, -4.0, -2.0 * root, 1.0 / (32.0 * root)), 25.60,
         false,
         "(1/(32 (16 + sqrt(31)))) [sum_{i<j} (XZ + ZX) - 4 sum_i X "
         "- 2 (16 + sqrt(31)) I]"});
  }

  // GHZ states, complete graph.
  entries.push_back(
      {"GHZ3", Family::Ghz, 3, GraphKind::Complete,
       ghz_odd_catalog_matrix(3, 9.0, 1.0 / 16.0), 2.0 * kPi, true,
       "(1/16) [sum_{i<j} (XX - YY + ZZ) + 2 sum_i Y + 9 I]"});
  {
    Matrix h = complete_graph_sum(4, {{Axis::X, Axis::Y, 0.5},
                                      {Axis::Y, Axis::Y, 1.0},
                                      {Axis::Z, Axis::Z, 0.5 - 1.0 / r2}});
    h += (3.0 - 5.0 * r2) * Matrix::Identity(16, 16);
    entries.push_back(
        {"GHZ4", Family::Ghz, 4, GraphKind::Complete, Matrix(h / (8.0 * r2)),
         2.0 * kPi, true,
         "(1/(8 sqrt(2))) [sum_{i<j} ((XY + YX)/2 + YY + (1/2 - 1/sqrt(2)) ZZ) "
         "+ (3 - 5 sqrt(2)) I]"});
  }
  entries.push_back(
      {"GHZ5", Family::Ghz, 5, GraphKind::Complete,
       ghz_odd_catalog_matrix(5, 20.0, 1.0 / 36.0), 4.5 * kPi, true,
       "(1/36) [sum_{i<j} (XX - YY + ZZ) + 2 sum_i Y + 20 I]"});
  {
    Matrix h = complete_graph_sum(
        6, {{Axis::X, Axis::Y, -1.0}, {Axis::Z, Axis::Z, -1.0}});
    h += 21.0 * Matrix::Identity(64, 64);
    entries.push_back({"GHZ6", Family::Ghz, 6, GraphKind::Complete,
                       Matrix(h / 36.0), 4.5 * kPi, true,
                       "(1/36) [sum_{i<j} (-(XY + YX) - ZZ) + 21 I]"});
  }
  entries.push_back(
      {"GHZ7", Family::Ghz, 7, GraphKind::Complete,
       ghz_odd_catalog_matrix(7, 35.0, 1.0 / 64.0), 8.0 * kPi, true,
       "(1/64) [sum_{i<j} (XX - YY + ZZ) + 2 sum_i Y + 35 I]"});

  // GHZ on the open three-site chain: couplings 1-2 and 2-3, a uniform y
  // field on every site. The uniform field is what lands the printed
  // prefactor exactly on [0, 1] and the claimed time at unit fidelity.
  {
    Matrix h = Matrix::Zero(8, 8);
    for (int i : {0, 1}) {
      h += r2 * two_site(3, i, Axis::X, i + 1, Axis::X);
      h += r2 * two_site(3, i, Axis::Z, i + 1, Axis::Z);
    }
    h += field_sum(3, Axis::Y);
    h += 5.0 * Matrix::Identity(8, 8);
    entries.push_back(
        {"GHZ3-chain", Family::Ghz, 3, GraphKind::Chain, Matrix(h / 10.0),
         2.5 * kPi, true,
         "(1/10) [sum_{i=1,2} sqrt(2) (X_i X_{i+1} + Z_i Z_{i+1}) + sum_i Y_i + 5 I]"});
  }

  return entries;
}

}  // namespace

std::string family_name(Family family) {
  return family == Family::W ? "W" : "GHZ";
}

std::string graph_kind_name(GraphKind graph) {
  return graph == GraphKind::Complete ? "complete" : "chain";
}

const std::vector<ReferenceEntry>& reference_catalog() {
  static const std::vector<ReferenceEntry> catalog = build_catalog();
  return catalog;
}

ReferenceEntry reference_hamiltonian(Family family, int n_sites, GraphKind graph) {
  for (const auto& e : reference_catalog())
    if (e.family == family && e.n_sites == n_sites && e.graph == graph) return e;
  throw CombinationNotInCatalog(family_name(family) + " N=" +
                                std::to_string(n_sites) + " " +
                                graph_kind_name(graph) + " is not in the catalog");
}

VerifyReport verify_entry(const ReferenceEntry& entry) {
  const Spectrum printed = eigendecompose(entry.hamiltonian);
  VerifyReport report{};
  report.spectrum_min = printed.min();
  report.spectrum_max = printed.max();
  report.prefactor_normalized =
      std::abs(printed.min()) <= 1e-9 && std::abs(printed.max() - 1.0) <= 1e-9;

  const Spectrum normalized = normalize_bandwidth(printed);
  const Vector psi0 = zero_state(entry.n_sites);
  const Vector target = entry.family == Family::W ? w_state(entry.n_sites)
                                                  : ghz(entry.n_sites);

  auto fidelity_at = [&](double t) {
    return fidelity(target, evolve(normalized, t, psi0));
  };

  report.fidelity_at_claimed_time = fidelity_at(entry.claimed_time);
  report.best_fidelity_in_window = report.fidelity_at_claimed_time;
  report.best_time_in_window = entry.claimed_time;
  if (!entry.exact) {
    constexpr double kWindow = 0.05, kStep = 1e-4;
    for (double dt = -kWindow; dt <= kWindow; dt += kStep) {
      const double t = entry.claimed_time + dt;
      const double f = fidelity_at(t);
      if (f > report.best_fidelity_in_window) {
        report.best_fidelity_in_window = f;
        report.best_time_in_window = t;
      }
    }
  }

  report.delta_h_zero_state = energy_stddev(normalized, psi0);
  report.distinct_levels = count_distinct_levels(normalized.eigenvalues, 1e-8);
  report.active_levels = count_active_levels(normalized, psi0, 1e-8);
  report.claim_met = entry.exact
                         ? report.fidelity_at_claimed_time >= 1.0 - 1e-6
                         : report.best_fidelity_in_window >= 1.0 - 1e-4;
  return report;
}

Matrix unnormalized_family(Family family, int n_sites) {
  if (n_sites < 3 || n_sites > 7)
    throw CombinationNotInCatalog("compact family covers N in 3..7");
  if (family == Family::W) {
    Matrix h = complete_graph_sum(n_sites, {{Axis::X, Axis::Z, 1.0}});
    h -= static_cast<double>(n_sites - 3) * field_sum(n_sites, Axis::X);
    return h;
  }
  if (n_sites % 2 == 1) {
    Matrix h = complete_graph_sum(n_sites, {{Axis::X, Axis::X, 1.0},
                                            {Axis::Y, Axis::Y, -1.0},
                                            {Axis::Z, Axis::Z, 1.0}});
    h += 2.0 * field_sum(n_sites, Axis::Y);
    return h;
  }
  if (n_sites == 4) {
    const double r2 = std::sqrt(2.0);
    return complete_graph_sum(4, {{Axis::X, Axis::Y, 0.5},
                                  {Axis::Y, Axis::Y, 1.0},
                                  {Axis::Z, Axis::Z, 0.5 - 1.0 / r2}});
  }
  throw CombinationNotInCatalog("no compact GHZ form for even N = " +
                                std::to_string(n_sites));
}

}  // namespace qsl
