#include "qsl/operators.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qsl {

namespace {

constexpr Complex kI{0.0, 1.0};

Edge canonical(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

const char* axis_letter(Axis axis) {
  switch (axis) {
    case Axis::X: return "x";
    case Axis::Y: return "y";
    case Axis::Z: return "z";
  }
  return "?";
}

/// Tensor product of sigma_{axis} factors at the given sites, identity
/// elsewhere. Sites must be distinct; site 0 owns the most significant bit.
Matrix pauli_string(int n_sites, const std::vector<std::pair<int, Axis>>& factors) {
  Matrix out = Matrix::Identity(1, 1);
  for (int s = 0; s < n_sites; ++s) {
    const auto it = std::find_if(factors.begin(), factors.end(),
                                 [s](const auto& f) { return f.first == s; });
    out = kron(out, it == factors.end() ? Matrix(Matrix::Identity(2, 2))
                                        : pauli(it->second));
  }
  return out;
}

void check_site(int n_sites, int site) {
  if (site < 0 || site >= n_sites)
    throw std::out_of_range("site index out of range");
}

}  // namespace

Matrix pauli(Axis axis) {
  Matrix m(2, 2);
  switch (axis) {
    case Axis::X:
      m << 0, 1, 1, 0;
      break;
    case Axis::Y:
      m << 0, -kI, kI, 0;
      break;
    case Axis::Z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

InteractionGraph InteractionGraph::complete(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return from_edges(n, std::move(edges));
}

InteractionGraph InteractionGraph::chain(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return from_edges(n, std::move(edges));
}

InteractionGraph InteractionGraph::ring(int n, int range) {
  if (range < 1 || range > n - 1)
    throw std::invalid_argument("interaction range must be in [1, n-1]");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int d = std::min(j - i, n - (j - i));  // ring distance
      if (d <= range) edges.emplace_back(i, j);
    }
  return from_edges(n, std::move(edges));
}

InteractionGraph InteractionGraph::from_edges(int n, std::vector<Edge> edges) {
  if (n < 1) throw std::invalid_argument("n_sites must be positive");
  for (auto& e : edges) {
    if (e.first == e.second) throw std::invalid_argument("self-loop edge");
    e = canonical(e.first, e.second);
    if (e.first < 0 || e.second >= n)
      throw std::invalid_argument("edge site out of range");
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("duplicate edge");
  return InteractionGraph{n, std::move(edges)};
}

bool InteractionGraph::has_edge(int i, int j) const {
  return std::binary_search(edges.begin(), edges.end(), canonical(i, j));
}

Permutation identity_permutation(int n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Permutation transposition(int n, int i, int j) {
  auto p = identity_permutation(n);
  std::swap(p[i], p[j]);
  return p;
}

Permutation swaps_to_permutation(int n, const std::vector<Edge>& swaps) {
  auto p = identity_permutation(n);
  std::vector<bool> used(n, false);
  for (const auto& [a, b] : swaps) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b)
      throw std::invalid_argument("invalid transposition");
    if (used[a] || used[b])
      throw std::invalid_argument("transpositions must be disjoint");
    used[a] = used[b] = true;
    std::swap(p[a], p[b]);
  }
  return p;
}

SymmetryClass SymmetryClass::pair_swap_product(std::vector<Edge> swaps) {
  if (swaps.empty())
    throw std::invalid_argument("pair swap product needs at least one transposition");
  return {Kind::PairSwapProduct, std::move(swaps)};
}

std::vector<Permutation> SymmetryClass::generators(int n_sites) const {
  std::vector<Permutation> gens;
  switch (kind) {
    case Kind::FullPermutation:
      for (int i = 0; i + 1 < n_sites; ++i)
        gens.push_back(transposition(n_sites, i, i + 1));
      break;
    case Kind::PairSwapProduct:
      gens.push_back(swaps_to_permutation(n_sites, swaps));
      break;
    case Kind::Unconstrained:
    case Kind::ThreeBodyDiagonal:
      break;
  }
  return gens;
}

std::vector<Permutation> SymmetryClass::group_elements(int n_sites) const {
  switch (kind) {
    case Kind::FullPermutation: {
      // Lexicographic enumeration of all n! permutations, identity first.
      std::vector<Permutation> all;
      auto p = identity_permutation(n_sites);
      do {
        all.push_back(p);
      } while (std::next_permutation(p.begin(), p.end()));
      return all;
    }
    case Kind::PairSwapProduct:
      return {identity_permutation(n_sites),
              swaps_to_permutation(n_sites, swaps)};
    case Kind::Unconstrained:
    case Kind::ThreeBodyDiagonal:
      return {identity_permutation(n_sites)};
  }
  throw std::logic_error("unreachable");
}

OrbitDecomposition orbit_decomposition(const InteractionGraph& graph,
                                       const SymmetryClass& sym) {
  const int n = graph.n_sites;
  const auto group = sym.group_elements(n);
  const int n_edges = static_cast<int>(graph.edges.size());

  // Every group element must map the edge set onto itself.
  auto edge_index = [&](int a, int b) -> int {
    const auto e = canonical(a, b);
    const auto it = std::lower_bound(graph.edges.begin(), graph.edges.end(), e);
    if (it == graph.edges.end() || *it != e) return -1;
    return static_cast<int>(it - graph.edges.begin());
  };
  for (const auto& g : group)
    for (const auto& [a, b] : graph.edges)
      if (edge_index(g[a], g[b]) < 0)
        throw std::invalid_argument(
            "symmetry permutation does not preserve the edge set");

  OrbitDecomposition dec;
  dec.edge_orbit_of.assign(n_edges, -1);
  dec.edge_reversed.assign(n_edges, false);
  dec.site_orbit_of.assign(n, -1);

  for (int e = 0; e < n_edges; ++e) {
    if (dec.edge_orbit_of[e] >= 0) continue;
    const int orbit_id = static_cast<int>(dec.edge_orbits.size());
    const auto [ra, rb] = graph.edges[e];
    std::vector<int> members;
    bool symmetric = false;
    for (const auto& g : group) {
      const int ga = g[ra], gb = g[rb];
      if (ga == rb && gb == ra) symmetric = true;
      const int idx = edge_index(ga, gb);
      if (dec.edge_orbit_of[idx] < 0) {
        dec.edge_orbit_of[idx] = orbit_id;
        dec.edge_reversed[idx] = ga > gb;  // first group element fixes transport
        members.push_back(idx);
      }
    }
    std::sort(members.begin(), members.end());
    dec.edge_orbits.push_back(std::move(members));
    dec.edge_symmetric.push_back(symmetric);
  }

  for (int s = 0; s < n; ++s) {
    if (dec.site_orbit_of[s] >= 0) continue;
    const int orbit_id = static_cast<int>(dec.site_orbits.size());
    std::vector<int> members;
    for (const auto& g : group) {
      if (dec.site_orbit_of[g[s]] < 0) {
        dec.site_orbit_of[g[s]] = orbit_id;
        members.push_back(g[s]);
      }
    }
    std::sort(members.begin(), members.end());
    dec.site_orbits.push_back(std::move(members));
  }

  return dec;
}

int parameter_count(const InteractionGraph& graph, const SymmetryClass& sym,
                    bool symmetric_couplings) {
  if (sym.kind == SymmetryClass::Kind::ThreeBodyDiagonal) return 3;
  const auto dec = orbit_decomposition(graph, sym);
  int count = 0;
  for (std::size_t o = 0; o < dec.edge_orbits.size(); ++o)
    count += (dec.edge_symmetric[o] || symmetric_couplings) ? 6 : 9;
  count += 3 * static_cast<int>(dec.site_orbits.size());
  return count;
}

Matrix pauli_embed(int n_sites, int site, Axis axis) {
  check_site(n_sites, site);
  return pauli_string(n_sites, {{site, axis}});
}

Matrix swap_operator(int n_sites, int i, int j) {
  check_site(n_sites, i);
  check_site(n_sites, j);
  if (i == j) throw std::invalid_argument("swap sites must differ");
  return permutation_operator(n_sites, transposition(n_sites, i, j));
}

Matrix permutation_operator(int n_sites, const Permutation& perm) {
  if (static_cast<int>(perm.size()) != n_sites)
    throw std::invalid_argument("permutation length mismatch");
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  Matrix p = Matrix::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    Eigen::Index target = 0;
    for (int s = 0; s < n_sites; ++s) {
      const Eigen::Index bit = (b >> (n_sites - 1 - s)) & 1;
      target |= bit << (n_sites - 1 - perm[s]);
    }
    p(target, b) = 1.0;
  }
  return p;
}

Matrix assemble(const ParameterVector& params, const InteractionGraph& graph,
                const SymmetryClass& sym) {
  if (sym.kind == SymmetryClass::Kind::ThreeBodyDiagonal) {
    if (graph.n_sites != 3)
      throw std::invalid_argument("three-body diagonal family needs 3 sites");
    return three_body_hamiltonian(params.three_body);
  }
  const auto dec = orbit_decomposition(graph, sym);
  if (params.couplings.size() != dec.edge_orbits.size() ||
      params.fields.size() != dec.site_orbits.size())
    throw std::invalid_argument("parameter vector does not match orbit structure");
  for (std::size_t o = 0; o < dec.edge_orbits.size(); ++o) {
    const auto& h = params.couplings[o];
    if (dec.edge_symmetric[o] &&
        (h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument(
          "coupling matrix must be symmetric on this orbit");
  }

  const Eigen::Index dim = Eigen::Index{1} << graph.n_sites;
  Matrix out = Matrix::Zero(dim, dim);
  for (int e = 0; e < static_cast<int>(graph.edges.size()); ++e) {
    const auto [a, b] = graph.edges[e];
    const auto& h = params.couplings[dec.edge_orbit_of[e]];
    const bool rev = dec.edge_reversed[e];
    for (int mu = 0; mu < 3; ++mu)
      for (int nu = 0; nu < 3; ++nu) {
        const double c = rev ? h(nu, mu) : h(mu, nu);
        if (c == 0.0) continue;
        out += c * pauli_string(graph.n_sites, {{a, static_cast<Axis>(mu)},
                                                {b, static_cast<Axis>(nu)}});
      }
  }
  for (int s = 0; s < graph.n_sites; ++s) {
    const auto& f = params.fields[dec.site_orbit_of[s]];
    for (int mu = 0; mu < 3; ++mu) {
      if (f(mu) == 0.0) continue;
      out += f(mu) * pauli_string(graph.n_sites, {{s, static_cast<Axis>(mu)}});
    }
  }
  return out;
}

Matrix three_body_hamiltonian(const Eigen::Vector3d& h) {
  Matrix out = Matrix::Zero(8, 8);
  for (int mu = 0; mu < 3; ++mu) {
    if (h(mu) == 0.0) continue;
    const auto axis = static_cast<Axis>(mu);
    out += h(mu) * pauli_string(3, {{0, axis}, {1, axis}, {2, axis}});
  }
  return out;
}

ParameterSpace::ParameterSpace(InteractionGraph graph, SymmetryClass sym,
                               bool symmetric_couplings)
    : graph_(std::move(graph)),
      sym_(std::move(sym)),
      symmetric_couplings_(symmetric_couplings) {
  const int n = graph_.n_sites;

  if (sym_.kind == SymmetryClass::Kind::ThreeBodyDiagonal) {
    if (n != 3)
      throw std::invalid_argument("three-body diagonal family needs 3 sites");
    for (int mu = 0; mu < 3; ++mu) {
      const auto axis = static_cast<Axis>(mu);
      basis_.push_back(pauli_string(3, {{0, axis}, {1, axis}, {2, axis}}));
      names_.push_back(std::string("h3_") + axis_letter(axis));
    }
    return;
  }

  orbits_ = orbit_decomposition(graph_, sym_);

  for (std::size_t o = 0; o < orbits_.edge_orbits.size(); ++o) {
    const bool symmetric = orbits_.edge_symmetric[o] || symmetric_couplings_;
    const std::string prefix = "orbit" + std::to_string(o) + ".h_";
    auto coupling_basis = [&](int mu, int nu) {
      const Eigen::Index dim = Eigen::Index{1} << n;
      Matrix b = Matrix::Zero(dim, dim);
      for (int e : orbits_.edge_orbits[o]) {
        const auto [i, j] = graph_.edges[e];
        const int m = orbits_.edge_reversed[e] ? nu : mu;
        const int v = orbits_.edge_reversed[e] ? mu : nu;
        b += pauli_string(n, {{i, static_cast<Axis>(m)}, {j, static_cast<Axis>(v)}});
      }
      return b;
    };
    for (int mu = 0; mu < 3; ++mu)
      for (int nu = 0; nu < 3; ++nu) {
        if (symmetric && nu < mu) continue;
        Matrix b = coupling_basis(mu, nu);
        if (symmetric && nu > mu) b += coupling_basis(nu, mu);
        basis_.push_back(std::move(b));
        names_.push_back(prefix + axis_letter(static_cast<Axis>(mu)) +
                         axis_letter(static_cast<Axis>(nu)));
      }
  }

  for (std::size_t so = 0; so < orbits_.site_orbits.size(); ++so) {
    const std::string prefix = "sites" + std::to_string(so) + ".b_";
    for (int mu = 0; mu < 3; ++mu) {
      const Eigen::Index dim = Eigen::Index{1} << n;
      Matrix b = Matrix::Zero(dim, dim);
      for (int s : orbits_.site_orbits[so])
        b += pauli_string(n, {{s, static_cast<Axis>(mu)}});
      basis_.push_back(std::move(b));
      names_.push_back(prefix + axis_letter(static_cast<Axis>(mu)));
    }
  }
}

Matrix ParameterSpace::assemble(const Eigen::VectorXd& p) const {
  Matrix out;
  assemble_into(p, out);
  return out;
}

void ParameterSpace::assemble_into(const Eigen::VectorXd& p, Matrix& out) const {
  if (p.size() != dim())
    throw std::invalid_argument("parameter vector has wrong dimension");
  const Eigen::Index d = state_dim();
  if (out.rows() != d || out.cols() != d) out.resize(d, d);
  out.setZero();
  for (int k = 0; k < dim(); ++k)
    if (p(k) != 0.0) out += p(k) * basis_[static_cast<std::size_t>(k)];
}

Eigen::VectorXd ParameterSpace::flatten(const ParameterVector& pv) const {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(dim());
  int k = 0;
  if (sym_.kind == SymmetryClass::Kind::ThreeBodyDiagonal) {
    for (int mu = 0; mu < 3; ++mu) p(mu) = pv.three_body(mu);
    return p;
  }
  if (pv.couplings.size() != orbits_.edge_orbits.size() ||
      pv.fields.size() != orbits_.site_orbits.size())
    throw std::invalid_argument("parameter vector does not match orbit structure");
  for (std::size_t o = 0; o < orbits_.edge_orbits.size(); ++o) {
    const bool symmetric = orbits_.edge_symmetric[o] || symmetric_couplings_;
    const auto& h = pv.couplings[o];
    if (symmetric && (h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument("coupling matrix must be symmetric on this orbit");
    for (int mu = 0; mu < 3; ++mu)
      for (int nu = 0; nu < 3; ++nu) {
        if (symmetric && nu < mu) continue;
        p(k++) = h(mu, nu);
      }
  }
  for (std::size_t so = 0; so < orbits_.site_orbits.size(); ++so)
    for (int mu = 0; mu < 3; ++mu) p(k++) = pv.fields[so](mu);
  return p;
}

ParameterVector ParameterSpace::unflatten(const Eigen::VectorXd& p) const {
  if (p.size() != dim())
    throw std::invalid_argument("parameter vector has wrong dimension");
  ParameterVector pv;
  if (sym_.kind == SymmetryClass::Kind::ThreeBodyDiagonal) {
    pv.three_body = Eigen::Vector3d(p(0), p(1), p(2));
    return pv;
  }
  int k = 0;
  for (std::size_t o = 0; o < orbits_.edge_orbits.size(); ++o) {
    const bool symmetric = orbits_.edge_symmetric[o] || symmetric_couplings_;
    Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
    for (int mu = 0; mu < 3; ++mu)
      for (int nu = 0; nu < 3; ++nu) {
        if (symmetric && nu < mu) continue;
        h(mu, nu) = p(k++);
        if (symmetric && nu > mu) h(nu, mu) = h(mu, nu);
      }
    pv.couplings.push_back(h);
  }
  for (std::size_t so = 0; so < orbits_.site_orbits.size(); ++so) {
    pv.fields.emplace_back(p(k), p(k + 1), p(k + 2));
    k += 3;
  }
  return pv;
}

}  // namespace qsl
