#include "qctrl/criteria.hpp"

#include "qctrl/union_find.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qctrl {

namespace {

bool is_diagonal(const Matrix& m, double tol) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j && std::abs(m(i, j)) > tol) return false;
  return true;
}

// H0 basis used by the graph and chain criteria: the supplied basis when H0
// is already diagonal, its eigenbasis (ascending) otherwise.
struct EnergyBasis {
  std::vector<double> energies;
  Matrix h1;  // control in that basis
};

EnergyBasis to_energy_basis(const Matrix& h0, const Matrix& h1, const Tolerances& tol) {
  if (is_diagonal(h0, tol.zero)) {
    EnergyBasis out;
    for (Eigen::Index k = 0; k < h0.rows(); ++k) out.energies.push_back(h0(k, k).real());
    out.h1 = h1;
    return out;
  }
  const Eigensystem es = hermitian_eigensystem(h0, tol);
  return {es.values, es.vectors.adjoint() * h1 * es.vectors};
}

void require_hermitian(const Matrix& m, const Tolerances& tol, const std::string& name) {
  require_square(m, name);
  if (!m.allFinite() || !is_hermitian(m, tol.zero))
    throw ValidationError(name + ": matrix is not Hermitian");
}

// Index of an entry that differs from every other entry by more than tol.
// `avoid` is returned only when no other index qualifies.
std::optional<std::size_t> unique_entry(const std::vector<double>& values, double tol,
                                        std::size_t avoid) {
  std::optional<std::size_t> fallback;
  for (std::size_t p = 0; p < values.size(); ++p) {
    bool unique = true;
    for (std::size_t n = 0; n < values.size() && unique; ++n)
      if (n != p && std::abs(values[n] - values[p]) <= tol) unique = false;
    if (!unique) continue;
    if (p != avoid) return p;
    fallback = p;
  }
  return fallback;
}

Matrix normalized(const Matrix& m) {
  const double norm = m.norm();
  return norm > 0.0 ? Matrix(m / norm) : m;
}

std::string format_pair(const IndexPair& p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

}  // namespace

RegularityReport check_regularity(const Matrix& h0, const Tolerances& tol) {
  tol.validate();
  RegularityReport out;
  out.eigenvalues = hermitian_eigensystem(h0, tol).values;
  const int n = static_cast<int>(out.eigenvalues.size());
  const auto& e = out.eigenvalues;

  std::vector<IndexPair> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      pairs.emplace_back(i + 1, j + 1);
      if (std::abs(e[j] - e[i]) < tol.degeneracy) out.degenerate_level_pairs.emplace_back(i + 1, j + 1);
    }
  auto gap = [&](const IndexPair& p) { return e[p.second - 1] - e[p.first - 1]; };
  for (std::size_t a = 0; a < pairs.size(); ++a)
    for (std::size_t b = a + 1; b < pairs.size(); ++b)
      if (std::abs(gap(pairs[a]) - gap(pairs[b])) < tol.degeneracy)
        out.degenerate_gap_pairs.emplace_back(pairs[a], pairs[b]);

  out.regular = out.degenerate_level_pairs.empty();
  out.strongly_regular = out.regular && out.degenerate_gap_pairs.empty();
  return out;
}

TransitionGraph build_transition_graph(const Matrix& h0, const Matrix& h1, const Tolerances& tol) {
  tol.validate();
  require_hermitian(h0, tol, "h0");
  require_hermitian(h1, tol, "h1");
  require_same_dim(h0, h1, "build_transition_graph");

  const EnergyBasis basis = to_energy_basis(h0, h1, tol);
  TransitionGraph g;
  g.vertex_count = static_cast<int>(h0.rows());
  g.basis_unique = check_regularity(h0, tol).regular;
  for (Eigen::Index m = 0; m < basis.h1.rows(); ++m)
    for (Eigen::Index n = m + 1; n < basis.h1.cols(); ++n)
      if (std::abs(basis.h1(m, n)) > tol.zero)
        g.edges.emplace_back(static_cast<int>(m) + 1, static_cast<int>(n) + 1);
  return g;
}

bool is_connected(const TransitionGraph& graph) {
  if (graph.vertex_count <= 1) return true;
  UnionFind uf(static_cast<std::size_t>(graph.vertex_count));
  for (const auto& [m, n] : graph.edges)
    uf.unite(static_cast<std::size_t>(m - 1), static_cast<std::size_t>(n - 1));
  return uf.components() == 1;
}

GraphCriterion graph_criterion(const Matrix& h0, const Matrix& h1, const Tolerances& tol) {
  GraphCriterion out;
  out.graph = build_transition_graph(h0, h1, tol);
  out.connected = is_connected(out.graph);
  const RegularityReport reg = check_regularity(h0, tol);
  if (reg.strongly_regular && out.connected) {
    out.outcome = GraphOutcome::Controllable;
  } else if (reg.regular && !out.connected) {
    out.outcome = GraphOutcome::NotControllable;
  } else {
    out.outcome = GraphOutcome::Inconclusive;
  }
  return out;
}

void ChainSpec::validate() const {
  if (energies.empty() || dipoles.size() + 1 != energies.size()) {
    std::ostringstream os;
    os << "chain: " << energies.size() << " energies need " << energies.size() - 1
       << " dipoles, got " << dipoles.size();
    throw DimensionError(os.str());
  }
}

std::vector<double> ChainSpec::gaps() const {
  std::vector<double> out;
  for (std::size_t n = 0; n + 1 < energies.size(); ++n) out.push_back(energies[n + 1] - energies[n]);
  return out;
}

std::vector<double> ChainSpec::dipole_contrasts() const {
  auto d2 = [&](std::ptrdiff_t k) {
    // 0-based into dipoles; out of range is the d_0 = d_N = 0 boundary
    if (k < 0 || k >= static_cast<std::ptrdiff_t>(dipoles.size())) return 0.0;
    const double d = dipoles[static_cast<std::size_t>(k)];
    return d * d;
  };
  std::vector<double> out;
  for (std::ptrdiff_t n = 0; n < static_cast<std::ptrdiff_t>(dipoles.size()); ++n)
    out.push_back(2.0 * d2(n) - d2(n - 1) - d2(n + 1));
  return out;
}

ChainResult chain_criterion(const ChainSpec& spec, const Tolerances& tol) {
  tol.validate();
  spec.validate();
  ChainResult out;
  const std::size_t n = spec.energies.size();
  if (n < 2) {
    out.outcome = ChainOutcome::NotApplicable;
    out.note = "single level";
    return out;
  }
  for (std::size_t k = 0; k < spec.dipoles.size(); ++k) {
    if (std::abs(spec.dipoles[k]) <= tol.zero) {
      out.outcome = ChainOutcome::NotApplicable;
      out.note = "coupling d_" + std::to_string(k + 1) + " vanishes";
      return out;
    }
  }

  // Transitions n and p resonate with the same field when |ω_n| = |ω_p|.
  std::vector<double> omega = spec.gaps();
  for (double& w : omega) w = std::abs(w);
  // 0-based index of the middle transition; a pivot there needs the extra
  // asymmetry check below.
  const std::size_t middle = n % 2 == 0 ? n / 2 - 1 : n;
  if (auto p = unique_entry(omega, tol.degeneracy, middle)) {
    out.condition = 1;
    out.pivot = static_cast<int>(*p) + 1;
  } else {
    const bool equal_gaps = std::all_of(omega.begin(), omega.end(), [&](double w) {
      return std::abs(w - omega.front()) <= tol.degeneracy;
    });
    if (equal_gaps) {
      if (auto q = unique_entry(spec.dipole_contrasts(), tol.degeneracy, middle)) {
        out.condition = 2;
        out.pivot = static_cast<int>(*q) + 1;
      }
    }
  }
  if (out.condition == 0) {
    out.outcome = ChainOutcome::Inconclusive;
    out.note = "no unique transition frequency and no unique dipole contrast; deferred to the "
               "Lie algebra";
    return out;
  }

  // A pivot on the middle transition of an even chain is compatible with a
  // mirror symmetry; then d_{P-k}^2 != d_{P+k}^2 is needed for some k, P = N/2.
  if (n % 2 == 0 && static_cast<std::size_t>(out.pivot) * 2 == n) {
    const std::size_t mid = n / 2;
    bool asymmetric = false;
    for (std::size_t k = 1; k < mid && !asymmetric; ++k) {
      const double lo = spec.dipoles[mid - k - 1];
      const double hi = spec.dipoles[mid + k - 1];
      if (std::abs(lo * lo - hi * hi) > tol.degeneracy) asymmetric = true;
    }
    if (!asymmetric) {
      out.outcome = ChainOutcome::InconclusiveSymmetric;
      out.note = "even dimension with mirror-symmetric couplings about the middle transition; "
                 "symplectic symmetry possible, deferred to the Lie algebra";
      return out;
    }
  }

  double trace = 0.0;
  for (double e : spec.energies) trace += e;
  out.outcome = std::abs(trace) > tol.degeneracy ? ChainOutcome::CompletelyControllable
                                                 : ChainOutcome::DensityMatrixControllable;
  out.note = out.condition == 1
                 ? "transition frequency w_" + std::to_string(out.pivot) + " differs from all others"
                 : "equal transition frequencies; dipole contrast v_" + std::to_string(out.pivot) +
                       " differs from all others";
  return out;
}

std::optional<ChainSpec> detect_chain(const Matrix& h0, const Matrix& h1, const Tolerances& tol) {
  tol.validate();
  require_hermitian(h0, tol, "h0");
  require_hermitian(h1, tol, "h1");
  require_same_dim(h0, h1, "detect_chain");
  const EnergyBasis basis = to_energy_basis(h0, h1, tol);
  const Eigen::Index n = h0.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (std::abs(i - j) != 1 && std::abs(basis.h1(i, j)) > tol.zero) return std::nullopt;
  ChainSpec spec;
  spec.energies = basis.energies;
  for (Eigen::Index k = 0; k + 1 < n; ++k) spec.dipoles.push_back(std::abs(basis.h1(k, k + 1)));
  return spec;
}

std::size_t commutant_dimension(std::span<const Matrix> hamiltonians, const Tolerances& tol) {
  tol.validate();
  if (hamiltonians.empty()) throw ValidationError("commutant_dimension: no matrices");
  require_square(hamiltonians.front(), "commutant_dimension");
  const Eigen::Index n = hamiltonians.front().rows();
  const Eigen::Index nn = n * n;

  std::vector<Matrix> ops;
  for (const Matrix& h : hamiltonians) {
    require_same_dim(hamiltonians.front(), h, "commutant_dimension");
    if (h.norm() > tol.zero) ops.push_back(normalized(h));
  }
  if (ops.empty()) return static_cast<std::size_t>(nn);

  // Column c of the stacked map is vec([E_c, H]) for the unit matrix E_c.
  Matrix map(static_cast<Eigen::Index>(ops.size()) * nn, nn);
  for (Eigen::Index c = 0; c < nn; ++c) {
    const Eigen::Index row = c % n;
    const Eigen::Index col = c / n;
    for (std::size_t k = 0; k < ops.size(); ++k) {
      const Matrix& h = ops[k];
      Matrix image = Matrix::Zero(n, n);
      image.row(row) += h.row(col);  // E_c H
      image.col(col) -= h.col(row);  // H E_c
      map.block(static_cast<Eigen::Index>(k) * nn, c, nn, 1) = vectorize(image);
    }
  }
  return static_cast<std::size_t>(nullspace(map, tol.degeneracy).cols());
}

std::vector<Vector> detect_dark_states(const Matrix& h0, std::span<const Matrix> controls,
                                       const Tolerances& tol) {
  tol.validate();
  require_hermitian(h0, tol, "h0");
  const Eigen::Index n = h0.rows();
  for (const Matrix& h : controls) require_same_dim(h0, h, "detect_dark_states");

  const Eigensystem es = hermitian_eigensystem(h0, tol);
  std::vector<Vector> out;
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && es.values[static_cast<std::size_t>(stop)] -
                               es.values[static_cast<std::size_t>(stop - 1)] <
                           tol.degeneracy)
      ++stop;
    const Matrix space = es.vectors.middleCols(start, stop - start);

    Matrix stacked(static_cast<Eigen::Index>(controls.size()) * n, space.cols());
    for (std::size_t k = 0; k < controls.size(); ++k)
      stacked.middleRows(static_cast<Eigen::Index>(k) * n, n) = controls[k] * space;

    Matrix kernel;
    if (stacked.rows() == 0 || stacked.norm() == 0.0) {
      kernel = Matrix::Identity(space.cols(), space.cols());
    } else {
      const double sigma_max = singular_values(stacked)(0);
      const double cutoff = tol.zero * std::max(1.0, stacked.norm());
      kernel = nullspace(stacked, cutoff / sigma_max);
    }
    for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
      Vector v = space * kernel.col(c);
      out.push_back(fix_phase(v / v.norm()));
    }
    start = stop;
  }
  return out;
}

Verdicts verdicts_for(AlgebraTag tag) {
  switch (tag) {
    case AlgebraTag::U: return {Verdict::Yes, Verdict::Yes, Verdict::Yes};
    case AlgebraTag::SU: return {Verdict::No, Verdict::Yes, Verdict::Yes};
    case AlgebraTag::SP:
    case AlgebraTag::SPxU1: return {Verdict::No, Verdict::No, Verdict::Yes};
    case AlgebraTag::SO:
    case AlgebraTag::Other: return {Verdict::No, Verdict::No, Verdict::No};
  }
  return {};
}

ControllabilityReport analyze(const HamiltonianSystem& system, const Tolerances& tol) {
  HamiltonianSystem checked = system;
  checked.tol = tol;
  checked.validate();
  const Eigen::Index n = system.dim();

  ControllabilityReport r;
  r.regularity = check_regularity(system.h0, tol);
  r.evidence.push_back(
      {"regularity",
       r.regularity.strongly_regular ? "strongly regular"
                                     : (r.regularity.regular ? "regular" : "not regular"),
       "regular: nondegenerate levels; strongly regular: additionally nondegenerate gaps"});

  if (system.controls.size() == 1) {
    const Matrix& h1 = system.controls.front();
    r.graph = graph_criterion(system.h0, h1, tol);
    std::string detail = to_string(r.graph->outcome) + " (graph " +
                         (r.graph->connected ? "connected" : "disconnected") +
                         (r.graph->graph.basis_unique ? "" : ", basis not unique") + ")";
    r.evidence.push_back({"transition graph", detail,
                          "graph criterion: strongly regular H0 and connected transition graph "
                          "imply controllability"});
    if (auto spec = detect_chain(system.h0, h1, tol)) {
      r.chain_spec = *spec;
      r.chain = chain_criterion(*spec, tol);
      r.evidence.push_back({"chain criterion", to_string(r.chain->outcome) + ": " + r.chain->note,
                            "chain criterion: nonzero couplings plus a unique transition "
                            "frequency or unique dipole contrast"});
    }
  }

  const std::vector<Matrix> generators = system.generators();
  const LieAlgebraBasis basis = lie_closure(generators, tol);
  r.lie_dimension = basis.dimension();
  r.algebra = classify_algebra(basis, tol);
  const Verdicts v = verdicts_for(r.algebra.tag);
  r.complete = v.complete;
  r.density_matrix = v.density_matrix;
  r.pure_state = v.pure_state;
  {
    std::ostringstream os;
    os << r.algebra.name() << ", dimension " << r.lie_dimension;
    if (r.algebra.has_identity_direction)
      os << "; traceless part " << r.algebra.traceless_name() << ", dimension "
         << r.algebra.traceless_dimension;
    os << " (classified by dimension and invariant form)";
    if (r.algebra.identity_u1_assumed) os << "; u(1) summand taken as the identity direction";
    r.evidence.push_back({"dynamical Lie algebra", os.str(),
                          "Lie-algebraic classification: u(N) complete, su(N) density-matrix, "
                          "sp(N/2) and sp(N/2)+u(1) pure-state controllable"});
  }

  const std::vector<Matrix> hams = system.hamiltonians();
  r.commutant_dimension = commutant_dimension(hams, tol);
  r.evidence.push_back({"commutant", "dimension " + std::to_string(r.commutant_dimension),
                        "Schur's lemma: commutant dimension 1 iff the action is irreducible"});

  r.dark_states = detect_dark_states(system.h0, system.controls, tol);
  r.evidence.push_back({"dark states", std::to_string(r.dark_states.size()) + " found",
                        "an H0 eigenstate annihilated by every control is decoupled"});

  auto inconsistent = [](const std::string& what) {
    throw InconsistencyError("inconsistent evidence: " + what +
                             "; check the zero / degeneracy tolerances");
  };
  if (r.graph) {
    if (r.graph->outcome == GraphOutcome::Controllable && r.density_matrix != Verdict::Yes)
      inconsistent("graph criterion says controllable but the Lie algebra is " + r.algebra.name());
    if (r.graph->outcome == GraphOutcome::NotControllable && r.density_matrix == Verdict::Yes)
      inconsistent("disconnected graph over regular H0 but the Lie algebra is " + r.algebra.name());
  }
  if (r.chain) {
    const bool dm = r.chain->outcome == ChainOutcome::DensityMatrixControllable ||
                    r.chain->outcome == ChainOutcome::CompletelyControllable;
    if (dm && r.density_matrix != Verdict::Yes)
      inconsistent("chain criterion says controllable but the Lie algebra is " + r.algebra.name());
    if (r.chain->outcome == ChainOutcome::CompletelyControllable && r.complete != Verdict::Yes)
      inconsistent("chain criterion says completely controllable but the Lie algebra is " +
                   r.algebra.name());
  }
  if (r.commutant_dimension > 1 && r.density_matrix == Verdict::Yes)
    inconsistent("reducible action (commutant dimension " +
                 std::to_string(r.commutant_dimension) + ") but the Lie algebra is " +
                 r.algebra.name());
  if (n > 1 && !r.dark_states.empty() && r.pure_state == Verdict::Yes)
    inconsistent("dark state present but the Lie algebra is " + r.algebra.name());

  if (r.pure_state == Verdict::No && n > 1 && !r.regularity.degenerate_level_pairs.empty() &&
      r.graph && r.graph->connected && !r.graph->graph.basis_unique) {
    r.evidence.push_back({"transition graph basis",
                          "graph connected in the supplied basis (" +
                              format_pair(r.regularity.degenerate_level_pairs.front()) +
                              " degenerate) yet the system is not controllable",
                          "the transition graph is unique only for regular H0"});
  }
  return r;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(GraphOutcome o) {
  switch (o) {
    case GraphOutcome::Controllable: return "CONTROLLABLE";
    case GraphOutcome::NotControllable: return "NOT_CONTROLLABLE";
    case GraphOutcome::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

std::string to_string(ChainOutcome o) {
  switch (o) {
    case ChainOutcome::NotApplicable: return "NOT_APPLICABLE";
    case ChainOutcome::DensityMatrixControllable: return "DENSITY_MATRIX_CONTROLLABLE";
    case ChainOutcome::CompletelyControllable: return "COMPLETELY_CONTROLLABLE";
    case ChainOutcome::InconclusiveSymmetric: return "INCONCLUSIVE_SYMMETRIC";
    case ChainOutcome::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

std::optional<Verdict> parse_verdict(const std::string& s) {
  for (Verdict v : {Verdict::Yes, Verdict::No, Verdict::Unknown})
    if (to_string(v) == s) return v;
  return std::nullopt;
}

std::optional<GraphOutcome> parse_graph_outcome(const std::string& s) {
  for (GraphOutcome o :
       {GraphOutcome::Controllable, GraphOutcome::NotControllable, GraphOutcome::Inconclusive})
    if (to_string(o) == s) return o;
  return std::nullopt;
}

std::optional<ChainOutcome> parse_chain_outcome(const std::string& s) {
  for (ChainOutcome o : {ChainOutcome::NotApplicable, ChainOutcome::DensityMatrixControllable,
                         ChainOutcome::CompletelyControllable, ChainOutcome::InconclusiveSymmetric,
                         ChainOutcome::Inconclusive})
    if (to_string(o) == s) return o;
  return std::nullopt;
}

}  // namespace qctrl
