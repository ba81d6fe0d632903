// criteria.hpp: fast controllability criteria (regularity, transition graph,
// nearest-neighbour chains), reducibility diagnostics, and the analysis that
// merges them with the Lie-algebraic classification.

#pragma once

#include "qctrl/lieclosure.hpp"
#include "qctrl/matrixcore.hpp"
#include "qctrl/system.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qctrl {

using IndexPair = std::pair<int, int>;  // 1-based (i, j), i < j

struct RegularityReport {
  bool regular = false;
  bool strongly_regular = false;
  std::vector<IndexPair> degenerate_level_pairs;
  std::vector<std::pair<IndexPair, IndexPair>> degenerate_gap_pairs;
  std::vector<double> eigenvalues;  // ascending

  friend bool operator==(const RegularityReport&, const RegularityReport&) = default;
};

RegularityReport check_regularity(const Matrix& h0, const Tolerances& tol = {});

// Vertices are the H0 basis states 1..N; an edge joins m and n when the
// coupling ⟨m|H1|n⟩ exceeds the zero tolerance.
struct TransitionGraph {
  int vertex_count = 0;
  std::vector<IndexPair> edges;  // sorted, m < n
  bool basis_unique = false;     // false when H0 is degenerate

  friend bool operator==(const TransitionGraph&, const TransitionGraph&) = default;
};

TransitionGraph build_transition_graph(const Matrix& h0, const Matrix& h1,
                                       const Tolerances& tol = {});

bool is_connected(const TransitionGraph& graph);

enum class GraphOutcome { Controllable, NotControllable, Inconclusive };

struct GraphCriterion {
  GraphOutcome outcome = GraphOutcome::Inconclusive;
  TransitionGraph graph;
  bool connected = false;
};

// Strong regularity plus a connected graph is sufficient for controllability.
// A disconnected graph over a regular H0 exhibits an invariant block.
GraphCriterion graph_criterion(const Matrix& h0, const Matrix& h1, const Tolerances& tol = {});

// H0 = diag(E), H1 nearest-neighbour with couplings d.
struct ChainSpec {
  std::vector<double> energies;
  std::vector<double> dipoles;

  void validate() const;  // |dipoles| == |energies| - 1
  // ω_n = E_{n+1} − E_n
  [[nodiscard]] std::vector<double> gaps() const;
  // v_n = 2 d_n² − d_{n−1}² − d_{n+1}², with d_0 = d_N = 0
  [[nodiscard]] std::vector<double> dipole_contrasts() const;

  friend bool operator==(const ChainSpec&, const ChainSpec&) = default;
};

enum class ChainOutcome {
  NotApplicable,              // some coupling vanishes
  DensityMatrixControllable,
  CompletelyControllable,     // additionally Tr(H0) != 0
  InconclusiveSymmetric,      // even N with mirror-symmetric couplings
  Inconclusive,               // neither frequency condition holds
};

struct ChainResult {
  ChainOutcome outcome = ChainOutcome::Inconclusive;
  int condition = 0;  // 1: unique gap, 2: equal gaps with a unique contrast
  int pivot = 0;      // 1-based p of the satisfied condition
  std::string note;

  friend bool operator==(const ChainResult&, const ChainResult&) = default;
};

// Frequencies are compared by magnitude |ω_n|, so a reversed transition
// (E = (0, 1, 0)) counts as resonant with its neighbour.
ChainResult chain_criterion(const ChainSpec& spec, const Tolerances& tol = {});

// Reads a ChainSpec off (h0, h1) when h1 is tridiagonal with zero diagonal in
// the H0 basis (the supplied basis when h0 is diagonal, else its eigenbasis).
// Couplings are taken as |⟨n|H1|n+1⟩|; a diagonal phase gauge removes the rest.
std::optional<ChainSpec> detect_chain(const Matrix& h0, const Matrix& h1,
                                      const Tolerances& tol = {});

// Dimension of {M : [M, H] = 0 for every H}. 1 iff the action is irreducible.
std::size_t commutant_dimension(std::span<const Matrix> hamiltonians, const Tolerances& tol = {});

// Orthonormal basis of H0 eigenvectors annihilated by every control.
std::vector<Vector> detect_dark_states(const Matrix& h0, std::span<const Matrix> controls,
                                       const Tolerances& tol = {});

enum class Verdict { Yes, No, Unknown };

struct Verdicts {
  Verdict complete = Verdict::Unknown;
  Verdict density_matrix = Verdict::Unknown;
  Verdict pure_state = Verdict::Unknown;
};

// u(N): all yes; su(N): density-matrix yes; sp / sp+u(1): pure-state only.
Verdicts verdicts_for(AlgebraTag tag);

struct Evidence {
  std::string criterion;
  std::string outcome;
  std::string citation;

  friend bool operator==(const Evidence&, const Evidence&) = default;
};

struct ControllabilityReport {
  std::size_t lie_dimension = 0;
  AlgebraClass algebra;
  Verdict complete = Verdict::Unknown;
  Verdict density_matrix = Verdict::Unknown;
  Verdict pure_state = Verdict::Unknown;
  RegularityReport regularity;
  std::optional<GraphCriterion> graph;  // single-control systems only
  std::optional<ChainSpec> chain_spec;  // when the system has chain shape
  std::optional<ChainResult> chain;
  std::vector<Vector> dark_states;
  std::size_t commutant_dimension = 0;
  std::vector<Evidence> evidence;
};

// Throws ValidationError / DimensionError for invalid systems and
// InconsistencyError when a fast criterion contradicts the Lie verdict.
ControllabilityReport analyze(const HamiltonianSystem& system, const Tolerances& tol);
inline ControllabilityReport analyze(const HamiltonianSystem& system) {
  return analyze(system, system.tol);
}

std::string to_string(Verdict v);
std::string to_string(GraphOutcome o);
std::string to_string(ChainOutcome o);
std::optional<Verdict> parse_verdict(const std::string& s);
std::optional<GraphOutcome> parse_graph_outcome(const std::string& s);
std::optional<ChainOutcome> parse_chain_outcome(const std::string& s);

}  // namespace qctrl
