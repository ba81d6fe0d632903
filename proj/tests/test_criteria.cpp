#include "qctrl/criteria.hpp"
#include "qctrl/random.hpp"
#include "qctrl/system.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace qctrl;
using namespace qctrl::test;

namespace {

HamiltonianSystem chain(std::vector<double> e, std::vector<double> d) {
  return build_chain(e, d);
}

HamiltonianSystem conjugated(const HamiltonianSystem& s, const Matrix& v) {
  HamiltonianSystem out = s;
  auto rotate = [&](const Matrix& m) {
    Matrix r = v * m * v.adjoint();
    return Matrix(0.5 * (r + r.adjoint()));
  };
  out.h0 = rotate(s.h0);
  for (Matrix& c : out.controls) c = rotate(c);
  return out;
}

bool monotone(const ControllabilityReport& r) {
  if (r.complete == Verdict::Yes && r.density_matrix != Verdict::Yes) return false;
  if (r.density_matrix == Verdict::Yes && r.pure_state != Verdict::Yes) return false;
  return true;
}

void check_dark_states(const HamiltonianSystem& s, const std::vector<Vector>& dark) {
  for (const Vector& v : dark) {
    CHECK(std::abs(v.norm() - 1.0) < 1e-12);
    for (const Matrix& h : s.controls) CHECK((h * v).norm() < 10.0 * s.tol.zero);
    const Complex energy = v.dot(s.h0 * v);
    CHECK((s.h0 * v - energy * v).norm() < s.tol.degeneracy);
  }
  for (std::size_t a = 0; a < dark.size(); ++a)
    for (std::size_t b = a + 1; b < dark.size(); ++b) CHECK(std::abs(dark[a].dot(dark[b])) < 1e-10);
}

}  // namespace

TEST_CASE("regularity examples") {
  const RegularityReport strong = check_regularity(diag({0.0, 1.0, 2.5}));
  CHECK(strong.regular);
  CHECK(strong.strongly_regular);
  CHECK(strong.eigenvalues == std::vector<double>{0.0, 1.0, 2.5});

  const RegularityReport equal_gaps = check_regularity(diag({0.0, 1.0, 2.0}));
  CHECK(equal_gaps.regular);
  CHECK_FALSE(equal_gaps.strongly_regular);
  REQUIRE(equal_gaps.degenerate_gap_pairs.size() == 1);
  CHECK(equal_gaps.degenerate_gap_pairs[0] ==
        std::pair<IndexPair, IndexPair>{IndexPair{1, 2}, IndexPair{2, 3}});

  const RegularityReport lambda = check_regularity(build_lambda(0.0, 1.0, 1.0).h0);
  CHECK_FALSE(lambda.regular);
  CHECK_FALSE(lambda.strongly_regular);
  CHECK(lambda.degenerate_level_pairs == std::vector<IndexPair>{{1, 2}});

  Matrix bad = diag({0.0, 1.0});
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(check_regularity(bad), ValidationError);
}

TEST_CASE("regularity report invariants on random spectra") {
  Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index n = 2 + trial % 5;
    Matrix h = random_hermitian(n, rng);
    if (trial % 4 == 0) {  // force a degenerate pair
      const Matrix u = random_unitary(n, rng);
      Matrix d = Matrix::Zero(n, n);
      for (Eigen::Index k = 0; k < n; ++k) d(k, k) = static_cast<double>(k / 2);
      h = u * d * u.adjoint();
      h = 0.5 * (h + h.adjoint());
    }
    const RegularityReport r = check_regularity(h);
    CHECK(r.regular == r.degenerate_level_pairs.empty());
    CHECK(r.strongly_regular ==
          (r.degenerate_level_pairs.empty() && r.degenerate_gap_pairs.empty()));
    if (r.strongly_regular) CHECK(r.regular);
    CHECK(std::is_sorted(r.eigenvalues.begin(), r.eigenvalues.end()));
  }
}

TEST_CASE("transition graph of the lambda system") {
  const HamiltonianSystem s = build_lambda(0.0, 1.0, 1.0);
  const TransitionGraph g = build_transition_graph(s.h0, s.controls[0]);
  CHECK(g.vertex_count == 3);
  CHECK(g.edges == std::vector<IndexPair>{{1, 2}, {2, 3}});
  CHECK_FALSE(g.basis_unique);
  CHECK(is_connected(g));

  // (ψ+, ψ−, |2⟩) with ψ± = (|1⟩ ± |3⟩)/√2
  const double r = 1.0 / std::sqrt(2.0);
  Matrix w(3, 3);
  w << r, r, 0.0,  //
      0.0, 0.0, 1.0,  //
      r, -r, 0.0;
  const Matrix h0 = w.adjoint() * s.h0 * w;
  const Matrix h1 = w.adjoint() * s.controls[0] * w;
  const TransitionGraph rotated = build_transition_graph(h0, h1);
  CHECK(rotated.edges == std::vector<IndexPair>{{1, 3}});
  CHECK_FALSE(is_connected(rotated));
}

TEST_CASE("transition graph edge cases") {
  const TransitionGraph none = build_transition_graph(diag({0.0, 1.0, 3.0}), diag({1.0, 2.0, 3.0}));
  CHECK(none.edges.empty());
  CHECK(none.basis_unique);
  CHECK_FALSE(is_connected(none));

  CHECK(is_connected(TransitionGraph{3, {{1, 2}, {2, 3}}, true}));
  CHECK_FALSE(is_connected(TransitionGraph{3, {{1, 3}}, true}));
  CHECK(is_connected(TransitionGraph{1, {}, true}));

  // non-diagonal H0: edges are read in its eigenbasis
  Rng rng(1);
  const Matrix v = random_unitary(3, rng);
  const HamiltonianSystem s = conjugated(chain({0, 1, 2.5}, {1, 1}), v);
  const TransitionGraph g = build_transition_graph(s.h0, s.controls[0]);
  CHECK(g.edges == std::vector<IndexPair>{{1, 2}, {2, 3}});
  CHECK(g.basis_unique);
}

TEST_CASE("graph criterion examples") {
  const HamiltonianSystem s = chain({0, 1, 2.5}, {1, 1});
  const GraphCriterion c = graph_criterion(s.h0, s.controls[0]);
  CHECK(c.outcome == GraphOutcome::Controllable);
  CHECK(c.connected);

  const HamiltonianSystem lambda = build_lambda(0.0, 1.0, 1.0);
  CHECK(graph_criterion(lambda.h0, lambda.controls[0]).outcome == GraphOutcome::Inconclusive);

  Matrix block = Matrix::Zero(3, 3);
  block(0, 1) = block(1, 0) = 1.0;
  CHECK(graph_criterion(diag({0.0, 1.0, 3.0}), block).outcome == GraphOutcome::NotControllable);

  // regular but not strongly regular, connected: sufficient condition unmet
  const HamiltonianSystem eq = chain({0, 1, 2}, {1, 2});
  CHECK(graph_criterion(eq.h0, eq.controls[0]).outcome == GraphOutcome::Inconclusive);
}

TEST_CASE("ChainSpec derived quantities") {
  const ChainSpec spec{{0, 1, 2}, {1, 2}};
  CHECK(spec.gaps() == std::vector<double>{1, 1});
  CHECK(spec.dipole_contrasts() == std::vector<double>{-2, 7});

  const ChainSpec uniform{{0, 1, 2, 3}, {1, 1, 1}};
  CHECK(uniform.dipole_contrasts() == std::vector<double>{1, 0, 1});

  CHECK_THROWS_AS((ChainSpec{{0, 1, 2}, {1}}.validate()), DimensionError);
  CHECK_THROWS_AS(chain_criterion(ChainSpec{{0, 1, 2}, {1}}), DimensionError);
}

TEST_CASE("chain criterion examples") {
  const ChainResult a = chain_criterion({{0, 1, 2.5}, {1, 1}});
  CHECK(a.outcome == ChainOutcome::CompletelyControllable);
  CHECK(a.condition == 1);

  const ChainResult b = chain_criterion({{0, 1, 2}, {1, 2}});
  CHECK(b.outcome == ChainOutcome::CompletelyControllable);
  CHECK(b.condition == 2);

  const ChainResult traceless = chain_criterion({{-1, 0, 1}, {1, 2}});
  CHECK(traceless.outcome == ChainOutcome::DensityMatrixControllable);

  const ChainResult sym = chain_criterion({{0, 1, 2, 3}, {1, 1, 1}});
  CHECK(sym.outcome == ChainOutcome::InconclusiveSymmetric);
  CHECK(sym.condition == 2);
  CHECK(sym.pivot == 2);

  // mirror-symmetric gaps leave only the middle transition unique
  CHECK(chain_criterion({{0, 1, 3, 4}, {1, 1, 1}}).outcome == ChainOutcome::InconclusiveSymmetric);
  CHECK(chain_criterion({{0, 1, 3, 4}, {1, 2, 3}}).outcome ==
        ChainOutcome::CompletelyControllable);
  const ChainResult off_middle = chain_criterion({{0, 1, 3, 4.5}, {1, 1, 1}});
  CHECK(off_middle.outcome == ChainOutcome::CompletelyControllable);
  CHECK(off_middle.pivot != 2);
  CHECK(analyze(chain({0, 1, 3, 4}, {1, 2, 3})).complete == Verdict::Yes);
  CHECK(analyze(chain({0, 1, 3, 4.5}, {1, 1, 1})).complete == Verdict::Yes);
  CHECK(analyze(chain({0, 1, 3, 4}, {1, 1, 1})).density_matrix == Verdict::No);

  CHECK(chain_criterion({{0, 1, 2}, {1, 0}}).outcome == ChainOutcome::NotApplicable);
  CHECK(chain_criterion({{0, 1, 2}, {1, 1}}).outcome == ChainOutcome::Inconclusive);
  // odd N with equal gaps and uniform couplings: v = (1, 0, 0, 1), no unique contrast
  CHECK(chain_criterion({{0, 1, 2, 3, 4}, {1, 1, 1, 1}}).outcome == ChainOutcome::Inconclusive);
  // reversed transition resonates with its neighbour
  CHECK(chain_criterion({{0, 1, 0}, {1, 1}}).outcome == ChainOutcome::Inconclusive);
}

TEST_CASE("chain detection") {
  const HamiltonianSystem s = chain({0, 1, 2.5}, {1, -2});
  const auto spec = detect_chain(s.h0, s.controls[0]);
  REQUIRE(spec.has_value());
  CHECK(spec->energies == std::vector<double>{0, 1, 2.5});
  CHECK(spec->dipoles == std::vector<double>{1, 2});

  Matrix h1 = s.controls[0];
  h1(0, 2) = h1(2, 0) = 0.5;
  CHECK_FALSE(detect_chain(s.h0, h1).has_value());
}

TEST_CASE("commutant dimension examples") {
  const HamiltonianSystem lambda = build_lambda(0.0, 1.0, 1.0);
  CHECK(commutant_dimension(lambda.hamiltonians()) == 2);
  CHECK(commutant_dimension(chain({0, 1, 2.5}, {1, 1}).hamiltonians()) == 1);
  const std::vector<Matrix> idle{diag({0.0, 1.0, 3.0}), Matrix::Zero(3, 3)};
  CHECK(commutant_dimension(idle) == 3);
}

TEST_CASE("dark state examples") {
  const HamiltonianSystem lambda = build_lambda(0.0, 1.0, 1.0);
  const std::vector<Vector> dark = detect_dark_states(lambda.h0, lambda.controls);
  REQUIRE(dark.size() == 1);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(dark[0](0) - r) < 1e-8);
  CHECK(std::abs(dark[0](1)) < 1e-8);
  CHECK(std::abs(dark[0](2) + r) < 1e-8);
  check_dark_states(lambda, dark);

  const HamiltonianSystem c = chain({0, 1, 2.5}, {1, 1});
  CHECK(detect_dark_states(c.h0, c.controls).empty());

  const std::vector<Matrix> zero{Matrix::Zero(3, 3)};
  CHECK(detect_dark_states(diag({0.0, 1.0, 3.0}), zero).size() == 3);
}

TEST_CASE("verdict mapping") {
  auto v = verdicts_for(AlgebraTag::U);
  CHECK((v.complete == Verdict::Yes && v.density_matrix == Verdict::Yes && v.pure_state == Verdict::Yes));
  v = verdicts_for(AlgebraTag::SU);
  CHECK((v.complete == Verdict::No && v.density_matrix == Verdict::Yes && v.pure_state == Verdict::Yes));
  for (AlgebraTag t : {AlgebraTag::SP, AlgebraTag::SPxU1}) {
    v = verdicts_for(t);
    CHECK((v.complete == Verdict::No && v.density_matrix == Verdict::No && v.pure_state == Verdict::Yes));
  }
  for (AlgebraTag t : {AlgebraTag::SO, AlgebraTag::Other}) {
    v = verdicts_for(t);
    CHECK((v.complete == Verdict::No && v.density_matrix == Verdict::No && v.pure_state == Verdict::No));
  }
  for (Verdict x : {Verdict::Yes, Verdict::No, Verdict::Unknown}) CHECK(parse_verdict(to_string(x)) == x);
  for (GraphOutcome x : {GraphOutcome::Controllable, GraphOutcome::NotControllable, GraphOutcome::Inconclusive})
    CHECK(parse_graph_outcome(to_string(x)) == x);
  for (ChainOutcome x : {ChainOutcome::NotApplicable, ChainOutcome::DensityMatrixControllable,
                         ChainOutcome::CompletelyControllable, ChainOutcome::InconclusiveSymmetric,
                         ChainOutcome::Inconclusive})
    CHECK(parse_chain_outcome(to_string(x)) == x);
}

TEST_CASE("analyze: lambda system") {
  const HamiltonianSystem s = build_lambda(0.0, 1.0, 1.0);
  const ControllabilityReport r = analyze(s);
  CHECK_FALSE(r.regularity.regular);
  CHECK(r.pure_state == Verdict::No);
  CHECK(r.commutant_dimension == 2);
  CHECK(r.dark_states.size() == 1);
  CHECK(r.lie_dimension == oracle::kLambda011);
  CHECK(r.algebra.tag == AlgebraTag::Other);
  REQUIRE(r.graph.has_value());
  CHECK(r.graph->outcome == GraphOutcome::Inconclusive);
  CHECK(monotone(r));
}

TEST_CASE("analyze: strongly regular chain") {
  const ControllabilityReport r = analyze(chain({0, 1, 2.5}, {1, 1}));
  CHECK(r.algebra.tag == AlgebraTag::U);
  CHECK(r.lie_dimension == oracle::kChain0_1_25);
  CHECK(r.complete == Verdict::Yes);
  CHECK(r.density_matrix == Verdict::Yes);
  CHECK(r.pure_state == Verdict::Yes);
  CHECK(r.commutant_dimension == 1);
  CHECK(r.dark_states.empty());
  REQUIRE(r.chain.has_value());
  CHECK(r.chain->outcome == ChainOutcome::CompletelyControllable);
  CHECK_FALSE(r.evidence.empty());
}

TEST_CASE("analyze: uniform even chain") {
  const ControllabilityReport r = analyze(chain({0, 1, 2, 3}, {1, 1, 1}));
  CHECK(r.algebra.tag == AlgebraTag::SPxU1);
  CHECK(r.algebra.traceless_tag == AlgebraTag::SP);
  CHECK(r.pure_state == Verdict::Yes);
  CHECK(r.density_matrix == Verdict::No);
  REQUIRE(r.chain.has_value());
  CHECK(r.chain->outcome == ChainOutcome::InconclusiveSymmetric);
}

TEST_CASE("analyze: idle control") {
  const std::vector<double> e{0, 1, 3}, d{0, 0};
  const ControllabilityReport r = analyze(build_chain(e, d));
  CHECK(r.commutant_dimension == 3);
  CHECK(r.dark_states.size() == 3);
  CHECK(r.pure_state == Verdict::No);
  REQUIRE(r.graph.has_value());
  CHECK(r.graph->outcome == GraphOutcome::NotControllable);
  REQUIRE(r.chain.has_value());
  CHECK(r.chain->outcome == ChainOutcome::NotApplicable);
}

TEST_CASE("analyze: multiple controls skip the single-control criteria") {
  const HamiltonianSystem s = random_system(3, 2, 5);
  const ControllabilityReport r = analyze(s);
  CHECK_FALSE(r.graph.has_value());
  CHECK_FALSE(r.chain.has_value());
  CHECK(r.algebra.tag == AlgebraTag::U);
}

TEST_CASE("property: strongly regular connected systems are density-matrix controllable") {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 4);
    const HamiltonianSystem s = random_system(n, 1, seed, {true, true, true});
    CAPTURE(seed);
    const ControllabilityReport r = analyze(s);
    REQUIRE(r.graph.has_value());
    CHECK(r.graph->outcome == GraphOutcome::Controllable);
    CHECK(r.density_matrix == Verdict::Yes);
    CHECK(monotone(r));
  }
}

TEST_CASE("property: chains with a unique transition frequency") {
  Rng rng(31337);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
    std::vector<double> e(n), d(n - 1);
    for (double& x : e) x = rng.uniform(-1.0, 1.0);
    std::sort(e.begin(), e.end());
    for (double& x : d) x = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.2, 1.0);
    CAPTURE(trial);

    const ChainResult c = chain_criterion({e, d});
    REQUIRE(c.condition == 1);
    const ControllabilityReport r = analyze(build_chain(e, d));
    CHECK(r.density_matrix == Verdict::Yes);
    CHECK(r.complete == Verdict::Yes);  // trace is nonzero with probability one

    double mean = 0.0;
    for (double x : e) mean += x / static_cast<double>(n);
    for (double& x : e) x -= mean;
    const ControllabilityReport t = analyze(build_chain(e, d));
    CHECK(t.density_matrix == Verdict::Yes);
    CHECK(t.complete == Verdict::No);
    CHECK(t.algebra.tag == AlgebraTag::SU);
  }
}

TEST_CASE("property: reducibility and dark-state soundness") {
  std::vector<HamiltonianSystem> systems{build_lambda(0.0, 1.0, 1.0), build_lambda(0.0, 2.0, 0.5),
                                         chain({0, 1, 3}, {0, 1}), chain({0, 1, 2.5}, {1, 1})};
  Matrix blocks = Matrix::Zero(4, 4);
  blocks(0, 1) = blocks(1, 0) = 1.0;
  blocks(2, 3) = blocks(3, 2) = 0.5;
  systems.push_back({diag({0.0, 1.0, 3.0, 7.0}), {blocks}, {}, {}});
  for (std::uint64_t seed = 1; seed <= 10; ++seed)
    systems.push_back(random_system(2 + static_cast<Eigen::Index>(seed % 4), 1, seed));

  for (const HamiltonianSystem& s : systems) {
    const ControllabilityReport r = analyze(s);
    if (r.commutant_dimension > 1) {
      CHECK(r.density_matrix == Verdict::No);
      CHECK(r.algebra.tag != AlgebraTag::U);
      CHECK(r.algebra.tag != AlgebraTag::SU);
    }
    check_dark_states(s, r.dark_states);
    CHECK(monotone(r));
  }
}

TEST_CASE("property: verdicts are basis independent") {
  std::vector<HamiltonianSystem> systems{build_lambda(0.0, 1.0, 1.0), chain({0, 1, 2.5}, {1, 1}),
                                         chain({0, 1, 2}, {1, 2}), chain({0, 1, 2, 3}, {1, 1, 1}),
                                         chain({0, 1, 2, 3, 4}, {1, 1, 1, 1})};
  for (std::uint64_t seed = 1; seed <= 4; ++seed)
    systems.push_back(random_system(3, 1, seed, {false, false, true}));
  Rng rng(12);
  for (const HamiltonianSystem& s : systems) {
    const ControllabilityReport a = analyze(s);
    const ControllabilityReport b = analyze(conjugated(s, random_unitary(s.dim(), rng)));
    CHECK(a.lie_dimension == b.lie_dimension);
    CHECK(a.algebra.tag == b.algebra.tag);
    CHECK(a.complete == b.complete);
    CHECK(a.density_matrix == b.density_matrix);
    CHECK(a.pure_state == b.pure_state);
    CHECK(a.commutant_dimension == b.commutant_dimension);
    CHECK(a.dark_states.size() == b.dark_states.size());
  }
}

TEST_CASE("analyze rejects invalid systems") {
  HamiltonianSystem s = build_lambda(0.0, 1.0, 1.0);
  s.controls[0](0, 1) = 2.0;
  CHECK_THROWS_AS(analyze(s), ValidationError);
  s = build_lambda(0.0, 1.0, 1.0);
  s.controls[0] = Matrix::Zero(2, 2);
  CHECK_THROWS_AS(analyze(s), DimensionError);
}
