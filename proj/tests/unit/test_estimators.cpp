#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>

#include "hypsite/error.hpp"
#include "hypsite/estimators.hpp"
#include "hypsite/generators.hpp"
#include "hypsite/matching.hpp"

using namespace hypsite;

namespace {

// P(root joined to depth n) on T_{k+1}: the root has k children and every
// other vertex k+1. g_j is the chance an open vertex reaches j levels further.
double tree_theta(int k, double p, int n) {
  double g = 1.0;
  for (int j = 1; j < n; ++j) g = 1.0 - std::pow(1.0 - p * g, k + 1);
  return p * (1.0 - std::pow(1.0 - p * g, k));
}

double fraction_at_most(const std::vector<double>& tau, double p) {
  return static_cast<double>(std::count_if(tau.begin(), tau.end(), [&](double t) { return t <= p; })) /
         static_cast<double>(tau.size());
}

// All connected sets of exactly s vertices containing the root, by repeated
// extension with deduplication.
std::vector<double> brute_iso(const RotationGraph& g, VertexId root, std::size_t max_size) {
  std::vector<double> best(max_size + 1, INFINITY);
  std::set<std::vector<VertexId>> level{{root}};
  for (std::size_t s = 1; s <= max_size; ++s) {
    std::set<std::vector<VertexId>> next;
    for (const auto& k : level) {
      std::set<VertexId> boundary;
      for (VertexId x : k)
        for (VertexId u : g.neighbors(x))
          if (!std::binary_search(k.begin(), k.end(), u)) boundary.insert(u);
      best[s] = std::min(best[s], static_cast<double>(boundary.size()) / static_cast<double>(s));
      if (s == max_size) continue;
      for (VertexId u : boundary) {
        auto bigger = k;
        bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), u), u);
        next.insert(std::move(bigger));
      }
    }
    level = std::move(next);
  }
  return best;
}

RunOptions run(std::size_t replicas, std::uint64_t seed, unsigned threads = 1) {
  RunOptions o;
  o.replicas = replicas;
  o.seed = seed;
  o.threads = threads;
  return o;
}

}  // namespace

TEST_CASE("summarize reports mean and standard error") {
  const EstimateReport r = summarize({1, 0, 1, 1}, 3);
  CHECK(r.value == doctest::Approx(0.75));
  CHECK(r.std_error == doctest::Approx(0.5 / 2.0));
  CHECK(r.replicas == 4);
  CHECK(r.seed == 3);
}

TEST_CASE("theta_n equals the empirical distribution of connection thresholds") {
  const RotationGraph g = tiling({3, 7, 6});
  const RunOptions o = run(2000, 5);
  const auto tau = connection_thresholds(g, g.origin(), 4, o);
  REQUIRE(tau.size() == 2000);
  for (double p : {0.1, 0.2, 0.3, 0.45, 0.7}) {
    CHECK(theta_n(g, g.origin(), p, 4, o).value == fraction_at_most(tau, p));
  }
}

TEST_CASE("theta_n on trees agrees with the survival recursion") {
  for (auto [k, depth] : {std::pair{2, 9}, {1, 12}}) {
    const RotationGraph g = tree_Tn(k, depth);
    for (double p : {0.25, 1.0 / 3.0, 0.45, 0.6}) {
      const EstimateReport r = theta_n(g, g.origin(), p, depth - 1, run(20000, 17));
      const double exact = tree_theta(k, p, depth - 1);
      CHECK_MESSAGE(std::abs(r.value - exact) <= 3.0 * r.std_error + 1e-4,
                    "k=" << k << " p=" << p << " mc=" << r.value << " exact=" << exact);
    }
  }
}

TEST_CASE("theta_n is monotone in p on shared fields and independent of threads") {
  const RotationGraph g = tiling({3, 7, 6});
  double last = -1;
  for (double p = 0.05; p < 1.0; p += 0.1) {
    const double v = theta_n(g, g.origin(), p, 4, run(500, 9)).value;
    CHECK(v >= last);
    last = v;
  }
  const auto a = connection_thresholds(g, g.origin(), 4, run(300, 4, 1));
  const auto b = connection_thresholds(g, g.origin(), 4, run(300, 4, 4));
  CHECK(a == b);
}

TEST_CASE("estimate_pc on T_2 is close to 1/2 and deterministic") {
  const RotationGraph g = tree_Tn(1, 12);
  PcOptions pc;
  pc.n = 12;
  const EstimateReport a = estimate_pc(g, g.origin(), pc, run(4000, 3, 1));
  const EstimateReport b = estimate_pc(g, g.origin(), pc, run(4000, 3, 3));
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
  CHECK(a.value > 0.4);
  CHECK(a.value < 0.6);
  CHECK(a.std_error > 0);
}

TEST_CASE("estimate_pc refuses a radius beyond the truncation") {
  const RotationGraph g = tiling({3, 7, 4});
  PcOptions pc;
  pc.n = 6;
  CHECK_THROWS_AS(estimate_pc(g, g.origin(), pc, run(100, 1)), TruncationError);
  pc.n = 3;
  pc.level = 1.5;
  CHECK_THROWS_AS(estimate_pc(g, g.origin(), pc, run(100, 1)), DomainError);
}

TEST_CASE("two-point decay in the subcritical regime") {
  auto g = std::make_shared<const RotationGraph>(tiling({3, 7, 7}));
  const MatchingGraph m(g);
  const DecayResult r = two_point_decay(m, 0.15, g->origin(), {1, 2, 3, 4}, run(20000, 2));
  CHECK_FALSE(r.degenerate);
  CHECK(r.slope < 0);
  CHECK(r.shell_sizes == std::vector<std::size_t>{7, 21, 56, 147});
  for (std::size_t k = 1; k < r.shell.size(); ++k) CHECK(r.shell[k].value <= r.shell[k - 1].value);
  CHECK_THROWS_AS(two_point_decay(m, 0.15, g->origin(), {1, 7}, run(10, 2)), TruncationError);
}

TEST_CASE("uniform probe matches its threshold form") {
  const RotationGraph g = tiling({3, 7, 6});
  const RunOptions o = run(1000, 8);
  const auto tau = ball_boundary_thresholds(g, g.origin(), 1, o);
  for (double p : {0.2, 0.4, 0.6}) {
    const UniformProbeResult r = uniform_perc_probe(g, p, 1, {g.origin()}, o);
    CHECK(r.per_vertex.at(0).value == fraction_at_most(tau, p));
    CHECK(r.minimum == r.per_vertex[0].value);
  }
}

TEST_CASE("uniqueness probe: direct labeling equals the union-find sweep") {
  const RotationGraph g = tiling({3, 7, 7});
  const AnnulusSpec spec{g.origin(), 2, 6, 1};
  const RunOptions o = run(400, 12);
  const MultiArmSweep sweep = multi_arm_sweep(g, spec, o);
  for (double p : {0.2, 0.35, 0.5, 0.65, 0.8}) {
    const EstimateReport direct = uniqueness_probe(g, p, spec, o);
    CHECK(direct.value == sweep.probe(p).value);
  }
}

TEST_CASE("the U to 1-U involution swaps 0-clusters and 1-clusters exactly") {
  const RotationGraph g = tiling({3, 7, 7});
  RunOptions plain = run(300, 21), inverted = run(300, 21);
  inverted.inverted = true;
  const MultiArmSweep ones = multi_arm_sweep(g, {g.origin(), 2, 6, 1}, plain);
  for (double p : {0.3, 0.5, 0.7}) {
    const EstimateReport zeros = uniqueness_probe(g, p, {g.origin(), 2, 6, 0}, inverted);
    CHECK(zeros.value == ones.probe(1.0 - p).value);
  }
}

TEST_CASE("estimate_pu locates the last multi-arm level crossing") {
  const RotationGraph g = tiling({3, 7, 7});
  PuOptions pu;
  pu.annulus = {g.origin(), 2, 6, 1};
  const RunOptions o = run(300, 6);
  const EstimateReport a = estimate_pu(g, pu, o);
  const EstimateReport b = estimate_pu(g, pu, run(300, 6, 3));
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
  REQUIRE_FALSE(a.degenerate);
  const MultiArmSweep sweep = multi_arm_sweep(g, pu.annulus, o);
  CHECK(sweep.probe(a.value - pu.tol).value > pu.epsilon);
  for (double p = a.value + 2 * pu.tol; p <= 1.0; p += 0.01) CHECK(sweep.probe(p).value <= pu.epsilon);
  pu.annulus.state = 0;
  CHECK_THROWS_AS(estimate_pu(g, pu, o), DomainError);
}

TEST_CASE("iso_upper finds the exact minima for small sizes") {
  for (const RotationGraph& g : {tiling({3, 7, 6}), square_lattice(6), tiling({4, 5, 6})}) {
    REQUIRE(*distance_to_boundary(g, g.origin()) >= 6);
    const auto brute = brute_iso(g, g.origin(), 6);
    const IsoResult r = iso_upper(g, g.origin(), 6);
    REQUIRE(r.exact_size_ratio.size() == 6);
    double running = INFINITY;
    for (std::size_t s = 1; s <= 6; ++s) {
      CHECK(r.exact_size_ratio[s - 1] == doctest::Approx(brute[s]));
      running = std::min(running, brute[s]);
      CHECK(r.ratio[s - 1] == doctest::Approx(running));
      CHECK(std::binary_search(r.witness[s - 1].begin(), r.witness[s - 1].end(), g.origin()));
    }
  }
}

TEST_CASE("iso_upper budget and truncation errors") {
  const RotationGraph g = tiling({3, 7, 6});
  CHECK_THROWS_AS(iso_upper(g, g.origin(), 10, 50), BudgetError);
  CHECK_THROWS_AS(iso_upper(tiling({3, 7, 2}), 0, 12), TruncationError);
  CHECK_THROWS_AS(iso_upper(g, g.origin(), 0), DomainError);
}

TEST_CASE("hoeffding bound matches independent arithmetic") {
  CHECK(hoeffding_bound(0.9, 1.0, 10) == doctest::Approx(5.8442717404771901649).epsilon(1e-12));
  CHECK(hoeffding_bound(0.6, 2.0, 50) == doctest::Approx(4.8385069231413389341).epsilon(1e-12));
  CHECK(hoeffding_bound(1.0, 0.5, 3) == doctest::Approx(15.663830605776321447).epsilon(1e-12));
  CHECK_THROWS_AS(hoeffding_bound(0.4, 1.0, 10), DomainError);
  CHECK_THROWS_AS(hoeffding_bound(0.9, 0.0, 10), DomainError);
}

TEST_CASE("sweeps share one field per replica") {
  const RotationGraph g = tiling({3, 7, 6});
  const RunOptions o = run(500, 13);
  const auto tau = connection_thresholds(g, g.origin(), 3, o);
  const std::vector<double> grid{0.1, 0.3, 0.5, 0.7};
  const SweepResult s = sweep_thresholds("theta", tau, grid, 13);
  CHECK(s.monotone);
  CHECK(s.monotone_violations == 0);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(s.points[k].value == theta_n(g, g.origin(), grid[k], 3, o).value);
  }
  const SweepResult arms = sweep_multi_arm(multi_arm_sweep(g, {g.origin(), 1, 5, 1}, o), grid);
  CHECK_FALSE(arms.monotone);
  CHECK(arms.points.size() == grid.size());
}

TEST_CASE("duality check enforces its hypotheses") {
  auto sq = std::make_shared<const RotationGraph>(tiling({4, 5, 5}));
  CHECK_THROWS_AS(duality_check(MatchingGraph(sq), DualityOptions{}, run(10, 1)), HypothesisError);
}

TEST_CASE("duality check on a small half-plane graph") {
  auto g = std::make_shared<const RotationGraph>(half_plane({3, 12, 5}));
  const MatchingGraph m(g);
  DualityOptions d;
  d.pc.n = 3;
  d.pu.annulus = {g->origin(), 2, 4, 1};
  const DualityReport r = duality_check(m, d, run(100, 4));
  CHECK(r.sum == doctest::Approx(r.pc_star.value + r.pu.value));
  CHECK(r.deviation == doctest::Approx(std::abs(r.sum - 1.0)));
  CHECK(r.pc_star.value > 0);
  CHECK(r.pu.value <= 1);
}
