#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hypsite/graph.hpp"
#include "hypsite/matching.hpp"

namespace hypsite {

// Throughout, an "infinite" cluster means a cluster that touches the
// truncation boundary, and replica r of a run with seed s samples the field
// with seed replica_seed(s, r). Every estimator is a pure function of
// (graph, seed, parameters); the thread count changes only the wall time.

struct RunOptions {
  std::size_t replicas = 1000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  // Sample every replica with U replaced by 1 - U.
  bool inverted = false;
};

struct EstimateReport {
  double value = 0;
  double std_error = 0;
  std::size_t replicas = 0;
  std::uint64_t seed = 0;
  bool degenerate = false;
  nlohmann::json params = nlohmann::json::object();
};

// Mean and sample standard deviation / sqrt(n) of per-replica outcomes.
EstimateReport summarize(const std::vector<double>& outcomes, std::uint64_t seed);

// Monte Carlo P(v is joined to the sphere of radius n by an open path),
// computed by thresholding each replica's field at p.
EstimateReport theta_n(const Adjacency& g, VertexId v, double p, int n, const RunOptions& opts);

// Per-replica bottleneck tau_r = min over paths from v to the sphere of
// radius n of the largest U on the path. For every p, v is joined to the
// sphere in replica r exactly when tau_r <= p.
std::vector<double> connection_thresholds(const Adjacency& g, VertexId v, int n, const RunOptions& opts);

struct PcOptions {
  int n = 8;
  int m = 0;  // inner radius of the ratio; 0 means n / 2
  double level = 0.5;
  double tol = 1e-4;
  std::size_t bootstrap = 200;
};

// Finite-volume p_c surrogate: the p at which theta_n(p) / theta_m(p) crosses
// `level`, located by bisection on the shared-field empirical curves. The
// standard error comes from a seeded bootstrap over replicas. Throws
// TruncationError when the radius-n ball meets the truncation boundary and
// DomainError when the ratio at p = 1 stays below the level.
EstimateReport estimate_pc(const Adjacency& g, VertexId v, const PcOptions& pc, const RunOptions& opts);

struct DecayResult {
  std::vector<int> distances;           // star distances probed
  std::vector<std::size_t> shell_sizes;
  std::vector<EstimateReport> shell;    // P(v <-> u) averaged over the shell
  std::vector<bool> dropped;            // shell estimate zero, left out of the fit
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
  bool degenerate = false;  // fewer than two usable shells or no decay at all
};

// P_p(v <-> u) in the base graph, averaged over u on each shell of constant
// star distance from v, with a least-squares fit of log P against distance.
DecayResult two_point_decay(const MatchingGraph& m, double p, VertexId v, const std::vector<int>& radii,
                            const RunOptions& opts);

struct UniformProbeResult {
  std::vector<VertexId> vertices;
  std::vector<EstimateReport> per_vertex;  // P(B(x,N) joined to the boundary)
  double minimum = 0;
};

UniformProbeResult uniform_perc_probe(const Adjacency& g, double p, int N, const std::vector<VertexId>& sample,
                                      const RunOptions& opts);

// Per-replica bottleneck from B(x,N) to the truncation boundary; the probe at
// p counts replicas with threshold <= p.
std::vector<double> ball_boundary_thresholds(const Adjacency& g, VertexId x, int N, const RunOptions& opts);

struct AnnulusSpec {
  VertexId center = 0;
  int r_inner = 4;
  int r_outer = 9;
  int state = 1;
};

// P(at least two distinct `state`-clusters of the induced ball(center,
// r_outer) each meet both the inner and the outer sphere), by direct labeling
// of each replica at p.
EstimateReport uniqueness_probe(const Adjacency& g, double p, const AnnulusSpec& spec, const RunOptions& opts);

// One sweep per replica adding vertices in increasing U with union-find;
// records the p-intervals [from, to) on which the multi-arm event holds.
struct MultiArmSweep {
  std::vector<std::vector<std::pair<double, double>>> intervals;
  std::uint64_t seed = 0;

  bool holds(std::size_t replica, double p) const;
  EstimateReport probe(double p) const;
};

MultiArmSweep multi_arm_sweep(const Adjacency& g, const AnnulusSpec& spec, const RunOptions& opts);

struct PuOptions {
  AnnulusSpec annulus;
  double epsilon = 0.02;
  double tol = 1e-4;
  double p_min = 0.0;
  double p_max = 1.0;
  double grid_step = 0.01;
  std::size_t bootstrap = 200;
};

// Finite-volume p_u surrogate: scanning down from p_max on a grid, the first
// p where the multi-arm probe exceeds epsilon, refined by bisection. If the
// probe never exceeds epsilon the report is flagged degenerate with value
// p_min.
EstimateReport estimate_pu(const Adjacency& g, const PuOptions& pu, const RunOptions& opts);

struct IsoResult {
  // ratio[s-1] = min |outer vertex boundary of K| / |K| over connected K
  // containing the root with |K| <= s (a running minimum).
  std::vector<double> ratio;
  std::vector<double> exact_size_ratio;  // same, for |K| == s exactly
  std::vector<std::vector<VertexId>> witness;
  std::uint64_t nodes = 0;
};

// Branch-and-bound enumeration of connected vertex sets containing `root`.
// Throws BudgetError after `budget` search nodes and TruncationError when a
// candidate set could reach the truncation boundary.
IsoResult iso_upper(const Adjacency& g, VertexId root, int max_size, std::uint64_t budget = 2'000'000'000ULL);

// (1 - exp(-g^2/2))^-1 exp(-g^2 M / 2) with g = p - 1/(i+1).
double hoeffding_bound(double p, double i_lower, double M);

struct DualityOptions {
  PcOptions pc;
  PuOptions pu;
  std::size_t pc_replicas = 0;  // 0: same as the run's replica count
  bool check_hypotheses = true;
};

struct DualityReport {
  EstimateReport pc_star;
  EstimateReport pu;
  double sum = 0;
  double deviation = 0;
  double sum_std_error = 0;
  nlohmann::json params = nlohmann::json::object();
};

// p_c surrogate on the matching graph plus p_u surrogate on the base graph,
// both around the origin of the same truncation. Refuses (HypothesisError)
// unless the interior degree is at least 7 and the graph minus the unit ball
// around the origin stays connected.
DualityReport duality_check(const MatchingGraph& m, const DualityOptions& d, const RunOptions& opts);

struct SweepResult {
  std::string observable;
  std::vector<double> grid;
  std::vector<EstimateReport> points;
  bool monotone = true;  // whether the observable is an increasing event
  std::size_t monotone_violations = 0;
};

// Reads the shared-field thresholds at every grid point. Increasing
// observables are nondecreasing in p replica by replica.
SweepResult sweep_thresholds(const std::string& observable, const std::vector<double>& thresholds,
                             const std::vector<double>& grid, std::uint64_t seed, bool increasing = true);

SweepResult sweep_multi_arm(const MultiArmSweep& sweep, const std::vector<double>& grid);

}  // namespace hypsite
