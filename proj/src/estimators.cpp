#include "hypsite/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>

#include "hypsite/error.hpp"
#include "hypsite/parallel.hpp"
#include "hypsite/percolation.hpp"
#include "hypsite/rng.hpp"

namespace hypsite {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint32_t kAbsent = 0xffffffffu;
constexpr std::uint64_t kBootstrapSalt = 0x6a09e667f3bcc909ULL;

// Membership marks that are cleared in O(1) by bumping a generation counter.
class StampSet {
 public:
  void begin(std::size_t n) {
    if (stamp_.size() < n) stamp_.resize(n, 0);
    if (++generation_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      generation_ = 1;
    }
  }
  bool contains(std::size_t i) const { return stamp_[i] == generation_; }
  void insert(std::size_t i) { stamp_[i] = generation_; }

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
};

UniformField replica_field(const Adjacency& g, const RunOptions& opts, std::size_t r) {
  return UniformField(replica_seed(opts.seed, r), g.size(), opts.inverted);
}

void require_replicas(const RunOptions& opts) {
  if (opts.replicas == 0) throw DomainError("at least one replica is required");
}

void require_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0,1]");
}

// The induced ball with local indices 0..size-1 in BFS order.
struct LocalBall {
  std::vector<VertexId> global;
  std::vector<int> dist;
  std::vector<std::uint32_t> offsets;
  std::vector<std::uint32_t> neighbors;

  std::size_t size() const { return global.size(); }
};

// `interior_below`: every vertex closer than this to the center must be off
// the truncation boundary, so that its neighborhood is complete.
LocalBall local_ball(const Adjacency& g, VertexId center, int radius, int interior_below, const char* what) {
  if (center >= g.size()) throw DomainError(std::string(what) + ": center out of range");
  if (radius < 0) throw DomainError(std::string(what) + ": radius must be nonnegative");
  BallView view = ball(g, center, radius);
  for (std::size_t i = 0; i < view.members.size(); ++i) {
    if (view.distances[i] < interior_below && g.is_boundary(view.members[i])) {
      throw TruncationError(std::string(what) + ": radius " + std::to_string(radius) +
                            " reaches the truncation boundary at distance " + std::to_string(view.distances[i]));
    }
  }
  if (view.distances.back() < radius) {
    throw TruncationError(std::string(what) + ": the graph ends before distance " + std::to_string(radius));
  }
  LocalBall b;
  b.global = std::move(view.members);
  b.dist = std::move(view.distances);
  std::vector<std::uint32_t> local_of(g.size(), kAbsent);
  for (std::size_t i = 0; i < b.global.size(); ++i) local_of[b.global[i]] = static_cast<std::uint32_t>(i);
  b.offsets.assign(1, 0);
  for (std::size_t i = 0; i < b.global.size(); ++i) {
    g.for_each_neighbor(b.global[i], [&](VertexId u) {
      if (local_of[u] != kAbsent) b.neighbors.push_back(local_of[u]);
    });
    b.offsets.push_back(static_cast<std::uint32_t>(b.neighbors.size()));
  }
  return b;
}

using HeapEntry = std::pair<double, std::uint32_t>;
using MinHeap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>>;

// Minimax search from local vertex 0: returns (tau_m, tau_n), the smallest
// possible largest U on a path from the center to distance m and n. Ties in
// the key go to the farther vertex so a plateau is crossed depth first.
std::pair<double, double> sphere_bottlenecks(const LocalBall& b, const UniformField& f, int m, int n) {
  struct Entry {
    double key;
    int depth;
    std::uint32_t i;
    bool operator>(const Entry& o) const {
      if (key != o.key) return key > o.key;
      if (depth != o.depth) return depth < o.depth;
      return i > o.i;
    }
  };
  thread_local StampSet done;
  done.begin(b.size());
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  heap.push({f(b.global[0]), 0, 0});
  double tau_m = kInf;
  while (!heap.empty()) {
    const auto [key, depth, i] = heap.top();
    heap.pop();
    if (done.contains(i)) continue;
    done.insert(i);
    if (depth >= m && tau_m == kInf) tau_m = key;
    if (depth >= n) return {tau_m, key};
    for (auto e = b.offsets[i]; e < b.offsets[i + 1]; ++e) {
      const std::uint32_t j = b.neighbors[e];
      if (!done.contains(j)) heap.push({std::max(key, f(b.global[j])), b.dist[j], j});
    }
  }
  throw TruncationError("no path reaches the requested sphere");
}

std::size_t count_at_most(const std::vector<double>& sorted, double p) {
  return static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), p) - sorted.begin());
}

double ratio_crossing(const std::vector<double>& tau_n, const std::vector<double>& tau_m, double level, double tol) {
  auto ratio = [&](double p) {
    const auto fm = count_at_most(tau_m, p);
    return fm == 0 ? 0.0 : static_cast<double>(count_at_most(tau_n, p)) / static_cast<double>(fm);
  };
  if (ratio(1.0) < level) throw DomainError("theta ratio never reaches the crossing level");
  double lo = 0.0, hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (ratio(mid) >= level ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

std::size_t bootstrap_index(std::uint64_t seed, std::size_t b, std::size_t i, std::size_t n) {
  const double u = hashed_uniform(seed ^ kBootstrapSalt, b * n + i);
  return std::min(n - 1, static_cast<std::size_t>(u * static_cast<double>(n)));
}

double sample_std(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  double mean = 0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

struct UnionFind {
  std::vector<std::uint32_t> parent;
  std::vector<std::uint32_t> size;
  std::vector<std::uint8_t> flags;

  void reset(std::size_t n) {
    parent.resize(n);
    size.assign(n, 1);
    flags.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  // Returns the surviving root.
  std::uint32_t unite(std::uint32_t a, std::uint32_t b) {
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
    flags[a] |= flags[b];
    return a;
  }
};

constexpr std::uint8_t kMeetsInner = 1, kMeetsOuter = 2, kMeetsBoth = 3;

std::uint8_t annulus_flags(const LocalBall& b, const AnnulusSpec& spec, std::uint32_t i) {
  std::uint8_t f = 0;
  if (b.dist[i] == spec.r_inner) f |= kMeetsInner;
  if (b.dist[i] == spec.r_outer) f |= kMeetsOuter;
  return f;
}

LocalBall annulus_ball(const Adjacency& g, const AnnulusSpec& spec) {
  if (spec.r_inner < 0 || spec.r_inner >= spec.r_outer) throw DomainError("annulus needs 0 <= r_inner < r_outer");
  if (spec.state != 0 && spec.state != 1) throw DomainError("cluster state must be 0 or 1");
  return local_ball(g, spec.center, spec.r_outer, spec.r_outer, "multi-arm probe");
}

bool multi_arm_at(const LocalBall& b, const AnnulusSpec& spec, const UniformField& f, double p) {
  thread_local std::vector<std::uint8_t> active;
  thread_local StampSet seen;
  thread_local std::vector<std::uint32_t> queue;
  active.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) active[i] = (f(b.global[i]) <= p) == (spec.state == 1);
  seen.begin(b.size());
  std::size_t crossing = 0;
  for (std::uint32_t s = 0; s < b.size(); ++s) {
    if (b.dist[s] != spec.r_inner || !active[s] || seen.contains(s)) continue;
    seen.insert(s);
    queue.assign(1, s);
    bool outer = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::uint32_t i = queue[head];
      outer = outer || b.dist[i] == spec.r_outer;
      for (auto e = b.offsets[i]; e < b.offsets[i + 1]; ++e) {
        const std::uint32_t j = b.neighbors[e];
        if (active[j] && !seen.contains(j)) {
          seen.insert(j);
          queue.push_back(j);
        }
      }
    }
    if (outer && ++crossing >= 2) return true;
  }
  return false;
}

std::vector<std::pair<double, double>> multi_arm_intervals(const LocalBall& b, const AnnulusSpec& spec,
                                                           const UniformField& f) {
  thread_local std::vector<HeapEntry> order;
  thread_local UnionFind uf;
  thread_local std::vector<std::uint8_t> active;
  order.resize(b.size());
  for (std::uint32_t i = 0; i < b.size(); ++i) order[i] = {f(b.global[i]), i};
  std::sort(order.begin(), order.end());
  uf.reset(b.size());
  active.assign(b.size(), 0);
  std::size_t both = 0;
  std::vector<std::pair<double, double>> intervals;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::uint32_t v = order[k].second;
    active[v] = 1;
    std::uint32_t root = v;
    uf.flags[v] = annulus_flags(b, spec, v);
    if (uf.flags[v] == kMeetsBoth) ++both;
    for (auto e = b.offsets[v]; e < b.offsets[v + 1]; ++e) {
      const std::uint32_t j = b.neighbors[e];
      if (!active[j]) continue;
      const std::uint32_t other = uf.find(j);
      if (other == root) continue;
      if (uf.flags[root] == kMeetsBoth) --both;
      if (uf.flags[other] == kMeetsBoth) --both;
      root = uf.unite(root, other);
      if (uf.flags[root] == kMeetsBoth) ++both;
    }
    if (both < 2) continue;
    const double from = order[k].first;
    const double to = k + 1 < order.size() ? order[k + 1].first : kInf;
    if (!intervals.empty() && intervals.back().second == from) {
      intervals.back().second = to;
    } else {
      intervals.emplace_back(from, to);
    }
  }
  return intervals;
}

double pu_crossing(const PuOptions& pu, const std::function<double(double)>& probe, bool& degenerate) {
  const auto steps = static_cast<long>(std::floor((pu.p_max - pu.p_min) / pu.grid_step + 1e-9));
  degenerate = false;
  for (long k = 0; k <= steps; ++k) {
    const double p = pu.p_max - static_cast<double>(k) * pu.grid_step;
    if (probe(p) <= pu.epsilon) continue;
    if (k == 0) return p;
    double lo = p, hi = p + pu.grid_step;
    while (hi - lo > pu.tol) {
      const double mid = 0.5 * (lo + hi);
      (probe(mid) > pu.epsilon ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }
  degenerate = true;
  return pu.p_min;
}

void require_margin(const Adjacency& g, VertexId x, int N, const char* what) {
  if (x >= g.size()) throw DomainError(std::string(what) + ": vertex out of range");
  auto d = distance_to_boundary(g, x);
  if (d && static_cast<int>(*d) <= N) {
    throw TruncationError(std::string(what) + ": B(" + std::to_string(x) + "," + std::to_string(N) +
                          ") meets the truncation boundary");
  }
}

}  // namespace

EstimateReport summarize(const std::vector<double>& outcomes, std::uint64_t seed) {
  EstimateReport r;
  r.replicas = outcomes.size();
  r.seed = seed;
  if (outcomes.empty()) return r;
  double sum = 0;
  for (double x : outcomes) sum += x;
  r.value = sum / static_cast<double>(outcomes.size());
  r.std_error = sample_std(outcomes) / std::sqrt(static_cast<double>(outcomes.size()));
  return r;
}

EstimateReport theta_n(const Adjacency& g, VertexId v, double p, int n, const RunOptions& opts) {
  require_probability(p);
  require_replicas(opts);
  const LocalBall b = local_ball(g, v, n, n, "theta_n");
  std::vector<double> hit(opts.replicas, 0.0);
  parallel_for(opts.replicas, opts.threads, [&](std::size_t r) {
    const UniformField f = replica_field(g, opts, r);
    if (f(b.global[0]) > p) return;
    thread_local StampSet seen;
    thread_local std::vector<std::uint32_t> queue;
    seen.begin(b.size());
    seen.insert(0);
    queue.assign(1, 0);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::uint32_t i = queue[head];
      if (b.dist[i] == n) {
        hit[r] = 1.0;
        return;
      }
      for (auto e = b.offsets[i]; e < b.offsets[i + 1]; ++e) {
        const std::uint32_t j = b.neighbors[e];
        if (seen.contains(j) || f(b.global[j]) > p) continue;
        seen.insert(j);
        queue.push_back(j);
      }
    }
  });
  EstimateReport rep = summarize(hit, opts.seed);
  rep.params = {{"observable", "theta"}, {"vertex", v}, {"p", p}, {"n", n}, {"inverted", opts.inverted}};
  return rep;
}

std::vector<double> connection_thresholds(const Adjacency& g, VertexId v, int n, const RunOptions& opts) {
  require_replicas(opts);
  const LocalBall b = local_ball(g, v, n, n, "theta_n");
  std::vector<double> tau(opts.replicas);
  parallel_for(opts.replicas, opts.threads,
               [&](std::size_t r) { tau[r] = sphere_bottlenecks(b, replica_field(g, opts, r), n, n).second; });
  return tau;
}

EstimateReport estimate_pc(const Adjacency& g, VertexId v, const PcOptions& pc, const RunOptions& opts) {
  require_replicas(opts);
  const int m = pc.m > 0 ? pc.m : pc.n / 2;
  if (pc.n < 1 || m < 0 || m >= pc.n) throw DomainError("estimate_pc needs 0 <= m < n");
  if (!(pc.level > 0.0 && pc.level <= 1.0)) throw DomainError("crossing level must lie in (0,1]");
  if (!(pc.tol > 0.0)) throw DomainError("tolerance must be positive");
  const LocalBall b = local_ball(g, v, pc.n, pc.n, "estimate_pc");
  std::vector<double> tau_n(opts.replicas), tau_m(opts.replicas);
  parallel_for(opts.replicas, opts.threads, [&](std::size_t r) {
    std::tie(tau_m[r], tau_n[r]) = sphere_bottlenecks(b, replica_field(g, opts, r), m, pc.n);
  });

  auto crossing_of = [&](const std::vector<std::size_t>* pick) {
    std::vector<double> sn, sm;
    if (pick) {
      for (std::size_t i : *pick) {
        sn.push_back(tau_n[i]);
        sm.push_back(tau_m[i]);
      }
    } else {
      sn = tau_n;
      sm = tau_m;
    }
    std::sort(sn.begin(), sn.end());
    std::sort(sm.begin(), sm.end());
    return ratio_crossing(sn, sm, pc.level, pc.tol);
  };

  EstimateReport rep;
  rep.value = crossing_of(nullptr);
  rep.replicas = opts.replicas;
  rep.seed = opts.seed;
  std::vector<double> boot(pc.bootstrap);
  parallel_for(pc.bootstrap, opts.threads, [&](std::size_t k) {
    std::vector<std::size_t> pick(opts.replicas);
    for (std::size_t i = 0; i < opts.replicas; ++i) pick[i] = bootstrap_index(opts.seed, k, i, opts.replicas);
    boot[k] = crossing_of(&pick);
  });
  rep.std_error = sample_std(boot);
  rep.params = {{"observable", "pc"},   {"vertex", v},       {"n", pc.n},
                {"m", m},               {"level", pc.level}, {"tol", pc.tol},
                {"bootstrap", pc.bootstrap}, {"graph_kind", g.kind() == GraphKind::matching ? "matching" : "base"},
                {"inverted", opts.inverted}};
  return rep;
}

DecayResult two_point_decay(const MatchingGraph& m, double p, VertexId v, const std::vector<int>& radii,
                            const RunOptions& opts) {
  require_probability(p);
  require_replicas(opts);
  if (radii.empty()) throw DomainError("two_point_decay needs at least one radius");
  const Adjacency base = m.base();
  const Adjacency star = m.adjacency();
  if (v >= base.size()) throw DomainError("two_point_decay: vertex out of range");
  const int max_radius = *std::max_element(radii.begin(), radii.end());
  if (*std::min_element(radii.begin(), radii.end()) < 0) throw DomainError("radii must be nonnegative");
  const auto star_dist = bfs_distances(star, v);
  std::vector<int> shell_of(base.size(), -1);
  DecayResult out;
  out.distances = radii;
  out.shell_sizes.assign(radii.size(), 0);
  for (VertexId u = 0; u < base.size(); ++u) {
    if (star_dist[u] < 0 || star_dist[u] > max_radius) continue;
    if (base.is_boundary(u)) {
      throw TruncationError("two_point_decay: star radius " + std::to_string(max_radius) +
                            " reaches the truncation boundary");
    }
    for (std::size_t k = 0; k < radii.size(); ++k) {
      if (radii[k] == star_dist[u]) {
        shell_of[u] = static_cast<int>(k);
        ++out.shell_sizes[k];
      }
    }
  }
  for (std::size_t k = 0; k < radii.size(); ++k)
    if (out.shell_sizes[k] == 0) throw TruncationError("two_point_decay: empty shell at distance " + std::to_string(radii[k]));

  std::vector<std::vector<double>> frac(radii.size(), std::vector<double>(opts.replicas, 0.0));
  parallel_for(opts.replicas, opts.threads, [&](std::size_t r) {
    const UniformField f = replica_field(base, opts, r);
    if (f(v) > p) return;
    thread_local StampSet seen;
    thread_local std::vector<VertexId> queue;
    seen.begin(base.size());
    seen.insert(v);
    queue.assign(1, v);
    std::vector<std::size_t> hits(radii.size(), 0);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const VertexId x = queue[head];
      if (shell_of[x] >= 0) ++hits[static_cast<std::size_t>(shell_of[x])];
      base.for_each_neighbor(x, [&](VertexId u) {
        if (seen.contains(u) || f(u) > p) return;
        seen.insert(u);
        queue.push_back(u);
      });
    }
    for (std::size_t k = 0; k < radii.size(); ++k)
      frac[k][r] = static_cast<double>(hits[k]) / static_cast<double>(out.shell_sizes[k]);
  });

  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    EstimateReport rep = summarize(frac[k], opts.seed);
    rep.params = {{"distance", radii[k]}, {"shell_size", out.shell_sizes[k]}};
    const bool zero = rep.value <= 0.0;
    out.dropped.push_back(zero);
    if (!zero) {
      xs.push_back(radii[k]);
      ys.push_back(std::log(rep.value));
    }
    out.shell.push_back(std::move(rep));
  }
  if (xs.size() < 2) {
    out.degenerate = true;
    return out;
  }
  const auto n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    out.degenerate = true;
    return out;
  }
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (out.intercept + out.slope * xs[i]);
    ss_res += e * e;
  }
  out.r_squared = 1.0 - ss_res / syy;
  return out;
}

UniformProbeResult uniform_perc_probe(const Adjacency& g, double p, int N, const std::vector<VertexId>& sample,
                                      const RunOptions& opts) {
  require_probability(p);
  require_replicas(opts);
  if (sample.empty()) throw DomainError("uniform_perc_probe needs at least one sample vertex");
  if (N < 0) throw DomainError("probe radius must be nonnegative");
  UniformProbeResult out;
  out.minimum = 1.0;
  for (VertexId x : sample) {
    require_margin(g, x, N, "uniform_perc_probe");
    const BallView b = ball(g, x, N);
    std::vector<double> hit(opts.replicas, 0.0);
    parallel_for(opts.replicas, opts.threads, [&](std::size_t r) {
      const UniformField f = replica_field(g, opts, r);
      thread_local StampSet seen;
      thread_local std::vector<VertexId> queue;
      seen.begin(g.size());
      queue.clear();
      for (VertexId u : b.members) {
        if (f(u) <= p) {
          seen.insert(u);
          queue.push_back(u);
        }
      }
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const VertexId y = queue[head];
        if (g.is_boundary(y)) {
          hit[r] = 1.0;
          return;
        }
        g.for_each_neighbor(y, [&](VertexId u) {
          if (seen.contains(u) || f(u) > p) return;
          seen.insert(u);
          queue.push_back(u);
        });
      }
    });
    EstimateReport rep = summarize(hit, opts.seed);
    rep.params = {{"observable", "uniform"}, {"vertex", x}, {"p", p}, {"N", N}};
    out.minimum = std::min(out.minimum, rep.value);
    out.vertices.push_back(x);
    out.per_vertex.push_back(std::move(rep));
  }
  return out;
}

std::vector<double> ball_boundary_thresholds(const Adjacency& g, VertexId x, int N, const RunOptions& opts) {
  require_replicas(opts);
  require_margin(g, x, N, "uniform_perc_probe");
  const BallView b = ball(g, x, N);
  std::vector<double> tau(opts.replicas, kInf);
  parallel_for(opts.replicas, opts.threads, [&](std::size_t r) {
    const UniformField f = replica_field(g, opts, r);
    thread_local StampSet done;
    done.begin(g.size());
    MinHeap heap;
    for (VertexId u : b.members) heap.emplace(f(u), u);
    while (!heap.empty()) {
      auto [key, y] = heap.top();
      heap.pop();
      if (done.contains(y)) continue;
      done.insert(y);
      if (g.is_boundary(y)) {
        tau[r] = key;
        return;
      }
      g.for_each_neighbor(y, [&](VertexId u) {
        if (!done.contains(u)) heap.emplace(std::max(key, f(u)), u);
      });
    }
  });
  return tau;
}

EstimateReport uniqueness_probe(const Adjacency& g, double p, const AnnulusSpec& spec, const RunOptions& opts) {
  require_probability(p);
  require_replicas(opts);
  const LocalBall b = annulus_ball(g, spec);
  std::vector<double> hit(opts.replicas, 0.0);
  parallel_for(opts.replicas, opts.threads,
               [&](std::size_t r) { hit[r] = multi_arm_at(b, spec, replica_field(g, opts, r), p) ? 1.0 : 0.0; });
  EstimateReport rep = summarize(hit, opts.seed);
  rep.params = {{"observable", "uniqueness"}, {"center", spec.center}, {"r_inner", spec.r_inner},
                {"r_outer", spec.r_outer},    {"state", spec.state},   {"p", p},
                {"inverted", opts.inverted}};
  return rep;
}

bool MultiArmSweep::holds(std::size_t replica, double p) const {
  const auto& iv = intervals.at(replica);
  auto it = std::upper_bound(iv.begin(), iv.end(), p,
                             [](double x, const std::pair<double, double>& a) { return x < a.first; });
  if (it == iv.begin()) return false;
  --it;
  return p < it->second;
}

EstimateReport MultiArmSweep::probe(double p) const {
  std::vector<double> hit(intervals.size());
  for (std::size_t r = 0; r < intervals.size(); ++r) hit[r] = holds(r, p) ? 1.0 : 0.0;
  EstimateReport rep = summarize(hit, seed);
  rep.params = {{"observable", "uniqueness"}, {"p", p}};
  return rep;
}

MultiArmSweep multi_arm_sweep(const Adjacency& g, const AnnulusSpec& spec, const RunOptions& opts) {
  require_replicas(opts);
  if (spec.state != 1) throw DomainError("the multi-arm sweep adds open vertices; use state 1");
  const LocalBall b = annulus_ball(g, spec);
  MultiArmSweep out;
  out.seed = opts.seed;
  out.intervals.resize(opts.replicas);
  parallel_for(opts.replicas, opts.threads,
               [&](std::size_t r) { out.intervals[r] = multi_arm_intervals(b, spec, replica_field(g, opts, r)); });
  return out;
}

EstimateReport estimate_pu(const Adjacency& g, const PuOptions& pu, const RunOptions& opts) {
  if (!(pu.epsilon >= 0.0 && pu.epsilon < 1.0)) throw DomainError("epsilon must lie in [0,1)");
  if (!(pu.grid_step > 0.0) || !(pu.tol > 0.0)) throw DomainError("grid step and tolerance must be positive");
  if (!(0.0 <= pu.p_min && pu.p_min <= pu.p_max && pu.p_max <= 1.0)) throw DomainError("need 0 <= p_min <= p_max <= 1");
  const MultiArmSweep sweep = multi_arm_sweep(g, pu.annulus, opts);
  const std::size_t R = opts.replicas;

  auto crossing_of = [&](const std::vector<std::size_t>* pick, bool& degenerate) {
    auto probe = [&](double p) {
      std::size_t hits = 0;
      for (std::size_t i = 0; i < R; ++i) hits += sweep.holds(pick ? (*pick)[i] : i, p) ? 1 : 0;
      return static_cast<double>(hits) / static_cast<double>(R);
    };
    return pu_crossing(pu, probe, degenerate);
  };

  EstimateReport rep;
  rep.value = crossing_of(nullptr, rep.degenerate);
  rep.replicas = R;
  rep.seed = opts.seed;
  if (!rep.degenerate) {
    std::vector<double> boot(pu.bootstrap);
    parallel_for(pu.bootstrap, opts.threads, [&](std::size_t k) {
      std::vector<std::size_t> pick(R);
      for (std::size_t i = 0; i < R; ++i) pick[i] = bootstrap_index(opts.seed, k, i, R);
      bool degenerate = false;
      boot[k] = crossing_of(&pick, degenerate);
    });
    rep.std_error = sample_std(boot);
  }
  rep.params = {{"observable", "pu"},          {"center", pu.annulus.center}, {"r_inner", pu.annulus.r_inner},
                {"r_outer", pu.annulus.r_outer}, {"epsilon", pu.epsilon},     {"tol", pu.tol},
                {"p_min", pu.p_min},           {"p_max", pu.p_max},          {"grid_step", pu.grid_step},
                {"bootstrap", pu.bootstrap}};
  return rep;
}

double hoeffding_bound(double p, double i_lower, double M) {
  if (!(i_lower > 0.0)) throw DomainError("hoeffding_bound needs a positive isoperimetric lower bound");
  if (!(p <= 1.0 && p > 1.0 / (i_lower + 1.0))) throw DomainError("hoeffding_bound needs 1/(i+1) < p <= 1");
  if (!(M >= 1.0)) throw DomainError("hoeffding_bound needs M >= 1");
  const double gap = p - 1.0 / (i_lower + 1.0);
  const double a = gap * gap / 2.0;
  return std::exp(-a * M) / (-std::expm1(-a));
}

DualityReport duality_check(const MatchingGraph& m, const DualityOptions& d, const RunOptions& opts) {
  const RotationGraph& g = m.base();
  const VertexId origin = g.origin();
  if (d.check_hypotheses) {
    const DegreeProfile profile = degree_profile(g);
    if (profile.min_interior_degree < 7) {
      throw HypothesisError("duality needs interior degree >= 7; this graph has " +
                            std::to_string(profile.min_interior_degree));
    }
    const auto near = bfs_distances(g, origin, 1);
    std::vector<VertexId> queue;
    std::vector<std::uint8_t> seen(g.size(), 0);
    std::size_t outside = 0;
    for (VertexId v = 0; v < g.size(); ++v) {
      if (near[v] >= 0) continue;
      ++outside;
      if (queue.empty()) {
        queue.push_back(v);
        seen[v] = 1;
      }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (VertexId u : g.neighbors(queue[head])) {
        if (seen[u] || near[u] >= 0) continue;
        seen[u] = 1;
        queue.push_back(u);
      }
    }
    if (queue.size() != outside) {
      throw HypothesisError("duality needs a one-ended graph; removing the unit ball around the origin disconnects it");
    }
  }
  DualityReport out;
  RunOptions pc_opts = opts;
  if (d.pc_replicas > 0) pc_opts.replicas = d.pc_replicas;
  out.pc_star = estimate_pc(m.adjacency(), origin, d.pc, pc_opts);
  PuOptions pu = d.pu;
  pu.annulus.center = origin;
  pu.annulus.state = 1;
  out.pu = estimate_pu(g, pu, opts);
  out.sum = out.pc_star.value + out.pu.value;
  out.deviation = std::abs(out.sum - 1.0);
  out.sum_std_error = std::hypot(out.pc_star.std_error, out.pu.std_error);
  out.params = {{"origin", origin}, {"pc_level", d.pc.level}, {"pu_epsilon", d.pu.epsilon}};
  return out;
}

SweepResult sweep_thresholds(const std::string& observable, const std::vector<double>& thresholds,
                             const std::vector<double>& grid, std::uint64_t seed, bool increasing) {
  SweepResult out;
  out.observable = observable;
  out.grid = grid;
  std::vector<double> hit(thresholds.size());
  for (double p : grid) {
    require_probability(p);
    for (std::size_t r = 0; r < thresholds.size(); ++r) hit[r] = (thresholds[r] <= p) == increasing ? 1.0 : 0.0;
    EstimateReport rep = summarize(hit, seed);
    rep.params = {{"observable", observable}, {"p", p}};
    out.points.push_back(std::move(rep));
  }
  for (std::size_t k = 1; k < out.points.size(); ++k) {
    if (grid[k] < grid[k - 1]) continue;
    const double a = out.points[k - 1].value, b = out.points[k].value;
    if (increasing ? b < a : b > a) ++out.monotone_violations;
  }
  return out;
}

SweepResult sweep_multi_arm(const MultiArmSweep& sweep, const std::vector<double>& grid) {
  SweepResult out;
  out.observable = "uniqueness";
  out.monotone = false;
  out.grid = grid;
  for (double p : grid) {
    require_probability(p);
    out.points.push_back(sweep.probe(p));
  }
  return out;
}

}  // namespace hypsite
