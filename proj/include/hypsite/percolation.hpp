#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "hypsite/graph.hpp"
#include "hypsite/rng.hpp"

namespace hypsite {

// One uniform U(v) in (0,1) per vertex, computed on demand from (seed, v).
// Thresholding a single field at every p realizes the standard coupling.
// The inverted field returns 1 - U(v) exactly.
class UniformField {
 public:
  UniformField() = default;
  UniformField(std::uint64_t seed, std::size_t size, bool inverted = false)
      : seed_(seed), size_(size), inverted_(inverted) {}

  std::uint64_t seed() const { return seed_; }
  std::size_t size() const { return size_; }
  bool inverted() const { return inverted_; }

  double operator()(VertexId v) const {
    const double u = hashed_uniform(seed_, v);
    return inverted_ ? 1.0 - u : u;
  }
  std::vector<double> values() const;
  UniformField inverse() const { return UniformField(seed_, size_, !inverted_); }

 private:
  std::uint64_t seed_ = 0;
  std::size_t size_ = 0;
  bool inverted_ = false;
};

UniformField sample_field(const RotationGraph& g, std::uint64_t seed);

struct SiteConfig {
  double p = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint8_t> open;

  bool is_open(VertexId v) const { return open[v] != 0; }
  bool has_state(VertexId v, int state) const { return (open[v] != 0) == (state == 1); }
  std::size_t size() const { return open.size(); }
};

// open(v) = [U(v) <= p].
SiteConfig threshold(const UniformField& f, double p);

inline constexpr std::uint32_t kNoCluster = 0xffffffffu;

struct ClusterLabeling {
  int state = 1;
  GraphKind graph_kind = GraphKind::base;
  // Cluster id per vertex, kNoCluster for vertices of the other state. Ids are
  // assigned in order of each cluster's smallest vertex.
  std::vector<std::uint32_t> label;
  std::vector<std::uint8_t> touches_boundary;  // per cluster
  std::vector<std::uint32_t> sizes;            // per cluster

  std::size_t cluster_count() const { return sizes.size(); }
  bool same_cluster(VertexId u, VertexId v) const {
    return label[u] != kNoCluster && label[u] == label[v];
  }
};

ClusterLabeling clusters(const SiteConfig& cfg, const Adjacency& adj, int state = 1);

// Incremental construction of the open cluster C of v with its closed outer
// boundary W. Each step examines the lowest-id vertex of the outer boundary of
// C not yet in W and adds it to C if open, to W if closed.
struct Exploration {
  VertexId root = kNoVertex;
  std::vector<VertexId> cluster;         // C in order of discovery
  std::vector<VertexId> closed_boundary;  // W in order of discovery
  struct Step {
    VertexId vertex;
    bool open;
  };
  std::vector<Step> steps;
  // C meets the truncation boundary, so on the infinite graph the process
  // would not have been seen to terminate.
  bool censored = false;
};

Exploration explore(const SiteConfig& cfg, const Adjacency& adj, VertexId v);

// Number of distinct 1-clusters of the graph with B(x,N) removed that meet
// both the sphere of radius N+1 around x and the truncation boundary. Throws
// TruncationError unless every vertex of B(x,N+1) is interior.
std::size_t multi_cluster_probe(const SiteConfig& cfg, const Adjacency& adj, VertexId x, int N);

// Debug dump: a header line with seed and p, then one '0'/'1' per vertex.
void write_config(std::ostream& out, const SiteConfig& cfg);
SiteConfig read_config(std::istream& in);

}  // namespace hypsite
