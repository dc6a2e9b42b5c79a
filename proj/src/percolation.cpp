#include "hypsite/percolation.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>

#include "hypsite/error.hpp"

namespace hypsite {

std::vector<double> UniformField::values() const {
  std::vector<double> out(size_);
  for (std::size_t v = 0; v < size_; ++v) out[v] = (*this)(static_cast<VertexId>(v));
  return out;
}

UniformField sample_field(const RotationGraph& g, std::uint64_t seed) { return UniformField(seed, g.size()); }

SiteConfig threshold(const UniformField& f, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("threshold p must lie in [0,1]");
  SiteConfig cfg;
  cfg.p = p;
  cfg.seed = f.seed();
  cfg.open.resize(f.size());
  for (std::size_t v = 0; v < f.size(); ++v) cfg.open[v] = f(static_cast<VertexId>(v)) <= p ? 1 : 0;
  return cfg;
}

ClusterLabeling clusters(const SiteConfig& cfg, const Adjacency& adj, int state) {
  if (cfg.size() != adj.size()) throw DomainError("configuration and graph sizes differ");
  if (state != 0 && state != 1) throw DomainError("cluster state must be 0 or 1");
  ClusterLabeling out;
  out.state = state;
  out.graph_kind = adj.kind();
  out.label.assign(adj.size(), kNoCluster);
  std::vector<VertexId> queue;
  for (VertexId s = 0; s < adj.size(); ++s) {
    if (out.label[s] != kNoCluster || !cfg.has_state(s, state)) continue;
    const auto id = static_cast<std::uint32_t>(out.sizes.size());
    bool boundary = false;
    queue.assign(1, s);
    out.label[s] = id;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      VertexId v = queue[head];
      boundary = boundary || adj.is_boundary(v);
      adj.for_each_neighbor(v, [&](VertexId u) {
        if (out.label[u] != kNoCluster || !cfg.has_state(u, state)) return;
        out.label[u] = id;
        queue.push_back(u);
      });
    }
    out.sizes.push_back(static_cast<std::uint32_t>(queue.size()));
    out.touches_boundary.push_back(boundary ? 1 : 0);
  }
  return out;
}

Exploration explore(const SiteConfig& cfg, const Adjacency& adj, VertexId v) {
  if (v >= adj.size()) throw DomainError("exploration root out of range");
  Exploration ex;
  ex.root = v;
  if (!cfg.is_open(v)) return ex;
  enum : std::uint8_t { unseen, queued, in_cluster, in_wall };
  std::vector<std::uint8_t> mark(adj.size(), unseen);
  std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> frontier;
  auto absorb = [&](VertexId x) {
    mark[x] = in_cluster;
    ex.cluster.push_back(x);
    ex.censored = ex.censored || adj.is_boundary(x);
    adj.for_each_neighbor(x, [&](VertexId u) {
      if (mark[u] != unseen) return;
      mark[u] = queued;
      frontier.push(u);
    });
  };
  absorb(v);
  while (!frontier.empty()) {
    VertexId w = frontier.top();
    frontier.pop();
    const bool open = cfg.is_open(w);
    ex.steps.push_back({w, open});
    if (open) {
      absorb(w);
    } else {
      mark[w] = in_wall;
      ex.closed_boundary.push_back(w);
    }
  }
  return ex;
}

std::size_t multi_cluster_probe(const SiteConfig& cfg, const Adjacency& adj, VertexId x, int N) {
  if (N < 0) throw DomainError("probe radius must be nonnegative");
  if (cfg.size() != adj.size()) throw DomainError("configuration and graph sizes differ");
  const BallView margin = ball(adj, x, N + 1);
  for (VertexId u : margin.members)
    if (adj.is_boundary(u)) throw TruncationError("ball B(x,N+1) reaches the truncation boundary");
  std::vector<std::uint8_t> removed(adj.size(), 0);
  for (std::size_t i = 0; i < margin.members.size(); ++i)
    if (margin.distances[i] <= N) removed[margin.members[i]] = 1;

  std::vector<std::uint8_t> seen(adj.size(), 0);
  std::vector<VertexId> queue;
  std::size_t count = 0;
  for (VertexId s : margin.sphere) {
    if (seen[s] || !cfg.is_open(s)) continue;
    bool reaches_boundary = false;
    queue.assign(1, s);
    seen[s] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      VertexId v = queue[head];
      reaches_boundary = reaches_boundary || adj.is_boundary(v);
      adj.for_each_neighbor(v, [&](VertexId u) {
        if (seen[u] || removed[u] || !cfg.is_open(u)) return;
        seen[u] = 1;
        queue.push_back(u);
      });
    }
    if (reaches_boundary) ++count;
  }
  return count;
}

void write_config(std::ostream& out, const SiteConfig& cfg) {
  char p_text[64];
  std::snprintf(p_text, sizeof p_text, "%.17g", cfg.p);
  out << "# hypsite-config/1 seed=" << cfg.seed << " p=" << p_text << " n=" << cfg.size() << "\n";
  std::string bits(cfg.size(), '0');
  for (std::size_t v = 0; v < cfg.size(); ++v)
    if (cfg.open[v]) bits[v] = '1';
  out << bits << "\n";
}

SiteConfig read_config(std::istream& in) {
  std::string header, bits;
  if (!std::getline(in, header) || header.rfind("# hypsite-config/1 ", 0) != 0)
    throw FormatError("not a hypsite-config/1 dump");
  SiteConfig cfg;
  std::size_t n = 0;
  std::istringstream fields(header.substr(19));
  std::string field;
  while (fields >> field) {
    auto eq = field.find('=');
    if (eq == std::string::npos) throw FormatError("malformed config header field '" + field + "'");
    const std::string key = field.substr(0, eq), value = field.substr(eq + 1);
    try {
      if (key == "seed") cfg.seed = std::stoull(value);
      else if (key == "p") cfg.p = std::stod(value);
      else if (key == "n") n = std::stoull(value);
    } catch (const std::exception&) {
      throw FormatError("malformed config header value '" + field + "'");
    }
  }
  std::getline(in, bits);
  if (bits.size() != n) throw FormatError("config bit count does not match header");
  cfg.open.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (bits[v] != '0' && bits[v] != '1') throw FormatError("config bits must be 0 or 1");
    cfg.open[v] = bits[v] == '1';
  }
  return cfg;
}

}  // namespace hypsite
