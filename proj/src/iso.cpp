#include <algorithm>
#include <limits>

#include "hypsite/error.hpp"
#include "hypsite/estimators.hpp"

namespace hypsite {
namespace {

// Redelmeier enumeration of connected sets K containing the root. A vertex is
// "seen" once it entered K or the untried list; after it has been tried at one
// level it stays seen (excluded) for the rest of that level's branches. Every
// untried vertex is adjacent to K, so with U untried vertices the final set of
// size s >= |K| keeps at least (|dK| - U) + max(0, U - (s - |K|)) boundary
// vertices, which bounds the branch.
class IsoSearch {
 public:
  IsoSearch(const Adjacency& g, VertexId root, int max_size, std::uint64_t budget)
      : g_(g), root_(root), max_(static_cast<std::size_t>(max_size)), budget_(budget) {
    seen_.assign(g.size(), 0);
    in_set_.assign(g.size(), 0);
    contact_.assign(g.size(), 0);
    best_.assign(max_ + 1, std::numeric_limits<double>::infinity());
    witness_.assign(max_ + 1, {});
  }

  IsoResult run() {
    greedy_bounds();
    std::vector<VertexId> untried{root_};
    seen_[root_] = 1;
    search(untried);
    IsoResult out;
    out.nodes = nodes_;
    double running = std::numeric_limits<double>::infinity();
    for (std::size_t s = 1; s <= max_; ++s) {
      out.exact_size_ratio.push_back(best_[s]);
      if (best_[s] < running) {
        running = best_[s];
        out.witness.push_back(witness_[s]);
      } else {
        out.witness.push_back(out.witness.back());
      }
      out.ratio.push_back(running);
    }
    return out;
  }

 private:
  const Adjacency& g_;
  VertexId root_;
  std::size_t max_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::uint8_t> seen_, in_set_;
  std::vector<std::uint32_t> contact_;  // number of neighbors inside K
  std::vector<VertexId> set_;
  std::size_t boundary_ = 0;
  std::vector<double> best_;
  std::vector<std::vector<VertexId>> witness_;

  void add(VertexId v) {
    if (g_.is_boundary(v)) {
      throw TruncationError("iso_upper: a candidate set reaches the truncation boundary at vertex " +
                            std::to_string(v));
    }
    if (contact_[v] > 0) --boundary_;
    in_set_[v] = 1;
    set_.push_back(v);
    g_.for_each_neighbor(v, [&](VertexId u) {
      if (contact_[u]++ == 0 && !in_set_[u]) ++boundary_;
    });
  }

  void remove(VertexId v) {
    g_.for_each_neighbor(v, [&](VertexId u) {
      if (--contact_[u] == 0 && !in_set_[u]) --boundary_;
    });
    in_set_[v] = 0;
    set_.pop_back();
    if (contact_[v] > 0) ++boundary_;
  }

  void record() {
    const std::size_t k = set_.size();
    const double ratio = static_cast<double>(boundary_) / static_cast<double>(k);
    if (ratio < best_[k]) {
      best_[k] = ratio;
      witness_[k] = set_;
      std::sort(witness_[k].begin(), witness_[k].end());
    }
  }

  bool hopeless(std::size_t untried) const {
    const std::size_t k = set_.size();
    const std::size_t fixed = boundary_ - untried;
    for (std::size_t s = k + 1; s <= max_; ++s) {
      const std::size_t absorbable = s - k;
      const std::size_t bound = fixed + (untried > absorbable ? untried - absorbable : 0);
      if (static_cast<double>(bound) / static_cast<double>(s) < best_[s]) return false;
    }
    return true;
  }

  void search(std::vector<VertexId>& untried) {
    while (!untried.empty()) {
      const VertexId v = untried.back();
      untried.pop_back();
      add(v);
      if (++nodes_ > budget_) {
        throw BudgetError("iso_upper: enumeration budget of " + std::to_string(budget_) + " nodes exhausted");
      }
      record();
      if (set_.size() < max_) {
        std::vector<VertexId> next = untried;
        const std::size_t inherited = next.size();
        g_.for_each_neighbor(v, [&](VertexId u) {
          if (seen_[u]) return;
          seen_[u] = 1;
          next.push_back(u);
        });
        if (!hopeless(next.size())) search(next);
        for (std::size_t i = inherited; i < next.size(); ++i) seen_[next[i]] = 0;
      }
      remove(v);
    }
  }

  // Grow one set greedily, always adding the frontier vertex that leaves the
  // smallest boundary; its ratios seed the bounds.
  void greedy_bounds() {
    add(root_);
    record();
    while (set_.size() < max_) {
      VertexId pick = kNoVertex;
      std::size_t pick_boundary = std::numeric_limits<std::size_t>::max();
      for (VertexId x : set_) {
        g_.for_each_neighbor(x, [&](VertexId u) {
          if (in_set_[u] || g_.is_boundary(u)) return;
          std::size_t after = boundary_ - 1;
          g_.for_each_neighbor(u, [&](VertexId w) {
            if (!in_set_[w] && contact_[w] == 0) ++after;
          });
          if (after < pick_boundary || (after == pick_boundary && u < pick)) {
            pick = u;
            pick_boundary = after;
          }
        });
      }
      if (pick == kNoVertex) break;
      add(pick);
      record();
    }
    while (!set_.empty()) remove(set_.back());
  }
};

}  // namespace

IsoResult iso_upper(const Adjacency& g, VertexId root, int max_size, std::uint64_t budget) {
  if (root >= g.size()) throw DomainError("iso_upper: root out of range");
  if (max_size < 1) throw DomainError("iso_upper: max_size must be at least 1");
  return IsoSearch(g, root, max_size, budget).run();
}

}  // namespace hypsite
