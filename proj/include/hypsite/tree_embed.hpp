#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hypsite/error.hpp"
#include "hypsite/graph.hpp"

namespace hypsite {

enum class Symbol : std::uint8_t { zero, half, one };

// A branch label b = (b_1, ..., b_k) over {0, 1/2, 1}. A 1/2 may only follow a
// 1 and never appears first. Text form uses '0', 'h', '1' ("1h0").
class LabelSeq {
 public:
  LabelSeq() = default;
  explicit LabelSeq(std::vector<Symbol> symbols);
  static LabelSeq parse(std::string_view text);

  static bool admissible(const std::vector<Symbol>& symbols);

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  Symbol back() const { return symbols_.back(); }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  LabelSeq child(Symbol s) const;
  LabelSeq parent() const;
  std::string str() const;

  auto operator<=>(const LabelSeq&) const = default;

 private:
  std::vector<Symbol> symbols_;
};

enum class TurnRule { degree7, degree5 };

// Tree T inside a host graph: node_of maps every label of length <= achieved
// depth to a host vertex; paths holds the walk pi_b for every non-root label,
// from the parent's vertex through v_b and onward along b's continuation
// symbol, cut at the achieved depth.
struct EmbeddedTree {
  const RotationGraph* host = nullptr;
  TurnRule rule = TurnRule::degree7;
  VertexId root = kNoVertex;
  int requested_depth = 0;
  int achieved_depth = 0;
  std::map<LabelSeq, VertexId> node_of;
  std::map<LabelSeq, std::vector<VertexId>> paths;
  std::vector<std::pair<VertexId, VertexId>> tree_edges;  // (parent, child)

  std::vector<LabelSeq> level(int k) const;
};

// Thrown when the truncation ends before the requested depth; carries the
// tree built so far.
class PartialTreeError : public TruncationError {
 public:
  PartialTreeError(const std::string& what, EmbeddedTree partial)
      : TruncationError(what), partial_(std::move(partial)) {}
  int achieved_depth() const { return partial_.achieved_depth; }
  const EmbeddedTree& partial() const { return partial_; }

 private:
  EmbeddedTree partial_;
};

// Walks keep exactly 3 faces on the designated side (degree >= 7 hosts).
// Throws HypothesisError if the host has an interior vertex of degree < 7.
EmbeddedTree embed_tree_deg7(const RotationGraph& host, VertexId root, int depth, bool allow_partial = false);

// Walks keep exactly 2 faces on the designated side (degree >= 5, faces >= 4).
EmbeddedTree embed_tree_deg5(const RotationGraph& host, VertexId root, int depth, bool allow_partial = false);

EmbeddedTree embed_tree(const RotationGraph& host, VertexId root, int depth, TurnRule rule,
                        bool allow_partial = false);

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  std::string detail;  // first failure, if any
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
  const CheckResult* find(std::string_view name) const;
};

// Never throws on a bad tree; each property is reported separately.
VerificationReport verify_embedding(const EmbeddedTree& t);

}  // namespace hypsite
