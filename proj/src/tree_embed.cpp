#include "hypsite/tree_embed.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace hypsite {

LabelSeq::LabelSeq(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  if (!admissible(symbols_)) throw DomainError("inadmissible label: 1/2 must follow a 1");
}

LabelSeq LabelSeq::parse(std::string_view text) {
  std::vector<Symbol> symbols;
  for (char c : text) {
    switch (c) {
      case '0': symbols.push_back(Symbol::zero); break;
      case 'h': symbols.push_back(Symbol::half); break;
      case '1': symbols.push_back(Symbol::one); break;
      default: throw DomainError(std::string("bad label character '") + c + "'");
    }
  }
  return LabelSeq(std::move(symbols));
}

bool LabelSeq::admissible(const std::vector<Symbol>& symbols) {
  for (std::size_t j = 0; j < symbols.size(); ++j) {
    if (symbols[j] != Symbol::half) continue;
    if (j == 0 || symbols[j - 1] != Symbol::one) return false;
  }
  return true;
}

LabelSeq LabelSeq::child(Symbol s) const {
  auto symbols = symbols_;
  symbols.push_back(s);
  return LabelSeq(std::move(symbols));
}

LabelSeq LabelSeq::parent() const {
  if (symbols_.empty()) throw DomainError("the root label has no parent");
  return LabelSeq(std::vector<Symbol>(symbols_.begin(), symbols_.end() - 1));
}

std::string LabelSeq::str() const {
  std::string out;
  for (Symbol s : symbols_) out.push_back(s == Symbol::zero ? '0' : s == Symbol::half ? 'h' : '1');
  return out;
}

std::vector<LabelSeq> EmbeddedTree::level(int k) const {
  std::vector<LabelSeq> out;
  for (const auto& [label, v] : node_of)
    if (static_cast<int>(label.size()) == k) out.push_back(label);
  return out;
}

namespace {

int turn_count(TurnRule rule) { return rule == TurnRule::degree7 ? 3 : 2; }

Symbol continuation(Symbol s) { return s == Symbol::zero ? Symbol::zero : Symbol::one; }

// Whether the face through the corner (a, b) at v -- b follows a
// counterclockwise -- is finite. Traced on the left of b -> v -> a.
bool corner_face_finite(const RotationGraph& g, VertexId v, VertexId a, VertexId b) {
  VertexId u = b, x = v;
  const VertexId start_u = u, start_x = x;
  std::size_t guard = 0;
  do {
    if (g.is_boundary(u)) return false;
    VertexId next = g.prev_ccw(x, u);
    u = x;
    x = next;
    if (++guard > g.half_edge_count()) return false;
  } while (u != start_u || x != start_x);
  (void)a;
  return true;
}

struct ChildSlot {
  Symbol symbol;
  std::size_t offset;  // counterclockwise steps from the arrival neighbor
};

std::vector<ChildSlot> child_slots(Symbol type, std::size_t degree, int k) {
  const auto d = degree;
  const auto kk = static_cast<std::size_t>(k);
  switch (type) {
    case Symbol::zero:
      return {{Symbol::zero, kk}, {Symbol::one, kk + 1}};
    case Symbol::one:
      return {{Symbol::zero, d - kk - 2}, {Symbol::half, d - kk - 1}, {Symbol::one, d - kk}};
    case Symbol::half:
      return {{Symbol::zero, d - kk - 1}, {Symbol::one, d - kk}};
  }
  return {};
}

void check_host(const RotationGraph& host, TurnRule rule) {
  const DegreeProfile profile = degree_profile(host);
  if (rule == TurnRule::degree7) {
    if (profile.min_interior_degree < 7) {
      throw HypothesisError("turning rule infeasible: the 3-face rule needs interior degree >= 7, host has " +
                            std::to_string(profile.min_interior_degree));
    }
    return;
  }
  if (profile.min_interior_degree < 5) {
    throw HypothesisError("turning rule infeasible: the 2-face rule needs interior degree >= 5, host has " +
                          std::to_string(profile.min_interior_degree));
  }
  if (profile.min_finite_face_degree && *profile.min_finite_face_degree < 4) {
    throw HypothesisError("turning rule infeasible: the 2-face rule needs finite faces of degree >= 4, host has " +
                          std::to_string(*profile.min_finite_face_degree));
  }
}

void fill_paths(EmbeddedTree& t) {
  t.paths.clear();
  t.tree_edges.clear();
  for (const auto& [label, v] : t.node_of) {
    if (label.empty()) continue;
    const VertexId parent = t.node_of.at(label.parent());
    t.tree_edges.emplace_back(parent, v);
    std::vector<VertexId> walk{parent, v};
    const Symbol s = continuation(label.back());
    LabelSeq cur = label.child(s);
    for (auto it = t.node_of.find(cur); it != t.node_of.end(); it = t.node_of.find(cur)) {
      walk.push_back(it->second);
      cur = cur.child(s);
    }
    t.paths.emplace(label, std::move(walk));
  }
}

}  // namespace

EmbeddedTree embed_tree(const RotationGraph& host, VertexId root, int depth, TurnRule rule, bool allow_partial) {
  if (!host.contains(root)) throw DomainError("tree root out of range");
  if (depth < 0) throw DomainError("tree depth must be nonnegative");
  check_host(host, rule);
  if (host.is_boundary(root)) throw TruncationError("tree root lies on the truncation boundary");

  EmbeddedTree t;
  t.host = &host;
  t.rule = rule;
  t.root = root;
  t.requested_depth = depth;
  t.node_of.emplace(LabelSeq{}, root);
  if (depth == 0) return t;

  const int k = turn_count(rule);
  auto rot = host.neighbors(root);
  std::optional<std::size_t> first;
  for (std::size_t i = 0; i < rot.size() && !first; ++i)
    if (corner_face_finite(host, root, rot[i], rot[(i + 1) % rot.size()])) first = i;
  if (!first) throw TruncationError("tree root has no finite incident face");

  std::vector<LabelSeq> frontier;
  auto place = [&](const LabelSeq& label, VertexId v, std::vector<LabelSeq>& level) {
    t.node_of.emplace(label, v);
    level.push_back(label);
  };
  std::vector<LabelSeq> level1;
  place(LabelSeq({Symbol::zero}), rot[*first], level1);
  place(LabelSeq({Symbol::one}), rot[(*first + 1) % rot.size()], level1);
  frontier = std::move(level1);

  auto level_off_boundary = [&](const std::vector<LabelSeq>& level) {
    return std::none_of(level.begin(), level.end(),
                        [&](const LabelSeq& b) { return host.is_boundary(t.node_of.at(b)); });
  };
  auto drop = [&](const std::vector<LabelSeq>& level) {
    for (const auto& b : level) t.node_of.erase(b);
  };

  t.achieved_depth = 0;
  if (level_off_boundary(frontier)) {
    t.achieved_depth = 1;
    for (int lvl = 1; lvl < depth; ++lvl) {
      std::vector<LabelSeq> next;
      for (const auto& b : frontier) {
        const VertexId x = t.node_of.at(b);
        const VertexId from = t.node_of.at(b.parent());
        const std::size_t deg = host.degree(x);
        for (const ChildSlot& slot : child_slots(b.back(), deg, k)) {
          place(b.child(slot.symbol), host.rotate(x, from, static_cast<std::ptrdiff_t>(slot.offset)), next);
        }
      }
      if (!level_off_boundary(next)) {
        drop(next);
        break;
      }
      frontier = std::move(next);
      t.achieved_depth = lvl + 1;
    }
  } else {
    drop(frontier);
  }
  fill_paths(t);
  if (t.achieved_depth < depth && !allow_partial) {
    const int achieved = t.achieved_depth;
    throw PartialTreeError("tree construction reached the truncation boundary at depth " +
                               std::to_string(achieved + 1) + " of " + std::to_string(depth),
                           std::move(t));
  }
  return t;
}

EmbeddedTree embed_tree_deg7(const RotationGraph& host, VertexId root, int depth, bool allow_partial) {
  return embed_tree(host, root, depth, TurnRule::degree7, allow_partial);
}

EmbeddedTree embed_tree_deg5(const RotationGraph& host, VertexId root, int depth, bool allow_partial) {
  return embed_tree(host, root, depth, TurnRule::degree5, allow_partial);
}

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* VerificationReport::find(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

std::string vertex_list(const std::vector<VertexId>& vs) {
  std::string out = "[";
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? "," : "") + std::to_string(vs[i]);
  return out + "]";
}

void fail(CheckResult& c, const std::string& detail) {
  if (c.passed) c.detail = detail;
  c.passed = false;
}

bool has_repeat(const std::vector<VertexId>& walk) {
  std::unordered_set<VertexId> seen;
  for (VertexId v : walk)
    if (!seen.insert(v).second) return true;
  return false;
}

std::vector<VertexId> intersection(const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
  std::unordered_set<VertexId> in_a(a.begin(), a.end());
  std::set<VertexId> out;
  for (VertexId v : b)
    if (in_a.count(v)) out.insert(v);
  return {out.begin(), out.end()};
}

}  // namespace

VerificationReport verify_embedding(const EmbeddedTree& t) {
  VerificationReport report;
  CheckResult subgraph{"subgraph_containment", true, 0, {}};
  CheckResult labels{"label_constraint", true, 0, {}};
  CheckResult shape{"label_shape", true, 0, {}};
  CheckResult avoid{"self_avoidance", true, 0, {}};
  CheckResult injective{"vertex_disjoint_subtrees", true, 0, {}};
  CheckResult siblings{"sibling_path_disjointness", true, 0, {}};
  CheckResult prop_a{"property_A", true, 0, {}};
  CheckResult prop_b{"property_B", true, 0, {}};
  CheckResult degrees{"degree_spectrum", true, 0, {}};
  CheckResult boundary{"off_boundary", true, 0, {}};

  const RotationGraph* host = t.host;
  auto on_host = [&](VertexId v) { return host && host->contains(v); };

  for (auto [u, v] : t.tree_edges) {
    ++subgraph.checked;
    if (!on_host(u) || !on_host(v) || !host->adjacent(u, v))
      fail(subgraph, "tree edge (" + std::to_string(u) + "," + std::to_string(v) + ") is not a host edge");
  }
  for (const auto& [label, walk] : t.paths) {
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
      ++subgraph.checked;
      if (!on_host(walk[i]) || !on_host(walk[i + 1]) || !host->adjacent(walk[i], walk[i + 1]))
        fail(subgraph, "path pi_" + label.str() + " leaves the host at step " + std::to_string(i));
    }
  }

  for (const auto& [label, v] : t.node_of) {
    ++labels.checked;
    if (!LabelSeq::admissible(label.symbols())) fail(labels, "label " + label.str() + " is inadmissible");
    ++boundary.checked;
    if (on_host(v) && host->is_boundary(v)) fail(boundary, "v_" + label.str() + " is a boundary vertex");
  }

  // Levels grow as (a, b) -> (a + 2b, a + b), a counting labels ending in 0 or
  // 1/2 and b those ending in 1, whatever the host.
  {
    std::size_t ends_low = 1, ends_one = 1;
    for (int k = 1; k <= t.achieved_depth; ++k) {
      std::size_t low = 0, one = 0;
      for (const auto& label : t.level(k)) (label.back() == Symbol::one ? one : low) += 1;
      ++shape.checked;
      if (low != ends_low || one != ends_one) {
        fail(shape, "level " + std::to_string(k) + " has " + std::to_string(low + one) + " labels, expected " +
                        std::to_string(ends_low + ends_one));
      }
      std::size_t next_low = ends_low + 2 * ends_one, next_one = ends_low + ends_one;
      ends_low = next_low;
      ends_one = next_one;
    }
  }

  for (const auto& [label, walk] : t.paths) {
    ++avoid.checked;
    if (has_repeat(walk)) fail(avoid, "pi_" + label.str() + " repeats a vertex: " + vertex_list(walk));
    if (label.size() >= 2) {
      std::vector<VertexId> extended{t.node_of.at(label.parent().parent())};
      extended.insert(extended.end(), walk.begin(), walk.end());
      ++avoid.checked;
      if (has_repeat(extended)) fail(avoid, "extended pi_" + label.str() + " repeats a vertex");
    }
  }

  {
    std::unordered_map<VertexId, LabelSeq> owner;
    for (const auto& [label, v] : t.node_of) {
      ++injective.checked;
      auto [it, fresh] = owner.emplace(v, label);
      if (!fresh) fail(injective, "v_" + it->second.str() + " and v_" + label.str() + " share vertex " + std::to_string(v));
    }
  }

  for (const auto& [label, v] : t.node_of) {
    std::vector<LabelSeq> kids;
    for (Symbol s : {Symbol::zero, Symbol::half, Symbol::one}) {
      if (s == Symbol::half && (label.empty() || label.back() != Symbol::one)) continue;
      LabelSeq c = label.child(s);
      if (t.paths.count(c)) kids.push_back(c);
    }
    for (std::size_t i = 0; i < kids.size(); ++i) {
      for (std::size_t j = i + 1; j < kids.size(); ++j) {
        ++siblings.checked;
        auto common = intersection(t.paths.at(kids[i]), t.paths.at(kids[j]));
        if (common != std::vector<VertexId>{v}) {
          fail(siblings, "pi_" + kids[i].str() + " and pi_" + kids[j].str() + " meet in " + vertex_list(common));
        }
      }
    }
  }

  for (const auto& [label, v] : t.node_of) {
    if (label.empty() || label.back() != Symbol::one) continue;
    const LabelSeq c0 = label.child(Symbol::zero), ch = label.child(Symbol::half), c1 = label.child(Symbol::one);
    if (!t.paths.count(c0) || !t.paths.count(ch) || !t.paths.count(c1)) continue;
    std::vector<VertexId> through{t.node_of.at(label.parent())};
    const auto& tail = t.paths.at(c1);
    through.insert(through.end(), tail.begin(), tail.end());
    const std::vector<std::vector<VertexId>> trio{through, t.paths.at(c0), t.paths.at(ch)};
    for (std::size_t i = 0; i < trio.size(); ++i) {
      for (std::size_t j = i + 1; j < trio.size(); ++j) {
        ++prop_a.checked;
        auto common = intersection(trio[i], trio[j]);
        if (common != std::vector<VertexId>{v})
          fail(prop_a, "at v_" + label.str() + " two branch paths meet in " + vertex_list(common));
      }
    }
    const LabelSeq a = label.parent();
    const LabelSeq a0 = a.child(Symbol::zero);
    const LabelSeq a01 = a0.child(Symbol::one);
    for (const LabelSeq* other : {&a0, &a01}) {
      auto it = t.paths.find(*other);
      if (it == t.paths.end()) continue;
      ++prop_b.checked;
      auto common = intersection(t.paths.at(ch), it->second);
      if (!common.empty()) fail(prop_b, "pi_" + ch.str() + " meets pi_" + other->str() + " in " + vertex_list(common));
    }
  }

  {
    std::unordered_map<VertexId, std::size_t> tree_degree;
    for (auto [u, v] : t.tree_edges) {
      ++tree_degree[u];
      ++tree_degree[v];
    }
    for (const auto& [label, v] : t.node_of) {
      if (static_cast<int>(label.size()) >= t.achieved_depth) continue;
      ++degrees.checked;
      std::size_t d = tree_degree[v];
      if (label.empty()) {
        if (d != 2) fail(degrees, "root has tree degree " + std::to_string(d));
      } else if (d != 3 && d != 4) {
        fail(degrees, "v_" + label.str() + " has tree degree " + std::to_string(d));
      }
    }
  }

  report.checks = {subgraph, labels, shape, avoid, injective, siblings, prop_a, prop_b, degrees, boundary};
  return report;
}

}  // namespace hypsite
