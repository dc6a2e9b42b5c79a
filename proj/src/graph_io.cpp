#include "hypsite/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hypsite/error.hpp"

namespace hypsite {
namespace {

using nlohmann::json;

void write_uint(std::ostream& out, std::uint64_t value) {
  char buf[24];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  out.write(buf, res.ptr - buf);
}

// Streams the graph document into CSR arrays without materializing a DOM for
// the (potentially very large) rotation table. Only "meta" is built as json.
class GraphSax : public nlohmann::json_sax<json> {
 public:
  enum class Section { none, meta, boundary, rotation, added_edges, ignored };

  json meta = json::object();
  std::vector<VertexId> boundary;
  std::vector<std::uint64_t> offsets{0};
  std::vector<VertexId> neighbors;
  std::vector<std::pair<VertexId, VertexId>> added;
  bool saw_added = false;
  bool saw_rotation = false;
  std::string error;

  bool null() override { return scalar(json(nullptr)); }
  bool boolean(bool v) override { return scalar(json(v)); }
  bool number_integer(number_integer_t v) override {
    if (section_ == Section::meta) return scalar(json(v));
    if (v < 0) return fail("negative vertex id");
    return index(static_cast<std::uint64_t>(v));
  }
  bool number_unsigned(number_unsigned_t v) override {
    if (section_ == Section::meta) return scalar(json(v));
    return index(v);
  }
  bool number_float(number_float_t v, const string_t&) override {
    if (section_ == Section::meta) return scalar(json(v));
    return fail("non-integer vertex id");
  }
  bool string(string_t& v) override {
    if (section_ == Section::meta) return scalar(json(v));
    if (section_ == Section::ignored) return true;
    return fail("unexpected string in graph arrays");
  }
  bool binary(binary_t&) override { return fail("binary values are not supported"); }

  bool start_object(std::size_t) override {
    ++depth_;
    if (depth_ == 1) return true;
    if (section_ == Section::meta) return open_container(json::object());
    if (section_ == Section::ignored) return true;
    return fail("unexpected object in graph arrays");
  }
  bool key(string_t& k) override {
    if (depth_ == 1) {
      if (k == "meta") section_ = Section::meta;
      else if (k == "boundary") section_ = Section::boundary;
      else if (k == "rotation") section_ = Section::rotation, saw_rotation = true;
      else if (k == "added_edges") section_ = Section::added_edges, saw_added = true;
      else section_ = Section::ignored;
      return true;
    }
    if (section_ == Section::meta) pending_key_ = k;
    return true;
  }
  bool end_object() override {
    if (section_ == Section::meta && depth_ > 1) close_container();
    --depth_;
    if (depth_ == 1) section_ = Section::none;
    return true;
  }
  bool start_array(std::size_t) override {
    ++depth_;
    switch (section_) {
      case Section::meta:
        return open_container(json::array());
      case Section::rotation:
        if (depth_ == 3) row_open_ = true;
        else if (depth_ != 2) return fail("rotation rows must be flat arrays");
        return true;
      case Section::added_edges:
        if (depth_ == 3) pair_.clear();
        else if (depth_ != 2) return fail("added_edges must be an array of pairs");
        return true;
      case Section::boundary:
        if (depth_ != 2) return fail("boundary must be a flat array");
        return true;
      default:
        return true;
    }
  }
  bool end_array() override {
    switch (section_) {
      case Section::meta:
        close_container();
        break;
      case Section::rotation:
        if (depth_ == 3) {
          offsets.push_back(neighbors.size());
          row_open_ = false;
        }
        break;
      case Section::added_edges:
        if (depth_ == 3) {
          if (pair_.size() != 2) return fail("added edge is not a pair");
          added.emplace_back(pair_[0], pair_[1]);
        }
        break;
      default:
        break;
    }
    --depth_;
    if (depth_ == 1) section_ = Section::none;
    return true;
  }
  bool parse_error(std::size_t pos, const std::string&, const nlohmann::detail::exception& ex) override {
    error = "JSON parse error at byte " + std::to_string(pos) + ": " + ex.what();
    return false;
  }

 private:
  Section section_ = Section::none;
  int depth_ = 0;
  bool row_open_ = false;
  std::vector<VertexId> pair_;
  std::vector<json*> stack_;
  std::string pending_key_;

  bool fail(const std::string& why) {
    error = why;
    return false;
  }

  bool index(std::uint64_t v) {
    if (v > kNoVertex - 1) return fail("vertex id exceeds 32-bit range");
    auto id = static_cast<VertexId>(v);
    switch (section_) {
      case Section::boundary:
        boundary.push_back(id);
        return true;
      case Section::rotation:
        if (!row_open_) return fail("rotation entries must be arrays");
        neighbors.push_back(id);
        return true;
      case Section::added_edges:
        pair_.push_back(id);
        return true;
      case Section::ignored:
        return true;
      default:
        return fail("unexpected number at top level");
    }
  }

  json* insert(json value) {
    if (stack_.empty()) {
      meta = std::move(value);
      return &meta;
    }
    json& parent = *stack_.back();
    if (parent.is_array()) {
      parent.push_back(std::move(value));
      return &parent.back();
    }
    parent[pending_key_] = std::move(value);
    return &parent[pending_key_];
  }
  bool scalar(json value) {
    if (section_ == Section::ignored) return true;
    if (section_ != Section::meta) return fail("unexpected scalar in graph arrays");
    insert(std::move(value));
    return true;
  }
  bool open_container(json value) {
    stack_.push_back(insert(std::move(value)));
    return true;
  }
  void close_container() {
    if (!stack_.empty()) stack_.pop_back();
  }
};

}  // namespace

void write_graph(std::ostream& out, const RotationGraph& g,
                 const std::vector<std::pair<VertexId, VertexId>>* added_edges) {
  json meta = g.meta();
  meta["format"] = kGraphFormat;
  out << "{\"meta\":" << meta.dump() << ",\"boundary\":[";
  bool first = true;
  for (VertexId v = 0; v < g.size(); ++v) {
    if (!g.is_boundary(v)) continue;
    if (!first) out.put(',');
    first = false;
    write_uint(out, v);
  }
  out << "],\"rotation\":[";
  for (VertexId v = 0; v < g.size(); ++v) {
    if (v) out.put(',');
    out.put('[');
    auto nbrs = g.neighbors(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (i) out.put(',');
      write_uint(out, nbrs[i]);
    }
    out.put(']');
  }
  out.put(']');
  if (added_edges) {
    out << ",\"added_edges\":[";
    for (std::size_t i = 0; i < added_edges->size(); ++i) {
      if (i) out.put(',');
      out.put('[');
      write_uint(out, (*added_edges)[i].first);
      out.put(',');
      write_uint(out, (*added_edges)[i].second);
      out.put(']');
    }
    out.put(']');
  }
  out << "}\n";
}

void save_graph(const std::string& path, const RotationGraph& g,
                const std::vector<std::pair<VertexId, VertexId>>* added_edges) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path + " for writing");
  write_graph(out, g, added_edges);
  if (!out) throw FormatError("write to " + path + " failed");
}

GraphDocument read_graph(std::istream& in) {
  GraphSax sax;
  bool ok = json::sax_parse(in, &sax);
  if (!ok) throw FormatError(sax.error.empty() ? "malformed graph document" : sax.error);
  if (!sax.saw_rotation) throw FormatError("graph document has no rotation table");
  if (!sax.meta.is_object()) throw FormatError("graph meta must be an object");
  auto fmt = sax.meta.find("format");
  if (fmt == sax.meta.end() || !fmt->is_string())
    throw FormatError("graph document carries no format tag");
  if (fmt->get<std::string>() != kGraphFormat) {
    throw FormatError("graph format mismatch: file is '" + fmt->get<std::string>() + "', expected '" +
                      kGraphFormat + "'");
  }
  std::vector<std::uint8_t> flags(sax.offsets.size() - 1, 0);
  for (VertexId b : sax.boundary) {
    if (b >= flags.size()) throw FormatError("boundary id out of range");
    flags[b] = 1;
  }
  GraphDocument doc;
  try {
    doc.graph = RotationGraph(std::move(sax.offsets), std::move(sax.neighbors), std::move(flags),
                              std::move(sax.meta));
  } catch (const StructuralError& e) {
    throw FormatError(std::string("invalid rotation system: ") + e.what());
  }
  doc.added_edges = std::move(sax.added);
  doc.has_added_edges = sax.saw_added;
  return doc;
}

GraphDocument load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  return read_graph(in);
}

std::string graph_to_string(const RotationGraph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

}  // namespace hypsite
