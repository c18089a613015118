#include "treepin/model.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "treepin/errors.hpp"
#include "treepin/linalg.hpp"

namespace treepin {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view token, const std::string& what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError("expected integer for " + what + ", got '" + std::string(token) + "'");
  }
  return v;
}

std::string_view expect_key(std::string_view token, std::string_view key) {
  if (token.substr(0, key.size()) != key) {
    throw ParseError("expected '" + std::string(key) + "...', got '" + std::string(token) + "'");
  }
  return token.substr(key.size());
}

// Content lines with comments and blank lines removed.
std::vector<std::string_view> content_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;
    out.push_back(line);
  }
  return out;
}

}  // namespace

TreePinSource::TreePinSource(std::uint32_t q, int vertex_count, std::vector<Edge> edges)
    : q_(q), vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (!is_prime(q_)) throw ValidationError("q = " + std::to_string(q_) + " is not prime");
  if (vertex_count_ < 2) throw ValidationError("a tree needs at least 2 vertices");
  if (edges_.size() != static_cast<std::size_t>(vertex_count_ - 1)) {
    throw ValidationError("graph is not a tree: |E| must equal |V| - 1");
  }
  std::set<int> ids;
  DisjointSets sets(static_cast<std::size_t>(vertex_count_));
  for (const auto& e : edges_) {
    if (!ids.insert(e.id).second) throw ValidationError("duplicate edge id " + std::to_string(e.id));
    if (e.u < 0 || e.v < 0 || e.u >= vertex_count_ || e.v >= vertex_count_) {
      throw ValidationError("edge " + std::to_string(e.id) + " endpoint out of range");
    }
    if (e.multiplicity == 0) throw ValidationError("edge " + std::to_string(e.id) + " multiplicity must be >= 1");
    if (e.u == e.v || !sets.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v))) {
      throw ValidationError("graph is not a tree: edge " + std::to_string(e.id) + " closes a cycle");
    }
  }
  field_ = ExtField::make(q_, 1);
  for (const auto& e : edges_) {
    ranges_.push_back({total_dim_, total_dim_ + e.multiplicity});
    total_dim_ += e.multiplicity;
  }
}

std::size_t TreePinSource::min_multiplicity() const {
  std::size_t s = edges_.empty() ? 0 : edges_.front().multiplicity;
  for (const auto& e : edges_) s = std::min(s, e.multiplicity);
  return s;
}

std::size_t TreePinSource::edge_index(int edge_id) const {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].id == edge_id) return i;
  }
  throw ValidationError("unknown edge id " + std::to_string(edge_id));
}

std::vector<std::size_t> TreePinSource::incident_edges(int node) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].u == node || edges_[i].v == node) out.push_back(i);
  }
  return out;
}

int TreePinSource::other_end(std::size_t edge_index, int node) const {
  const auto& e = edges_.at(edge_index);
  return e.u == node ? e.v : e.u;
}

NodeView TreePinSource::node_view(int node) const {
  if (node < 0 || node >= vertex_count_) throw ValidationError("unknown node " + std::to_string(node));
  NodeView view;
  view.node = node;
  for (auto idx : incident_edges(node)) {
    for (std::size_t c = ranges_[idx].begin; c < ranges_[idx].end; ++c) view.coords.push_back(c);
  }
  std::sort(view.coords.begin(), view.coords.end());
  view.selector = FMatrix(field_, total_dim_, view.coords.size());
  for (std::size_t j = 0; j < view.coords.size(); ++j) view.selector(view.coords[j], j) = Elem{1};
  return view;
}

FMatrix TreePinSource::edge_selector(std::size_t edge_index) const {
  const auto r = ranges_.at(edge_index);
  FMatrix sel(field_, total_dim_, r.size());
  for (std::size_t k = 0; k < r.size(); ++k) sel(r.begin + k, k) = Elem{1};
  return sel;
}

TreePinSource TreePinSource::with_multiplicity(std::size_t edge_index, std::size_t multiplicity) const {
  auto edges = edges_;
  edges.at(edge_index).multiplicity = multiplicity;
  return TreePinSource(q_, vertex_count_, std::move(edges));
}

void validate_wiretapper(const TreePinSource& source, const FMatrix& w) {
  if (w.rows() != source.total_dim()) throw ValidationError("W must have D = sum of multiplicities rows");
  if (!w.field().same_as(*source.base_field())) throw ValidationError("W must be over the base field F_q");
  if (rank(w) != w.cols()) throw ValidationError("W not full column rank");
}

Instance load_instance(std::string_view text) {
  const auto lines = content_lines(text);
  std::size_t at = 0;
  auto next = [&](const char* what) {
    if (at >= lines.size()) throw ParseError(std::string("unexpected end of instance, expected ") + what);
    return split_ws(lines[at++]);
  };

  auto header = next("header");
  if (header.size() != 2 || header[0] != "treepin") throw ParseError("first line must be 'treepin q=<prime>'");
  const auto q = parse_number<std::uint32_t>(expect_key(header[1], "q="), "q");

  auto vert = next("vertices line");
  if (vert.size() != 2 || vert[0] != "vertices") throw ParseError("second line must be 'vertices <m>'");
  const auto m = parse_number<int>(vert[1], "vertex count");

  std::vector<Edge> edges;
  std::vector<std::string_view> tokens;
  for (;;) {
    tokens = next("edge or wiretap line");
    if (tokens.empty() || tokens[0] != "edge") break;
    if (tokens.size() != 5) throw ParseError("edge line must be 'edge <id> <u> <v> <n_e>'");
    edges.push_back({parse_number<int>(tokens[1], "edge id"), parse_number<int>(tokens[2], "endpoint"),
                     parse_number<int>(tokens[3], "endpoint"), parse_number<std::size_t>(tokens[4], "multiplicity")});
  }
  if (tokens.size() != 2 || tokens[0] != "wiretap") throw ParseError("expected 'wiretap cols=<n_w>'");
  const auto nw = parse_number<std::size_t>(expect_key(tokens[1], "cols="), "wiretap columns");

  TreePinSource source(q, m, std::move(edges));
  FMatrix w(source.base_field(), source.total_dim(), nw);
  if (nw > 0) {
    for (std::size_t r = 0; r < source.total_dim(); ++r) {
      auto row = next("wiretap row");
      if (row.size() != nw) throw ParseError("wiretap row " + std::to_string(r) + " must have n_w entries");
      for (std::size_t c = 0; c < nw; ++c) {
        const auto v = parse_number<std::uint32_t>(row[c], "wiretap entry");
        if (v >= q) throw ParseError("wiretap entry out of range [0, q)");
        w(r, c) = Elem{v};
      }
    }
  }
  if (at != lines.size()) throw ParseError("trailing content after wiretap matrix");
  validate_wiretapper(source, w);
  return Instance{std::move(source), Wiretapper{std::move(w)}};
}

std::string save_instance(const Instance& instance) {
  const auto& src = instance.source;
  const auto& w = instance.wiretapper.matrix;
  std::ostringstream os;
  os << "treepin q=" << src.q() << '\n';
  os << "vertices " << src.vertex_count() << '\n';
  for (const auto& e : src.edges()) os << "edge " << e.id << ' ' << e.u << ' ' << e.v << ' ' << e.multiplicity << '\n';
  os << "wiretap cols=" << w.cols() << '\n';
  if (w.cols() > 0) {
    for (std::size_t r = 0; r < w.rows(); ++r) {
      for (std::size_t c = 0; c < w.cols(); ++c) os << (c ? " " : "") << w(r, c).value;
      os << '\n';
    }
  }
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
}

Instance read_instance_file(const std::string& path) { return load_instance(read_text_file(path)); }

Instance random_instance(std::uint64_t seed, int vertex_count, std::size_t max_multiplicity, std::uint32_t q,
                         std::size_t nw) {
  if (vertex_count < 2) throw ValidationError("random_instance: vertex_count must be >= 2");
  if (max_multiplicity < 1) throw ValidationError("random_instance: max_multiplicity must be >= 1");
  if (!is_prime(q)) throw ValidationError("q = " + std::to_string(q) + " is not prime");
  std::mt19937_64 rng(seed);

  // Prüfer decoding.
  const auto m = static_cast<std::size_t>(vertex_count);
  std::vector<std::size_t> code(m - 2);
  std::uniform_int_distribution<std::size_t> pick_vertex(0, m - 1);
  for (auto& c : code) c = pick_vertex(rng);
  std::vector<std::size_t> degree(m, 1);
  for (auto c : code) ++degree[c];
  std::vector<std::pair<int, int>> pairs;
  for (auto c : code) {
    std::size_t leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    pairs.emplace_back(static_cast<int>(leaf), static_cast<int>(c));
    --degree[leaf];
    --degree[c];
  }
  std::vector<int> last;
  for (std::size_t v = 0; v < m; ++v) {
    if (degree[v] == 1) last.push_back(static_cast<int>(v));
  }
  pairs.emplace_back(last[0], last[1]);

  std::uniform_int_distribution<std::size_t> pick_mult(1, max_multiplicity);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    edges.push_back({static_cast<int>(i), pairs[i].first, pairs[i].second, pick_mult(rng)});
  }
  TreePinSource source(q, vertex_count, std::move(edges));
  if (nw > source.total_dim()) throw ValidationError("random_instance: n_w exceeds D");

  std::uniform_int_distribution<std::uint32_t> pick_entry(0, q - 1);
  FMatrix w(source.base_field(), source.total_dim(), nw);
  do {
    for (auto& e : w.data()) e = Elem{pick_entry(rng)};
  } while (rank(w) != nw);
  return Instance{std::move(source), Wiretapper{std::move(w)}};
}

}  // namespace treepin
