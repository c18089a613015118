#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "treepin/matrix.hpp"

namespace treepin {

struct Edge {
  int id = 0;
  int u = 0;
  int v = 0;
  std::size_t multiplicity = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Half-open coordinate range of the base vector X.
struct CoordRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
};

/// What a single terminal sees: the union of its incident edges' ranges.
struct NodeView {
  int node = 0;
  std::vector<std::size_t> coords;  // ascending
  FMatrix selector;                 // D x |coords|, standard basis columns
};

/// Tree-PIN source: each edge carries `multiplicity` i.i.d. uniform F_q
/// symbols seen by both endpoints. Edge order fixes the layout of X.
class TreePinSource {
 public:
  TreePinSource() = default;
  /// Validates tree-ness, endpoint ranges, unique ids and multiplicities.
  TreePinSource(std::uint32_t q, int vertex_count, std::vector<Edge> edges);

  std::uint32_t q() const { return q_; }
  const FieldPtr& base_field() const { return field_; }
  int vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t total_dim() const { return total_dim_; }
  std::size_t min_multiplicity() const;

  CoordRange range(std::size_t edge_index) const { return ranges_[edge_index]; }
  /// Position of the edge with this id in layout order; throws if unknown.
  std::size_t edge_index(int edge_id) const;
  /// Layout indices of edges incident to a vertex, ascending.
  std::vector<std::size_t> incident_edges(int node) const;
  std::size_t degree(int node) const { return incident_edges(node).size(); }
  bool is_leaf(int node) const { return degree(node) == 1; }
  int other_end(std::size_t edge_index, int node) const;

  NodeView node_view(int node) const;
  /// D x n_e standard basis columns of one edge block.
  FMatrix edge_selector(std::size_t edge_index) const;

  /// Same topology with one edge's multiplicity replaced.
  TreePinSource with_multiplicity(std::size_t edge_index, std::size_t multiplicity) const;

  friend bool operator==(const TreePinSource& a, const TreePinSource& b) {
    return a.q_ == b.q_ && a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

 private:
  std::uint32_t q_ = 2;
  FieldPtr field_;
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<CoordRange> ranges_;
  std::size_t total_dim_ = 0;
};

/// Linear wiretapper Z_w = X W with W of full column rank (n_w may be 0).
struct Wiretapper {
  FMatrix matrix;
  std::size_t nw() const { return matrix.cols(); }

  friend bool operator==(const Wiretapper&, const Wiretapper&) = default;
};

struct Instance {
  TreePinSource source;
  Wiretapper wiretapper;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Checks shape and full column rank of W against the source.
void validate_wiretapper(const TreePinSource& source, const FMatrix& w);

Instance load_instance(std::string_view text);
std::string save_instance(const Instance& instance);
Instance read_instance_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

/// Uniform labelled tree from a random Prüfer sequence, multiplicities uniform
/// in [1, max_multiplicity], W from `nw` random columns resampled until full
/// column rank. Deterministic for a given seed.
Instance random_instance(std::uint64_t seed, int vertex_count, std::size_t max_multiplicity, std::uint32_t q,
                         std::size_t nw);

}  // namespace treepin
