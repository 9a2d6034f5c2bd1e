#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace steiner {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Raised when a requested enumeration or computation exceeds the supported size.
class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/*
 * Labeled tree on vertices 0..vertex_count()-1.
 *
 * Construction validates the tree invariants (|E| = |V| - 1, no loops, no
 * repeated edges, connected) and throws std::invalid_argument otherwise.
 * Edges are stored normalized (u < v) and sorted.
 */
class Tree {
 public:
  Tree(int vertex_count, std::vector<Edge> edges);

  static Tree path(int vertex_count);
  static Tree star(int vertex_count);  // center 0
  static Tree from_pruefer(int vertex_count, const std::vector<int>& code);

  int vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }
  bool has_edge(Vertex u, Vertex v) const;
  std::vector<Vertex> leaves() const;

  /// Tree with `v` removed and the remaining vertices relabeled in order;
  /// `v` must be a leaf and the tree must have at least 2 vertices.
  Tree remove_leaf(Vertex v) const;

  bool operator==(const Tree& other) const {
    return vertex_count_ == other.vertex_count_ && edges_ == other.edges_;
  }

 private:
  int vertex_count_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
};

/// Relabeling-invariant identifier of an unlabeled tree.
struct CanonicalCode {
  std::string code;

  auto operator<=>(const CanonicalCode&) const = default;
};

CanonicalCode canonical_code(const Tree& t);

/// The two components of T - e. `side_a` holds edge endpoint `edge.first`.
struct EdgeCut {
  Edge edge;
  std::vector<Vertex> side_a;
  std::vector<Vertex> side_b;
};

EdgeCut edge_cut(const Tree& t, Edge e);

enum class TreeEnumeration { labeled, unlabeled };

inline constexpr int kMaxEnumerationVertices = 10;
inline constexpr int kMaxMaterializedLabeledVertices = 8;

/// All labeled trees (Pruefer order) or one representative per isomorphism
/// class (sorted by canonical code).
std::vector<Tree> enumerate_trees(int vertex_count, TreeEnumeration mode);

/// Streams every labeled tree on `vertex_count` vertices without materializing.
void for_each_labeled_tree(int vertex_count, const std::function<void(const Tree&)>& visit);

// Text format: "n <count>" then one "u v" line per edge; graph6 is detected by
// the absence of the leading "n".
Tree parse_tree(std::string_view text);
std::string to_text(const Tree& t);
std::string to_graph6(const Tree& t);
Tree from_graph6(std::string_view g6);

}  // namespace steiner
