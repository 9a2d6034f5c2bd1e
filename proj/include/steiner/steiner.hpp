#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "steiner/gmp_eigen.hpp"
#include "steiner/poly.hpp"
#include "steiner/tree.hpp"

namespace steiner {

/// Sorted vertex list with repetition.
using VertexMultiset = std::vector<Vertex>;

inline constexpr int kMaxOrder = 8;
inline constexpr int kMaxHypermatrixVertices = 10;

/// Edge count of the minimal subtree spanning the underlying set of `s`.
int steiner_distance(const Tree& t, std::span<const Vertex> s);

/// Independent brute force: smallest connected vertex superset of set(s).
int steiner_distance_oracle(const Tree& t, std::span<const Vertex> s);

/*
 * Steiner distances of every vertex subset, indexed by bitmask.
 *
 * The distance of a multiset only depends on its underlying set, so a tree on
 * at most kMaxHypermatrixVertices vertices has at most 1024 distinct values.
 */
class SteinerDistanceTable {
 public:
  explicit SteinerDistanceTable(const Tree& t);

  int vertex_count() const { return vertex_count_; }
  int operator()(std::uint32_t mask) const { return by_mask_[mask]; }
  int of(std::span<const Vertex> s) const;

 private:
  int vertex_count_;
  std::vector<int> by_mask_;
};

/// Symmetric order-k array of Steiner distances keyed by sorted multiset.
class SteinerHypermatrix {
 public:
  SteinerHypermatrix(int vertex_count, int order, std::map<VertexMultiset, int> entries)
      : vertex_count_(vertex_count), order_(order), entries_(std::move(entries)) {}

  int vertex_count() const { return vertex_count_; }
  int order() const { return order_; }
  const std::map<VertexMultiset, int>& entries() const { return entries_; }

  /// Entry at an arbitrary index tuple (any order of the k indices).
  int operator()(std::span<const Vertex> index) const;

 private:
  int vertex_count_;
  int order_;
  std::map<VertexMultiset, int> entries_;
};

SteinerHypermatrix build_hypermatrix(const Tree& t, int k);

nlohmann::json to_json(const SteinerHypermatrix& h);

/// sum over (k - |fixed|)-tuples i of d(fixed, i) x^i
HomogeneousForm contraction_form(const Tree& t, int k, std::span<const Vertex> fixed);

/// The k-form sum over all k-tuples of d(v_1..v_k) x_{v_1}...x_{v_k}.
HomogeneousForm steiner_polynomial(const Tree& t, int k);

/// g_r = sum over (k-1)-tuples i of d(r, i) x^i; k * g_r is the r-th partial of
/// the Steiner polynomial.
struct GradientSystem {
  int order;
  std::vector<HomogeneousForm> forms;
};

GradientSystem gradient_system(const Tree& t, int k);

/// Rows u, w of S = S(x^{k-2}, *, *) for an edge {u, w}: S_u - S_w is constant
/// on each side of the cut.
struct RowDifferenceDescriptor {
  EdgeCut cut;
  HomogeneousForm value_on_a;  // -(sum_{side_a} x)^{k-2}
  HomogeneousForm value_on_b;  //  (sum_{side_b} x)^{k-2}
  bool beyond_stated_scope;    // odd k

  const HomogeneousForm& value_at(Vertex w) const;
};

RowDifferenceDescriptor row_difference_form(const Tree& t, int k, Edge e);

/// Entry 2 - deg(v) at each vertex (leaf scale 1).
std::vector<Integer> forced_candidate(const Tree& t);

/// Classical pairwise distance matrix.
Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic> distance_matrix(const Tree& t);

/// sum_{v in side} x_v as a linear form in `var_count` variables.
HomogeneousForm side_sum(int var_count, std::span<const Vertex> side);

}  // namespace steiner
