#include "steiner/steiner.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace steiner {

namespace {

std::uint32_t mask_of(const Tree& t, std::span<const Vertex> s) {
  if (s.empty()) throw std::invalid_argument("Steiner distance of an empty vertex multiset");
  std::uint32_t mask = 0;
  for (Vertex v : s) {
    if (v < 0 || v >= t.vertex_count())
      throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
    mask |= 1u << v;
  }
  return mask;
}

// Parent pointers and a root-first order for the tree rooted at vertex 0.
struct RootedOrder {
  std::vector<Vertex> parent;
  std::vector<Vertex> order;
};

RootedOrder root_at_zero(const Tree& t) {
  RootedOrder r{std::vector<Vertex>(t.vertex_count(), -1), {0}};
  for (std::size_t i = 0; i < r.order.size(); ++i) {
    Vertex v = r.order[i];
    for (Vertex w : t.neighbors(v)) {
      if (w == r.parent[v]) continue;
      r.parent[w] = v;
      r.order.push_back(w);
    }
  }
  return r;
}

// An edge lies on the Steiner tree of S iff both components of T - e meet S.
int distance_by_cuts(const RootedOrder& rooted, std::uint32_t mask) {
  const int total = std::popcount(mask);
  std::vector<int> below(rooted.parent.size(), 0);
  int edges = 0;
  for (auto it = rooted.order.rbegin(); it != rooted.order.rend(); ++it) {
    Vertex v = *it;
    if (mask & (1u << v)) ++below[v];
    if (rooted.parent[v] < 0) continue;
    if (below[v] > 0 && below[v] < total) ++edges;
    below[rooted.parent[v]] += below[v];
  }
  return edges;
}

void check_size(const Tree& t, int k) {
  if (k < 1 || k > kMaxOrder) throw SizeLimitError("order k must lie in [1, " + std::to_string(kMaxOrder) + "]");
  if (t.vertex_count() > kMaxHypermatrixVertices)
    throw SizeLimitError("at most " + std::to_string(kMaxHypermatrixVertices) + " vertices supported");
}

}  // namespace

int steiner_distance(const Tree& t, std::span<const Vertex> s) {
  if (t.vertex_count() > 32) throw SizeLimitError("steiner_distance: at most 32 vertices");
  return distance_by_cuts(root_at_zero(t), mask_of(t, s));
}

int steiner_distance_oracle(const Tree& t, std::span<const Vertex> s) {
  const int n = t.vertex_count();
  if (n > kMaxHypermatrixVertices) throw SizeLimitError("oracle supports at most 10 vertices");
  const std::uint32_t required = mask_of(t, s);
  const std::uint32_t free_vertices = ((1u << n) - 1) & ~required;
  int best = n;
  // Walk every superset of `required`; an induced subgraph on U that is
  // connected contains a spanning tree with |U| - 1 edges.
  for (std::uint32_t extra = 0;; extra = (extra - free_vertices) & free_vertices) {
    const std::uint32_t u = extra | required;
    const int size = std::popcount(u);
    if (size - 1 < best) {
      const Vertex start = std::countr_zero(u);
      std::uint32_t seen = 1u << start;
      std::vector<Vertex> stack{start};
      while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : t.neighbors(v)) {
          const std::uint32_t bit = 1u << w;
          if ((u & bit) && !(seen & bit)) {
            seen |= bit;
            stack.push_back(w);
          }
        }
      }
      if (seen == u) best = size - 1;
    }
    if (extra == free_vertices) break;
  }
  return best;
}

SteinerDistanceTable::SteinerDistanceTable(const Tree& t) : vertex_count_(t.vertex_count()) {
  if (vertex_count_ > kMaxHypermatrixVertices)
    throw SizeLimitError("distance table supports at most 10 vertices");
  const RootedOrder rooted = root_at_zero(t);
  by_mask_.assign(std::size_t{1} << vertex_count_, 0);
  for (std::uint32_t mask = 1; mask < by_mask_.size(); ++mask) by_mask_[mask] = distance_by_cuts(rooted, mask);
}

int SteinerDistanceTable::of(std::span<const Vertex> s) const {
  std::uint32_t mask = 0;
  for (Vertex v : s) mask |= 1u << v;
  return by_mask_[mask];
}

int SteinerHypermatrix::operator()(std::span<const Vertex> index) const {
  if (static_cast<int>(index.size()) != order_) throw std::invalid_argument("hypermatrix index has wrong length");
  VertexMultiset key(index.begin(), index.end());
  std::sort(key.begin(), key.end());
  auto it = entries_.find(key);
  if (it == entries_.end()) throw std::invalid_argument("hypermatrix index out of range");
  return it->second;
}

SteinerHypermatrix build_hypermatrix(const Tree& t, int k) {
  check_size(t, k);
  const SteinerDistanceTable table(t);
  std::map<VertexMultiset, int> entries;
  // Exponent vectors of degree k enumerate the size-k multisets.
  for (const Monomial& m : monomials_of_degree(t.vertex_count(), k)) {
    VertexMultiset s;
    std::uint32_t mask = 0;
    for (Vertex v = 0; v < t.vertex_count(); ++v) {
      s.insert(s.end(), m[v], v);
      if (m[v] > 0) mask |= 1u << v;
    }
    entries.emplace(std::move(s), table(mask));
  }
  return SteinerHypermatrix(t.vertex_count(), k, std::move(entries));
}

nlohmann::json to_json(const SteinerHypermatrix& h) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [s, d] : h.entries()) entries.push_back({{"multiset", s}, {"d", d}});
  return {{"v_count", h.vertex_count()}, {"k", h.order()}, {"entries", std::move(entries)}};
}

HomogeneousForm contraction_form(const Tree& t, int k, std::span<const Vertex> fixed) {
  check_size(t, k);
  const int free_slots = k - static_cast<int>(fixed.size());
  if (free_slots < 0) throw std::invalid_argument("contraction_form: more fixed indices than the order");
  std::uint32_t fixed_mask = 0;
  for (Vertex v : fixed) {
    if (v < 0 || v >= t.vertex_count()) throw std::invalid_argument("contraction_form: vertex out of range");
    fixed_mask |= 1u << v;
  }
  const SteinerDistanceTable table(t);
  HomogeneousForm f(t.vertex_count(), free_slots);
  for (const Monomial& m : monomials_of_degree(t.vertex_count(), free_slots)) {
    std::uint32_t mask = fixed_mask;
    for (Vertex v = 0; v < t.vertex_count(); ++v)
      if (m[v] > 0) mask |= 1u << v;
    const int d = mask == 0 ? 0 : table(mask);
    if (d != 0) f.add_term(m, multinomial(m) * d);
  }
  return f;
}

HomogeneousForm steiner_polynomial(const Tree& t, int k) { return contraction_form(t, k, {}); }

GradientSystem gradient_system(const Tree& t, int k) {
  if (k < 2) throw std::invalid_argument("gradient_system: order must be at least 2");
  GradientSystem g{k, {}};
  g.forms.reserve(t.vertex_count());
  for (Vertex r = 0; r < t.vertex_count(); ++r) {
    const Vertex fixed[] = {r};
    g.forms.push_back(contraction_form(t, k, fixed));
  }
  return g;
}

HomogeneousForm side_sum(int var_count, std::span<const Vertex> side) {
  std::vector<Integer> coefficients(var_count, 0);
  for (Vertex v : side) coefficients.at(v) = 1;
  return HomogeneousForm::linear(coefficients);
}

const HomogeneousForm& RowDifferenceDescriptor::value_at(Vertex w) const {
  return std::binary_search(cut.side_a.begin(), cut.side_a.end(), w) ? value_on_a : value_on_b;
}

RowDifferenceDescriptor row_difference_form(const Tree& t, int k, Edge e) {
  if (k < 2) throw std::invalid_argument("row_difference_form: order must be at least 2");
  check_size(t, k);
  EdgeCut cut = edge_cut(t, e);
  const int n = t.vertex_count();
  HomogeneousForm on_a = -pow(side_sum(n, cut.side_a), k - 2);
  HomogeneousForm on_b = pow(side_sum(n, cut.side_b), k - 2);
  return {std::move(cut), std::move(on_a), std::move(on_b), k % 2 == 1};
}

std::vector<Integer> forced_candidate(const Tree& t) {
  if (t.vertex_count() < 2) throw std::invalid_argument("forced_candidate: tree needs at least 2 vertices");
  std::vector<Integer> out(t.vertex_count());
  for (Vertex v = 0; v < t.vertex_count(); ++v) out[v] = 2 - t.degree(v);
  return out;
}

Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic> distance_matrix(const Tree& t) {
  const int n = t.vertex_count();
  if (n > 32) throw SizeLimitError("distance_matrix: at most 32 vertices");
  const RootedOrder rooted = root_at_zero(t);
  Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic> d(n, n);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = 0; j < n; ++j) d(i, j) = i == j ? 0 : distance_by_cuts(rooted, (1u << i) | (1u << j));
  return d;
}

}  // namespace steiner
