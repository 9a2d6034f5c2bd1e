#include "steiner/tree.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <cctype>
#include <sstream>

namespace steiner {

Tree::Tree(int vertex_count, std::vector<Edge> edges) : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ < 1) throw std::invalid_argument("tree needs at least one vertex");
  if (static_cast<int>(edges_.size()) != vertex_count_ - 1)
    throw std::invalid_argument("tree on " + std::to_string(vertex_count_) + " vertices needs " +
                                std::to_string(vertex_count_ - 1) + " edges, got " +
                                std::to_string(edges_.size()));
  for (auto& [u, v] : edges_) {
    if (u < 0 || v < 0 || u >= vertex_count_ || v >= vertex_count_)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw std::invalid_argument("duplicate edge");

  adjacency_.assign(vertex_count_, {});
  for (const auto& [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());

  std::vector<bool> seen(vertex_count_, false);
  std::vector<Vertex> stack{0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : adjacency_[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != vertex_count_) throw std::invalid_argument("graph is not connected");
}

Tree Tree::path(int vertex_count) {
  std::vector<Edge> edges;
  for (int v = 0; v + 1 < vertex_count; ++v) edges.emplace_back(v, v + 1);
  return Tree(vertex_count, std::move(edges));
}

Tree Tree::star(int vertex_count) {
  std::vector<Edge> edges;
  for (int v = 1; v < vertex_count; ++v) edges.emplace_back(0, v);
  return Tree(vertex_count, std::move(edges));
}

Tree Tree::from_pruefer(int vertex_count, const std::vector<int>& code) {
  if (vertex_count < 2 || static_cast<int>(code.size()) != vertex_count - 2)
    throw std::invalid_argument("Pruefer code length must be vertex_count - 2");
  std::vector<int> degree(vertex_count, 1);
  for (int c : code) {
    if (c < 0 || c >= vertex_count) throw std::invalid_argument("Pruefer entry out of range");
    ++degree[c];
  }
  std::set<int> leaves;
  for (int v = 0; v < vertex_count; ++v)
    if (degree[v] == 1) leaves.insert(v);
  std::vector<Edge> edges;
  edges.reserve(vertex_count - 1);
  for (int c : code) {
    int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.emplace_back(leaf, c);
    if (--degree[c] == 1) leaves.insert(c);
  }
  int u = *leaves.begin();
  int v = *std::next(leaves.begin());
  edges.emplace_back(u, v);
  return Tree(vertex_count, std::move(edges));
}

bool Tree::has_edge(Vertex u, Vertex v) const {
  if (u < 0 || u >= vertex_count_ || v < 0 || v >= vertex_count_) return false;
  return std::binary_search(adjacency_[u].begin(), adjacency_[u].end(), v);
}

std::vector<Vertex> Tree::leaves() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < vertex_count_; ++v)
    if (degree(v) == 1) out.push_back(v);
  return out;
}

Tree Tree::remove_leaf(Vertex v) const {
  if (vertex_count_ < 2 || degree(v) != 1) throw std::invalid_argument("remove_leaf: vertex is not a leaf");
  auto relabel = [v](Vertex w) { return w > v ? w - 1 : w; };
  std::vector<Edge> edges;
  for (const auto& [a, b] : edges_)
    if (a != v && b != v) edges.emplace_back(relabel(a), relabel(b));
  return Tree(vertex_count_ - 1, std::move(edges));
}

namespace {

std::vector<Vertex> centers(const Tree& t) {
  const int n = t.vertex_count();
  if (n <= 2) {
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  std::vector<int> degree(n);
  std::vector<Vertex> layer;
  for (Vertex v = 0; v < n; ++v) {
    degree[v] = t.degree(v);
    if (degree[v] == 1) layer.push_back(v);
  }
  int remaining = n;
  while (remaining > 2) {
    remaining -= static_cast<int>(layer.size());
    std::vector<Vertex> next;
    for (Vertex v : layer) {
      for (Vertex w : t.neighbors(v)) {
        if (--degree[w] == 1) next.push_back(w);
      }
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

std::string rooted_code(const Tree& t, Vertex v, Vertex parent) {
  std::vector<std::string> children;
  for (Vertex w : t.neighbors(v))
    if (w != parent) children.push_back(rooted_code(t, w, v));
  std::sort(children.begin(), children.end());
  std::string out = "(";
  for (const auto& c : children) out += c;
  out += ')';
  return out;
}

}  // namespace

CanonicalCode canonical_code(const Tree& t) {
  std::string best;
  for (Vertex c : centers(t)) {
    std::string code = rooted_code(t, c, -1);
    if (best.empty() || code < best) best = std::move(code);
  }
  return {best};
}

EdgeCut edge_cut(const Tree& t, Edge e) {
  const auto [a, b] = e;
  if (!t.has_edge(a, b))
    throw std::invalid_argument("edge_cut: {" + std::to_string(a) + "," + std::to_string(b) + "} is not an edge");
  std::vector<bool> on_a(t.vertex_count(), false);
  std::vector<Vertex> stack{a};
  on_a[a] = true;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : t.neighbors(v)) {
      if (on_a[w] || (v == a && w == b)) continue;
      on_a[w] = true;
      stack.push_back(w);
    }
  }
  EdgeCut cut{e, {}, {}};
  for (Vertex v = 0; v < t.vertex_count(); ++v) (on_a[v] ? cut.side_a : cut.side_b).push_back(v);
  return cut;
}

void for_each_labeled_tree(int vertex_count, const std::function<void(const Tree&)>& visit) {
  if (vertex_count < 1 || vertex_count > kMaxEnumerationVertices)
    throw SizeLimitError("tree enumeration supports 1 <= v_count <= " + std::to_string(kMaxEnumerationVertices));
  if (vertex_count == 1) {
    visit(Tree(1, {}));
    return;
  }
  if (vertex_count == 2) {
    visit(Tree(2, {{0, 1}}));
    return;
  }
  std::vector<int> code(vertex_count - 2, 0);
  while (true) {
    visit(Tree::from_pruefer(vertex_count, code));
    int i = static_cast<int>(code.size()) - 1;
    while (i >= 0 && code[i] == vertex_count - 1) code[i--] = 0;
    if (i < 0) break;
    ++code[i];
  }
}

std::vector<Tree> enumerate_trees(int vertex_count, TreeEnumeration mode) {
  if (vertex_count < 1 || vertex_count > kMaxEnumerationVertices)
    throw SizeLimitError("tree enumeration supports 1 <= v_count <= " + std::to_string(kMaxEnumerationVertices));

  if (mode == TreeEnumeration::labeled) {
    if (vertex_count > kMaxMaterializedLabeledVertices)
      throw SizeLimitError("labeled trees are materialized only up to v_count = " +
                           std::to_string(kMaxMaterializedLabeledVertices) + "; use for_each_labeled_tree");
    std::vector<Tree> out;
    for_each_labeled_tree(vertex_count, [&](const Tree& t) { out.push_back(t); });
    return out;
  }

  // Every tree on n >= 2 vertices is a tree on n - 1 vertices plus a leaf, so
  // extending each class representative at every vertex reaches all classes.
  std::map<CanonicalCode, Tree> classes;
  classes.emplace(canonical_code(Tree(1, {})), Tree(1, {}));
  for (int n = 2; n <= vertex_count; ++n) {
    std::map<CanonicalCode, Tree> next;
    for (const auto& [code, t] : classes) {
      for (Vertex v = 0; v < t.vertex_count(); ++v) {
        auto edges = t.edges();
        edges.emplace_back(v, n - 1);
        Tree grown(n, std::move(edges));
        next.try_emplace(canonical_code(grown), std::move(grown));
      }
    }
    classes = std::move(next);
  }
  std::vector<Tree> out;
  out.reserve(classes.size());
  for (auto& [code, t] : classes) out.push_back(std::move(t));
  return out;
}

std::string to_text(const Tree& t) {
  std::ostringstream os;
  os << "n " << t.vertex_count() << '\n';
  for (const auto& [u, v] : t.edges()) os << u << ' ' << v << '\n';
  return os.str();
}

std::string to_graph6(const Tree& t) {
  const int n = t.vertex_count();
  if (n > 62) throw SizeLimitError("graph6 short form supports at most 62 vertices");
  std::string out(1, static_cast<char>(n + 63));
  int bits = 0;
  int acc = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (t.has_edge(i, j) ? 1 : 0);
      if (++bits == 6) {
        out += static_cast<char>(acc + 63);
        bits = acc = 0;
      }
    }
  }
  if (bits > 0) out += static_cast<char>((acc << (6 - bits)) + 63);
  return out;
}

Tree from_graph6(std::string_view g6) {
  if (g6.rfind(">>graph6<<", 0) == 0) g6.remove_prefix(10);
  if (g6.empty()) throw std::invalid_argument("empty graph6 string");
  const int n = g6[0] - 63;
  if (n < 1 || n > 62) throw std::invalid_argument("graph6: unsupported vertex count");
  const std::size_t need = (static_cast<std::size_t>(n) * (n - 1) / 2 + 5) / 6;
  if (g6.size() != need + 1) throw std::invalid_argument("graph6: wrong length");
  std::vector<Edge> edges;
  std::size_t bit = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++bit) {
      const int byte = g6[1 + bit / 6] - 63;
      if (byte < 0 || byte > 63) throw std::invalid_argument("graph6: invalid character");
      if ((byte >> (5 - bit % 6)) & 1) edges.emplace_back(i, j);
    }
  }
  return Tree(n, std::move(edges));
}

Tree parse_tree(std::string_view text) {
  std::size_t start = text.find_first_not_of(" \t\r\n");
  if (start == std::string_view::npos) throw std::invalid_argument("empty tree description");
  text.remove_prefix(start);
  if (text[0] != 'n' || text.size() < 2 || !std::isspace(static_cast<unsigned char>(text[1]))) {
    std::size_t end = text.find_first_of(" \t\r\n");
    return from_graph6(text.substr(0, end));
  }
  std::istringstream in{std::string(text)};
  std::string tag;
  int n = 0;
  if (!(in >> tag >> n)) throw std::invalid_argument("tree text: expected 'n <v_count>' header");
  std::vector<Edge> edges;
  int u = 0, v = 0;
  while (in >> u >> v) edges.emplace_back(u, v);
  if (!in.eof()) throw std::invalid_argument("tree text: malformed edge line");
  return Tree(n, std::move(edges));
}

}  // namespace steiner
