#include "navq/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <queue>
#include <set>

#include "json.hpp"

namespace navq {

int Graph::node_index(const std::string& name) const {
  auto it = std::find(nodes.begin(), nodes.end(), name);
  return it == nodes.end() ? -1 : static_cast<int>(it - nodes.begin());
}

int Graph::label_index(const std::string& name) const {
  auto it = std::find(labels.begin(), labels.end(), name);
  return it == labels.end() ? -1 : static_cast<int>(it - labels.begin());
}

void Graph::add_edge(int from, int to, const std::string& label) {
  int li = label_index(label);
  if (li < 0) {
    labels.push_back(label);
    edges.emplace_back();
    li = static_cast<int>(labels.size()) - 1;
  }
  if (edges.size() < labels.size()) edges.resize(labels.size());
  auto& es = edges[li];
  Edge e{from, to};
  auto it = std::lower_bound(es.begin(), es.end(), e);
  if (it == es.end() || *it != e) es.insert(it, e);
}

bool Graph::operator==(const Graph& o) const {
  return nodes == o.nodes && labels == o.labels && edges == o.edges;
}

Graph make_graph(const std::vector<std::string>& nodes, const std::vector<std::string>& labels,
                 const std::vector<std::tuple<std::string, std::string, std::string>>& edges) {
  Graph g;
  g.nodes = nodes;
  g.labels = labels;
  g.edges.resize(labels.size());
  for (const auto& [from, to, label] : edges) {
    int f = g.node_index(from);
    int t = g.node_index(to);
    if (f < 0 || t < 0) throw std::invalid_argument("edge endpoint not a node: " + from + "->" + to);
    if (g.label_index(label) < 0) throw std::invalid_argument("edge label not declared: " + label);
    g.add_edge(f, t, label);
  }
  return g;
}

const char* kind_name(GraphKind k) {
  switch (k) {
    case GraphKind::kTree:
      return "tree";
    case GraphKind::kChain:
      return "chain";
    case GraphKind::kForest:
      return "forest";
    case GraphKind::kGeneral:
      return "general";
  }
  return "general";
}

TreeCertificate classify(const Graph& g) {
  const int n = g.num_nodes();
  TreeCertificate cert;
  if (n == 0) return cert;
  std::vector<std::set<int>> succ(n), pred(n);
  for (const auto& es : g.edges)
    for (auto [a, b] : es) {
      succ[a].insert(b);
      pred[b].insert(a);
    }
  // Kahn's algorithm for acyclicity.
  std::vector<int> indeg(n);
  std::queue<int> ready;
  for (int i = 0; i < n; ++i) {
    indeg[i] = static_cast<int>(pred[i].size());
    if (indeg[i] == 0) ready.push(i);
  }
  int seen = 0;
  while (!ready.empty()) {
    int v = ready.front();
    ready.pop();
    ++seen;
    for (int w : succ[v])
      if (--indeg[w] == 0) ready.push(w);
  }
  if (seen != n) return cert;
  int roots = 0;
  bool max_one_parent = true;
  bool max_one_child = true;
  for (int i = 0; i < n; ++i) {
    if (pred[i].empty()) ++roots;
    if (pred[i].size() > 1) max_one_parent = false;
    if (succ[i].size() > 1) max_one_child = false;
  }
  if (!max_one_parent) return cert;
  if (roots != 1) {
    cert.kind = GraphKind::kForest;
    return cert;
  }
  int root = 0;
  while (!pred[root].empty()) ++root;
  cert.kind = max_one_child ? GraphKind::kChain : GraphKind::kTree;
  cert.root = root;
  cert.node_depth.assign(n, 0);
  std::queue<int> q;
  q.push(root);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : succ[v]) {
      cert.node_depth[w] = cert.node_depth[v] + 1;
      cert.depth = std::max(cert.depth, cert.node_depth[w]);
      q.push(w);
    }
  }
  return cert;
}

bool validate_single_labeled(const Graph& g) {
  std::set<Edge> seen;
  for (const auto& es : g.edges)
    for (const auto& e : es)
      if (!seen.insert(e).second) return false;
  return true;
}

std::vector<std::string> default_labels(int count) {
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) {
    std::string s;
    int k = i;
    do {
      s.insert(s.begin(), static_cast<char>('a' + k % 26));
      k = k / 26 - 1;
    } while (k >= 0);
    out.push_back(s);
  }
  return out;
}

namespace {

Graph blank(int n, const std::vector<std::string>& labels) {
  Graph g;
  for (int i = 0; i < n; ++i) g.nodes.push_back("n" + std::to_string(i));
  g.labels = labels;
  g.edges.resize(labels.size());
  return g;
}

}  // namespace

Graph tree_from_parents(const std::vector<int>& parent, const std::vector<int>& label_of,
                        const std::vector<std::string>& labels) {
  Graph g = blank(static_cast<int>(parent.size()), labels);
  for (std::size_t i = 1; i < parent.size(); ++i) g.edges[label_of[i]].push_back({parent[i], static_cast<int>(i)});
  for (auto& es : g.edges) std::sort(es.begin(), es.end());
  return g;
}

Graph chain_from_word(const std::vector<int>& word, const std::vector<std::string>& labels) {
  std::vector<int> parent(word.size() + 1), label_of(word.size() + 1, 0);
  for (std::size_t i = 1; i <= word.size(); ++i) {
    parent[i] = static_cast<int>(i) - 1;
    label_of[i] = word[i - 1];
  }
  return tree_from_parents(parent, label_of, labels);
}

const char* class_name(GraphClass c) {
  switch (c) {
    case GraphClass::kLabeledTree:
      return "labeled-tree";
    case GraphClass::kUnlabeledTree:
      return "unlabeled-tree";
    case GraphClass::kLabeledChain:
      return "labeled-chain";
    case GraphClass::kUnlabeledChain:
      return "unlabeled-chain";
    case GraphClass::kLabeledGraph:
      return "labeled-graph";
  }
  return "labeled-graph";
}

GraphClass parse_class(const std::string& name) {
  for (GraphClass c : {GraphClass::kLabeledTree, GraphClass::kUnlabeledTree, GraphClass::kLabeledChain,
                       GraphClass::kUnlabeledChain, GraphClass::kLabeledGraph})
    if (name == class_name(c)) return c;
  throw std::invalid_argument("unknown graph class '" + name + "'");
}

bool is_labeled(GraphClass c) {
  return c == GraphClass::kLabeledTree || c == GraphClass::kLabeledChain || c == GraphClass::kLabeledGraph;
}

std::size_t instance_ceiling() {
  if (const char* v = std::getenv("NAVQ_MAX_INSTANCES")) {
    char* end = nullptr;
    unsigned long long x = std::strtoull(v, &end, 10);
    if (end != v && x > 0) return static_cast<std::size_t>(x);
  }
  return 2'000'000;
}

void for_each_tree(int max_nodes, const std::vector<std::string>& labels, bool chains_only,
                   const std::function<bool(const Graph&)>& visit) {
  if (max_nodes < 1 || labels.empty()) throw std::invalid_argument("need max_nodes >= 1 and a label");
  const int nl = static_cast<int>(labels.size());
  for (int n = 1; n <= max_nodes; ++n) {
    std::vector<int> parent(n, 0);
    for (int i = 1; i < n; ++i) parent[i] = chains_only ? i - 1 : 0;
    for (;;) {
      std::vector<int> label_of(n, 0);
      for (;;) {
        if (!visit(tree_from_parents(parent, label_of, labels))) return;
        int i = n - 1;
        while (i >= 1 && label_of[i] == nl - 1) label_of[i--] = 0;
        if (i < 1) break;
        ++label_of[i];
      }
      if (chains_only) break;
      // Next non-decreasing parent array with parent[i] < i.
      int i = n - 1;
      while (i >= 1 && parent[i] == i - 1) --i;
      if (i < 1) break;
      ++parent[i];
      for (int j = i + 1; j < n; ++j) parent[j] = parent[i];
    }
  }
}

namespace {

// Adjacency code: bit (l * n * n + a * n + b).
using Code = std::uint64_t;

Code permuted(Code c, int n, int nl, const std::vector<int>& perm) {
  Code out = 0;
  for (int l = 0; l < nl; ++l)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (c >> (l * n * n + a * n + b) & 1) out |= Code{1} << (l * n * n + perm[a] * n + perm[b]);
  return out;
}

bool canonical(Code c, int n, int nl) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  while (std::next_permutation(perm.begin(), perm.end()))
    if (permuted(c, n, nl, perm) < c) return false;
  return true;
}

Graph from_code(Code c, int n, const std::vector<std::string>& labels) {
  Graph g = blank(n, labels);
  const int nl = static_cast<int>(labels.size());
  for (int l = 0; l < nl; ++l)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (c >> (l * n * n + a * n + b) & 1) g.edges[l].push_back({a, b});
  return g;
}

void labeled_graphs(int max_nodes, const std::vector<std::string>& labels, std::vector<Graph>& out) {
  const int nl = static_cast<int>(labels.size());
  for (int n = 1; n <= max_nodes; ++n) {
    if (n <= 3) {
      const int bits = nl * n * n;
      if (bits > 20) throw ResourceError("labeled-graph enumeration too large");
      for (Code c = 0; c < (Code{1} << bits); ++c)
        if (canonical(c, n, nl)) out.push_back(from_code(c, n, labels));
    } else if (n == 4) {
      // Single-labeled, loop-free: each ordered pair carries no label or exactly one.
      std::vector<Edge> pairs;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (a != b) pairs.push_back({a, b});
      std::size_t total = 1;
      for (std::size_t i = 0; i < pairs.size(); ++i) total *= static_cast<std::size_t>(nl + 1);
      if (total > instance_ceiling() * 8) throw ResourceError("labeled-graph enumeration too large");
      std::vector<int> choice(pairs.size(), 0);
      for (std::size_t k = 0; k < total; ++k) {
        std::size_t x = k;
        Code c = 0;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
          int ch = static_cast<int>(x % (nl + 1));
          x /= (nl + 1);
          if (ch > 0) c |= Code{1} << ((ch - 1) * n * n + pairs[i].first * n + pairs[i].second);
        }
        if (canonical(c, n, nl)) out.push_back(from_code(c, n, labels));
      }
    } else {
      throw ResourceError("labeled-graph enumeration supports at most 4 nodes");
    }
  }
}

}  // namespace

std::vector<Graph> enumerate(GraphClass cls, int max_nodes, const std::vector<std::string>& labels) {
  std::vector<Graph> out;
  const std::size_t ceiling = instance_ceiling();
  std::vector<std::string> ls = labels;
  if (!is_labeled(cls)) ls.resize(1);
  auto keep = [&](const Graph& g) {
    if (out.size() >= ceiling) throw ResourceError("instance ceiling exceeded");
    out.push_back(g);
    return true;
  };
  switch (cls) {
    case GraphClass::kLabeledTree:
    case GraphClass::kUnlabeledTree:
      for_each_tree(max_nodes, ls, false, keep);
      break;
    case GraphClass::kLabeledChain:
    case GraphClass::kUnlabeledChain:
      for_each_tree(max_nodes, ls, true, keep);
      break;
    case GraphClass::kLabeledGraph:
      labeled_graphs(max_nodes, ls, out);
      if (out.size() > ceiling) throw ResourceError("instance ceiling exceeded");
      break;
  }
  return out;
}

std::vector<Graph> enumerate_trees(int max_nodes, int labels) {
  return enumerate(GraphClass::kLabeledTree, max_nodes, default_labels(labels));
}

// ---------------------------------------------------------------- homomorphisms

namespace {

// adj[l][a][b] for g2 labels aligned with g1 labels.
struct HomSearch {
  const Graph& g1;
  const Graph& g2;
  bool injective;
  int n1, n2;
  std::vector<std::vector<std::vector<char>>> adj2;  // per g1 label index
  std::vector<std::vector<std::pair<int, int>>> constraints;  // per g1 node: (other, label) outgoing
  std::vector<std::vector<std::pair<int, int>>> incoming;
  std::vector<int> order, h;
  std::vector<char> used;

  HomSearch(const Graph& a, const Graph& b, bool inj) : g1(a), g2(b), injective(inj) {
    n1 = g1.num_nodes();
    n2 = g2.num_nodes();
    adj2.assign(g1.labels.size(), std::vector<std::vector<char>>(n2, std::vector<char>(n2, 0)));
    for (std::size_t l = 0; l < g1.labels.size(); ++l) {
      int l2 = g2.label_index(g1.labels[l]);
      if (l2 < 0) continue;
      for (auto [x, y] : g2.edges[l2]) adj2[l][x][y] = 1;
    }
    constraints.resize(n1);
    incoming.resize(n1);
    for (std::size_t l = 0; l < g1.edges.size(); ++l)
      for (auto [x, y] : g1.edges[l]) {
        constraints[x].push_back({y, static_cast<int>(l)});
        incoming[y].push_back({x, static_cast<int>(l)});
      }
    // BFS order over the undirected structure so constraints bite early.
    std::vector<char> seen(n1, 0);
    for (int s = 0; s < n1; ++s) {
      if (seen[s]) continue;
      std::queue<int> q;
      q.push(s);
      seen[s] = 1;
      while (!q.empty()) {
        int v = q.front();
        q.pop();
        order.push_back(v);
        for (auto [w, l] : constraints[v])
          if (!seen[w]) seen[w] = 1, q.push(w);
        for (auto [w, l] : incoming[v])
          if (!seen[w]) seen[w] = 1, q.push(w);
      }
    }
    h.assign(n1, -1);
    used.assign(n2, 0);
  }

  bool consistent(int v, int img) const {
    for (auto [w, l] : constraints[v]) {
      int t = (w == v) ? img : h[w];
      if (t >= 0 && !adj2[l][img][t]) return false;
    }
    for (auto [w, l] : incoming[v]) {
      int s = (w == v) ? img : h[w];
      if (s >= 0 && !adj2[l][s][img]) return false;
    }
    return true;
  }

  bool search(std::size_t k) {
    if (k == order.size()) return true;
    int v = order[k];
    for (int img = 0; img < n2; ++img) {
      if (injective && used[img]) continue;
      if (!consistent(v, img)) continue;
      h[v] = img;
      used[img] = 1;
      if (search(k + 1)) return true;
      used[img] = 0;
      h[v] = -1;
    }
    return false;
  }
};

}  // namespace

std::optional<NodeMap> find_homomorphism(const Graph& g1, const Graph& g2, bool injective) {
  if (g1.num_nodes() > 0 && g2.num_nodes() == 0) return std::nullopt;
  if (injective && g1.num_nodes() > g2.num_nodes()) return std::nullopt;
  HomSearch s(g1, g2, injective);
  if (!s.search(0)) return std::nullopt;
  return s.h;
}

bool is_homomorphism(const Graph& g1, const Graph& g2, const NodeMap& h) {
  if (static_cast<int>(h.size()) != g1.num_nodes()) return false;
  for (std::size_t l = 0; l < g1.labels.size(); ++l) {
    int l2 = g2.label_index(g1.labels[l]);
    for (auto [x, y] : g1.edges[l]) {
      if (l2 < 0) return false;
      const auto& es = g2.edges[l2];
      if (!std::binary_search(es.begin(), es.end(), Edge{h[x], h[y]})) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- JSON

std::string graph_to_json(const Graph& g) {
  using nlohmann::json;
  std::vector<std::string> nodes = g.nodes;
  std::sort(nodes.begin(), nodes.end());
  std::vector<std::string> labels = g.labels;
  std::sort(labels.begin(), labels.end());
  std::vector<std::tuple<std::string, std::string, std::string>> edges;
  for (std::size_t l = 0; l < g.labels.size(); ++l)
    for (auto [a, b] : g.edges[l]) edges.emplace_back(g.nodes[a], g.nodes[b], g.labels[l]);
  std::sort(edges.begin(), edges.end());
  json j;
  j["nodes"] = nodes;
  j["labels"] = labels;
  j["edges"] = json::array();
  for (const auto& [f, t, l] : edges) j["edges"].push_back({{"from", f}, {"to", t}, {"label", l}});
  return j.dump();
}

Graph graph_from_json(const std::string& text) {
  using nlohmann::json;
  json j = json::parse(text);
  std::vector<std::string> nodes = j.at("nodes").get<std::vector<std::string>>();
  std::vector<std::string> labels = j.contains("labels") ? j.at("labels").get<std::vector<std::string>>()
                                                         : std::vector<std::string>{};
  std::vector<std::tuple<std::string, std::string, std::string>> edges;
  for (const auto& e : j.at("edges")) {
    std::string l = e.at("label").get<std::string>();
    if (std::find(labels.begin(), labels.end(), l) == labels.end()) labels.push_back(l);
    edges.emplace_back(e.at("from").get<std::string>(), e.at("to").get<std::string>(), l);
  }
  return make_graph(nodes, labels, edges);
}

}  // namespace navq
