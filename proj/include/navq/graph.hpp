#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace navq {

using Edge = std::pair<int, int>;

// Edge-labeled graph over nodes 0..n-1. `edges[i]` holds the relation of `labels[i]`.
struct Graph {
  std::vector<std::string> nodes;
  std::vector<std::string> labels;
  std::vector<std::vector<Edge>> edges;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int node_index(const std::string& name) const;   // -1 when absent
  int label_index(const std::string& name) const;  // -1 when absent
  void add_edge(int from, int to, const std::string& label);

  bool operator==(const Graph& o) const;
};

Graph make_graph(const std::vector<std::string>& nodes, const std::vector<std::string>& labels,
                 const std::vector<std::tuple<std::string, std::string, std::string>>& edges);

enum class GraphKind { kTree, kChain, kForest, kGeneral };
const char* kind_name(GraphKind k);

struct TreeCertificate {
  GraphKind kind = GraphKind::kGeneral;
  std::optional<int> root;
  int depth = 0;
  std::vector<int> node_depth;  // filled for trees and chains
};

TreeCertificate classify(const Graph& g);
bool validate_single_labeled(const Graph& g);

// Node ids "n0".."nk"; n0 is the root. parent[0] is ignored.
Graph tree_from_parents(const std::vector<int>& parent, const std::vector<int>& label_of,
                        const std::vector<std::string>& labels);
Graph chain_from_word(const std::vector<int>& word, const std::vector<std::string>& labels);

std::vector<std::string> default_labels(int count);  // "a", "b", ...

enum class GraphClass {
  kLabeledTree,
  kUnlabeledTree,
  kLabeledChain,
  kUnlabeledChain,
  kLabeledGraph,
};
const char* class_name(GraphClass c);
GraphClass parse_class(const std::string& name);
bool is_labeled(GraphClass c);

class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance ceiling for enumerations; NAVQ_MAX_INSTANCES overrides the default.
std::size_t instance_ceiling();

// Visits every rooted single-labeled tree with 1..max_nodes nodes, ordered by node count,
// then non-decreasing parent array, then label assignment. Returns false to stop early.
void for_each_tree(int max_nodes, const std::vector<std::string>& labels, bool chains_only,
                   const std::function<bool(const Graph&)>& visit);

// Materialized enumeration for a class. Trees/chains: max_nodes bound. Labeled graphs: every
// graph over 1..max_nodes nodes (loops included) when max_nodes <= 3; for 4 nodes the
// single-labeled loop-free graphs up to isomorphism.
std::vector<Graph> enumerate(GraphClass cls, int max_nodes, const std::vector<std::string>& labels);
std::vector<Graph> enumerate_trees(int max_nodes, int labels);

using NodeMap = std::vector<int>;

// Backtracking search; labels are matched by name.
std::optional<NodeMap> find_homomorphism(const Graph& g1, const Graph& g2, bool injective);
bool is_homomorphism(const Graph& g1, const Graph& g2, const NodeMap& h);

std::string graph_to_json(const Graph& g);
Graph graph_from_json(const std::string& text);

}  // namespace navq
