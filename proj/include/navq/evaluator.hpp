#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "navq/expr.hpp"
#include "navq/graph.hpp"
#include "navq/relation.hpp"

namespace navq {

class UnknownLabel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Evaluates expressions on one graph; results are memoized per expression node, so
// expressions sharing subterms are evaluated once.
class Evaluator {
 public:
  explicit Evaluator(const Graph& g);
  const Relation& eval(const Expr& e);
  const Graph& graph() const { return g_; }

 private:
  const Graph& g_;
  std::vector<Relation> label_rel_;
  std::unordered_map<const Node*, Relation> memo_;
  std::vector<Expr> keep_;  // keeps memo keys alive
};

Relation evaluate(const Expr& e, const Graph& g);

// Syntactic conditions: 0, id, pi_i(e), copi_i(e), and compositions/unions of conditions.
bool is_condition(const Expr& e);

enum class Semantics { kPath, kBoolean };

struct Bound {
  int max_nodes = 5;
  int labels = 2;
};

struct EquivVerdict {
  bool equivalent = true;
  std::optional<Graph> witness;
  Bound bound;
  GraphClass cls = GraphClass::kLabeledTree;
  Semantics semantics = Semantics::kPath;
  std::size_t instances = 0;
};

struct OracleOptions {
  bool parallel = true;
  int random_instances = 0;  // extra random trees/chains beyond the bound
  unsigned seed = 1;
};

// Index of the first instance failing `ok`, scanning every instance.
std::optional<std::size_t> first_failure(const std::vector<Graph>& instances,
                                         const std::function<bool(const Graph&)>& ok, bool parallel);

// Label names for an oracle over e1, e2: the labels they use, padded with a, b, ... to `count`.
std::vector<std::string> oracle_labels(const std::vector<Expr>& es, int count);

std::vector<Graph> oracle_instances(GraphClass cls, Bound bound, const std::vector<std::string>& labels,
                                    const OracleOptions& opts);

EquivVerdict path_equivalent(const Expr& e1, const Expr& e2, GraphClass cls, Bound bound,
                             const OracleOptions& opts = {});
EquivVerdict boolean_equivalent(const Expr& e1, const Expr& e2, GraphClass cls, Bound bound,
                                const OracleOptions& opts = {});
EquivVerdict equivalent_on(const Expr& e1, const Expr& e2, Semantics sem, const std::vector<Graph>& instances,
                           bool parallel = true);

std::string relation_to_string(const Relation& r, const Graph& g);  // {(a,b),(c,d)}

}  // namespace navq
