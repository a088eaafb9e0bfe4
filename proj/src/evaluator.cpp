#include "navq/evaluator.hpp"

#include <algorithm>
#include <random>

namespace navq {

Evaluator::Evaluator(const Graph& g) : g_(g) {
  const int n = g.num_nodes();
  for (std::size_t l = 0; l < g.labels.size(); ++l) {
    Relation r(n);
    if (l < g.edges.size())
      for (auto [a, b] : g.edges[l]) r.set(a, b);
    label_rel_.push_back(std::move(r));
  }
}

const Relation& Evaluator::eval(const Expr& e) {
  auto it = memo_.find(e.node());
  if (it != memo_.end()) return it->second;
  const int n = g_.num_nodes();
  Relation r;
  switch (e.kind()) {
    case Kind::kEmpty:
      r = Relation(n);
      break;
    case Kind::kIdentity:
      r = Relation::identity(n);
      break;
    case Kind::kDiversity:
      r = Relation::diversity(n);
      break;
    case Kind::kLabel: {
      int l = g_.label_index(e.label());
      if (l < 0) throw UnknownLabel("label '" + e.label() + "' is not in the graph alphabet");
      r = label_rel_[l];
      break;
    }
    case Kind::kConverse:
      r = eval(e.left()).converse();
      break;
    case Kind::kPlus:
      r = eval(e.left()).closure();
      break;
    case Kind::kProj1:
      r = eval(e.left()).domain_diag();
      break;
    case Kind::kProj2:
      r = eval(e.left()).range_diag();
      break;
    case Kind::kCoproj1:
      r = Relation::identity(n).minus(eval(e.left()).domain_diag());
      break;
    case Kind::kCoproj2:
      r = Relation::identity(n).minus(eval(e.left()).range_diag());
      break;
    case Kind::kCompose: {
      Relation a = eval(e.left());
      r = a.compose(eval(e.right()));
      break;
    }
    case Kind::kUnion: {
      Relation a = eval(e.left());
      r = a.unite(eval(e.right()));
      break;
    }
    case Kind::kIntersect: {
      Relation a = eval(e.left());
      r = a.intersect(eval(e.right()));
      break;
    }
    case Kind::kDifference: {
      Relation a = eval(e.left());
      r = a.minus(eval(e.right()));
      break;
    }
  }
  keep_.push_back(e);
  return memo_.emplace(e.node(), std::move(r)).first->second;
}

Relation evaluate(const Expr& e, const Graph& g) {
  Evaluator ev(g);
  return ev.eval(e);
}

bool is_condition(const Expr& e) {
  switch (e.kind()) {
    case Kind::kEmpty:
    case Kind::kIdentity:
    case Kind::kProj1:
    case Kind::kProj2:
    case Kind::kCoproj1:
    case Kind::kCoproj2:
      return true;
    case Kind::kCompose:
    case Kind::kUnion:
      return is_condition(e.left()) && is_condition(e.right());
    default:
      return false;
  }
}

std::optional<std::size_t> first_failure(const std::vector<Graph>& instances,
                                         const std::function<bool(const Graph&)>& ok, bool parallel) {
  const long long total = static_cast<long long>(instances.size());
  long long best = total;
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < total; ++i) {
      long long seen;
#pragma omp atomic read
      seen = best;
      if (i >= seen) continue;
      if (!ok(instances[static_cast<std::size_t>(i)])) {
#pragma omp critical(navq_first_failure)
        best = std::min(best, i);
      }
    }
  } else {
    for (long long i = 0; i < total; ++i)
      if (!ok(instances[static_cast<std::size_t>(i)])) {
        best = i;
        break;
      }
  }
  if (best == total) return std::nullopt;
  return static_cast<std::size_t>(best);
}

std::vector<std::string> oracle_labels(const std::vector<Expr>& es, int count) {
  std::set<std::string> used;
  for (const auto& e : es)
    for (const auto& l : labels_of(e)) used.insert(l);
  if (static_cast<int>(used.size()) > count)
    throw std::invalid_argument("expressions use " + std::to_string(used.size()) + " labels, bound allows " +
                                std::to_string(count));
  std::vector<std::string> out(used.begin(), used.end());
  for (const auto& pad : default_labels(count + static_cast<int>(used.size()))) {
    if (static_cast<int>(out.size()) >= count) break;
    if (!used.count(pad)) out.push_back(pad);
  }
  return out;
}

std::vector<Graph> oracle_instances(GraphClass cls, Bound bound, const std::vector<std::string>& labels,
                                    const OracleOptions& opts) {
  std::vector<Graph> inst = enumerate(cls, bound.max_nodes, labels);
  if (opts.random_instances > 0 && cls != GraphClass::kLabeledGraph) {
    std::mt19937 rng(opts.seed);
    const bool chains = cls == GraphClass::kLabeledChain || cls == GraphClass::kUnlabeledChain;
    const int nl = is_labeled(cls) ? static_cast<int>(labels.size()) : 1;
    std::vector<std::string> ls = labels;
    ls.resize(nl);
    for (int k = 0; k < opts.random_instances; ++k) {
      int n = bound.max_nodes + 1 + static_cast<int>(rng() % 4);
      std::vector<int> parent(n, 0), label_of(n, 0);
      for (int i = 1; i < n; ++i) {
        parent[i] = chains ? i - 1 : static_cast<int>(rng() % i);
        label_of[i] = static_cast<int>(rng() % nl);
      }
      inst.push_back(tree_from_parents(parent, label_of, ls));
    }
  }
  return inst;
}

EquivVerdict equivalent_on(const Expr& e1, const Expr& e2, Semantics sem, const std::vector<Graph>& instances,
                           bool parallel) {
  EquivVerdict v;
  v.semantics = sem;
  v.instances = instances.size();
  auto ok = [&](const Graph& g) {
    Evaluator ev(g);
    const Relation& a = ev.eval(e1);
    const Relation& b = ev.eval(e2);
    return sem == Semantics::kPath ? a == b : a.empty() == b.empty();
  };
  if (auto bad = first_failure(instances, ok, parallel)) {
    v.equivalent = false;
    v.witness = instances[*bad];
  }
  return v;
}

namespace {

EquivVerdict oracle(const Expr& e1, const Expr& e2, Semantics sem, GraphClass cls, Bound bound,
                    const OracleOptions& opts) {
  std::vector<std::string> labels = oracle_labels({e1, e2}, is_labeled(cls) ? bound.labels : 1);
  std::vector<Graph> inst = oracle_instances(cls, bound, labels, opts);
  EquivVerdict v = equivalent_on(e1, e2, sem, inst, opts.parallel);
  v.bound = bound;
  v.cls = cls;
  return v;
}

}  // namespace

EquivVerdict path_equivalent(const Expr& e1, const Expr& e2, GraphClass cls, Bound bound,
                             const OracleOptions& opts) {
  return oracle(e1, e2, Semantics::kPath, cls, bound, opts);
}

EquivVerdict boolean_equivalent(const Expr& e1, const Expr& e2, GraphClass cls, Bound bound,
                                const OracleOptions& opts) {
  return oracle(e1, e2, Semantics::kBoolean, cls, bound, opts);
}

std::string relation_to_string(const Relation& r, const Graph& g) {
  std::vector<std::pair<std::string, std::string>> ps;
  for (auto [a, b] : r.pairs()) ps.emplace_back(g.nodes[a], g.nodes[b]);
  std::sort(ps.begin(), ps.end());
  std::string out = "{";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) out += ",";
    out += "(" + ps[i].first + "," + ps[i].second + ")";
  }
  return out + "}";
}

}  // namespace navq
