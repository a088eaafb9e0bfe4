#include "navq/lattice.hpp"

#include <algorithm>
#include <queue>
#include <regex>

#include "json.hpp"

namespace navq {

const char* lattice_class_name(ChainOrTree c) {
  switch (c) {
    case ChainOrTree::kLabeledChain:
      return "labeled-chain";
    case ChainOrTree::kUnlabeledChain:
      return "unlabeled-chain";
    case ChainOrTree::kLabeledTree:
      return "labeled-tree";
    case ChainOrTree::kUnlabeledTree:
      return "unlabeled-tree";
  }
  return "";
}

ChainOrTree parse_lattice_class(const std::string& name) {
  for (ChainOrTree c : {ChainOrTree::kLabeledChain, ChainOrTree::kUnlabeledChain, ChainOrTree::kLabeledTree,
                        ChainOrTree::kUnlabeledTree})
    if (name == lattice_class_name(c)) return c;
  throw std::invalid_argument("unknown lattice class '" + name + "'");
}

bool is_labeled(ChainOrTree c) { return c == ChainOrTree::kLabeledChain || c == ChainOrTree::kLabeledTree; }
bool is_chain(ChainOrTree c) { return c == ChainOrTree::kLabeledChain || c == ChainOrTree::kUnlabeledChain; }

namespace {

const Fragment kPi{Op::kPi1, Op::kPi2};
const Fragment kCopi{Op::kCopi1, Op::kCopi2};
const Fragment kTc{Op::kTc};
const Fragment kCap{Op::kCap};
const Fragment kMinus{Op::kMinus};
const Fragment kNone{};

Fragment U(std::initializer_list<Fragment> fs) {
  Fragment out;
  for (const auto& f : fs) out = out | f;
  return out;
}

// Six-node shape shared by labeled-tree boolean and both path diagrams.
HasseDiagram six_node(const std::string& name) {
  HasseDiagram d;
  d.name = name;
  d.nodes = {
      {"base", {kNone, kCap, kMinus}, false},
      {"tc", {kTc, U({kTc, kCap}), U({kTc, kMinus})}, false},
      {"pi", {kPi, U({kPi, kCap})}, false},
      {"tc-pi", {U({kTc, kPi}), U({kTc, kPi, kCap})}, false},
      {"copi", {kCopi, U({kCopi, kCap}), U({kCopi, kMinus})}, false},
      // {tc, copi, cap} is not drawn; its only sensible place is the top node.
      {"tc-copi", {U({kTc, kCopi}), U({kTc, kCopi, kMinus}), U({kTc, kCopi, kCap})}, false},
  };
  d.edges = {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 5}, {4, 5}};
  return d;
}

HasseDiagram labeled_chain_boolean() {
  HasseDiagram d;
  d.name = "boolean/labeled-chain";
  d.nodes = {
      {"base", {kNone, kCap, kMinus, kPi, U({kPi, kCap})}, false},
      {"tc", {kTc, U({kTc, kCap}), U({kTc, kMinus}), U({kTc, kPi}), U({kTc, kPi, kCap})}, false},
      {"copi", {kCopi, U({kCopi, kCap}), U({kCopi, kMinus})}, false},
      {"tc-copi", {U({kTc, kCopi}), U({kTc, kCopi, kMinus}), U({kTc, kCopi, kCap})}, false},
  };
  d.edges = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  return d;
}

HasseDiagram unlabeled_boolean(const std::string& name, bool with_di) {
  HasseDiagram d;
  d.name = name;
  Fragment hom = U({Fragment{Op::kConv}, kTc, kPi, kCap});
  if (with_di) hom.add(Op::kDi);
  d.nodes = {
      {"base", {hom, U({kTc, kCap, kMinus})}, true},
      {"copi", {kCopi, U({kCopi, kCap}), U({kCopi, kMinus})}, false},
      {"tc-copi", {U({kTc, kCopi}), U({kTc, kCopi, kMinus}), U({kTc, kCopi, kCap})}, false},
  };
  d.edges = {{0, 1}, {1, 2}};
  return d;
}

const HasseDiagram& d_bool_lchain() {
  static const HasseDiagram d = labeled_chain_boolean();
  return d;
}
const HasseDiagram& d_bool_ltree() {
  static const HasseDiagram d = six_node("boolean/labeled-tree");
  return d;
}
const HasseDiagram& d_bool_uchain() {
  static const HasseDiagram d = unlabeled_boolean("boolean/unlabeled-chain", true);
  return d;
}
const HasseDiagram& d_bool_utree() {
  static const HasseDiagram d = unlabeled_boolean("boolean/unlabeled-tree", false);
  return d;
}
const HasseDiagram& d_path_labeled() {
  static const HasseDiagram d = six_node("path/labeled");
  return d;
}
const HasseDiagram& d_path_unlabeled() {
  static const HasseDiagram d = six_node("path/unlabeled");
  return d;
}

}  // namespace

const HasseDiagram& diagram_for(Semantics sem, ChainOrTree cls) {
  if (sem == Semantics::kPath) return is_labeled(cls) ? d_path_labeled() : d_path_unlabeled();
  switch (cls) {
    case ChainOrTree::kLabeledChain:
      return d_bool_lchain();
    case ChainOrTree::kLabeledTree:
      return d_bool_ltree();
    case ChainOrTree::kUnlabeledChain:
      return d_bool_uchain();
    case ChainOrTree::kUnlabeledTree:
      return d_bool_utree();
  }
  return d_bool_ltree();
}

const std::vector<const HasseDiagram*>& all_diagrams() {
  static const std::vector<const HasseDiagram*> ds = {&d_bool_lchain(), &d_bool_ltree(),    &d_bool_uchain(),
                                                      &d_bool_utree(),  &d_path_labeled(), &d_path_unlabeled()};
  return ds;
}

int locate(const HasseDiagram& d, const Fragment& f) {
  const Fragment b = base_closure(f);
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    for (const auto& m : d.nodes[i].members) {
      if (d.nodes[i].downset_members) {
        if (base_closure(b & m) == b) return static_cast<int>(i);
      } else if (base_closure(m) == b) {
        return static_cast<int>(i);
      }
    }
  }
  throw NotEncoded("fragment " + f.to_string() + " is not encoded in diagram " + d.name);
}

bool subsumes(const LatticeQuery& q) {
  const HasseDiagram& d = diagram_for(q.semantics, q.cls);
  const int from = locate(d, q.f1);
  const int to = locate(d, q.f2);
  std::vector<char> seen(d.nodes.size(), 0);
  std::queue<int> work;
  work.push(from);
  seen[from] = 1;
  while (!work.empty()) {
    int v = work.front();
    work.pop();
    if (v == to) return true;
    for (auto [a, b] : d.edges)
      if (a == v && !seen[b]) seen[b] = 1, work.push(b);
  }
  return false;
}

// ---------------------------------------------------------------- witnesses

namespace {

std::vector<Graph> unlabeled_chains(int max_depth, const std::string& label) {
  std::vector<Graph> out;
  for (int d = 0; d <= max_depth; ++d) out.push_back(chain_from_word(std::vector<int>(d, 0), {label}));
  return out;
}

std::vector<int> nonempty_depths(const std::string& text, int max_depth) {
  Expr e = parse(text, {"a"});
  std::vector<int> out;
  auto chains = unlabeled_chains(max_depth, "a");
  for (std::size_t d = 0; d < chains.size(); ++d)
    if (!evaluate(e, chains[d]).empty()) out.push_back(static_cast<int>(d));
  return out;
}

std::string join(const std::vector<int>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + "}";
}

std::vector<Witness> build_witnesses() {
  std::vector<Witness> ws;
  ws.push_back({"pi1(l1).pi1(l2)",
                "nonempty on the 3-node tree with an l1 child and an l2 child; empty on every labeled chain",
                {"l1", "l2"}, [](std::string* why) {
                  Expr e = parse("pi1(l1).pi1(l2)", {"l1", "l2"});
                  Graph branching = make_graph({"r", "x", "y"}, {"l1", "l2"}, {{"r", "x", "l1"}, {"r", "y", "l2"}});
                  if (evaluate(e, branching).empty()) {
                    if (why) *why = "empty on the branching tree";
                    return false;
                  }
                  for (const auto& c : enumerate(GraphClass::kLabeledChain, 9, {"l1", "l2"}))
                    if (!evaluate(e, c).empty()) {
                      if (why) *why = "nonempty on chain " + graph_to_json(c);
                      return false;
                    }
                  return true;
                }});
  ws.push_back({"copi2(E).E.copi1(E)",
                "nonempty on exactly one unlabeled chain depth among 0..10 (a root-to-leaf edge: depth 1)",
                {"a"}, [](std::string* why) {
                  auto ds = nonempty_depths("copi2(E).E.copi1(E)", 10);
                  if (why) *why = "nonempty depths " + join(ds);
                  return ds == std::vector<int>{1};
                }});
  ws.push_back({"l1.(l2.l2)+.l1",
                "on labeled chains: nonempty iff the label word contains l1 (l2 l2)^k l1 with k >= 1",
                {"l1", "l2"}, [](std::string* why) {
                  Expr e = parse("l1.(l2.l2)+.l1", {"l1", "l2"});
                  const std::regex pattern("a(bb)+a");
                  for (const auto& c : enumerate(GraphClass::kLabeledChain, 11, {"l1", "l2"})) {
                    std::string word(c.num_nodes() - 1, '?');
                    for (std::size_t l = 0; l < c.edges.size(); ++l)
                      for (auto [x, y] : c.edges[l]) word[x] = l == 0 ? 'a' : 'b';
                    bool expect = std::regex_search(word, pattern);
                    if (expect == evaluate(e, c).empty()) {
                      if (why) *why = "mismatch on word " + word;
                      return false;
                    }
                  }
                  return true;
                }});
  ws.push_back({"copi2(E).(E.E)+.copi1(E)", "on unlabeled chains of depth 0..10: nonempty iff depth is even and >= 2",
                {"a"}, [](std::string* why) {
                  auto ds = nonempty_depths("copi2(E).(E.E)+.copi1(E)", 10);
                  if (why) *why = "nonempty depths " + join(ds);
                  return ds == std::vector<int>{2, 4, 6, 8, 10};
                }});
  ws.push_back({"E+", "relates every node to each of its strict descendants", {"a"}, [](std::string* why) {
                  Expr e = parse("E+", {"a"});
                  for (const auto& t : enumerate(GraphClass::kUnlabeledTree, 6, {"a"})) {
                    std::vector<int> parent(t.num_nodes(), -1);
                    for (auto [x, y] : t.edges[0]) parent[y] = x;
                    Relation expect(t.num_nodes());
                    for (int v = 0; v < t.num_nodes(); ++v)
                      for (int u = parent[v]; u >= 0; u = parent[u]) expect.set(u, v);
                    if (evaluate(e, t) != expect) {
                      if (why) *why = "mismatch on " + graph_to_json(t);
                      return false;
                    }
                  }
                  return true;
                }});
  ws.push_back({"pi1(E)", "on chains with >= 2 nodes the result is nonempty and strictly inside id", {"a"},
                [](std::string* why) {
                  Expr e = parse("pi1(E)", {"a"});
                  for (int d = 1; d <= 10; ++d) {
                    Graph c = chain_from_word(std::vector<int>(d, 0), {"a"});
                    Relation r = evaluate(e, c);
                    Relation ident = Relation::identity(c.num_nodes());
                    if (r.empty() || r == ident || !r.subset_of(ident)) {
                      if (why) *why = "fails at depth " + std::to_string(d);
                      return false;
                    }
                  }
                  return true;
                }});
  return ws;
}

}  // namespace

const std::vector<Witness>& all_witnesses() {
  static const std::vector<Witness> ws = build_witnesses();
  return ws;
}

std::optional<Witness> separation_witness(const LatticeQuery& q) {
  if (subsumes(q)) return std::nullopt;
  const Fragment b1 = base_closure(q.f1);
  const Fragment b2 = base_closure(q.f2);
  const auto& ws = all_witnesses();
  auto has = [](const Fragment& b, const Fragment& part) { return part.subset_of(b); };
  if (has(b1, kCopi) && !has(b2, kCopi)) return ws[1];
  if (has(b1, kPi) && !has(b2, kPi)) {
    if (q.semantics == Semantics::kPath) return ws[5];
    if (q.cls == ChainOrTree::kLabeledTree) return ws[0];
    return std::nullopt;
  }
  if (b1.has(Op::kTc) && !b2.has(Op::kTc)) {
    if (q.semantics == Semantics::kPath) return ws[4];
    if (is_labeled(q.cls)) return ws[2];
    if (has(b1, kCopi)) return ws[3];
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- carry-over

bool is_subclass(ChainOrTree sub, ChainOrTree super) {
  if (sub == super) return true;
  switch (sub) {
    case ChainOrTree::kUnlabeledChain:
      return true;  // below every other class
    case ChainOrTree::kLabeledChain:
    case ChainOrTree::kUnlabeledTree:
      return super == ChainOrTree::kLabeledTree;
    case ChainOrTree::kLabeledTree:
      return false;
  }
  return false;
}

std::vector<Claim> carry_over(const Claim& c) {
  std::vector<Claim> out;
  auto add = [&](Claim d) {
    if (d == c) return;
    if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
  };
  const ChainOrTree all[] = {ChainOrTree::kLabeledChain, ChainOrTree::kUnlabeledChain, ChainOrTree::kLabeledTree,
                             ChainOrTree::kUnlabeledTree};
  std::vector<Semantics> sems{c.semantics};
  if (c.subsumption && c.semantics == Semantics::kPath) sems.push_back(Semantics::kBoolean);
  if (!c.subsumption && c.semantics == Semantics::kBoolean) sems.push_back(Semantics::kPath);
  for (Semantics s : sems)
    for (ChainOrTree k : all) {
      bool related = c.subsumption ? is_subclass(k, c.cls) : is_subclass(c.cls, k);
      if (related) add({c.subsumption, c.f1, c.f2, s, k});
    }
  return out;
}

std::string lattice_json() {
  using nlohmann::ordered_json;
  ordered_json j = ordered_json::array();
  for (const HasseDiagram* d : all_diagrams()) {
    ordered_json dj;
    dj["name"] = d->name;
    dj["nodes"] = ordered_json::array();
    for (const auto& n : d->nodes) {
      ordered_json nj;
      nj["id"] = n.id;
      nj["members"] = ordered_json::array();
      for (const auto& m : n.members) nj["members"].push_back(base_closure(m).to_string());
      if (n.downset_members) nj["closed_under_subsets"] = true;
      dj["nodes"].push_back(nj);
    }
    dj["edges"] = ordered_json::array();
    for (auto [a, b] : d->edges) dj["edges"].push_back({d->nodes[a].id, d->nodes[b].id});
    j.push_back(dj);
  }
  return j.dump(2);
}

}  // namespace navq
