#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "navq/constructions.hpp"

using namespace navq;

namespace {

const std::vector<std::string> kAB{"a", "b"};

std::vector<Graph> small_graphs() {
  auto gs = enumerate(GraphClass::kLabeledGraph, 3, kAB);
  auto ts = enumerate(GraphClass::kLabeledTree, 5, kAB);
  gs.insert(gs.end(), ts.begin(), ts.end());
  return gs;
}

const std::vector<Graph>& graphs() {
  static const std::vector<Graph> gs = small_graphs();
  return gs;
}

const std::vector<Graph>& trees() {
  static const std::vector<Graph> ts = enumerate(GraphClass::kLabeledTree, 6, kAB);
  return ts;
}

// Random expression over {tc, pi, copi} and labels a, b.
Expr random_downward(std::mt19937& rng, int depth, bool allow_tc = true) {
  std::uniform_int_distribution<int> pick(0, depth == 0 ? 2 : 10);
  auto sub = [&] { return random_downward(rng, depth - 1, allow_tc); };
  switch (pick(rng)) {
    case 0:
      return lbl("a");
    case 1:
      return lbl("b");
    case 2:
      return id();
    case 3:
      return allow_tc ? plus(sub()) : sub();
    case 4:
      return pi1(sub());
    case 5:
      return pi2(sub());
    case 6:
      return copi1(sub());
    case 7:
      return copi2(sub());
    case 8:
    case 9:
      return compose(sub(), sub());
    default:
      return unite(sub(), sub());
  }
}

void expect_same_on(const Automaton& a, const Expr& e, const std::vector<Graph>& gs) {
  for (const auto& g : gs) ASSERT_EQ(eval_automaton(a, g), evaluate(e, g)) << render(e) << " on " << graph_to_json(g);
}

}  // namespace

TEST(BaseAutomata, Label) {
  Automaton a = label_automaton("l");
  EXPECT_EQ(a.num_states(), 2);
  EXPECT_EQ(a.transitions.size(), 1u);
  EXPECT_TRUE(a.initial[0] && !a.final[0] && a.final[1] && !a.initial[1]);
  EXPECT_TRUE(a.conditions.empty());
}

TEST(BaseAutomata, ProjectionIsOneConditionedState) {
  Automaton a = expr_to_automaton(parse("pi1(a.b)"));
  EXPECT_EQ(a.num_states(), 1);
  EXPECT_TRUE(a.initial[0] && a.final[0]);
  EXPECT_TRUE(a.transitions.empty());
  ASSERT_EQ(a.conditions.size(), 1u);
  EXPECT_EQ(a.conditions[0], parse("pi1(a.b)"));
}

TEST(BaseAutomata, Identity) {
  Automaton a = identity_automaton();
  EXPECT_EQ(a.num_states(), 2);
  ASSERT_EQ(a.transitions.size(), 1u);
  EXPECT_EQ(a.transitions[0].label, kIdLabel);
}

TEST(ExprToAutomaton, RejectsOtherOperators) {
  for (const char* t : {"conv(a)", "di", "a & b", "a \\ b"}) EXPECT_THROW(expr_to_automaton(parse(t)), FragmentError);
}

TEST(ExprToAutomaton, PathEquivalentOnGraphs) {
  std::mt19937 rng(21);
  for (int i = 0; i < 150; ++i) {
    Expr e = random_downward(rng, 3);
    Automaton a = expr_to_automaton(e, kAB);
    expect_same_on(a, e, graphs());
    Fragment used = operators_used(e);
    AutomatonFlags f = flags(a);
    if (!used.has(Op::kTc)) EXPECT_TRUE(f.acyclic) << render(e);
    for (Op o : {Op::kTc, Op::kPi1, Op::kPi2, Op::kCopi1, Op::kCopi2})
      if (!used.has(o)) EXPECT_TRUE(f.free_of.has(o)) << render(e);
  }
}

TEST(Closures, ComposeUnionPlus) {
  std::mt19937 rng(8);
  for (int i = 0; i < 40; ++i) {
    Expr x = random_downward(rng, 2, false), y = random_downward(rng, 2, false);
    Automaton ax = expr_to_automaton(x, kAB), ay = expr_to_automaton(y, kAB);
    Automaton c = compose_automata(ax, ay), u = union_automata(ax, ay), p = plus_automaton(ax);
    expect_same_on(c, compose(x, y), graphs());
    expect_same_on(u, unite(x, y), graphs());
    expect_same_on(p, plus(x), graphs());
    EXPECT_TRUE(flags(c).acyclic);
    EXPECT_TRUE(flags(u).acyclic);
  }
}

TEST(AutomatonToExpr, LoopAutomaton) {
  Expr e = automaton_to_expr(fixtures::loop_automaton());
  Expr want = parse("l1.pi2(l1^2).pi1(l2^3).(l1.pi2(l1^2).pi1(l2^3))*.l2 | l3 | id");
  EXPECT_TRUE(operators_used(e).has(Op::kTc));
  for (const auto& g : enumerate(GraphClass::kLabeledGraph, 2, {"l1", "l2", "l3"})) ASSERT_EQ(evaluate(e, g), evaluate(want, g));
  for (const auto& g : enumerate(GraphClass::kLabeledTree, 5, {"l1", "l2", "l3"})) ASSERT_EQ(evaluate(e, g), evaluate(want, g));
  Graph t = fixtures::run_tree();
  EXPECT_EQ(evaluate(e, t), evaluate(want, t));
}

TEST(AutomatonToExpr, TrivialCases) {
  Automaton single;
  single.add_state("v");
  single.initial[0] = single.final[0] = 1;
  Expr e = automaton_to_expr(single);
  for (const auto& g : graphs()) EXPECT_EQ(evaluate(e, g), Relation::identity(g.num_nodes()));
  Automaton dead = label_automaton("a");
  dead.final[1] = 0;
  EXPECT_EQ(automaton_to_expr(dead), empty());
}

TEST(AutomatonToExpr, RoundTrip) {
  std::mt19937 rng(99);
  for (int i = 0; i < 150; ++i) {
    Expr e = random_downward(rng, 3);
    Automaton a = expr_to_automaton(e, kAB);
    Expr back = automaton_to_expr(a);
    for (const auto& g : graphs()) ASSERT_EQ(evaluate(back, g), evaluate(e, g)) << render(e) << " -> " << render(back);
    if (flags(a).acyclic && !operators_used(e).has(Op::kTc)) EXPECT_FALSE(operators_used(back).has(Op::kTc)) << render(back);
  }
}

TEST(IdentityPairs, ChainExample) {
  Automaton a = fixtures::identity_chain_automaton();
  std::vector<std::string> names;
  for (const auto& p : identity_pairs(a)) {
    std::string s = "(" + a.states[p.head] + ",{";
    for (std::size_t i = 0; i < p.reach.size(); ++i) s += (i ? "," : "") + a.states[p.reach[i]];
    names.push_back(s + "})");
  }
  EXPECT_EQ(names, (std::vector<std::string>{"(u,{u})", "(u,{u,v})", "(u,{u,v,w})", "(v,{v})", "(v,{v,w})", "(w,{w})"}));
  Automaton r = remove_identity_transitions(a);
  EXPECT_EQ(r.states, names);
  EXPECT_TRUE(flags(r).identity_free);
}

TEST(IdentityRemoval, PreservesEvaluationOnGraphs) {
  std::vector<Automaton> autos{fixtures::identity_chain_automaton(), identity_automaton()};
  std::mt19937 rng(4);
  for (int i = 0; i < 60; ++i) autos.push_back(expr_to_automaton(random_downward(rng, 3), kAB));
  for (const auto& a : autos) {
    Automaton r = remove_identity_transitions(a);
    EXPECT_TRUE(flags(r).identity_free);
    if (flags(a).acyclic) EXPECT_TRUE(flags(r).acyclic);
    for (const auto& g : graphs()) ASSERT_EQ(eval_automaton(r, g), eval_automaton(a, g));
  }
}

TEST(IdentityRemoval, IdentityFreeInputIsRenamedOnly) {
  Automaton a = fixtures::loop_automaton();
  Automaton r = remove_identity_transitions(a);
  ASSERT_EQ(r.num_states(), a.num_states());
  for (int q = 0; q < a.num_states(); ++q) EXPECT_EQ(r.states[q], "(" + a.states[q] + ",{" + a.states[q] + "})");
  EXPECT_EQ(r.transitions, a.transitions);
}

TEST(IdentityRemoval, IdentityAutomatonAcceptsIdentity) {
  Automaton r = remove_identity_transitions(identity_automaton());
  bool both = false;
  for (int q = 0; q < r.num_states(); ++q) both = both || (r.initial[q] && r.final[q]);
  EXPECT_TRUE(both);
  for (const auto& g : graphs()) EXPECT_EQ(eval_automaton(r, g), Relation::identity(g.num_nodes()));
}

TEST(Intersect, TreeOnlyCaveat) {
  Automaton a3 = remove_identity_transitions(expr_to_automaton(parse("a^3")));
  Automaton a7 = remove_identity_transitions(expr_to_automaton(parse("a^7")));
  Graph g = fixtures::two_path_dag();
  EXPECT_TRUE(eval_automaton(intersect_automata(a3, a7), g).empty());
  EXPECT_EQ(eval_automaton(a3, g).intersect(eval_automaton(a7, g)).count(), 1u);
}

TEST(Intersect, MatchesSetIntersectionOnTrees) {
  std::mt19937 rng(12);
  for (int i = 0; i < 60; ++i) {
    Expr x = random_downward(rng, 3), y = random_downward(rng, 3);
    Automaton ax = remove_identity_transitions(expr_to_automaton(x, kAB));
    Automaton ay = remove_identity_transitions(expr_to_automaton(y, kAB));
    Automaton p = intersect_automata(ax, ay);
    if (flags(ax).acyclic || flags(ay).acyclic) EXPECT_TRUE(flags(p).acyclic);
    for (const auto& t : trees()) ASSERT_EQ(eval_automaton(p, t), evaluate(intersect(x, y), t));
  }
}

TEST(ConditionComplement, Table) {
  EXPECT_EQ(condition_complement(parse("pi1(a)")), parse("copi1(a)"));
  EXPECT_EQ(condition_complement(parse("copi2(a.b)")), parse("pi2(a.b)"));
  EXPECT_EQ(condition_complement(id()), empty());
  EXPECT_EQ(condition_complement(empty()), id());
  EXPECT_THROW(condition_complement(parse("pi1(a).pi2(b)")), std::invalid_argument);
  for (const char* t : {"pi1(a)", "pi2(b+)", "copi1(a)", "id", "0"}) {
    Expr c = parse(t);
    EXPECT_EQ(condition_complement(condition_complement(c)), c);
    for (const auto& g : graphs())
      EXPECT_EQ(evaluate(condition_complement(c), g), Relation::identity(g.num_nodes()).minus(evaluate(c, g)));
  }
}

TEST(Determinize, LoopAutomaton) {
  Automaton d = determinize(fixtures::loop_automaton());
  EXPECT_TRUE(flags(d).identity_free);
  EXPECT_TRUE(check_deterministic(d, 5));
  for (const auto& t : enumerate(GraphClass::kLabeledTree, 5, {"l1", "l2", "l3"}))
    ASSERT_EQ(eval_automaton(d, t), eval_automaton(fixtures::loop_automaton(), t));
}

TEST(DownwardComplement, MatchesDefinition) {
  std::mt19937 rng(31);
  for (int i = 0; i < 40; ++i) {
    Expr e = random_downward(rng, 3);
    Automaton c = downward_complement_automaton(expr_to_automaton(e, kAB), kAB);
    Expr below = star(all_edges(kAB));
    for (const auto& t : trees()) ASSERT_EQ(eval_automaton(c, t), evaluate(below, t).minus(evaluate(e, t))) << render(e);
  }
}

TEST(Difference, SelfIsEmpty) {
  for (const char* t : {"a.b+", "pi1(a).b | a", "copi2(a).(a|b)+"}) {
    Automaton a = expr_to_automaton(parse(t), kAB);
    Automaton d = difference_automata(a, a);
    for (const auto& tr : trees()) ASSERT_TRUE(eval_automaton(d, tr).empty()) << t;
  }
}

TEST(Difference, MatchesSetDifferenceOnTrees) {
  std::mt19937 rng(77);
  for (int i = 0; i < 40; ++i) {
    Expr x = random_downward(rng, 3), y = random_downward(rng, 3);
    Automaton d = difference_automata(expr_to_automaton(x, kAB), expr_to_automaton(y, kAB));
    for (const auto& t : trees()) ASSERT_EQ(eval_automaton(d, t), evaluate(minus(x, y), t)) << render(x) << " \\ " << render(y);
  }
}

TEST(Ceiling, StatesOverride) {
  setenv("NAVQ_MAX_STATES", "3", 1);
  EXPECT_THROW(determinize(fixtures::loop_automaton()), ResourceError);
  unsetenv("NAVQ_MAX_STATES");
}
