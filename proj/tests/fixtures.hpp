#pragma once

#include <string>
#include <vector>

#include "navq/automaton.hpp"
#include "navq/expr.hpp"
#include "navq/graph.hpp"

namespace navq::fixtures {

// Class hierarchy tree with subclass/method edges.
inline Graph class_tree() {
  return make_graph({"Object", "toString()", "AbstractList", "size()", "ArrayList", "LinkedList", "addFront(element)"},
                    {"subclass", "method"},
                    {{"Object", "toString()", "method"},
                     {"Object", "AbstractList", "subclass"},
                     {"AbstractList", "size()", "method"},
                     {"AbstractList", "ArrayList", "subclass"},
                     {"AbstractList", "LinkedList", "subclass"},
                     {"LinkedList", "addFront(element)", "method"}});
}

// Two a-paths from src to tgt, of lengths 3 and 7.
inline Graph two_path_dag() {
  return make_graph({"src", "n1", "n2", "m1", "m2", "m3", "m4", "m5", "m6", "tgt"}, {"a"},
                    {{"src", "n1", "a"},
                     {"n1", "n2", "a"},
                     {"n2", "tgt", "a"},
                     {"src", "m1", "a"},
                     {"m1", "m2", "a"},
                     {"m2", "m3", "a"},
                     {"m3", "m4", "a"},
                     {"m4", "m5", "a"},
                     {"m5", "m6", "a"},
                     {"m6", "tgt", "a"}});
}

// Four-state automaton over l1, l2, l3 with a self-loop on q2.
inline Automaton loop_automaton() {
  Automaton a;
  for (const char* s : {"q1", "q2", "q3", "q4"}) a.add_state(s);
  for (const char* l : {"l1", "l2", "l3"}) a.label_index(l);
  a.initial[0] = a.initial[3] = 1;
  a.final[2] = a.final[3] = 1;
  a.add_transition(0, 0, 1);
  a.add_transition(0, 2, 3);
  a.add_transition(1, 0, 1);
  a.add_transition(1, 1, 2);
  a.add_state_condition(0, id());
  a.add_state_condition(1, parse("pi2(l1^2)"));
  a.add_state_condition(1, parse("pi1(l2^3)"));
  a.normalize();
  return a;
}

// Tree with named nodes r, m, n1..n4 that the loop automaton runs over.
inline Graph run_tree() {
  return make_graph({"r", "m", "n1", "n2", "n3", "n4", "m21", "m22", "m23", "m41", "m42"}, {"l1", "l2", "l3"},
                    {{"r", "n1", "l1"},
                     {"n1", "n2", "l1"},
                     {"n2", "n3", "l1"},
                     {"n3", "n4", "l2"},
                     {"n2", "m21", "l2"},
                     {"m21", "m22", "l2"},
                     {"m22", "m23", "l2"},
                     {"n4", "m41", "l2"},
                     {"m41", "m42", "l2"},
                     {"r", "m", "l3"}});
}

// u -id-> v -id-> w, v loops on a, u -b-> w; v carries pi1(b).
inline Automaton identity_chain_automaton() {
  Automaton a;
  for (const char* s : {"u", "v", "w"}) a.add_state(s);
  int la = a.label_index("a");
  int lb = a.label_index("b");
  a.initial[0] = 1;
  a.final[2] = 1;
  a.add_transition(0, kIdLabel, 1);
  a.add_transition(1, kIdLabel, 2);
  a.add_transition(1, la, 1);
  a.add_transition(0, lb, 2);
  a.add_state_condition(1, parse("pi1(b)"));
  a.normalize();
  return a;
}

// Deterministic automaton over l1, l2 with a sink state q5.
inline Automaton deterministic_example() {
  Automaton a;
  for (const char* s : {"q1", "q2", "q3", "q4", "q5"}) a.add_state(s);
  int l1 = a.label_index("l1");
  int l2 = a.label_index("l2");
  a.initial[0] = a.initial[3] = 1;
  a.final[2] = a.final[3] = 1;
  a.add_state_condition(0, parse("pi2(l1^3)"));
  a.add_state_condition(3, parse("copi2(l1^3)"));
  a.add_transition(0, l1, 1);
  a.add_transition(0, l2, 4);
  a.add_transition(1, l2, 1);
  a.add_transition(1, l1, 2);
  a.add_transition(2, l1, 4);
  a.add_transition(2, l2, 4);
  a.add_transition(3, l1, 4);
  a.add_transition(3, l2, 4);
  a.add_transition(4, l1, 4);
  a.add_transition(4, l2, 4);
  a.normalize();
  return a;
}

inline std::vector<std::pair<std::string, std::string>> named_pairs(const Relation& r, const Graph& g) {
  std::vector<std::pair<std::string, std::string>> out;
  for (auto [x, y] : r.pairs()) out.push_back({g.nodes[x], g.nodes[y]});
  return out;
}

}  // namespace navq::fixtures
