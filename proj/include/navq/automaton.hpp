#pragma once

#include <string>
#include <vector>

#include "navq/evaluator.hpp"
#include "navq/expr.hpp"
#include "navq/graph.hpp"
#include "navq/relation.hpp"

namespace navq {

constexpr int kIdLabel = -1;

struct Transition {
  int from;
  int label;  // index into alphabet, or kIdLabel
  int to;
  bool operator==(const Transition& o) const { return from == o.from && label == o.label && to == o.to; }
  bool operator<(const Transition& o) const {
    if (from != o.from) return from < o.from;
    if (label != o.label) return label < o.label;
    return to < o.to;
  }
};

// Condition automaton: states carry sets of condition expressions (indices into `conditions`).
struct Automaton {
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  std::vector<Expr> conditions;
  std::vector<char> initial;
  std::vector<char> final;
  std::vector<Transition> transitions;
  std::vector<std::vector<int>> gamma;  // sorted condition indices per state

  int num_states() const { return static_cast<int>(states.size()); }
  int add_state(const std::string& name);
  int add_condition(const Expr& c);  // deduplicated
  int label_index(const std::string& l);  // adds to the alphabet when missing
  void add_transition(int from, int label, int to);
  void add_state_condition(int q, const Expr& c);
  void normalize();  // sorts/dedups transitions and gamma sets
};

// Composition of gamma(q), id when empty.
Expr state_condition(const Automaton& a, int q);

struct AutomatonFlags {
  Fragment free_of;  // operators from {tc, pi1, pi2, copi1, copi2} absent from every condition
  bool acyclic = true;
  bool identity_free = true;
};

AutomatonFlags flags(const Automaton& a);
void validate(const Automaton& a);  // throws on broken invariants

// Per-state sets of nodes satisfying every condition of the state.
class SatisfactionTable {
 public:
  SatisfactionTable(const Automaton& a, Evaluator& ev);
  bool sat(int q, int node) const { return sat_[q][node]; }

 private:
  std::vector<std::vector<char>> sat_;
};

bool satisfies(const Graph& g, int node, int q, const Automaton& a);
Relation eval_automaton(const Automaton& a, const Graph& g);
Relation eval_automaton(const Automaton& a, Evaluator& ev);

// Every tree up to `max_nodes` over the automaton alphabet, every ancestor-or-self pair:
// exactly one run from an initial state along the path.
bool check_deterministic(const Automaton& a, int max_nodes);
bool deterministic_on(const Automaton& a, const Graph& tree);

std::string automaton_to_json(const Automaton& a);
Automaton automaton_from_json(const std::string& text, const std::vector<std::string>& alphabet = {});
std::string automaton_to_dot(const Automaton& a);

// Removes states not on some initial-to-final path and unreferenced conditions.
Automaton trim(const Automaton& a);
// States renamed q0..qk in index order.
Automaton renumber(const Automaton& a);

}  // namespace navq
