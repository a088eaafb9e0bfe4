#pragma once

#include <string>
#include <vector>

#include "navq/automaton.hpp"
#include "navq/expr.hpp"

namespace navq {

// Accepts L(tc, pi1, pi2, copi1, copi2); throws FragmentError on di, conv, &, \.
// Labels of `alphabet` are added to the automaton alphabet.
Automaton expr_to_automaton(const Expr& e, const std::vector<std::string>& alphabet = {});

Automaton empty_automaton();
Automaton identity_automaton();
Automaton label_automaton(const std::string& label);
Automaton condition_automaton(const Expr& condition);  // single initial+final state

Automaton compose_automata(const Automaton& a1, const Automaton& a2);
Automaton union_automata(const Automaton& a1, const Automaton& a2);
Automaton plus_automaton(const Automaton& a);

// State elimination, lowest current degree first.
Expr automaton_to_expr(const Automaton& a);

struct IdentityPair {
  int head;
  std::vector<int> reach;  // sorted, contains head
};

std::vector<IdentityPair> identity_pairs(const Automaton& a);
Automaton remove_identity_transitions(const Automaton& a);

// Product over single-labeled trees. Both operands must be identity-free.
Automaton intersect_automata(const Automaton& a1, const Automaton& a2);

// id <-> 0, pi_i <-> copi_i. Throws std::invalid_argument on composite conditions.
Expr condition_complement(const Expr& c);

// Identity-free input. `extra_alphabet` widens the label set the result is complete for.
Automaton determinize(const Automaton& a, const std::vector<std::string>& extra_alphabet = {});
Automaton downward_complement_automaton(const Automaton& a, const std::vector<std::string>& extra_alphabet = {});
Automaton difference_automata(const Automaton& a1, const Automaton& a2);

// Upper bound on generated states for determinize and products; NAVQ_MAX_STATES overrides.
std::size_t state_ceiling();

}  // namespace navq
