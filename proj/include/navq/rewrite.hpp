#pragma once

#include <optional>
#include <string>
#include <vector>

#include "navq/automaton.hpp"
#include "navq/evaluator.hpp"
#include "navq/expr.hpp"

namespace navq {

struct SizeRecord {
  int states = 0;
  int conditions = 0;
  int depth = -1;   // condition depth, -1 when undefined (coprojections present)
  int weight = -1;  // number of conditions at maximal depth
};

struct RewriteReport {
  Expr input;
  Expr output;
  std::string pipeline;
  std::vector<SizeRecord> trace;
  std::optional<EquivVerdict> certificate;
};

// Max condition_depth over the automaton conditions (0 when there are none).
int automaton_condition_depth(const Automaton& a);
int automaton_condition_weight(const Automaton& a);
SizeRecord measure(const Automaton& a);

// Bottom-up compilation of a downward expression into an automaton, using products for & and
// determinization for \. Valid on single-labeled trees.
Automaton compile_tree_automaton(const Expr& e, std::vector<SizeRecord>* trace = nullptr);
Expr eliminate_intersect_difference(const Expr& e, std::vector<SizeRecord>* trace = nullptr);

// One projection-removal step on a coprojection-free, identity-free automaton of positive
// condition depth. Boolean-equivalent on labeled chains.
Automaton remove_projection_step(const Automaton& a);

Expr remove_projections_boolean_chain(const Expr& e, std::vector<SizeRecord>* trace = nullptr);
Expr remove_pi2_boolean_tree(const Expr& e, std::vector<SizeRecord>* trace = nullptr);

struct NormalForm {
  bool empty = true;
  int k = 0;             // valid when !empty: boolean-equivalent to E^k
  int search_bound = 0;  // largest chain node count inspected
};

NormalForm normalize_unlabeled_boolean(const Expr& e);
Expr normal_form_expr(const NormalForm& nf, const std::string& label);

enum class Pipeline { kNoIntersectDiff, kBooleanChainNoProj, kTreeNoPi2, kUnlabeledNormalForm };
Pipeline parse_pipeline(const std::string& name);
const char* pipeline_name(Pipeline p);

struct CertifyOptions {
  bool certify = true;
  int tree_nodes = 5;
  int chain_nodes = 9;
  int labels = 2;
};

RewriteReport run_pipeline(Pipeline p, const Expr& e, const CertifyOptions& opts = {});
std::string report_to_json(const RewriteReport& r);

}  // namespace navq
