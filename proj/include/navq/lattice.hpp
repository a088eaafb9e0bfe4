#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "navq/evaluator.hpp"
#include "navq/expr.hpp"

namespace navq {

enum class ChainOrTree { kLabeledChain, kUnlabeledChain, kLabeledTree, kUnlabeledTree };
const char* lattice_class_name(ChainOrTree c);
ChainOrTree parse_lattice_class(const std::string& name);
bool is_labeled(ChainOrTree c);
bool is_chain(ChainOrTree c);

struct LatticeQuery {
  Fragment f1;
  Fragment f2;
  Semantics semantics = Semantics::kBoolean;
  ChainOrTree cls = ChainOrTree::kLabeledTree;
};

class NotEncoded : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// One Hasse diagram: nodes hold the BASE-closed fragments they contain; edges are strict
// subsumptions (lower -> higher).
struct HasseDiagram {
  std::string name;
  struct NodeData {
    std::string id;
    std::vector<Fragment> members;  // fragments as written; membership is by BASE equality
    bool downset_members = false;   // unlabeled base node: also every F within the listed sets
  };
  std::vector<NodeData> nodes;
  std::vector<std::pair<int, int>> edges;
};

const HasseDiagram& diagram_for(Semantics sem, ChainOrTree cls);
const std::vector<const HasseDiagram*>& all_diagrams();

// Index of the node holding BASE(f); throws NotEncoded outside the diagram.
int locate(const HasseDiagram& d, const Fragment& f);

// Path from BASE(f1) to BASE(f2) in the diagram for (semantics, class).
bool subsumes(const LatticeQuery& q);

struct Witness {
  std::string expr;
  std::string claim;
  std::vector<std::string> labels;  // alphabet the expression is read over
  std::function<bool(std::string*)> check;  // runs the desk-scale behaviour check
};

// Canned witness from the separation results, or none. Requires subsumes(q) to be false.
std::optional<Witness> separation_witness(const LatticeQuery& q);
const std::vector<Witness>& all_witnesses();

struct Claim {
  bool subsumption = true;  // false: non-subsumption
  Fragment f1;
  Fragment f2;
  Semantics semantics = Semantics::kBoolean;
  ChainOrTree cls = ChainOrTree::kLabeledTree;
  bool operator==(const Claim& o) const {
    return subsumption == o.subsumption && f1 == o.f1 && f2 == o.f2 && semantics == o.semantics && cls == o.cls;
  }
};

// Claims implied by path => boolean and by the is-a order between graph classes.
std::vector<Claim> carry_over(const Claim& c);
// Class order: sub is-a super (reflexive, transitive).
bool is_subclass(ChainOrTree sub, ChainOrTree super);

std::string lattice_json();

}  // namespace navq
