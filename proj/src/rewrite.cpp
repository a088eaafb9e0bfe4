#include "navq/rewrite.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "json.hpp"
#include "navq/constructions.hpp"

namespace navq {

int automaton_condition_depth(const Automaton& a) {
  int d = 0;
  for (const auto& c : a.conditions) d = std::max(d, condition_depth(c));
  return d;
}

int automaton_condition_weight(const Automaton& a) {
  const int d = automaton_condition_depth(a);
  int w = 0;
  for (const auto& c : a.conditions)
    if (condition_depth(c) == d) ++w;
  return w;
}

SizeRecord measure(const Automaton& a) {
  SizeRecord r;
  r.states = a.num_states();
  r.conditions = static_cast<int>(a.conditions.size());
  try {
    r.depth = automaton_condition_depth(a);
    r.weight = automaton_condition_weight(a);
  } catch (const FragmentError&) {
    r.depth = r.weight = -1;
  }
  return r;
}

namespace {

Automaton clean(const Automaton& a) { return renumber(trim(a)); }

Automaton identity_free(const Automaton& a) {
  return flags(a).identity_free ? a : remove_identity_transitions(a);
}

}  // namespace

// ---------------------------------------------------------------- intersection / difference

Automaton compile_tree_automaton(const Expr& e, std::vector<SizeRecord>* trace) {
  if (!is_downward(e)) throw FragmentError("eliminate_intersect_difference needs a downward expression");
  std::function<Automaton(const Expr&)> go = [&](const Expr& x) -> Automaton {
    Automaton out;
    switch (x.kind()) {
      case Kind::kEmpty:
        return empty_automaton();
      case Kind::kIdentity:
        return identity_automaton();
      case Kind::kLabel:
        return label_automaton(x.label());
      case Kind::kCompose:
        out = compose_automata(go(x.left()), go(x.right()));
        break;
      case Kind::kUnion:
        out = union_automata(go(x.left()), go(x.right()));
        break;
      case Kind::kPlus:
        out = plus_automaton(go(x.left()));
        break;
      case Kind::kProj1:
      case Kind::kProj2:
      case Kind::kCoproj1:
      case Kind::kCoproj2: {
        Expr inner = automaton_to_expr(go(x.left()));
        out = condition_automaton(simplify_units(Expr::unary(x.kind(), inner)));
        break;
      }
      case Kind::kIntersect:
        out = intersect_automata(identity_free(go(x.left())), identity_free(go(x.right())));
        break;
      case Kind::kDifference:
        out = difference_automata(go(x.left()), go(x.right()));
        break;
      default:
        throw FragmentError("not downward: " + render(x));
    }
    out = clean(out);
    if (trace) trace->push_back(measure(out));
    return out;
  };
  return go(e);
}

Expr eliminate_intersect_difference(const Expr& e, std::vector<SizeRecord>* trace) {
  return automaton_to_expr(compile_tree_automaton(e, trace));
}

// ---------------------------------------------------------------- projection removal

namespace {

using Mask = std::uint64_t;

struct Inner {
  Automaton a;
  Mask initial = 0, final = 0;
  // succ[label name index in outer alphabet][state] -> mask
  std::vector<std::vector<Mask>> succ;
};

Mask bit(int i) { return Mask{1} << i; }

}  // namespace

Automaton remove_projection_step(const Automaton& a) {
  if (!flags(a).identity_free) throw std::invalid_argument("remove_projection_step needs an identity-free automaton");
  for (const auto& c : a.conditions) {
    Fragment f = operators_used(c);
    if (f.has(Op::kCopi1) || f.has(Op::kCopi2)) throw FragmentError("remove_projection_step: coprojection present");
  }
  const int depth = automaton_condition_depth(a);
  if (depth == 0) throw std::invalid_argument("remove_projection_step: condition depth is 0");

  // Condition of maximal depth, ties by rendered text.
  int chosen = -1;
  std::string chosen_text;
  for (std::size_t i = 0; i < a.conditions.size(); ++i) {
    if (condition_depth(a.conditions[i]) != depth) continue;
    std::string t = render(a.conditions[i]);
    if (chosen < 0 || t < chosen_text) chosen = static_cast<int>(i), chosen_text = t;
  }
  const Expr c = a.conditions[chosen];
  if (c.kind() != Kind::kProj1 && c.kind() != Kind::kProj2)
    throw std::invalid_argument("remove_projection_step: composite condition " + render(c));
  const bool down = c.kind() == Kind::kProj1;

  Automaton out;
  out.alphabet = a.alphabet;
  Inner in;
  in.a = renumber(trim(identity_free(expr_to_automaton(c.left(), a.alphabet))));
  for (const auto& l : in.a.alphabet) out.label_index(l);
  const int ni = in.a.num_states();
  if (ni > 62) throw ResourceError("remove_projection_step: inner automaton too large");
  const int nl = static_cast<int>(out.alphabet.size());
  in.succ.assign(nl, std::vector<Mask>(ni, 0));
  for (const auto& t : in.a.transitions) {
    int l = out.label_index(in.a.alphabet[t.label]);
    in.succ[l][t.from] |= bit(t.to);
  }
  for (int q = 0; q < ni; ++q) {
    if (in.a.initial[q]) in.initial |= bit(q);
    if (in.a.final[q]) in.final |= bit(q);
  }

  const int n = a.num_states();
  std::vector<char> needs_c(n, 0);
  for (int q = 0; q < n; ++q) needs_c[q] = std::binary_search(a.gamma[q].begin(), a.gamma[q].end(), chosen);
  std::vector<std::vector<std::vector<int>>> base(nl, std::vector<std::vector<int>>(n));
  for (const auto& t : a.transitions) base[out.label_index(a.alphabet[t.label])][t.from].push_back(t.to);

  auto valid = [&](int r, Mask Q) {
    if (r < 0 && Q == 0) return false;
    if (r >= 0 && needs_c[r]) return (Q & (down ? in.initial : in.final)) != 0;
    return true;
  };

  std::map<std::pair<int, Mask>, int> index;
  std::vector<std::pair<int, Mask>> keys;
  auto get = [&](int r, Mask Q) {
    auto it = index.find({r, Q});
    if (it != index.end()) return it->second;
    std::string name = "(" + (r < 0 ? std::string("_") : a.states[r]) + ",{";
    bool first = true;
    for (int q = 0; q < ni; ++q)
      if (Q & bit(q)) {
        if (!first) name += ",";
        name += in.a.states[q];
        first = false;
      }
    name += "})";
    int s = out.add_state(name);
    if (out.num_states() > static_cast<int>(state_ceiling()))
      throw ResourceError("projection removal exceeds the state ceiling");
    if (r >= 0)
      for (int ci : a.gamma[r])
        if (ci != chosen) out.add_state_condition(s, a.conditions[ci]);
    for (int q = 0; q < ni; ++q)
      if (Q & bit(q))
        for (int ci : in.a.gamma[q]) out.add_state_condition(s, in.a.conditions[ci]);
    if (down) {
      out.final[s] = (r < 0 || a.final[r]) && (Q & ~in.final) == 0;
    } else {
      out.final[s] = r >= 0 && a.final[r] &&
                     (needs_c[r] ? (Q != 0 && (Q & (Q - 1)) == 0 && (Q & in.final) == Q) : Q == 0);
    }
    index[{r, Q}] = s;
    keys.push_back({r, Q});
    return s;
  };

  // Initial states.
  if (down) {
    for (int r = 0; r < n; ++r) {
      if (!a.initial[r]) continue;
      if (needs_c[r]) {
        for (int q = 0; q < ni; ++q)
          if (in.initial & bit(q)) out.initial[get(r, bit(q))] = 1;
      } else {
        out.initial[get(r, 0)] = 1;
      }
    }
  } else {
    for (int r = -1; r < n; ++r) {
      if (r >= 0 && !a.initial[r]) continue;
      for (Mask Q = in.initial;; Q = (Q - 1) & in.initial) {
        if (valid(r, Q)) out.initial[get(r, Q)] = 1;
        if (Q == 0) break;
      }
    }
  }

  for (std::size_t cur = 0; cur < keys.size(); ++cur) {
    const auto [r, R] = keys[cur];
    const int from = static_cast<int>(cur);
    for (int l = 0; l < nl; ++l) {
      std::vector<int> targets;
      if (r >= 0) targets = base[l][r];
      if (down) {
        if (r < 0 || a.final[r]) targets.push_back(-1);
      } else if (r < 0) {
        targets.push_back(-1);
        for (int s = 0; s < n; ++s)
          if (a.initial[s]) targets.push_back(s);
      }
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      if (targets.empty()) continue;

      std::set<Mask> copies;
      if (down) {
        // Each pending copy moves to one successor, or stops when final.
        copies.insert(0);
        for (int p = 0; p < ni && !copies.empty(); ++p) {
          if (!(R & bit(p))) continue;
          std::set<Mask> next;
          Mask options = in.succ[l][p];
          for (Mask m : copies) {
            if (in.final & bit(p)) next.insert(m);
            for (int q = 0; q < ni; ++q)
              if (options & bit(q)) next.insert(m | bit(q));
          }
          copies.swap(next);
        }
      } else {
        Mask reach = 0;
        for (int p = 0; p < ni; ++p)
          if (R & bit(p)) reach |= in.succ[l][p];
        Mask cand = reach | in.initial;
        if (__builtin_popcountll(cand) > 20) throw ResourceError("projection removal: too many copy states");
        for (Mask S = cand;; S = (S - 1) & cand) {
          // Copies in R without a successor in S: at most one, final, and only where c is required.
          int stopped = 0;
          bool ok = true;
          for (int p = 0; p < ni && ok; ++p) {
            if (!(R & bit(p)) || (in.succ[l][p] & S)) continue;
            if (++stopped > 1 || !(in.final & bit(p)) || !needs_c[r < 0 ? 0 : r] || r < 0) ok = false;
          }
          if (ok) copies.insert(S);
          if (S == 0) break;
        }
      }
      for (int s : targets) {
        for (Mask S : copies) {
          std::vector<Mask> variants{S};
          if (down && s >= 0 && needs_c[s])
            for (int q = 0; q < ni; ++q)
              if (in.initial & bit(q)) variants.push_back(S | bit(q));
          for (Mask V : variants)
            if (valid(s, V)) out.add_transition(from, l, get(s, V));
        }
      }
    }
  }
  out.normalize();
  return renumber(trim(out));
}

namespace {

Expr remove_projections(const Expr& e, Fragment allowed, const char* who, std::vector<SizeRecord>* trace) {
  if (!operators_used(e).subset_of(allowed))
    throw FragmentError(std::string(who) + ": expression outside " + allowed.to_string());
  Automaton a = clean(identity_free(expr_to_automaton(e)));
  if (trace) trace->push_back(measure(a));
  while (automaton_condition_depth(a) > 0) {
    a = remove_projection_step(a);
    if (trace) trace->push_back(measure(a));
  }
  return automaton_to_expr(a);
}

}  // namespace

Expr remove_projections_boolean_chain(const Expr& e, std::vector<SizeRecord>* trace) {
  return remove_projections(e, {Op::kTc, Op::kPi1, Op::kPi2}, "remove_projections_boolean_chain", trace);
}

Expr remove_pi2_boolean_tree(const Expr& e, std::vector<SizeRecord>* trace) {
  return remove_projections(e, {Op::kTc, Op::kPi2}, "remove_pi2_boolean_tree", trace);
}

// ---------------------------------------------------------------- unlabeled normal form

namespace {

int structural_bound(const Expr& e) {
  switch (e.kind()) {
    case Kind::kEmpty:
    case Kind::kIdentity:
      return 0;
    case Kind::kDiversity:
    case Kind::kLabel:
      return 1;
    case Kind::kCompose:
      return structural_bound(e.left()) + structural_bound(e.right());
    case Kind::kIntersect:
    case Kind::kDifference:
      return std::max(1, structural_bound(e.left())) * std::max(1, structural_bound(e.right()));
    case Kind::kUnion:
      return std::max(structural_bound(e.left()), structural_bound(e.right()));
    default:
      return structural_bound(e.left());
  }
}

int automaton_bound(const Expr& e) {
  Automaton a = clean(identity_free(compile_tree_automaton(e)));
  int b = a.num_states() + 1;
  for (const auto& c : a.conditions)
    if (!c.is_atom()) b += automaton_bound(c.left());
  return b;
}

}  // namespace

NormalForm normalize_unlabeled_boolean(const Expr& e) {
  Fragment f = operators_used(e);
  if (!f.subset_of({Op::kDi, Op::kConv, Op::kTc, Op::kPi1, Op::kPi2, Op::kCap}))
    throw FragmentError("normalize_unlabeled_boolean: expression outside L(di, conv, tc, pi, cap)");
  auto labels = labels_of(e);
  if (labels.size() > 1) throw FragmentError("normalize_unlabeled_boolean: more than one label");
  const std::string label = labels.empty() ? "a" : *labels.begin();
  NormalForm nf;
  int bound = (f.has(Op::kDi) || f.has(Op::kConv)) ? structural_bound(e) + 1 : automaton_bound(e);
  bound = std::min(std::max(bound, 1), 512);
  nf.search_bound = bound;
  for (int nodes = 1; nodes <= bound; ++nodes) {
    Graph chain = chain_from_word(std::vector<int>(nodes - 1, 0), {label});
    if (!evaluate(e, chain).empty()) {
      nf.empty = false;
      nf.k = nodes - 1;
      return nf;
    }
  }
  return nf;
}

Expr normal_form_expr(const NormalForm& nf, const std::string& label) {
  return nf.empty ? empty() : power(lbl(label), nf.k);
}

// ---------------------------------------------------------------- pipelines

Pipeline parse_pipeline(const std::string& name) {
  for (Pipeline p : {Pipeline::kNoIntersectDiff, Pipeline::kBooleanChainNoProj, Pipeline::kTreeNoPi2,
                     Pipeline::kUnlabeledNormalForm})
    if (name == pipeline_name(p)) return p;
  throw std::invalid_argument("unknown pipeline '" + name + "'");
}

const char* pipeline_name(Pipeline p) {
  switch (p) {
    case Pipeline::kNoIntersectDiff:
      return "no-intersect-diff";
    case Pipeline::kBooleanChainNoProj:
      return "boolean-chain-noproj";
    case Pipeline::kTreeNoPi2:
      return "tree-nopi2";
    case Pipeline::kUnlabeledNormalForm:
      return "unlabeled-normalform";
  }
  return "";
}

RewriteReport run_pipeline(Pipeline p, const Expr& e, const CertifyOptions& opts) {
  RewriteReport r;
  r.input = e;
  r.pipeline = pipeline_name(p);
  const int labels = std::max(opts.labels, static_cast<int>(labels_of(e).size()));
  Semantics sem = Semantics::kBoolean;
  GraphClass cls = GraphClass::kLabeledTree;
  Bound bound{opts.tree_nodes, labels};
  switch (p) {
    case Pipeline::kNoIntersectDiff:
      r.output = eliminate_intersect_difference(e, &r.trace);
      sem = Semantics::kPath;
      break;
    case Pipeline::kBooleanChainNoProj:
      r.output = remove_projections_boolean_chain(e, &r.trace);
      cls = GraphClass::kLabeledChain;
      bound.max_nodes = opts.chain_nodes;
      break;
    case Pipeline::kTreeNoPi2:
      r.output = remove_pi2_boolean_tree(e, &r.trace);
      break;
    case Pipeline::kUnlabeledNormalForm: {
      NormalForm nf = normalize_unlabeled_boolean(e);
      auto ls = labels_of(e);
      r.output = normal_form_expr(nf, ls.empty() ? "a" : *ls.begin());
      cls = GraphClass::kUnlabeledTree;
      bound.labels = 1;
      break;
    }
  }
  if (opts.certify) {
    OracleOptions oo;
    oo.parallel = true;
    r.certificate = sem == Semantics::kPath ? path_equivalent(e, r.output, cls, bound, oo)
                                            : boolean_equivalent(e, r.output, cls, bound, oo);
  }
  return r;
}

std::string report_to_json(const RewriteReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["input"] = render(r.input);
  j["output"] = render(r.output);
  j["pipeline"] = r.pipeline;
  j["trace"] = ordered_json::array();
  for (const auto& s : r.trace)
    j["trace"].push_back({{"states", s.states}, {"conditions", s.conditions}, {"depth", s.depth}, {"weight", s.weight}});
  if (r.certificate) {
    const auto& v = *r.certificate;
    ordered_json c;
    c["status"] = v.equivalent ? "equivalent-up-to-bound" : "counterexample";
    c["semantics"] = v.semantics == Semantics::kPath ? "path" : "boolean";
    c["class"] = class_name(v.cls);
    c["max_nodes"] = v.bound.max_nodes;
    c["labels"] = v.bound.labels;
    c["instances"] = v.instances;
    if (v.witness) c["witness"] = ordered_json::parse(graph_to_json(*v.witness));
    j["certificate"] = c;
  }
  return j.dump();
}

}  // namespace navq
