#include "navq/constructions.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <queue>
#include <set>

#include <boost/dynamic_bitset.hpp>

namespace navq {

std::size_t state_ceiling() {
  if (const char* v = std::getenv("NAVQ_MAX_STATES")) {
    char* end = nullptr;
    unsigned long long x = std::strtoull(v, &end, 10);
    if (end != v && x > 0) return static_cast<std::size_t>(x);
  }
  return 200'000;
}

namespace {

// Copies src into dst; returns the state offset. Flags are copied as-is.
int append(Automaton& dst, const Automaton& src) {
  const int off = dst.num_states();
  std::vector<int> lmap(src.alphabet.size());
  for (std::size_t l = 0; l < src.alphabet.size(); ++l) lmap[l] = dst.label_index(src.alphabet[l]);
  std::vector<int> cmap(src.conditions.size());
  for (std::size_t c = 0; c < src.conditions.size(); ++c) cmap[c] = dst.add_condition(src.conditions[c]);
  for (int q = 0; q < src.num_states(); ++q) {
    int nq = dst.add_state(src.states[q]);
    dst.initial[nq] = src.initial[q];
    dst.final[nq] = src.final[q];
    for (int c : src.gamma[q]) dst.gamma[nq].push_back(cmap[c]);
  }
  for (const auto& t : src.transitions)
    dst.add_transition(t.from + off, t.label == kIdLabel ? kIdLabel : lmap[t.label], t.to + off);
  return off;
}

void add_labels(Automaton& a, const std::vector<std::string>& labels) {
  for (const auto& l : labels) a.label_index(l);
}

// Locally simplifying constructors: operands are assumed simplified already.
Expr s_compose(const Expr& a, const Expr& b) {
  if (a.kind() == Kind::kEmpty || b.kind() == Kind::kEmpty) return empty();
  if (a.kind() == Kind::kIdentity) return b;
  if (b.kind() == Kind::kIdentity) return a;
  return compose(a, b);
}

void union_parts(const Expr& e, std::vector<Expr>& out) {
  if (e.kind() == Kind::kUnion && !(e.left().kind() == Kind::kIdentity && e.right().kind() == Kind::kPlus)) {
    union_parts(e.left(), out);
    union_parts(e.right(), out);
  } else {
    out.push_back(e);
  }
}

Expr s_union(const Expr& a, const Expr& b) {
  if (a.kind() == Kind::kEmpty) return b;
  if (b.kind() == Kind::kEmpty) return a;
  std::vector<Expr> pa, pb;
  union_parts(a, pa);
  union_parts(b, pb);
  Expr out = a;
  for (const auto& x : pb)
    if (std::find(pa.begin(), pa.end(), x) == pa.end()) {
      out = unite(out, x);
      pa.push_back(x);
    }
  return out;
}

Expr s_star(const Expr& x) {
  if (x.kind() == Kind::kEmpty || x.kind() == Kind::kIdentity) return id();
  return star(x);
}

}  // namespace

Automaton empty_automaton() {
  Automaton a;
  int v = a.add_state("v");
  int w = a.add_state("w");
  a.initial[v] = 1;
  a.final[w] = 1;
  return a;
}

Automaton identity_automaton() {
  Automaton a = empty_automaton();
  a.add_transition(0, kIdLabel, 1);
  return a;
}

Automaton label_automaton(const std::string& label) {
  Automaton a = empty_automaton();
  a.add_transition(0, a.label_index(label), 1);
  return a;
}

Automaton condition_automaton(const Expr& condition) {
  Automaton a;
  int v = a.add_state("v");
  a.initial[v] = a.final[v] = 1;
  a.add_state_condition(v, condition);
  return a;
}

Automaton compose_automata(const Automaton& a1, const Automaton& a2) {
  Automaton out;
  append(out, a1);
  const int off = append(out, a2);
  for (int p = 0; p < a1.num_states(); ++p)
    if (a1.final[p])
      for (int q = 0; q < a2.num_states(); ++q)
        if (a2.initial[q]) out.add_transition(p, kIdLabel, q + off);
  for (int p = 0; p < a1.num_states(); ++p) out.final[p] = 0;
  for (int q = 0; q < a2.num_states(); ++q) out.initial[q + off] = 0;
  out.normalize();
  return renumber(out);
}

Automaton union_automata(const Automaton& a1, const Automaton& a2) {
  Automaton out;
  append(out, a1);
  append(out, a2);
  out.normalize();
  return renumber(out);
}

Automaton plus_automaton(const Automaton& a) {
  Automaton out;
  int v = out.add_state("v");
  int w = out.add_state("w");
  const int off = append(out, a);
  for (int q = 0; q < a.num_states(); ++q) {
    if (a.initial[q]) out.add_transition(v, kIdLabel, q + off);
    if (a.final[q]) out.add_transition(q + off, kIdLabel, w);
    out.initial[q + off] = out.final[q + off] = 0;
  }
  out.add_transition(w, kIdLabel, v);
  out.initial[v] = 1;
  out.final[w] = 1;
  out.normalize();
  return renumber(out);
}

Automaton expr_to_automaton(const Expr& e, const std::vector<std::string>& alphabet) {
  std::function<Automaton(const Expr&)> go = [&](const Expr& x) -> Automaton {
    switch (x.kind()) {
      case Kind::kEmpty:
        return empty_automaton();
      case Kind::kIdentity:
        return identity_automaton();
      case Kind::kLabel:
        return label_automaton(x.label());
      case Kind::kProj1:
      case Kind::kProj2:
      case Kind::kCoproj1:
      case Kind::kCoproj2:
        return condition_automaton(x);
      case Kind::kCompose:
        return compose_automata(go(x.left()), go(x.right()));
      case Kind::kUnion:
        return union_automata(go(x.left()), go(x.right()));
      case Kind::kPlus:
        return plus_automaton(go(x.left()));
      default:
        throw FragmentError("expr_to_automaton accepts L(tc, pi, copi) only; got " + render(x));
    }
  };
  Automaton a = go(e);
  add_labels(a, alphabet);
  return renumber(a);
}

// ---------------------------------------------------------------- automaton to expression

Expr automaton_to_expr(const Automaton& a) {
  const int n = a.num_states();
  const int v = n, w = n + 1, total = n + 2;
  std::vector<std::vector<Expr>> e(total, std::vector<Expr>(total, empty()));
  std::vector<Expr> hat(total, id());
  for (int q = 0; q < n; ++q) {
    std::vector<Expr> cs;
    for (int c : a.gamma[q]) cs.push_back(a.conditions[c]);
    Expr h = id();
    for (const auto& c : cs) h = s_compose(h, c);
    hat[q] = h;
  }
  // Every run enters a state through an edge, so the state's conditions ride on the edges into it.
  auto add = [&](int p, const Expr& step, int q) { e[p][q] = s_union(e[p][q], s_compose(step, q < n ? hat[q] : id())); };
  for (const auto& t : a.transitions) add(t.from, t.label == kIdLabel ? id() : lbl(a.alphabet[t.label]), t.to);
  for (int q = 0; q < n; ++q) {
    if (a.initial[q]) add(v, id(), q);
    if (a.final[q]) add(q, id(), w);
  }
  std::vector<char> alive(total, 1);
  for (int round = 0; round < n; ++round) {
    int best = -1, best_deg = 0;
    for (int q = 0; q < n; ++q) {
      if (!alive[q]) continue;
      int deg = 0;
      for (int p = 0; p < total; ++p) {
        if (!alive[p] || p == q) continue;
        if (e[p][q].kind() != Kind::kEmpty) ++deg;
        if (e[q][p].kind() != Kind::kEmpty) ++deg;
      }
      if (best < 0 || deg < best_deg) best = q, best_deg = deg;
    }
    const int q = best;
    alive[q] = 0;
    const Expr loop = s_star(e[q][q]);
    for (int p1 = 0; p1 < total; ++p1) {
      if (!alive[p1] || e[p1][q].kind() == Kind::kEmpty) continue;
      const Expr head = s_compose(e[p1][q], loop);
      for (int p2 = 0; p2 < total; ++p2) {
        if (!alive[p2] || e[q][p2].kind() == Kind::kEmpty) continue;
        e[p1][p2] = s_union(e[p1][p2], s_compose(head, e[q][p2]));
      }
    }
  }
  return e[v][w];
}

// ---------------------------------------------------------------- identity pairs

std::vector<IdentityPair> identity_pairs(const Automaton& a) {
  const int n = a.num_states();
  std::vector<std::vector<int>> id_succ(n);
  for (const auto& t : a.transitions)
    if (t.label == kIdLabel) id_succ[t.from].push_back(t.to);
  std::vector<IdentityPair> out;
  for (int q = 0; q < n; ++q) {
    std::set<std::vector<int>> sets;
    std::set<std::pair<int, std::vector<int>>> seen;
    std::vector<std::pair<int, std::vector<int>>> stack{{q, {q}}};
    seen.insert(stack.back());
    while (!stack.empty()) {
      auto [cur, vis] = stack.back();
      stack.pop_back();
      sets.insert(vis);
      for (int r : id_succ[cur]) {
        std::vector<int> nv = vis;
        if (!std::binary_search(nv.begin(), nv.end(), r)) nv.insert(std::lower_bound(nv.begin(), nv.end(), r), r);
        auto key = std::make_pair(r, nv);
        if (seen.insert(key).second) stack.push_back(key);
      }
    }
    std::vector<std::vector<int>> ordered(sets.begin(), sets.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
      if (x.size() != y.size()) return x.size() < y.size();
      return x < y;
    });
    for (auto& s : ordered) out.push_back({q, s});
    if (out.size() > state_ceiling()) throw ResourceError("identity-pair construction exceeds the state ceiling");
  }
  return out;
}

Automaton remove_identity_transitions(const Automaton& a) {
  std::vector<IdentityPair> pairs = identity_pairs(a);
  Automaton out;
  out.alphabet = a.alphabet;
  std::vector<std::vector<int>> by_head(a.num_states());
  for (const auto& p : pairs) {
    std::string name = "(" + a.states[p.head] + ",{";
    for (std::size_t i = 0; i < p.reach.size(); ++i) {
      if (i) name += ",";
      name += a.states[p.reach[i]];
    }
    name += "})";
    int s = out.add_state(name);
    by_head[p.head].push_back(s);
    out.initial[s] = a.initial[p.head];
    for (int r : p.reach) {
      if (a.final[r]) out.final[s] = 1;
      for (int c : a.gamma[r]) out.add_state_condition(s, a.conditions[c]);
    }
  }
  std::vector<std::vector<Transition>> succ(a.num_states());
  for (const auto& t : a.transitions)
    if (t.label != kIdLabel) succ[t.from].push_back(t);
  for (std::size_t s = 0; s < pairs.size(); ++s)
    for (int r : pairs[s].reach)
      for (const auto& t : succ[r])
        for (int target : by_head[t.to]) out.add_transition(static_cast<int>(s), t.label, target);
  out.normalize();
  return out;
}

// ---------------------------------------------------------------- intersection

Automaton intersect_automata(const Automaton& a1, const Automaton& a2) {
  if (!flags(a1).identity_free || !flags(a2).identity_free)
    throw std::invalid_argument("intersect_automata needs identity-free operands");
  Automaton out;
  for (const auto& l : a1.alphabet) out.label_index(l);
  for (const auto& l : a2.alphabet) out.label_index(l);
  std::vector<std::vector<std::pair<std::string, int>>> s1(a1.num_states()), s2(a2.num_states());
  for (const auto& t : a1.transitions) s1[t.from].push_back({a1.alphabet[t.label], t.to});
  for (const auto& t : a2.transitions) s2[t.from].push_back({a2.alphabet[t.label], t.to});
  std::map<std::pair<int, int>, int> index;
  std::queue<std::pair<int, int>> work;
  auto get = [&](int p, int q) {
    auto it = index.find({p, q});
    if (it != index.end()) return it->second;
    int s = out.add_state("<" + a1.states[p] + "|" + a2.states[q] + ">");
    if (out.num_states() > static_cast<int>(state_ceiling())) throw ResourceError("product exceeds the state ceiling");
    out.final[s] = a1.final[p] && a2.final[q];
    for (int c : a1.gamma[p]) out.add_state_condition(s, a1.conditions[c]);
    for (int c : a2.gamma[q]) out.add_state_condition(s, a2.conditions[c]);
    index[{p, q}] = s;
    work.push({p, q});
    return s;
  };
  for (int p = 0; p < a1.num_states(); ++p)
    if (a1.initial[p])
      for (int q = 0; q < a2.num_states(); ++q)
        if (a2.initial[q]) out.initial[get(p, q)] = 1;
  while (!work.empty()) {
    auto [p, q] = work.front();
    work.pop();
    int from = index[{p, q}];
    for (const auto& [l1, t1] : s1[p])
      for (const auto& [l2, t2] : s2[q])
        if (l1 == l2) {
          int to = get(t1, t2);
          out.add_transition(from, out.label_index(l1), to);
        }
  }
  out.normalize();
  return out;
}

// ---------------------------------------------------------------- determinization

Expr condition_complement(const Expr& c) {
  switch (c.kind()) {
    case Kind::kIdentity:
      return empty();
    case Kind::kEmpty:
      return id();
    case Kind::kProj1:
      return copi1(c.left());
    case Kind::kProj2:
      return copi2(c.left());
    case Kind::kCoproj1:
      return pi1(c.left());
    case Kind::kCoproj2:
      return pi2(c.left());
    default:
      throw std::invalid_argument("condition_complement: composite or non-condition " + render(c));
  }
}

Automaton determinize(const Automaton& a, const std::vector<std::string>& extra_alphabet) {
  if (!flags(a).identity_free) throw std::invalid_argument("determinize needs an identity-free automaton");
  const int k = static_cast<int>(a.conditions.size());
  if (k > 16) throw ResourceError("determinize: too many conditions");
  const int n = a.num_states();
  const std::uint32_t subsets = 1u << k;
  using Set = boost::dynamic_bitset<>;
  std::vector<std::uint32_t> gmask(n, 0);
  for (int q = 0; q < n; ++q)
    for (int c : a.gamma[q]) gmask[q] |= 1u << c;

  Automaton out;
  out.alphabet = a.alphabet;
  for (const auto& l : extra_alphabet) out.label_index(l);
  std::vector<int> lmap(out.alphabet.size(), -1);  // out label -> a label
  for (std::size_t l = 0; l < out.alphabet.size(); ++l) {
    auto it = std::find(a.alphabet.begin(), a.alphabet.end(), out.alphabet[l]);
    if (it != a.alphabet.end()) lmap[l] = static_cast<int>(it - a.alphabet.begin());
  }
  // C_D = C followed by cc(C).
  for (const auto& c : a.conditions) out.add_condition(c);
  std::vector<int> comp_index(k);
  for (int c = 0; c < k; ++c) comp_index[c] = out.add_condition(condition_complement(a.conditions[c]));

  std::vector<std::vector<std::vector<int>>> succ(a.alphabet.size(), std::vector<std::vector<int>>(n));
  for (const auto& t : a.transitions) succ[t.label][t.from].push_back(t.to);

  std::map<std::pair<Set, std::uint32_t>, int> index;
  std::vector<std::pair<Set, std::uint32_t>> key_of;
  auto get = [&](const Set& Q, std::uint32_t V) {
    auto it = index.find({Q, V});
    if (it != index.end()) return it->second;
    std::string name = "({";
    bool first = true;
    for (auto i = Q.find_first(); i != Set::npos; i = Q.find_next(i)) {
      if (!first) name += ",";
      name += a.states[i];
      first = false;
    }
    name += "},{";
    first = true;
    for (int c = 0; c < k; ++c)
      if (V >> c & 1) {
        if (!first) name += ",";
        name += "c" + std::to_string(c);
        first = false;
      }
    name += "})";
    int s = out.add_state(name);
    if (out.num_states() > static_cast<int>(state_ceiling()))
      throw ResourceError("determinize exceeds the state ceiling");
    for (auto i = Q.find_first(); i != Set::npos; i = Q.find_next(i))
      if (a.final[i]) out.final[s] = 1;
    for (int c = 0; c < k; ++c) out.gamma[s].push_back((V >> c & 1) ? c : comp_index[c]);
    index[{Q, V}] = s;
    key_of.push_back({Q, V});
    return s;
  };
  for (std::uint32_t V = 0; V < subsets; ++V) {
    Set Q(n);
    for (int q = 0; q < n; ++q)
      if (a.initial[q] && (gmask[q] & ~V) == 0) Q.set(q);
    out.initial[get(Q, V)] = 1;
  }
  for (std::size_t cur = 0; cur < key_of.size(); ++cur) {
    const Set Q = key_of[cur].first;
    const int from = static_cast<int>(cur);
    for (std::size_t l = 0; l < out.alphabet.size(); ++l) {
      Set step(n);
      if (lmap[l] >= 0)
        for (auto q = Q.find_first(); q != Set::npos; q = Q.find_next(q))
          for (int p : succ[lmap[l]][q]) step.set(p);
      for (std::uint32_t W = 0; W < subsets; ++W) {
        Set P(n);
        for (auto p = step.find_first(); p != Set::npos; p = step.find_next(p))
          if ((gmask[p] & ~W) == 0) P.set(p);
        int to = get(P, W);
        out.add_transition(from, static_cast<int>(l), to);
      }
    }
  }
  out.normalize();
  return out;
}

Automaton downward_complement_automaton(const Automaton& a, const std::vector<std::string>& extra_alphabet) {
  Automaton d = determinize(flags(a).identity_free ? a : remove_identity_transitions(a), extra_alphabet);
  for (int q = 0; q < d.num_states(); ++q) d.final[q] = !d.final[q];
  return d;
}

Automaton difference_automata(const Automaton& a1, const Automaton& a2) {
  Automaton left = flags(a1).identity_free ? a1 : remove_identity_transitions(a1);
  std::vector<std::string> sigma = a1.alphabet;
  for (const auto& l : a2.alphabet)
    if (std::find(sigma.begin(), sigma.end(), l) == sigma.end()) sigma.push_back(l);
  Automaton right = downward_complement_automaton(a2, sigma);
  return intersect_automata(left, right);
}

}  // namespace navq
