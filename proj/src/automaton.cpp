#include "navq/automaton.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "json.hpp"

namespace navq {

int Automaton::add_state(const std::string& name) {
  states.push_back(name);
  initial.push_back(0);
  final.push_back(0);
  gamma.emplace_back();
  return num_states() - 1;
}

int Automaton::add_condition(const Expr& c) {
  for (std::size_t i = 0; i < conditions.size(); ++i)
    if (conditions[i] == c) return static_cast<int>(i);
  conditions.push_back(c);
  return static_cast<int>(conditions.size()) - 1;
}

int Automaton::label_index(const std::string& l) {
  auto it = std::find(alphabet.begin(), alphabet.end(), l);
  if (it != alphabet.end()) return static_cast<int>(it - alphabet.begin());
  alphabet.push_back(l);
  return static_cast<int>(alphabet.size()) - 1;
}

void Automaton::add_transition(int from, int label, int to) { transitions.push_back({from, label, to}); }

void Automaton::add_state_condition(int q, const Expr& c) {
  int ci = add_condition(c);
  auto& g = gamma[q];
  if (std::find(g.begin(), g.end(), ci) == g.end()) g.push_back(ci);
  std::sort(g.begin(), g.end());
}

void Automaton::normalize() {
  std::sort(transitions.begin(), transitions.end());
  transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
  for (auto& g : gamma) {
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
  }
}

Expr state_condition(const Automaton& a, int q) {
  std::vector<Expr> cs;
  for (int c : a.gamma[q]) cs.push_back(a.conditions[c]);
  return compose_all(cs);
}

AutomatonFlags flags(const Automaton& a) {
  AutomatonFlags f;
  Fragment used;
  for (const auto& c : a.conditions) used = used | operators_used(c);
  Fragment candidates{Op::kTc, Op::kPi1, Op::kPi2, Op::kCopi1, Op::kCopi2};
  f.free_of = candidates.without(used);
  for (const auto& t : a.transitions)
    if (t.label == kIdLabel) f.identity_free = false;
  // Cycle detection by DFS colouring.
  const int n = a.num_states();
  std::vector<std::vector<int>> succ(n);
  for (const auto& t : a.transitions) succ[t.from].push_back(t.to);
  std::vector<int> colour(n, 0);
  std::function<bool(int)> cyclic = [&](int v) {
    colour[v] = 1;
    for (int w : succ[v]) {
      if (colour[w] == 1) return true;
      if (colour[w] == 0 && cyclic(w)) return true;
    }
    colour[v] = 2;
    return false;
  };
  for (int v = 0; v < n && f.acyclic; ++v)
    if (colour[v] == 0 && cyclic(v)) f.acyclic = false;
  return f;
}

void validate(const Automaton& a) {
  const int n = a.num_states();
  if (static_cast<int>(a.initial.size()) != n || static_cast<int>(a.final.size()) != n ||
      static_cast<int>(a.gamma.size()) != n)
    throw std::logic_error("automaton arrays out of sync");
  for (const auto& t : a.transitions) {
    if (t.from < 0 || t.from >= n || t.to < 0 || t.to >= n) throw std::logic_error("transition endpoint");
    if (t.label != kIdLabel && (t.label < 0 || t.label >= static_cast<int>(a.alphabet.size())))
      throw std::logic_error("transition label");
  }
  for (const auto& g : a.gamma)
    for (int c : g)
      if (c < 0 || c >= static_cast<int>(a.conditions.size())) throw std::logic_error("condition index");
  for (const auto& c : a.conditions)
    if (!is_condition(c)) throw std::logic_error("not a condition: " + render(c));
}

SatisfactionTable::SatisfactionTable(const Automaton& a, Evaluator& ev) {
  const int n = ev.graph().num_nodes();
  std::vector<const Relation*> cond;
  for (const auto& c : a.conditions) cond.push_back(&ev.eval(c));
  sat_.assign(a.num_states(), std::vector<char>(n, 1));
  for (int q = 0; q < a.num_states(); ++q)
    for (int c : a.gamma[q])
      for (int v = 0; v < n; ++v)
        if (!cond[c]->get(v, v)) sat_[q][v] = 0;
}

bool satisfies(const Graph& g, int node, int q, const Automaton& a) {
  return evaluate(state_condition(a, q), g).get(node, node);
}

namespace {

// Outgoing graph edges per automaton label.
std::vector<std::vector<std::vector<int>>> label_successors(const Automaton& a, const Graph& g) {
  const int n = g.num_nodes();
  std::vector<std::vector<std::vector<int>>> out(a.alphabet.size(), std::vector<std::vector<int>>(n));
  for (std::size_t l = 0; l < a.alphabet.size(); ++l) {
    int gl = g.label_index(a.alphabet[l]);
    if (gl < 0) continue;
    for (auto [x, y] : g.edges[gl]) out[l][x].push_back(y);
  }
  return out;
}

}  // namespace

Relation eval_automaton(const Automaton& a, Evaluator& ev) {
  const Graph& g = ev.graph();
  const int n = g.num_nodes();
  const int s = a.num_states();
  SatisfactionTable sat(a, ev);
  auto succ = label_successors(a, g);
  std::vector<std::vector<Transition>> out(s);
  for (const auto& t : a.transitions) out[t.from].push_back(t);
  Relation r(n);
  std::vector<char> seen(static_cast<std::size_t>(s) * n);
  std::vector<int> stack;
  for (int m = 0; m < n; ++m) {
    std::fill(seen.begin(), seen.end(), 0);
    stack.clear();
    for (int q = 0; q < s; ++q)
      if (a.initial[q] && sat.sat(q, m)) {
        seen[q * n + m] = 1;
        stack.push_back(q * n + m);
      }
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      int q = cur / n, v = cur % n;
      if (a.final[q]) r.set(m, v);
      for (const auto& t : out[q]) {
        auto visit = [&](int w) {
          int key = t.to * n + w;
          if (!seen[key] && sat.sat(t.to, w)) {
            seen[key] = 1;
            stack.push_back(key);
          }
        };
        if (t.label == kIdLabel) {
          visit(v);
        } else {
          for (int w : succ[t.label][v]) visit(w);
        }
      }
    }
  }
  return r;
}

Relation eval_automaton(const Automaton& a, const Graph& g) {
  Evaluator ev(g);
  return eval_automaton(a, ev);
}

bool deterministic_on(const Automaton& a, const Graph& tree) {
  const int n = tree.num_nodes();
  const int s = a.num_states();
  Evaluator ev(tree);
  SatisfactionTable sat(a, ev);
  // Children with their automaton label index.
  std::vector<std::vector<std::pair<int, int>>> kids(n);
  for (std::size_t gl = 0; gl < tree.labels.size(); ++gl) {
    auto it = std::find(a.alphabet.begin(), a.alphabet.end(), tree.labels[gl]);
    int al = it == a.alphabet.end() ? -1 : static_cast<int>(it - a.alphabet.begin());
    for (auto [x, y] : tree.edges[gl]) kids[x].push_back({y, al});
  }
  std::vector<std::vector<Transition>> out(s);
  for (const auto& t : a.transitions) {
    if (t.label == kIdLabel) throw std::invalid_argument("check_deterministic needs an identity-free automaton");
    out[t.from].push_back(t);
  }
  // counts saturate at 2
  std::function<bool(int, const std::vector<int>&)> walk = [&](int v, const std::vector<int>& cnt) {
    int total = 0;
    for (int c : cnt) total += c;
    if (total != 1) return false;
    for (auto [w, al] : kids[v]) {
      std::vector<int> next(s, 0);
      if (al >= 0)
        for (int q = 0; q < s; ++q)
          if (cnt[q])
            for (const auto& t : out[q])
              if (t.label == al && sat.sat(t.to, w)) next[t.to] = std::min(2, next[t.to] + cnt[q]);
      if (!walk(w, next)) return false;
    }
    return true;
  };
  for (int m = 0; m < n; ++m) {
    std::vector<int> cnt(s, 0);
    for (int q = 0; q < s; ++q)
      if (a.initial[q] && sat.sat(q, m)) cnt[q] = 1;
    if (!walk(m, cnt)) return false;
  }
  return true;
}

bool check_deterministic(const Automaton& a, int max_nodes) {
  std::vector<std::string> labels = a.alphabet;
  if (labels.empty()) {
    labels = {"a"};
    max_nodes = 1;
  }
  bool ok = true;
  for_each_tree(max_nodes, labels, false, [&](const Graph& t) {
    ok = deterministic_on(a, t);
    return ok;
  });
  return ok;
}

// ---------------------------------------------------------------- serialization

std::string automaton_to_json(const Automaton& a) {
  using nlohmann::json;
  json j;
  j["states"] = a.states;
  j["alphabet"] = a.alphabet;
  std::vector<std::string> ini, fin;
  for (int q = 0; q < a.num_states(); ++q) {
    if (a.initial[q]) ini.push_back(a.states[q]);
    if (a.final[q]) fin.push_back(a.states[q]);
  }
  j["initials"] = ini;
  j["finals"] = fin;
  j["transitions"] = json::array();
  std::vector<Transition> ts = a.transitions;
  std::sort(ts.begin(), ts.end());
  for (const auto& t : ts)
    j["transitions"].push_back({{"from", a.states[t.from]},
                                {"label", t.label == kIdLabel ? std::string("id") : a.alphabet[t.label]},
                                {"to", a.states[t.to]}});
  json conds = json::object();
  for (int q = 0; q < a.num_states(); ++q) {
    if (a.gamma[q].empty()) continue;
    json list = json::array();
    for (int c : a.gamma[q]) list.push_back(render(a.conditions[c]));
    conds[a.states[q]] = list;
  }
  j["conditions"] = conds;
  return j.dump();
}

Automaton automaton_from_json(const std::string& text, const std::vector<std::string>& alphabet) {
  using nlohmann::json;
  json j = json::parse(text);
  Automaton a;
  for (const auto& s : j.at("states")) a.add_state(s.get<std::string>());
  if (j.contains("alphabet"))
    for (const auto& l : j.at("alphabet")) a.label_index(l.get<std::string>());
  auto state = [&](const std::string& name) {
    auto it = std::find(a.states.begin(), a.states.end(), name);
    if (it == a.states.end()) throw std::invalid_argument("unknown state '" + name + "'");
    return static_cast<int>(it - a.states.begin());
  };
  for (const auto& s : j.value("initials", json::array())) a.initial[state(s.get<std::string>())] = 1;
  for (const auto& s : j.value("finals", json::array())) a.final[state(s.get<std::string>())] = 1;
  for (const auto& t : j.value("transitions", json::array())) {
    std::string l = t.at("label").get<std::string>();
    int li = l == "id" ? kIdLabel : a.label_index(l);
    a.add_transition(state(t.at("from").get<std::string>()), li, state(t.at("to").get<std::string>()));
  }
  std::vector<std::string> ab = alphabet.empty() ? a.alphabet : alphabet;
  if (j.contains("conditions"))
    for (const auto& [q, list] : j.at("conditions").items())
      for (const auto& c : list) a.add_state_condition(state(q), parse(c.get<std::string>(), ab));
  a.normalize();
  validate(a);
  return a;
}

namespace {
std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}
}  // namespace

std::string automaton_to_dot(const Automaton& a) {
  std::ostringstream os;
  os << "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (int q = 0; q < a.num_states(); ++q) {
    std::string label = dot_escape(a.states[q]);
    if (!a.gamma[q].empty()) {
      label += "\\n{";
      for (std::size_t i = 0; i < a.gamma[q].size(); ++i) {
        if (i) label += ", ";
        label += dot_escape(render(a.conditions[a.gamma[q][i]]));
      }
      label += "}";
    }
    os << "  s" << q << " [label=\"" << label << "\"";
    if (a.final[q]) os << ", shape=doublecircle";
    os << "];\n";
  }
  for (int q = 0; q < a.num_states(); ++q)
    if (a.initial[q]) os << "  init" << q << " [shape=point, label=\"\"];\n  init" << q << " -> s" << q << ";\n";
  std::vector<Transition> ts = a.transitions;
  std::sort(ts.begin(), ts.end());
  for (const auto& t : ts)
    os << "  s" << t.from << " -> s" << t.to << " [label=\""
       << (t.label == kIdLabel ? std::string("id") : dot_escape(a.alphabet[t.label])) << "\"];\n";
  os << "}\n";
  return os.str();
}

Automaton trim(const Automaton& a) {
  const int n = a.num_states();
  std::vector<std::vector<int>> succ(n), pred(n);
  for (const auto& t : a.transitions) {
    succ[t.from].push_back(t.to);
    pred[t.to].push_back(t.from);
  }
  auto reach = [&](const std::vector<char>& seed, const std::vector<std::vector<int>>& adj) {
    std::vector<char> seen(n, 0);
    std::vector<int> st;
    for (int q = 0; q < n; ++q)
      if (seed[q]) seen[q] = 1, st.push_back(q);
    while (!st.empty()) {
      int q = st.back();
      st.pop_back();
      for (int r : adj[q])
        if (!seen[r]) seen[r] = 1, st.push_back(r);
    }
    return seen;
  };
  std::vector<char> fwd = reach(a.initial, succ);
  std::vector<char> bwd = reach(a.final, pred);
  Automaton out;
  out.alphabet = a.alphabet;
  std::vector<int> map(n, -1);
  std::vector<int> cmap(a.conditions.size(), -1);
  for (int q = 0; q < n; ++q) {
    if (!fwd[q] || !bwd[q]) continue;
    map[q] = out.add_state(a.states[q]);
    out.initial[map[q]] = a.initial[q];
    out.final[map[q]] = a.final[q];
    for (int c : a.gamma[q]) {
      if (cmap[c] < 0) cmap[c] = out.add_condition(a.conditions[c]);
      out.gamma[map[q]].push_back(cmap[c]);
    }
  }
  for (const auto& t : a.transitions)
    if (map[t.from] >= 0 && map[t.to] >= 0) out.add_transition(map[t.from], t.label, map[t.to]);
  out.normalize();
  return out;
}

Automaton renumber(const Automaton& a) {
  Automaton out = a;
  for (int q = 0; q < out.num_states(); ++q) out.states[q] = "q" + std::to_string(q);
  return out;
}

}  // namespace navq
