#include "navq/cli.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "navq/automaton.hpp"
#include "navq/constructions.hpp"
#include "navq/evaluator.hpp"
#include "navq/expr.hpp"
#include "navq/graph.hpp"
#include "navq/lattice.hpp"
#include "navq/rewrite.hpp"

namespace navq {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_labels(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

Semantics parse_mode(const std::string& m) {
  if (m == "path") return Semantics::kPath;
  if (m == "boolean") return Semantics::kBoolean;
  throw UsageError("mode must be path or boolean");
}

const char* mode_name(Semantics s) { return s == Semantics::kPath ? "path" : "boolean"; }

std::string verdict_json(const EquivVerdict& v) {
  nlohmann::ordered_json j;
  j["verdict"] = v.equivalent ? "equivalent-up-to-bound" : "counterexample";
  j["mode"] = mode_name(v.semantics);
  j["class"] = class_name(v.cls);
  j["max_nodes"] = v.bound.max_nodes;
  j["labels"] = v.bound.labels;
  j["instances"] = v.instances;
  if (v.witness) j["witness"] = nlohmann::ordered_json::parse(graph_to_json(*v.witness));
  return j.dump();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  // -e1 / -e2 are spelled with a single dash in the documented interface.
  std::vector<std::string> args(argv, argv + argc);
  for (auto& a : args)
    if (a == "-e1" || a == "-e2") a = "-" + a;
  std::vector<const char*> cargs;
  for (const auto& a : args) cargs.push_back(a.c_str());

  CLI::App app{"navq: navigational expressions over graphs and trees"};
  app.require_subcommand(1);

  std::string expr_text, e1_text, e2_text, graph_path, auto_path, alphabet_text;
  std::string pipeline = "no-intersect-diff", mode = "path", cls_name = "labeled-tree";
  std::string f1_text, f2_text;
  int max_nodes = 5, labels = 2, random_instances = 0;
  unsigned seed = 1;
  bool dot = false, certify = true, no_certify = false, serial = false, check = false;
  std::size_t max_instances = 0, max_states = 0;

  auto add_alphabet = [&](CLI::App* s) {
    s->add_option("--alphabet", alphabet_text, "labels E ranges over, comma separated");
  };
  auto add_limits = [&](CLI::App* s) {
    s->add_option("--max-instances", max_instances, "instance ceiling (0 keeps NAVQ_MAX_INSTANCES)");
    s->add_option("--max-states", max_states, "state ceiling (0 keeps NAVQ_MAX_STATES)");
  };

  auto* parse_cmd = app.add_subcommand("parse", "echo the normalized expression and its fragment");
  parse_cmd->add_option("-e,--expr", expr_text)->required();
  add_alphabet(parse_cmd);

  auto* eval_cmd = app.add_subcommand("eval", "evaluate an expression on a graph file");
  eval_cmd->add_option("-e,--expr", expr_text)->required();
  eval_cmd->add_option("-g,--graph", graph_path)->required();

  auto* auto_cmd = app.add_subcommand("to-automaton", "compile an expression to a condition automaton");
  auto_cmd->add_option("-e,--expr", expr_text)->required();
  auto_cmd->add_flag("--dot", dot, "emit graphviz instead of JSON");
  add_alphabet(auto_cmd);

  auto* expr_cmd = app.add_subcommand("to-expr", "convert an automaton file to an expression");
  expr_cmd->add_option("-a,--automaton", auto_path)->required();

  auto* rw_cmd = app.add_subcommand("rewrite", "run a rewrite pipeline");
  rw_cmd->add_option("-e,--expr", expr_text)->required();
  rw_cmd->add_option("--pipeline", pipeline)
      ->check(CLI::IsMember({"no-intersect-diff", "boolean-chain-noproj", "tree-nopi2", "unlabeled-normalform"}));
  rw_cmd->add_flag("--certify", certify, "check the result against the input (default)");
  rw_cmd->add_flag("--no-certify", no_certify);
  add_alphabet(rw_cmd);
  add_limits(rw_cmd);

  auto* eq_cmd = app.add_subcommand("equiv", "bounded equivalence check");
  eq_cmd->add_option("--e1", e1_text)->required();
  eq_cmd->add_option("--e2", e2_text)->required();
  eq_cmd->add_option("--mode", mode)->check(CLI::IsMember({"path", "boolean"}));
  eq_cmd->add_option("--class", cls_name);
  eq_cmd->add_option("--max-nodes", max_nodes)->check(CLI::PositiveNumber);
  eq_cmd->add_option("--labels", labels)->check(CLI::PositiveNumber);
  eq_cmd->add_option("--random", random_instances, "extra random instances")->check(CLI::NonNegativeNumber);
  eq_cmd->add_option("--seed", seed);
  eq_cmd->add_flag("--serial", serial, "disable the parallel oracle");
  add_alphabet(eq_cmd);
  add_limits(eq_cmd);

  auto* sub_cmd = app.add_subcommand("subsumes", "look up a subsumption in the expressiveness diagrams");
  auto* wit_cmd = app.add_subcommand("witness", "separation witness for a non-subsumption");
  for (auto* s : {sub_cmd, wit_cmd}) {
    s->add_option("--f1", f1_text)->required();
    s->add_option("--f2", f2_text)->required();
    s->add_option("--mode", mode)->check(CLI::IsMember({"path", "boolean"}));
    s->add_option("--class", cls_name);
  }
  wit_cmd->add_flag("--check", check, "run the witness behaviour check");

  auto* enum_cmd = app.add_subcommand("enumerate", "list graphs of a class as JSON lines");
  enum_cmd->add_option("--class", cls_name);
  enum_cmd->add_option("--max-nodes", max_nodes)->check(CLI::PositiveNumber);
  enum_cmd->add_option("--labels", labels)->check(CLI::PositiveNumber);
  add_limits(enum_cmd);

  auto* lat_cmd = app.add_subcommand("lattice", "dump the encoded expressiveness diagrams");

  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  if (max_instances) setenv("NAVQ_MAX_INSTANCES", std::to_string(max_instances).c_str(), 1);
  if (max_states) setenv("NAVQ_MAX_STATES", std::to_string(max_states).c_str(), 1);
  std::vector<std::string> alphabet = split_labels(alphabet_text);

  try {
    if (*parse_cmd) {
      Expr e = parse(expr_text, alphabet);
      out << render(e) << "\n";
      out << "fragment " << operators_used(e).to_string() << "\n";
      return kExitOk;
    }
    if (*eval_cmd) {
      Graph g = graph_from_json(read_file(graph_path));
      Expr e = parse(expr_text, g.labels);
      out << relation_to_string(evaluate(e, g), g) << "\n";
      return kExitOk;
    }
    if (*auto_cmd) {
      Expr e = parse(expr_text, alphabet);
      Automaton a = expr_to_automaton(e, alphabet);
      out << (dot ? automaton_to_dot(a) : automaton_to_json(a)) << "\n";
      return kExitOk;
    }
    if (*expr_cmd) {
      Automaton a = automaton_from_json(read_file(auto_path));
      out << render(automaton_to_expr(a)) << "\n";
      return kExitOk;
    }
    if (*rw_cmd) {
      if (alphabet.empty() && pipeline == "unlabeled-normalform") alphabet = {"a"};
      Expr e = parse(expr_text, alphabet);
      CertifyOptions opts;
      opts.certify = certify && !no_certify;
      RewriteReport r = run_pipeline(parse_pipeline(pipeline), e, opts);
      out << report_to_json(r) << "\n";
      return r.certificate && !r.certificate->equivalent ? kExitCounterexample : kExitOk;
    }
    if (*eq_cmd) {
      if (alphabet.empty()) alphabet = default_labels(labels);
      Expr e1 = parse(e1_text, alphabet);
      Expr e2 = parse(e2_text, alphabet);
      OracleOptions opts;
      opts.parallel = !serial;
      opts.random_instances = random_instances;
      opts.seed = seed;
      GraphClass cls = parse_class(cls_name);
      Bound bound{max_nodes, labels};
      EquivVerdict v = parse_mode(mode) == Semantics::kPath ? path_equivalent(e1, e2, cls, bound, opts)
                                                            : boolean_equivalent(e1, e2, cls, bound, opts);
      out << verdict_json(v) << "\n";
      return v.equivalent ? kExitOk : kExitCounterexample;
    }
    if (*sub_cmd || *wit_cmd) {
      LatticeQuery q{Fragment::parse(f1_text), Fragment::parse(f2_text), parse_mode(mode),
                     parse_lattice_class(cls_name)};
      bool s = subsumes(q);
      if (*sub_cmd) {
        out << (s ? "true" : "false") << "\n";
        return kExitOk;
      }
      if (s) {
        out << "none (subsumed)\n";
        return kExitOk;
      }
      auto w = separation_witness(q);
      if (!w) {
        out << "none\n";
        return kExitOk;
      }
      out << w->expr << "\n" << w->claim << "\n";
      if (check) {
        std::string why;
        bool ok = w->check(&why);
        out << "check " << (ok ? "passed" : "failed") << (why.empty() ? "" : ": " + why) << "\n";
        return ok ? kExitOk : kExitCounterexample;
      }
      return kExitOk;
    }
    if (*enum_cmd) {
      GraphClass cls = parse_class(cls_name);
      for (const auto& g : enumerate(cls, max_nodes, default_labels(labels))) out << graph_to_json(g) << "\n";
      return kExitOk;
    }
    if (*lat_cmd) {
      out << lattice_json() << "\n";
      return kExitOk;
    }
  } catch (const ResourceError& e) {
    err << "resource ceiling: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace navq
