// procalc: command-line front end.
//
// Exit codes: 0 success/holds, 1 semantic negative, 2 input error,
// 3 inconclusive (bounds hit or incomplete state space).

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "procalc/error.hpp"
#include "procalc/generate.hpp"
#include "procalc/lts.hpp"
#include "procalc/simulation.hpp"
#include "procalc/surface.hpp"
#include "procalc/term_ops.hpp"
#include "procalc/witness.hpp"

using namespace procalc;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;
constexpr int kInconclusive = 3;

/// Raised for bad input; already reported to stderr.
struct InputFailure {};

struct Common {
  std::string calc = "ccs";
  std::optional<std::size_t> max_states, max_depth;
  std::optional<unsigned> max_bang_unfold;
  std::string defs_file;
  std::string order;
  bool inline_terms = false;
  bool json = false;
};

void add_common(CLI::App* cmd, Common& c, bool bounds = true) {
  cmd->add_option("--calc", c.calc, "Calculus profile")
      ->check(CLI::IsMember({"ccs", "pi", "pimpm", "bccsp-theta", "cpg", "ccs-sg", "ccs-prio", "cows"}));
  if (bounds) {
    cmd->add_option("--max-states", c.max_states, "State bound (default 10000)");
    cmd->add_option("--max-depth", c.max_depth, "Depth bound (default 64)");
    cmd->add_option("--max-bang-unfold", c.max_bang_unfold, "Replicas per !P (default 3)");
  }
  cmd->add_option("--defs", c.defs_file, "JSON file of definitions {name:{params,body}}");
  cmd->add_option("--order", c.order, "BCCSP priority order, e.g. \"a<tau, 'b<c\"");
  cmd->add_flag("-e,--inline", c.inline_terms, "Positional arguments are terms, not files");
}

std::optional<std::size_t> env_size(const char* var) {
  const char* v = std::getenv(var);
  if (!v || !*v) return std::nullopt;
  try {
    std::size_t used = 0;
    const unsigned long long n = std::stoull(v, &used);
    if (used == std::string(v).size() && n >= 1) return static_cast<std::size_t>(n);
  } catch (const std::exception&) {
  }
  std::cerr << "error: ignoring malformed " << var << "=" << v << "\n";
  return std::nullopt;
}

ExplorationBounds bounds_of(const Common& c) {
  ExplorationBounds b;
  if (auto v = env_size("PROCALC_MAX_STATES")) b.max_states = *v;
  if (auto v = env_size("PROCALC_MAX_DEPTH")) b.max_depth = *v;
  if (auto v = env_size("PROCALC_MAX_BANG_UNFOLD")) b.max_bang_unfold = static_cast<unsigned>(*v);
  if (c.max_states) b.max_states = *c.max_states;
  if (c.max_depth) b.max_depth = *c.max_depth;
  if (c.max_bang_unfold) b.max_bang_unfold = *c.max_bang_unfold;
  if (b.max_states < 1 || b.max_depth < 1 || b.max_bang_unfold < 1) {
    std::cerr << "error: bounds must be at least 1\n";
    throw InputFailure{};
  }
  return b;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    throw InputFailure{};
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_diagnostic(const std::string& origin, const std::string& src, const Diagnostic& d) {
  std::size_t line = 1, col = 1, line_start = 0;
  for (std::size_t i = 0; i < d.span.start && i < src.size(); ++i) {
    if (src[i] == '\n') {
      ++line;
      col = 1;
      line_start = i + 1;
    } else {
      ++col;
    }
  }
  std::cerr << origin << ":" << line << ":" << col << ": error: " << d.message << "\n";
  const std::size_t line_end = src.find('\n', line_start);
  const std::string text = src.substr(line_start, line_end == std::string::npos ? std::string::npos
                                                                                : line_end - line_start);
  std::cerr << "  " << text << "\n  " << std::string(col - 1, ' ')
            << std::string(std::max<std::size_t>(1, std::min(d.span.end, line_start + text.size()) -
                                                        std::min(d.span.start, line_start + text.size())),
                           '^')
            << "\n";
}

std::set<std::pair<std::string, std::string>> parse_order(const std::string& spec) {
  std::set<std::pair<std::string, std::string>> pairs;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    item = trim(item);
    if (item.empty()) continue;
    const auto lt = item.find('<');
    if (lt == std::string::npos) {
      std::cerr << "error: --order entry '" << item << "' is not of the form lo<hi\n";
      throw InputFailure{};
    }
    pairs.emplace(trim(item.substr(0, lt)), trim(item.substr(lt + 1)));
  }
  return pairs;
}

CalculusProfile profile_of(const Common& c) {
  CalculusProfile p(*calculus_from_string(c.calc));
  try {
    if (!c.order.empty()) p.order = PriorityOrder(parse_order(c.order));
    if (!c.defs_file.empty()) {
      const json j = json::parse(read_file(c.defs_file));
      for (const auto& [name, def] : j.items()) {
        Definition d;
        for (const auto& n : def.at("params")) d.params.push_back(Name(n.get<std::string>()));
        d.body = parse_syntax(def.at("body").get<std::string>());
        p.defs.define(name, std::move(d));
      }
    }
  } catch (const ParseError& e) {
    std::cerr << c.defs_file << ": error: " << e.what() << "\n";
    throw InputFailure{};
  } catch (const json::exception& e) {
    std::cerr << c.defs_file << ": error: " << e.what() << "\n";
    throw InputFailure{};
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    throw InputFailure{};
  }
  return p;
}

Term load_term(const std::string& arg, const Common& c, const CalculusProfile& p) {
  const std::string origin = c.inline_terms ? "<inline>" : arg;
  const std::string src = c.inline_terms ? arg : read_file(arg);
  ParseResult r = parse_term(src, p);
  if (!r.ok()) {
    for (const auto& d : r.diagnostics) print_diagnostic(origin, src, d);
    if (c.json) {
      json diags = json::array();
      for (const auto& d : r.diagnostics)
        diags.push_back({{"message", d.message}, {"start", d.span.start}, {"end", d.span.end}});
      std::cout << json{{"ok", false}, {"input", origin}, {"diagnostics", diags}}.dump(2) << "\n";
    }
    throw InputFailure{};
  }
  return *r.term;
}

json trace_json(const std::vector<Step>& trace, Calculus calc) {
  json a = json::array();
  for (const auto& s : trace) a.push_back({{"label", to_string(s.label, calc)}, {"target", pretty(s.target)}});
  return a;
}

int verdict_exit(const Verdict& v) {
  return v.holds() ? kOk : v.fails() ? kNegative : kInconclusive;
}

// ---- commands ----

int cmd_parse(const std::string& input, const Common& c) {
  const CalculusProfile p = profile_of(c);
  const Term t = load_term(input, c, p);
  if (c.json)
    std::cout << json{{"ok", true}, {"term", pretty(t)}}.dump(2) << "\n";
  else
    std::cout << pretty(t) << "\n";
  return kOk;
}

int cmd_lts(const std::string& input, const Common& c, bool dot) {
  const CalculusProfile p = profile_of(c);
  const Term t = load_term(input, c, p);
  const Lts l = explore(t, p, bounds_of(c));
  if (dot) {
    std::cout << to_dot(l);
  } else if (c.json) {
    std::cout << to_json(l) << "\n";
  } else {
    std::cout << "states: " << l.size() << "\nedges: " << l.edges.size()
              << "\ncomplete: " << (l.complete ? "true" : "false");
    if (!l.complete) std::cout << " (cut by " << l.cut_reason << ")";
    std::cout << "\n";
    for (std::size_t i = 0; i < l.size(); ++i)
      std::cout << (i == l.root ? "* " : "  ") << "s" << i << "  " << pretty(l.states[i].term) << "\n";
    for (const auto& e : l.edges)
      std::cout << "  s" << e.src << " --" << to_string(e.label, l.calculus) << "--> s" << e.dst << "\n";
  }
  std::cerr << "complete: " << (l.complete ? "true" : "false") << "\n";
  return kOk;
}

int cmd_visible(const std::string& input, const Common& c, const std::string& label) {
  const CalculusProfile p = profile_of(c);
  const Term t = load_term(input, c, p);
  std::optional<LabelPattern> pat;
  if (!label.empty()) {
    try {
      pat = parse_label_pattern(label);
    } catch (const ParseError& e) {
      print_diagnostic("--label", label, {e.what(), e.span()});
      throw InputFailure{};
    }
  }
  const Lts l = explore(t, p, bounds_of(c));
  const Verdict v = pat ? can_perform(l, l.root, *pat) : is_visible(l, l.root);
  std::string word;
  if (pat)
    word = v.holds() ? "CanPerform" : v.fails() ? "CannotPerform" : "Unknown";
  else
    word = v.holds() ? "Visible" : v.fails() ? "Invisible" : "Unknown";
  if (c.json) {
    json j{{"verdict", word}, {"complete", l.complete}, {"states", l.size()}};
    if (v.holds()) j["trace"] = trace_json(v.trace, l.calculus);
    if (v.unknown()) j["reason"] = v.reason;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << word;
    if (v.unknown()) std::cout << " (bound " << v.reason << ")";
    std::cout << "\n";
    if (v.holds()) std::cout << "trace: " << trace_string(v.trace, l.calculus) << "\n";
  }
  return verdict_exit(v);
}

int cmd_sim(const std::string& q_in, const std::string& p_in, const Common& c,
            std::optional<std::size_t> k, bool with_relation) {
  const CalculusProfile p = profile_of(c);
  const Term q = load_term(q_in, c, p);
  const Term pt = load_term(p_in, c, p);
  auto [lq, lp] = explore_pair(q, pt, p, bounds_of(c));
  if (!lq.complete || !lp.complete) {
    const std::string why = !lq.complete ? "left: " + lq.cut_reason : "right: " + lp.cut_reason;
    if (c.json)
      std::cout << json{{"holds", nullptr}, {"error", "incomplete state space (" + why + ")"}}.dump(2)
                << "\n";
    else
      std::cout << "Unknown: incomplete state space (" << why << ")\n";
    return kInconclusive;
  }
  const SimRelation r = k ? sim_k(lq, lp, *k) : sim_omega(lq, lp);
  const bool holds = r.contains(lq.root, lp.root);
  std::optional<DistinguishingMove> move;
  if (!holds) move = distinguishing_move(lq, lp);
  if (c.json) {
    json j{{"holds", holds}, {"k", k ? json(*k) : json("omega")}};
    if (!k) j["converged_at"] = r.converged_at;
    if (move) {
      j["distinguishing_depth"] = move->depth;
      j["move"] = {{"label", to_string(move->label, lq.calculus)},
                   {"target", pretty(lq.states[move->q_to].term)}};
    }
    if (with_relation) j["relation"] = json::parse(to_json(r));
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (holds ? "holds" : "fails");
    if (k)
      std::cout << " at k=" << *k;
    else
      std::cout << " at fixpoint (converged at k=" << r.converged_at << ")";
    std::cout << "\n";
    if (move)
      std::cout << "distinguishing depth: " << move->depth << "\nunmatched move: "
                << to_string(move->label, lq.calculus) << " to " << pretty(lq.states[move->q_to].term)
                << "\n";
    if (with_relation) std::cout << to_json(r) << "\n";
  }
  return holds ? kOk : kNegative;
}

std::optional<ExplorationBounds> override_of(const Common& c) {
  const bool any = c.max_states || c.max_depth || c.max_bang_unfold ||
                   std::getenv("PROCALC_MAX_STATES") || std::getenv("PROCALC_MAX_DEPTH") ||
                   std::getenv("PROCALC_MAX_BANG_UNFOLD");
  if (!any) return std::nullopt;
  return bounds_of(c);
}

int cmd_witness(const std::string& file, const Common& c) {
  WitnessCase w;
  try {
    w = load_witness_file(file);
  } catch (const WitnessFormatError& e) {
    std::cerr << file << ": error: " << e.what() << "\n";
    return kInputError;
  }
  const WitnessReport r = verify_witness(w, override_of(c));
  if (c.json) {
    std::cout << report_json(r) << "\n";
  } else {
    auto line = [&](const char* what, const Verdict& v) {
      std::cout << "  " << what << ": " << to_string(v.kind);
      if (v.holds() && !v.trace.empty()) std::cout << " " << trace_string(v.trace, r.calculus);
      if (v.unknown()) std::cout << " (bound " << v.reason << ")";
      std::cout << "\n";
    };
    std::cout << r.id << " (" << to_string(r.calculus) << ", " << to_string(r.mode) << ")\n";
    line("I invisible", r.invisible_check);
    if (r.closed_check) std::cout << "  I closed: " << (*r.closed_check ? "yes" : "no") << "\n";
    line("C[I] visible", r.ci_visible);
    line("C[P] visible", r.cp_visible);
    if (!r.error.empty()) std::cout << "  error: " << r.error << "\n";
    std::cout << "overall: " << to_string(r.overall) << " (expected " << to_string(r.expect)
              << ", " << (r.matches_expectation() ? "match" : "MISMATCH") << ")\n";
  }
  if (r.overall == Overall::Inconclusive) return kInconclusive;
  return r.matches_expectation() ? kOk : kNegative;
}

int cmd_corpus(const std::string& dir, const Common& c) {
  if (!std::filesystem::is_directory(dir)) {
    std::cerr << "error: " << dir << " is not a directory\n";
    return kInputError;
  }
  const CorpusSummary s = run_corpus(dir, override_of(c));
  if (c.json)
    std::cout << summary_json(s) << "\n";
  else
    std::cout << summary_table(s);
  for (const auto& e : s.entries)
    if (!e.report) std::cerr << e.file << ": error: " << e.load_error << "\n";
  return s.exit_code();
}

int cmd_sample(const Common& c, std::uint64_t seed, int count, const std::string& kind, int depth) {
  const Calculus calc = *calculus_from_string(c.calc);
  Generator g(seed);
  GenConfig cfg;
  cfg.calculus = calc;
  cfg.depth = depth;
  for (int i = 0; i < count; ++i) {
    Term t = kind == "context" ? g.context(cfg) : kind == "hidden" ? g.hidden(cfg) : g.process(cfg);
    std::cout << pretty(t) << "\n";
  }
  return kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"procalc: process-calculus workbench"};
  app.require_subcommand(1);

  Common common;
  std::string input, input2, label, kind = "process";
  bool dot = false, fix = false, relation = false;
  std::optional<std::size_t> k;
  std::uint64_t seed = 1;
  int count = 10, depth = 3;

  auto* parse = app.add_subcommand("parse", "Parse, validate and pretty-print a term");
  add_common(parse, common, false);
  parse->add_option("input", input, "Term file")->required();
  parse->add_flag("--json", common.json, "JSON output");

  auto* lts = app.add_subcommand("lts", "Explore and print the transition system");
  add_common(lts, common);
  lts->add_option("input", input, "Term file")->required();
  auto* dot_flag = lts->add_flag("--dot", dot, "Graphviz output");
  lts->add_flag("--json", common.json, "JSON output")->excludes(dot_flag);

  auto* visible = app.add_subcommand("visible", "Decide visibility (or can-perform with --label)");
  add_common(visible, common);
  visible->add_option("input", input, "Term file")->required();
  visible->add_option("--label", label, "Visible label pattern, e.g. 'y!<c>' or \"'b\"");
  visible->add_flag("--json", common.json, "JSON output");

  auto* sim = app.add_subcommand("sim", "Weak omega-simulation of Q by P");
  add_common(sim, common);
  sim->add_option("q", input, "Simulated term file")->required();
  sim->add_option("p", input2, "Simulating term file")->required();
  auto* k_opt = sim->add_option("--k", k, "Stratum index");
  sim->add_flag("--fix", fix, "Fixpoint (default)")->excludes(k_opt);
  sim->add_flag("--relation", relation, "Dump the relation");
  sim->add_flag("--json", common.json, "JSON output");

  auto* witness = app.add_subcommand("witness", "Verify one witness file");
  add_common(witness, common);
  witness->add_option("file", input, "Witness JSON")->required();
  witness->add_flag("--json", common.json, "JSON output");

  auto* corpus = app.add_subcommand("corpus", "Verify every witness in a directory");
  add_common(corpus, common);
  corpus->add_option("dir", input, "Corpus directory")->required();
  corpus->add_flag("--json", common.json, "JSON output");

  auto* sample = app.add_subcommand("sample", "Print random terms from the generator");
  add_common(sample, common, false);
  sample->add_option("--seed", seed, "Random seed");
  sample->add_option("--count", count, "Number of terms")->check(CLI::PositiveNumber);
  sample->add_option("--depth", depth, "Term depth")->check(CLI::NonNegativeNumber);
  sample->add_option("--kind", kind, "process | context | hidden")
      ->check(CLI::IsMember({"process", "context", "hidden"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*parse) return cmd_parse(input, common);
    if (*lts) return cmd_lts(input, common, dot);
    if (*visible) return cmd_visible(input, common, label);
    if (*sim) return cmd_sim(input, input2, common, k, relation);
    if (*witness) return cmd_witness(input, common);
    if (*corpus) return cmd_corpus(input, common);
    if (*sample) return cmd_sample(common, seed, count, kind, depth);
  } catch (const InputFailure&) {
    return kInputError;
  } catch (const ProfileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ContextError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const SemanticError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const IncompleteLtsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInconclusive;
  }
  return kInputError;
}
