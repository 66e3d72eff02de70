#include "procalc/witness.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "procalc/error.hpp"
#include "procalc/term_ops.hpp"

namespace procalc {

using nlohmann::json;

std::string_view to_string(WitnessMode m) { return m == WitnessMode::Strong ? "strong" : "weak"; }

std::string_view to_string(Expectation e) {
  return e == Expectation::Violation ? "violation" : "no-violation";
}

std::string_view to_string(Overall o) {
  switch (o) {
  case Overall::ViolationConfirmed:
    return "violation-confirmed";
  case Overall::ViolationRefuted:
    return "violation-refuted";
  case Overall::Inconclusive:
    return "inconclusive";
  }
  return "inconclusive";
}

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& msg) {
  throw WitnessFormatError(field + ": " + msg, {{field + ": " + msg, {0, 0}}});
}

const json& require(const json& j, const char* key) {
  if (!j.contains(key)) bad(key, "missing field");
  return j.at(key);
}

std::string require_string(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_string()) bad(key, "expected a string");
  return v.get<std::string>();
}

Term parse_field(const json& j, const char* key, const CalculusProfile& p) {
  const std::string src = require_string(j, key);
  ParseResult r = parse_term(src, p);
  if (!r.ok()) {
    std::vector<Diagnostic> diags;
    for (auto d : r.diagnostics) {
      d.message = std::string(key) + ": " + d.message + " at " + std::to_string(d.span.start) +
                  ".." + std::to_string(d.span.end);
      diags.push_back(std::move(d));
    }
    throw WitnessFormatError(diags.front().message, diags);
  }
  return *r.term;
}

std::size_t bound_field(const json& b, const char* key, std::size_t fallback) {
  if (!b.contains(key)) return fallback;
  const json& v = b.at(key);
  if (!v.is_number_unsigned() || v.get<std::size_t>() < 1)
    bad(std::string("bounds.") + key, "expected a positive integer");
  return v.get<std::size_t>();
}

} // namespace

WitnessCase load_witness(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw WitnessFormatError(std::string("invalid JSON: ") + e.what(),
                             {{e.what(), {e.byte > 0 ? e.byte - 1 : 0, e.byte}}});
  }
  if (!j.is_object()) bad("(root)", "expected an object");
  if (j.contains("version") && j.at("version") != 1) bad("version", "unsupported version");

  WitnessCase w;
  w.id = require_string(j, "id");
  const std::string calc = require_string(j, "calculus");
  auto c = calculus_from_string(calc);
  if (!c) bad("calculus", "unknown calculus '" + calc + "'");
  w.profile = CalculusProfile(*c);

  const std::string mode = require_string(j, "mode");
  if (mode == "strong")
    w.mode = WitnessMode::Strong;
  else if (mode == "weak")
    w.mode = WitnessMode::Weak;
  else
    bad("mode", "expected \"strong\" or \"weak\"");

  if (j.contains("order")) {
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& pr : j.at("order")) {
      if (!pr.is_array() || pr.size() != 2 || !pr[0].is_string() || !pr[1].is_string())
        bad("order", "expected pairs of action strings");
      pairs.emplace(pr[0].get<std::string>(), pr[1].get<std::string>());
    }
    try {
      w.profile.order = PriorityOrder(std::move(pairs));
    } catch (const SemanticError& e) {
      bad("order", e.what());
    }
  }

  if (j.contains("definitions")) {
    if (!admits_definitions(w.profile.calculus) && !j.at("definitions").empty())
      bad("definitions", "calculus does not admit definitions");
    for (const auto& [name, def] : j.at("definitions").items()) {
      Definition d;
      for (const auto& p : require(def, "params")) d.params.push_back(Name(p.get<std::string>()));
      const std::string body = require_string(def, "body");
      try {
        d.body = parse_syntax(body);
        w.profile.defs.define(name, std::move(d));
      } catch (const ParseError& e) {
        throw WitnessFormatError("definitions." + name + ": " + e.what(),
                                 {{std::string("definitions.") + name + ": " + e.what(), e.span()}});
      } catch (const SemanticError& e) {
        bad("definitions." + name, e.what());
      }
    }
    for (const auto& [name, def] : w.profile.defs.all()) {
      auto vs = validate_profile(def.body, w.profile);
      if (!vs.empty()) bad("definitions." + name, vs.front().message);
    }
  }

  w.context = parse_field(j, "context", w.profile);
  if (holes(w.context) != std::set<unsigned>{1}) bad("context", "expected exactly the hole [_1]");
  w.invisible = parse_field(j, "invisible", w.profile);
  w.process = parse_field(j, "process", w.profile);
  if (!is_process(w.invisible)) bad("invisible", "must not contain holes");
  if (!is_process(w.process)) bad("process", "must not contain holes");

  const std::string expect = require_string(j, "expect");
  if (expect == "violation")
    w.expect = Expectation::Violation;
  else if (expect == "no-violation")
    w.expect = Expectation::NoViolation;
  else
    bad("expect", "expected \"violation\" or \"no-violation\"");

  if (j.contains("bounds")) {
    const json& b = j.at("bounds");
    if (!b.is_object()) bad("bounds", "expected an object");
    w.bounds.max_states = bound_field(b, "max_states", w.bounds.max_states);
    w.bounds.max_depth = bound_field(b, "max_depth", w.bounds.max_depth);
    w.bounds.max_bang_unfold =
        static_cast<unsigned>(bound_field(b, "max_bang_unfold", w.bounds.max_bang_unfold));
  }
  if (j.contains("locus") && j.at("locus").is_string()) w.locus = j.at("locus").get<std::string>();
  return w;
}

WitnessCase load_witness_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw WitnessFormatError("cannot read " + path.string(), {});
  std::stringstream ss;
  ss << in.rdbuf();
  return load_witness(ss.str());
}

bool WitnessReport::matches_expectation() const {
  if (overall == Overall::Inconclusive) return false;
  return (overall == Overall::ViolationConfirmed) == (expect == Expectation::Violation);
}

WitnessReport verify_witness(const WitnessCase& w,
                             const std::optional<ExplorationBounds>& override_bounds) {
  const auto t0 = std::chrono::steady_clock::now();
  const ExplorationBounds b = override_bounds.value_or(w.bounds);
  WitnessReport r;
  r.id = w.id;
  r.calculus = w.profile.calculus;
  r.mode = w.mode;
  r.expect = w.expect;

  try {
    r.invisible_check = is_invisible(w.invisible, w.profile, b);
    if (w.mode == WitnessMode::Weak) r.closed_check = is_closed(w.invisible);
    r.ci_visible = is_visible(plug(w.context, {w.invisible}), w.profile, b);
    r.cp_visible = is_visible(plug(w.context, {w.process}), w.profile, b);

    const Verdict* checks[] = {&r.invisible_check, &r.ci_visible, &r.cp_visible};
    if (std::any_of(std::begin(checks), std::end(checks),
                    [](const Verdict* v) { return v->unknown(); })) {
      r.overall = Overall::Inconclusive;
    } else if (r.invisible_check.holds() && r.closed_check.value_or(true) &&
               r.ci_visible.holds() && r.cp_visible.fails()) {
      r.overall = Overall::ViolationConfirmed;
    } else {
      r.overall = Overall::ViolationRefuted;
    }
  } catch (const Error& e) {
    r.error = e.what();
    r.overall = Overall::Inconclusive;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::size_t CorpusSummary::matched() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) {
    return e.report && e.report->matches_expectation();
  }));
}

int CorpusSummary::exit_code() const {
  bool load_error = false, inconclusive = false, mismatch = false;
  for (const auto& e : entries) {
    if (!e.report) {
      load_error = true;
    } else if (e.report->overall == Overall::Inconclusive) {
      inconclusive = true;
    } else if (!e.report->matches_expectation()) {
      mismatch = true;
    }
  }
  if (load_error) return 2;
  if (inconclusive) return 3;
  if (mismatch) return 1;
  return 0;
}

CorpusSummary run_corpus(const std::filesystem::path& dir,
                         const std::optional<ExplorationBounds>& override_bounds) {
  const auto t0 = std::chrono::steady_clock::now();
  CorpusSummary s;
  std::vector<std::filesystem::path> files;
  for (const auto& ent : std::filesystem::directory_iterator(dir))
    if (ent.path().extension() == ".json") files.push_back(ent.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    CorpusEntry e;
    e.file = f.filename().string();
    try {
      e.report = verify_witness(load_witness_file(f), override_bounds);
    } catch (const Error& err) {
      e.load_error = err.what();
    }
    s.entries.push_back(std::move(e));
  }
  std::stable_sort(s.entries.begin(), s.entries.end(), [](const auto& a, const auto& b) {
    const std::string ia = a.report ? a.report->id : a.file;
    const std::string ib = b.report ? b.report->id : b.file;
    return ia < ib;
  });
  s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return s;
}

std::string trace_string(const std::vector<Step>& trace, Calculus c) {
  std::string out = "[";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (i) out += ", ";
    out += to_string(trace[i].label, c);
  }
  return out + "]";
}

namespace {

json verdict_json(const Verdict& v, Calculus c) {
  json j{{"verdict", std::string(to_string(v.kind))}};
  if (v.holds() && !v.trace.empty()) {
    json tr = json::array();
    for (const auto& s : v.trace) tr.push_back(to_string(s.label, c));
    j["trace"] = tr;
  }
  if (v.unknown()) j["reason"] = v.reason;
  return j;
}

json report_object(const WitnessReport& r) {
  json j{{"id", r.id},
         {"calculus", std::string(to_string(r.calculus))},
         {"mode", std::string(to_string(r.mode))},
         {"expect", std::string(to_string(r.expect))},
         {"overall", std::string(to_string(r.overall))},
         {"match", r.matches_expectation()},
         {"seconds", r.seconds}};
  j["invisible_check"] = verdict_json(r.invisible_check, r.calculus);
  if (r.closed_check) j["closed_check"] = *r.closed_check;
  j["ci_visible"] = verdict_json(r.ci_visible, r.calculus);
  j["cp_visible"] = verdict_json(r.cp_visible, r.calculus);
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

} // namespace

std::string report_json(const WitnessReport& r, int indent) { return report_object(r).dump(indent); }

std::string summary_json(const CorpusSummary& s, int indent) {
  json j;
  j["cases"] = json::array();
  for (const auto& e : s.entries) {
    json c = e.report ? report_object(*e.report) : json{{"error", e.load_error}};
    c["file"] = e.file;
    j["cases"].push_back(std::move(c));
  }
  j["total"] = s.entries.size();
  j["matched"] = s.matched();
  j["seconds"] = s.seconds;
  j["exit_code"] = s.exit_code();
  return j.dump(indent);
}

std::string summary_table(const CorpusSummary& s) {
  std::ostringstream os;
  os << std::left << std::setw(24) << "id" << std::setw(12) << "calculus" << std::setw(22)
     << "overall" << std::setw(14) << "expected" << std::setw(7) << "match"
     << "C[I] trace\n";
  for (const auto& e : s.entries) {
    if (!e.report) {
      os << std::setw(24) << e.file << "ERROR " << e.load_error << "\n";
      continue;
    }
    const auto& r = *e.report;
    os << std::setw(24) << r.id << std::setw(12) << to_string(r.calculus) << std::setw(22)
       << to_string(r.overall) << std::setw(14) << to_string(r.expect) << std::setw(7)
       << (r.matches_expectation() ? "yes" : "NO")
       << (r.ci_visible.holds() ? trace_string(r.ci_visible.trace, r.calculus) : "-");
    if (!r.error.empty()) os << "  error: " << r.error;
    os << "\n";
  }
  os << s.matched() << "/" << s.entries.size() << " matched in " << std::fixed
     << std::setprecision(3) << s.seconds << " s\n";
  return os.str();
}

} // namespace procalc
