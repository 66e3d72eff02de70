#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "procalc/lts.hpp"
#include "procalc/profile.hpp"
#include "procalc/surface.hpp"
#include "procalc/term.hpp"

namespace procalc {

enum class WitnessMode { Strong, Weak };
enum class Expectation { Violation, NoViolation };
enum class Overall { ViolationConfirmed, ViolationRefuted, Inconclusive };

std::string_view to_string(WitnessMode m);
std::string_view to_string(Expectation e);
std::string_view to_string(Overall o);

/// A (context, invisible, process) triple together with what it is expected
/// to show.
struct WitnessCase {
  std::string id;
  CalculusProfile profile;
  WitnessMode mode = WitnessMode::Strong;
  Term context;
  Term invisible;
  Term process;
  Expectation expect = Expectation::Violation;
  ExplorationBounds bounds;
  std::string locus;  // free-form provenance note
};

/// Thrown by load_witness; each diagnostic names the offending field.
class WitnessFormatError : public Error {
public:
  WitnessFormatError(const std::string& msg, std::vector<Diagnostic> diags)
      : Error(msg), diagnostics(std::move(diags)) {}
  std::vector<Diagnostic> diagnostics;
};

WitnessCase load_witness(const std::string& json_text);
WitnessCase load_witness_file(const std::filesystem::path& path);

struct WitnessReport {
  std::string id;
  Calculus calculus = Calculus::Ccs;
  WitnessMode mode = WitnessMode::Strong;
  Expectation expect = Expectation::Violation;
  Verdict invisible_check;
  std::optional<bool> closed_check;  // weak mode only
  Verdict ci_visible;
  Verdict cp_visible;
  Overall overall = Overall::Inconclusive;
  /// Set when a check threw (undefined identifier, unguarded recursion...).
  std::string error;
  double seconds = 0;

  bool matches_expectation() const;
};

WitnessReport verify_witness(const WitnessCase& w,
                             const std::optional<ExplorationBounds>& override_bounds = {});

struct CorpusEntry {
  std::string file;
  std::optional<WitnessReport> report;
  std::string load_error;  // file unreadable or malformed
};

struct CorpusSummary {
  std::vector<CorpusEntry> entries;  // ordered by case id, then file name
  double seconds = 0;

  std::size_t matched() const;
  /// 0 all matched, 1 some expectation mismatched, 2 a file could not be
  /// loaded, 3 some case inconclusive. The most severe code wins (2 > 3 > 1).
  int exit_code() const;
};

/// Verifies every `*.json` directly inside `dir`.
CorpusSummary run_corpus(const std::filesystem::path& dir,
                         const std::optional<ExplorationBounds>& override_bounds = {});

std::string report_json(const WitnessReport& r, int indent = 2);
std::string summary_json(const CorpusSummary& s, int indent = 2);
std::string summary_table(const CorpusSummary& s);
std::string trace_string(const std::vector<Step>& trace, Calculus c);

} // namespace procalc
