#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wsn/result.hpp"
#include "wsn/scenario.hpp"

namespace wsn {

// A canned head-to-head scenario: a small hand-placed topology that isolates
// one classic monitoring failure mode, plus the outcome each technique is
// expected to produce on it.
struct Table3Scenario {
  std::string name;
  ScenarioConfig config;
  bool expect_conventional_resolved = false;
  bool expect_improved_resolved = false;
};

// The six canned scenarios, in canonical order.
std::vector<Table3Scenario> table3_scenarios();

// A technique "resolves" a scenario when no honest node is ever declared
// malicious AND every attacker that actually mishandles packets (dropping,
// tampering, colluding) is declared malicious.  Attackers that only emit
// radio noise never forward anything, so there is no misbehaviour for a
// watchdog to pin on them; they are exempt from the must-flag set.
bool resolved_verdict(const ScenarioConfig& cfg, const TechniqueResult& tr);

struct Table3Row {
  std::string name;
  bool conventional_resolved = false;
  bool improved_resolved = false;
  bool expect_conventional_resolved = false;
  bool expect_improved_resolved = false;
  bool matches_expected = false;
};

struct Table3Outcome {
  std::vector<Table3Row> rows;
  bool all_match = false;
  std::optional<std::string> first_mismatch;
};

// Runs all six scenarios with both techniques and checks each outcome
// against the expectation.  timeout_override replaces every scenario's
// watchdog timeout when set (used by tests to show the matrix is not
// vacuously satisfiable).
Table3Outcome run_table3(std::optional<double> timeout_override = {});

std::string render_table3_csv(const Table3Outcome&);
std::string render_table3_text(const Table3Outcome&);

}  // namespace wsn
