#pragma once

#include <functional>
#include <string>
#include <vector>

namespace tautres {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0;
  double budget_seconds = 0;
  std::string detail;
};

struct AcceptanceOptions {
  unsigned seed = 20240601;
  int threads = 0;
  // Called after each criterion finishes (progress output).
  std::function<void(const CriterionResult&)> on_result;
};

// Runs criteria 1-10 in order. Never throws; failures are reported per row.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

std::string format_result_line(const CriterionResult& r);

}  // namespace tautres
