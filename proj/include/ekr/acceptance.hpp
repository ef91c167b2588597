#pragma once

// The acceptance suite: twelve checks, each with its own time budget, shared
// by the ekrlab CLI and the ctest driver.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ekr {

// Pinned tolerances.
inline constexpr double kHoffmanTolerance = 1e-6;  // pre-floor Hoffman values
inline constexpr double kSpectrumMatchTolerance = 1e-6; // collapsed vs full spectrum
inline constexpr double kOracleTolerance = 1e-9;   // Jacobi convergence

struct CriterionInfo {
  int id = 0;
  std::string name;
  std::string suite; // filter tag
  double budget = 0; // seconds
};

struct CriterionResult {
  CriterionInfo info;
  bool passed = false;
  double seconds = 0;
  std::vector<std::string> details;
};

struct AcceptanceOptions {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string only; // empty, a criterion id, a name or a suite tag
};

std::vector<CriterionInfo> acceptance_criteria();
bool criterion_selected(const CriterionInfo& c, const std::string& filter);

// Runs the selected criteria in order, reporting each as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

// One line: "PASS  3 agl1_sharply_transitive (0.12 s / 1 s)".
std::string format_result_line(const CriterionResult& r);

// Eigenvalues of a dense symmetric n x n matrix by cyclic Jacobi rotations,
// ascending. Independent of the Eigen-based collapsed solver.
std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n);

} // namespace ekr
