#pragma once

// One-shot analysis of a transitive action: derangement classes, unit and
// optimized Hoffman bounds, optional exact search, and the resulting rho
// certificate, with a JSON form that round-trips exactly.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ekr/derangement.hpp"
#include "ekr/perm.hpp"

namespace ekr {

struct GroupSummary {
  std::uint64_t order = 0;
  std::uint32_t degree = 0; // natural representation
  std::uint64_t omega = 0;
  std::uint64_t stabilizer_order = 0;
  bool large_mode = false;
  bool operator==(const GroupSummary&) const = default;
};

struct ClassSummary {
  std::uint64_t classes = 0;
  std::uint64_t fixing_classes = 0;
  std::uint64_t derangement_classes = 0;
  std::uint64_t derangements = 0;
  bool operator==(const ClassSummary&) const = default;
};

struct SpectrumSummary {
  std::vector<double> eigenvalues;
  std::vector<double> distinct;
  double d = 0;
  double tau = 0;
  bool operator==(const SpectrumSummary&) const = default;
};

struct CaseBound {
  std::string tag;
  double bound = 0;
  bool operator==(const CaseBound&) const = default;
};

struct HoffmanSummary {
  std::optional<double> unit;
  std::optional<std::uint64_t> unit_floor;
  std::optional<double> optimized;
  std::optional<std::uint64_t> optimized_floor;
  std::int64_t optimized_rounds = 0;
  std::vector<CaseBound> closed_form; // Sz(8) case weightings compatible with the action
  std::string note;
  bool operator==(const HoffmanSummary&) const = default;
};

struct SolverSummary {
  std::string mode; // "exact" or "greedy"
  std::uint64_t size = 0;
  bool optimal = false;
  bool time_limit_hit = false;
  std::uint64_t nodes = 0;
  std::vector<std::uint32_t> best_set;
  bool operator==(const SolverSummary&) const = default;
};

struct RhoSummary {
  std::uint64_t witness_size = 0;
  std::string witness;
  double upper_bound = 0;
  std::uint64_t upper_floor = 0;
  std::string upper_kind;
  std::string upper_note;
  std::string rho_lower_exact; // "sqrt(a/b)"
  std::string rho_upper_exact;
  double rho_lower = 0;
  double rho_upper = 0;
  bool tight = false;
  bool operator==(const RhoSummary&) const = default;
};

struct AnalysisReport {
  std::string source;
  GroupSummary group;
  ClassSummary classes;
  SpectrumSummary spectrum; // unit weights
  HoffmanSummary hoffman;
  std::optional<SolverSummary> solver;
  RhoSummary rho;
  std::vector<std::pair<std::string, double>> timings; // seconds, only when requested
  bool operator==(const AnalysisReport&) const = default;
};

struct AnalysisOptions {
  bool exact = false;
  double time_limit = 60.0;
  unsigned threads = 1;
  bool optimize = true;
  bool timings = false;
};

struct AnalysisInput {
  std::string source;
  ActionPtr action;
  // Named intersecting candidates for the lower bound; the stabilizer is
  // always considered.
  std::vector<std::pair<std::string, std::vector<std::uint32_t>>> witnesses;
  std::vector<std::vector<std::uint32_t>> semiregular;
};

// Throws InconsistentCertificate when a supplied witness is not intersecting
// or beats an upper bound.
AnalysisReport analyze(const AnalysisInput& input, const AnalysisOptions& opts = {});

// Rounds to 12 significant digits.
double round12(double x);

std::string serialize(const AnalysisReport& report);
// Throws ParseError.
AnalysisReport parse_report(const std::string& text);

// Group closure memoized in a directory keyed by a hash of the generators.
// An empty directory disables the cache.
GroupPtr close_group_cached(const GroupFile& file, const std::string& cache_dir);

} // namespace ekr
