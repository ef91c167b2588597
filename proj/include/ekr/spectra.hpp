#pragma once

// Weighted derangement graphs through the class algebra.
//
// A compatible weighting f is a real class function vanishing on fixing
// classes with f(x) = f(x^-1). The convolution matrix M^f on G has one
// eigenvalue (1/chi(1)) sum_g f(g) chi(g) per irreducible character chi; the
// same numbers are the eigenvalues of the k x k collapsed matrix
//   N[j][i] = sum_s f(s) [s^-1 z_j in C_i]
// where z_j represents class j. No character table is needed.

#include <cstdint>
#include <optional>
#include <vector>

#include "ekr/derangement.hpp"

namespace ekr {

struct ClassWeighting {
  std::vector<double> weights; // one per conjugacy class
};

ClassWeighting unit_weighting(const ActionProfile& prof);
// Throws IncompatibleWeighting.
void check_compatible(const ActionProfile& prof, const ClassWeighting& w);

// Structure constants restricted to derangement classes:
// count(c, j, i) = #{s in C_c : s^-1 z_j in C_i}.
class ClassAlgebra {
public:
  explicit ClassAlgebra(const ActionProfile& prof);
  std::size_t k() const { return k_; }
  const std::vector<std::uint32_t>& support() const { return support_; }
  std::uint64_t count(std::size_t support_pos, std::size_t j, std::size_t i) const {
    return counts_[(support_pos * k_ + j) * k_ + i];
  }
  const std::vector<std::size_t>& class_sizes() const { return sizes_; }

private:
  std::size_t k_;
  std::vector<std::uint32_t> support_; // derangement class indices
  std::vector<std::size_t> sizes_;
  std::vector<std::uint64_t> counts_;
};

struct CollapsedMatrix {
  std::size_t k = 0;
  std::vector<double> data; // row-major k x k
  std::vector<std::size_t> class_sizes;
  double row_sum = 0;
  double at(std::size_t j, std::size_t i) const { return data[j * k + i]; }
};

CollapsedMatrix collapse(const ActionProfile& prof, const ClassWeighting& w);
CollapsedMatrix collapse(const ActionProfile& prof, const ClassAlgebra& algebra, const ClassWeighting& w);

struct SpectrumReport {
  std::vector<double> eigenvalues; // all k values, descending
  std::vector<double> distinct;    // clustered, descending
  double d = 0;
  double tau = 0;
  std::optional<double> hoffman_bound;
};

// Relative tolerance used to cluster and compare eigenvalues.
inline constexpr double kSpectrumTolerance = 1e-6;

// n is the number of vertices (|G|) used for the Hoffman value.
SpectrumReport eigenvalues(const CollapsedMatrix& m, double n);
// n / (1 - d / tau). Throws DegenerateSpectrum unless tau < 0 < d.
double hoffman(const SpectrumReport& r, double n);

struct OptimizedWeights {
  ClassWeighting weighting;
  double bound = 0;
  SpectrumReport spectrum;
  int rounds = 0;
};

// Minimises the Hoffman bound over compatible class weightings by linear
// programming with eigenvector cuts. Throws Unbounded or NoConvergence.
OptimizedWeights optimize_weights(const ActionProfile& prof);
OptimizedWeights optimize_weights(const ActionProfile& prof, const ClassAlgebra& algebra);

// Hoffman bound for a weighting, or nullopt when the spectrum is degenerate.
std::optional<double> weighted_hoffman(const ActionProfile& prof, const ClassAlgebra& algebra, const ClassWeighting& w);

} // namespace ekr
