#pragma once

// Closed-form data for the Suzuki groups Sz(q), q = 2^e with e odd >= 3.
//
// Notation: r = sqrt(2q); A0, A1, A2 are cyclic Hall subgroups of orders
// q-1, q+r+1, q-r+1; rho has order 4. Every non-identity element lies in
// exactly one of rho^2, rho, rho^-1 or a conjugate of some A_m, and a
// stabilizer meets A_m (up to conjugacy) in its subgroup B_m of order t_m.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ekr/derangement.hpp"
#include "ekr/perm.hpp"
#include "ekr/rational.hpp"
#include "ekr/spectra.hpp"

namespace ekr {

struct SzParameters {
  unsigned e = 0;
  std::int64_t q = 0;
  std::int64_t r = 0;
  std::int64_t group_order = 0;
  std::int64_t a0 = 0; // q - 1
  std::int64_t a1 = 0; // q + r + 1
  std::int64_t a2 = 0; // q - r + 1
  // class inventory
  std::int64_t a0_classes = 0; // q/2 - 1
  std::int64_t a1_classes = 0; // (q+r)/4
  std::int64_t a2_classes = 0; // (q-r)/4
  std::int64_t num_classes = 0;
  std::int64_t involution_class_size = 0; // (q-1)(q^2+1)
  std::int64_t order4_union_size = 0;     // q(q-1)(q^2+1), both classes together
  std::vector<std::int64_t> character_degrees;
};

// Throws InadmissibleParameters unless e is odd and at least 3.
SzParameters sz_parameters(unsigned e);
// Same, from q = 2^e.
SzParameters sz_parameters_for_q(std::int64_t q);

enum class SzClassKind { Identity, Involution, Rho, RhoInverse, A0, A1, A2 };

struct SzClass {
  SzClassKind kind;
  std::int64_t s = 0; // exponent of zeta_m for torus classes
  std::int64_t element_order = 1;
  std::int64_t size = 1;
  std::int64_t centralizer = 1;
};

enum class SzFamily { One, X, Xi, Yj, Zk, W };
const char* to_string(SzFamily f);

struct SzCharacter {
  SzFamily family;
  std::int64_t index = 0; // i, j, k or l; orbit representatives for j and k
  std::int64_t degree = 1;
};

// Complex character table. The epsilon sums are evaluated from roots of unity
// on the unit circle.
class SzCharacterTable {
public:
  explicit SzCharacterTable(const SzParameters& params);
  const SzParameters& params() const { return params_; }
  const std::vector<SzClass>& classes() const { return classes_; }
  const std::vector<SzCharacter>& characters() const { return chars_; }
  std::complex<double> value(std::size_t character, std::size_t cls) const {
    return table_[character * classes_.size() + cls];
  }
  // (1/chi(1)) sum_c f(c) |c| chi(c) for each character, in character order.
  std::vector<double> eigenvalues(const std::vector<double>& class_weights) const;

private:
  SzParameters params_;
  std::vector<SzClass> classes_;
  std::vector<SzCharacter> chars_;
  std::vector<std::complex<double>> table_;
};

struct SzCharacterReport {
  std::int64_t q = 0;
  std::int64_t group_order = 0;
  std::int64_t sum_of_squares = 0;
  std::size_t num_characters = 0;
  std::size_t num_classes = 0;
  bool degrees_match_first_column = false;
  double max_orthogonality_error = 0;
  double tolerance = 0;
  bool ok = false;
};

SzCharacterReport sz_character_checks(std::int64_t q);

struct SzClassSums {
  int m = 0;
  std::int64_t t = 1;
  std::int64_t size = 0;           // |(A_m \ B_m)^G|
  std::int64_t divisible_sum = 0;  // sum of X_i / Y_j / Z_k over it when t | index
  std::int64_t sum_at(std::int64_t index) const { return index % t == 0 ? divisible_sum : 0; }
};

// Throws NotADivisor unless t divides |A_m|.
SzClassSums sz_class_sums(const SzParameters& params, int m, std::int64_t t);

// Polynomials with rational coefficients in q, r and a case parameter t.
struct SzTerm {
  Rational coef;
  int q = 0, r = 0, t = 0;
};

struct SzPoly {
  std::vector<SzTerm> terms;
  Rational eval(std::int64_t q, std::int64_t r, std::int64_t t) const;
  std::string to_string() const;
};

struct SzExpr {
  SzPoly num;
  SzPoly den{{{Rational(1), 0, 0, 0}}};
  Rational eval(std::int64_t q, std::int64_t r, std::int64_t t) const;
  std::string to_string() const;
};

enum class SzCase {
  D2t0Mid,
  D2qMinus1,
  Zt0Mid,
  ZqMinus1,
  BorelOrder4Exponent,
  BorelT0,
  SubfieldQ1,
  TorusPlus,
  TorusMinus,
};

const char* to_string(SzCase c);
// Throws ParseError.
SzCase sz_case_from_string(const std::string& s);
std::vector<SzCase> all_sz_cases();

enum class SzCondition { Always, IndexDivisible, IndexNotDivisible };

struct SzEigenEntry {
  SzFamily family;
  SzCondition condition = SzCondition::Always;
  SzExpr formula;
  std::int64_t multiplicity = 0; // number of characters realising it
  Rational value;
};

struct SzCaseSpectrum {
  SzCase tag;
  SzParameters params;
  std::int64_t t = 1;      // case parameter (t0, or q1 for the subfield case)
  std::int64_t t0 = 1;     // |B_0|
  // Weights on rho^2, rho^{+-1}, A_m \ B_m, and the B_m orders.
  Rational weight_rho2, weight_rho, weight_a0, weight_a1, weight_a2;
  std::int64_t b1 = 1, b2 = 1;
  std::vector<SzEigenEntry> entries;
  Rational d;
  Rational tau;
  Rational printed_d;
  Rational printed_tau;
  std::optional<Rational> printed_bound;
  std::optional<Rational> bound_exact; // |G| / (1 - d/tau) when it fits in 64 bits
  double bound = 0;
  std::int64_t min_stabilizer_order = 1;
  double rho_upper = 0; // bound / sqrt(|G_w| |G|) at the smallest stabilizer
  bool rho_below_half_sqrt2 = false;

  // Multiset of all eigenvalues, one per irreducible character, descending.
  std::vector<double> eigenvalue_list() const;
  std::vector<double> distinct() const;
  // Weight of a table class, zero on B_m.
  double class_weight(const SzClass& c) const;
};

// Throws InadmissibleParameters.
SzCaseSpectrum sz_case_spectrum(SzCase tag, std::int64_t q, std::int64_t t = 1);

// The Borel subgroup Q:K of order q^2(q-1) with Q = {(a, b)} under
// (a,b)(c,d) = (a+c, a c^theta + b + d) and (a,b)^k = (a k, b k^(1+theta)).
// Realised on the q^2 points of Q by y -> (y x)^k; point a*q + b.
struct SzBorel {
  SzParameters params;
  FiniteField field;
  GroupPtr group;
  // Throws InvalidGenerator for k = 0 or values outside the field.
  std::uint32_t index_of(std::uint32_t a, std::uint32_t b, std::uint32_t k) const;
  Permutation permutation_of(std::uint32_t a, std::uint32_t b, std::uint32_t k) const;
  std::vector<std::uint32_t> sylow2() const; // Q, sorted
  std::vector<std::uint32_t> torus() const;  // K, sorted
};

// Throws GroupTooLarge when 2^(3e) exceeds the enumeration cap.
SzBorel sz_borel_group(unsigned e);

// Sz(8) from the shipped generator file, checked against order and classes.
struct SzGroup {
  SzParameters params;
  GroupPtr group;
  std::vector<SzClassKind> kind_of_class; // by group class index
};

SzGroup load_sz8(const std::string& path = "");
// Matches the classes of an already closed group to the Sz(8) inventory.
// Throws InvalidGenerator when it is not Sz(8).
SzGroup classify_sz8(GroupPtr group);

// Weighting on the group's classes, validated against the action.
ClassWeighting sz_case_weighting(const SzGroup& sz, const SzCaseSpectrum& spec);

struct SzCrossCheck {
  SzCase tag;
  std::size_t stabilizer_order = 0;
  std::vector<double> expected;   // closed form, descending
  std::vector<double> computed;   // collapsed matrix, descending
  double max_relative_error = 0;
  double expected_bound = 0;
  double computed_bound = 0;
  bool ok = false;
};

inline constexpr double kSzCrossTolerance = 1e-6;

// The stabilizers D_2(q-1), Z_(q-1), Z_4, Z_(q+r+1):Z_4 and Z_(q-r+1):Z_4 of
// Sz(8), each compared with its closed-form weighted spectrum.
std::vector<SzCrossCheck> sz8_cross_validation(const SzGroup& sz);

} // namespace ekr
