#pragma once

// Deterministic builders for explicit transitive actions with distinguished
// intersecting and semiregular subsets, each carrying the values it is
// expected to certify.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ekr/derangement.hpp"
#include "ekr/perm.hpp"
#include "ekr/rational.hpp"

namespace ekr {

enum class SubsetRole { Stabilizer, Intersecting, Semiregular, SharplyTransitive, Plain };
const char* to_string(SubsetRole r);

struct NamedSubset {
  SubsetRole role = SubsetRole::Plain;
  std::vector<std::uint32_t> elements; // sorted element indices
};

struct ExpectedValue {
  enum class Kind { Integer, Radical };
  Kind kind = Kind::Integer;
  std::int64_t integer = 0;
  Rational square; // radical value sqrt(square)
  std::string note;

  static ExpectedValue count(std::int64_t v, std::string note);
  static ExpectedValue radical(Rational sq, std::string note);
  double value() const;
  std::string to_string() const; // integer, or "sqrt(a/b)"
};

// Per-class outcome when several conjugacy classes of stabilizer qualify.
struct StabilizerClassReport {
  std::size_t index = 0; // position among the enumerated classes
  std::size_t order = 0;
  bool witness_intersecting = false;
  Rational rho_sq; // of the witness against this stabilizer
};

struct ConstructionOutput {
  std::string name; // "family:parameter"
  ActionPtr action;
  std::map<std::string, NamedSubset> named_subsets;
  // Keys: order, degree, stabilizer_order, size:<subset>, rho (tight),
  // rho_lower, rho_upper, bound.
  std::map<std::string, ExpectedValue> expected;
  std::string witness;     // intersecting subset giving the lower bound
  std::string certificate; // semiregular subset giving the upper bound, or empty
  std::vector<StabilizerClassReport> stabilizer_classes;

  const std::vector<std::uint32_t>& subset(const std::string& key) const;
};

// AGL(1,q) on the cosets of <x -> -x>. Throws EvenQ, InadmissibleParameters.
ConstructionOutput build_agl1_sharply_transitive(std::uint32_t q);

// PSL(2,2^e) on the cosets of D_2(2^e-1), e in 2..4.
ConstructionOutput build_psl2_even(unsigned e);

// T wr P on Delta^ell for the inner action T on Delta. P is given by
// generators on ell points (empty: cyclic shift). Throws GroupTooLarge.
ConstructionOutput build_product_action(const ConstructionOutput& inner, unsigned ell,
                                        const std::vector<Permutation>& top = {});

// AGL(1,p^2) on the cosets of AGL(1,p), p odd prime with p^4 <= 2^20.
ConstructionOutput build_affine_tower(std::uint32_t p);

// Affine groups with large intersecting subsets, rows 1..5. Rows 3 and 4 use
// the large-mode affine backend. Throws NoSuchSubgroup, InadmissibleParameters.
ConstructionOutput build_table2(int row);

// Borel subgroup of Sz(2^e) on the cosets of <(1,1)> = Z4; e = 3.
ConstructionOutput build_suzuki_borel_example(unsigned e);

struct Psu3Facts {
  std::size_t q_order = 0;
  std::size_t center_order = 0;
  bool center_matches_equation = false;   // Z(Q) = {M(a,0) : a + a^q = 0}
  bool product_law_holds = false;         // M(a,b)M(a',b') = M(a+a'-b^q b', b+b')
  bool conjugation_law_holds = false;     // M(a,b)^g = M(l^-(q+1) a, l^(1-2q) b)
  std::size_t noncentral_class_size = 0;  // |x^G| for x in Q \ Z(Q)
  bool noncentral_is_one_class = false;
};

// Normaliser of a Sylow p-subgroup of PSU(3,q), q an odd prime with
// gcd(3, q+1) = 1, on the cosets of the subgroup generated by the first
// non-commuting pair of Q. Throws InadmissibleQ.
ConstructionOutput build_psu3_example(std::uint32_t q);
Psu3Facts psu3_facts(std::uint32_t q);

enum class Psl2OddCase { Parabolic, Dihedral };

// PSL(2,p), 5 <= p <= 13. Parabolic: stabilizer Z_p:Z_ell (ell odd dividing
// (p-1)/2), semiregular D_(p+1). Dihedral: stabilizer D_(p+eps), semiregular Z_p.
ConstructionOutput build_psl2_odd_semiregular(std::uint32_t p, Psl2OddCase c, int param = 0);

// Dispatch on "family:parameter" (agl1st:9, psl2even:2, product:psl2even:2,
// affine:3, table2:5, szborel:3, psu3:7, psl2odd:7:dihedral). Throws ParseError.
ConstructionOutput build_named(const std::string& spec);
std::vector<std::string> construction_families();

struct SubsetCheck {
  std::string name;
  SubsetRole role;
  std::size_t size = 0;
  bool ok = false;
};

struct ExpectedCheck {
  std::string key;
  std::string expected;
  std::string computed;
  bool ok = false;
};

struct ConstructionCheck {
  std::vector<SubsetCheck> subsets;
  std::vector<ExpectedCheck> values;
  RhoCertificate certificate;
  std::optional<std::size_t> product_size; // |R S| when both are present and |G| <= 10^4
  bool ok = false;
};

// Verifies every named subset with the derangement predicates and compares
// every expected entry with the computed value.
ConstructionCheck verify_construction(const ConstructionOutput& c, const ActionProfile& prof);
ConstructionCheck verify_construction(const ConstructionOutput& c);

} // namespace ekr
