#pragma once

// Derangements of a transitive action, intersecting and semiregular subsets,
// and certificates for the density rho(G/Omega) = |S| / (|G_w| sqrt|Omega|).

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ekr/perm.hpp"
#include "ekr/rational.hpp"

namespace ekr {

using ActionPtr = std::shared_ptr<const TransitiveAction>;

struct ActionProfile {
  ActionPtr action;
  std::vector<char> fixing; // per conjugacy class
  std::vector<std::uint32_t> fixing_classes;
  std::vector<std::uint32_t> derangement_classes;
  std::uint64_t derangement_count = 0;

  const GroupTable& group() const { return action->group(); }
  bool is_derangement(std::uint32_t element) const { return !fixing[group().class_of(element)]; }
};

ActionProfile profile(ActionPtr action);

// x y^-1 fixes a point for all x, y in the subset. Subgroups are checked
// element-wise, which is equivalent.
bool is_intersecting(const ActionProfile& prof, const std::vector<std::uint32_t>& subset);
// Every ratio of distinct members is a derangement. Throws IdentityMissing.
bool is_semiregular(const ActionProfile& prof, const std::vector<std::uint32_t>& subset);
// Semiregular and |R| = |Omega|.
bool is_sharply_transitive(const ActionProfile& prof, const std::vector<std::uint32_t>& subset);

// Integer floor of a real upper bound on a subset size, absorbing rounding.
std::uint64_t floor_bound(double x);

enum class UpperKind { Hoffman, SemiregularClique, ExactSolver, Trivial };
const char* to_string(UpperKind k);

struct UpperSource {
  UpperKind kind = UpperKind::Trivial;
  double value = 0; // bound on the size of an intersecting subset
  std::string note;
};

struct SemiregularBound {
  std::uint64_t bound = 0;  // |G| / |R|
  Rational rho_upper_sq;     // |Omega| / |R|^2
  UpperSource source() const;
};

// Throws NotSemiregular.
SemiregularBound semiregular_upper_bound(const ActionProfile& prof, const std::vector<std::uint32_t>& subset);

struct RhoCertificate {
  std::vector<std::uint32_t> lower_witness;
  double upper_bound = 0;              // best raw bound
  std::uint64_t upper_floor = 0;       // integer bound actually certified
  UpperKind upper_kind = UpperKind::Trivial;
  std::string upper_note;
  Rational rho_lower_sq;
  Rational rho_upper_sq;
  double rho_lower = 0;
  double rho_upper = 0;
  bool tight = false;
};

// rho^2 for a subset of the given size.
Rational rho_squared(std::uint64_t size, std::uint64_t stabilizer_order, std::uint64_t omega_size);

// Throws InconsistentCertificate when the witness is not intersecting or is
// larger than some upper source.
RhoCertificate certify_rho(const ActionProfile& prof, std::vector<std::uint32_t> lower_witness,
                           const std::vector<UpperSource>& upper_sources);

// |{r s : r in R, s in S}|
std::size_t product_set_size(const GroupTable& group, const std::vector<std::uint32_t>& R,
                             const std::vector<std::uint32_t>& S);

} // namespace ekr
