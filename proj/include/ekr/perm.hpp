#pragma once

// Enumerated finite groups.
//
// A GroupTable stores every element of a finite group behind a backend that
// knows how to multiply element indices. Two backends exist: explicit
// permutations (elements sorted lexicographically by image vector) and affine
// maps x -> xA + v over GF(p)^dim for groups too large to hold as image
// vectors (elements sorted by (v, A)). Index 0 is always the identity.
//
// Products read left to right: (x * y) acts as x first, then y.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ekr/algebra.hpp"

namespace ekr {

using Permutation = std::vector<std::uint32_t>;

inline constexpr std::size_t kMaxGroupOrder = std::size_t{1} << 20;
inline constexpr std::size_t kMaxLargeGroupOrder = std::size_t{1} << 21;

bool is_permutation(const Permutation& images);
// x then y: (x*y)[i] = y[x[i]].
Permutation compose(const Permutation& x, const Permutation& y);
Permutation invert(const Permutation& x);
Permutation identity_permutation(std::uint32_t n);

class GroupBackend {
public:
  virtual ~GroupBackend() = default;
  virtual std::size_t size() const = 0;
  virtual std::uint32_t degree() const = 0;
  virtual std::uint32_t mult(std::uint32_t a, std::uint32_t b) const = 0;
  virtual std::uint32_t inverse(std::uint32_t a) const = 0;
  virtual std::uint32_t image(std::uint32_t a, std::uint32_t point) const = 0;
  virtual std::uint32_t element_order(std::uint32_t a) const;
  virtual bool large_mode() const { return false; }
};

class GroupTable {
public:
  GroupTable(std::shared_ptr<const GroupBackend> backend, std::vector<std::uint32_t> generators);

  std::size_t order() const { return backend_->size(); }
  std::uint32_t degree() const { return backend_->degree(); }
  bool large_mode() const { return backend_->large_mode(); }
  const std::vector<std::uint32_t>& generators() const { return generators_; }

  std::uint32_t mult(std::uint32_t a, std::uint32_t b) const { return backend_->mult(a, b); }
  std::uint32_t inverse(std::uint32_t a) const { return inverse_of_[a]; }
  std::uint32_t element_order(std::uint32_t a) const { return order_of_[a]; }
  // g^-1 x g
  std::uint32_t conjugate(std::uint32_t x, std::uint32_t g) const { return mult(mult(inverse(g), x), g); }
  std::uint32_t image(std::uint32_t a, std::uint32_t point) const { return backend_->image(a, point); }
  Permutation permutation(std::uint32_t a) const;
  // Index of the element acting as the given permutation of the natural
  // points, or -1 when it is not in the group.
  std::int64_t find(const Permutation& images) const;

  std::size_t num_classes() const { return class_reps_.size(); }
  std::uint32_t class_of(std::uint32_t a) const { return class_of_[a]; }
  std::uint32_t class_rep(std::size_t c) const { return class_reps_[c]; }
  std::size_t class_size(std::size_t c) const { return class_sizes_[c]; }
  std::uint32_t class_inverse(std::size_t c) const { return class_inverse_[c]; }
  std::uint32_t class_element_order(std::size_t c) const { return order_of_[class_reps_[c]]; }
  std::size_t centralizer_order(std::size_t c) const { return order() / class_sizes_[c]; }
  const std::vector<std::uint32_t>& class_of_table() const { return class_of_; }
  std::vector<std::uint32_t> class_members(std::size_t c) const;

  const GroupBackend& backend() const { return *backend_; }

private:
  std::shared_ptr<const GroupBackend> backend_;
  std::vector<std::uint32_t> generators_;
  std::vector<std::uint32_t> inverse_of_;
  std::vector<std::uint32_t> order_of_;
  std::vector<std::uint32_t> class_of_;
  std::vector<std::uint32_t> class_reps_;
  std::vector<std::size_t> class_sizes_;
  std::vector<std::uint32_t> class_inverse_;
};

using GroupPtr = std::shared_ptr<const GroupTable>;

// Breadth-first closure of permutation generators on n points.
GroupPtr close_group(std::uint32_t degree, const std::vector<Permutation>& generators);

// Rebuilds a closed group from its elements' images, sorted as close_group
// leaves them (degree values per element). Throws ParseError unless the list
// is exactly the group generated by the generators.
GroupPtr group_from_elements(std::uint32_t degree, std::vector<std::uint32_t> images,
                             const std::vector<Permutation>& generators);

// Affine group GF(p)^dim : L with L generated by the given invertible
// matrices over the prime field GF(p). Natural points are vectors encoded as
// sum v_k p^(dim-1-k). Admits orders up to kMaxLargeGroupOrder.
GroupPtr close_affine_group(std::uint32_t p, int dim, const std::vector<SmallMatrix>& linear_generators);
// Index of the affine element x -> xA + v in a group from close_affine_group.
std::int64_t affine_index(const GroupTable& group, const std::vector<std::uint32_t>& v, const SmallMatrix& A);

// Sorted element indices of the subgroup generated by gens. Returns an empty
// vector when the closure exceeds cap.
std::vector<std::uint32_t> subgroup_closure(const GroupTable& group, const std::vector<std::uint32_t>& gens,
                                            std::size_t cap = SIZE_MAX);
bool is_subgroup(const GroupTable& group, const std::vector<std::uint32_t>& subset);
std::vector<std::uint32_t> point_stabilizer(const GroupTable& group, std::uint32_t point);
bool is_transitive(const GroupTable& group);

// Action of G on the right cosets Hg. Coset 0 is H itself, so G_omega = H for
// omega = 0; each coset is represented by its smallest element index.
class TransitiveAction {
public:
  TransitiveAction(GroupPtr group, std::vector<std::uint32_t> stabilizer);

  const GroupTable& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  const std::vector<std::uint32_t>& stabilizer() const { return stabilizer_; }
  std::size_t omega_size() const { return coset_reps_.size(); }
  std::size_t stabilizer_order() const { return stabilizer_.size(); }
  std::uint32_t coset_of(std::uint32_t element) const { return coset_of_[element]; }
  std::uint32_t coset_rep(std::uint32_t point) const { return coset_reps_[point]; }
  std::uint32_t point_image(std::uint32_t element, std::uint32_t point) const {
    return coset_of_[group_->mult(coset_reps_[point], element)];
  }
  bool fixes_some_point(std::uint32_t element) const;

private:
  GroupPtr group_;
  std::vector<std::uint32_t> stabilizer_;
  std::vector<std::uint32_t> coset_of_;
  std::vector<std::uint32_t> coset_reps_;
};

TransitiveAction coset_action(GroupPtr group, std::vector<std::uint32_t> subgroup);

using SubgroupPredicate = std::function<bool(const GroupTable&, const std::vector<std::uint32_t>&)>;

namespace shapes {
bool any(const GroupTable&, const std::vector<std::uint32_t>&);
bool cyclic(const GroupTable& g, const std::vector<std::uint32_t>& h);
bool abelian(const GroupTable& g, const std::vector<std::uint32_t>& h);
bool dihedral(const GroupTable& g, const std::vector<std::uint32_t>& h);
// Z_n : Z_m with Z_n the unique subgroup of its order, normal, self-centralizing
// and with cyclic quotient (a Frobenius-like metacyclic group, n > 1 prime).
bool frobenius(const GroupTable& g, const std::vector<std::uint32_t>& h);
} // namespace shapes

// Named shapes for command-line use: any, cyclic, abelian, dihedral, frobenius.
SubgroupPredicate shape_predicate(const std::string& name);

// First subgroup of the target order satisfying pred among <a>, <a,b> (a <= b
// in index order), then <a,b,c>.
std::vector<std::uint32_t> find_subgroup(const GroupTable& group, std::size_t order, const SubgroupPredicate& pred);

// Representatives (sorted element sets) of the conjugacy classes of subgroups
// of the given order generated by at most three elements.
std::vector<std::vector<std::uint32_t>> subgroup_conjugacy_classes(const GroupTable& group, std::size_t order);

struct GroupFile {
  std::uint32_t degree = 0;
  std::vector<Permutation> generators;
};

GroupFile parse_group_file(const std::string& text);
GroupFile read_group_file(const std::string& path);
std::string format_group_file(const GroupFile& file, const std::string& comment = "");
// Generators of the group's natural permutation action.
GroupFile group_file_of(const GroupTable& group);

} // namespace ekr
