#include "ekr/perm.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "ekr/error.hpp"

namespace ekr {

bool is_permutation(const Permutation& images) {
  std::vector<char> seen(images.size(), 0);
  for (auto v : images) {
    if (v >= images.size() || seen[v])
      return false;
    seen[v] = 1;
  }
  return true;
}

Permutation compose(const Permutation& x, const Permutation& y) {
  Permutation r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    r[i] = y[x[i]];
  return r;
}

Permutation invert(const Permutation& x) {
  Permutation r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    r[x[i]] = static_cast<std::uint32_t>(i);
  return r;
}

Permutation identity_permutation(std::uint32_t n) {
  Permutation r(n);
  std::iota(r.begin(), r.end(), 0u);
  return r;
}

std::uint32_t GroupBackend::element_order(std::uint32_t a) const {
  std::uint32_t k = 1;
  for (std::uint32_t x = a; x != 0; x = mult(x, a))
    ++k;
  return k;
}

namespace {

constexpr std::uint32_t kEmpty = 0xffffffffu;

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t hash_range(const std::uint32_t* p, std::size_t n) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < n; ++i)
    h = mix(h, p[i]);
  return h;
}

std::size_t table_size_for(std::size_t n) {
  std::size_t s = 16;
  while (s < 2 * n + 2)
    s <<= 1;
  return s;
}

std::uint64_t lcm(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

// Elements stored as full image vectors; lookup keyed by images of a base.
class PermBackend final : public GroupBackend {
public:
  PermBackend(std::uint32_t degree, std::vector<std::uint32_t> images)
      : degree_(degree), images_(std::move(images)) {
    n_ = degree_ ? images_.size() / degree_ : 1;
    choose_base();
    slots_.assign(table_size_for(n_), kEmpty);
    mask_ = slots_.size() - 1;
    std::vector<std::uint32_t> key(base_.size());
    for (std::uint32_t e = 0; e < n_; ++e) {
      for (std::size_t t = 0; t < base_.size(); ++t)
        key[t] = row(e)[base_[t]];
      std::size_t s = hash_range(key.data(), key.size()) & mask_;
      while (slots_[s] != kEmpty)
        s = (s + 1) & mask_;
      slots_[s] = e;
    }
  }

  std::size_t size() const override { return n_; }
  std::uint32_t degree() const override { return degree_; }
  const std::uint32_t* row(std::uint32_t e) const { return images_.data() + std::size_t{e} * degree_; }

  std::uint32_t mult(std::uint32_t a, std::uint32_t b) const override {
    std::uint32_t key[kMaxInlineBase];
    std::vector<std::uint32_t> big;
    std::uint32_t* k = key;
    if (base_.size() > kMaxInlineBase) {
      big.resize(base_.size());
      k = big.data();
    }
    const std::uint32_t* ra = row(a);
    const std::uint32_t* rb = row(b);
    for (std::size_t t = 0; t < base_.size(); ++t)
      k[t] = rb[ra[base_[t]]];
    const std::int64_t r = lookup(k);
    if (r < 0)
      throw std::logic_error("group table is not closed under multiplication");
    return static_cast<std::uint32_t>(r);
  }

  std::uint32_t inverse(std::uint32_t a) const override {
    const Permutation inv = invert(Permutation(row(a), row(a) + degree_));
    const std::int64_t r = find(inv);
    if (r < 0)
      throw std::logic_error("group table is not closed under inverses");
    return static_cast<std::uint32_t>(r);
  }

  std::uint32_t image(std::uint32_t a, std::uint32_t point) const override { return row(a)[point]; }

  std::uint32_t element_order(std::uint32_t a) const override {
    const std::uint32_t* r = row(a);
    std::vector<char> seen(degree_, 0);
    std::uint64_t order = 1;
    for (std::uint32_t i = 0; i < degree_; ++i) {
      if (seen[i])
        continue;
      std::uint64_t len = 0;
      for (std::uint32_t j = i; !seen[j]; j = r[j]) {
        seen[j] = 1;
        ++len;
      }
      order = lcm(order, len);
    }
    return static_cast<std::uint32_t>(order);
  }

  std::int64_t find(const Permutation& images) const {
    if (images.size() != degree_)
      return -1;
    std::vector<std::uint32_t> key(base_.size());
    for (std::size_t t = 0; t < base_.size(); ++t)
      key[t] = images[base_[t]];
    const std::int64_t r = lookup(key.data());
    if (r < 0 || !std::equal(images.begin(), images.end(), row(static_cast<std::uint32_t>(r))))
      return -1;
    return r;
  }

private:
  static constexpr std::size_t kMaxInlineBase = 16;

  std::int64_t lookup(const std::uint32_t* key) const {
    std::size_t s = hash_range(key, base_.size()) & mask_;
    while (slots_[s] != kEmpty) {
      const std::uint32_t* r = row(slots_[s]);
      bool eq = true;
      for (std::size_t t = 0; t < base_.size() && eq; ++t)
        eq = r[base_[t]] == key[t];
      if (eq)
        return slots_[s];
      s = (s + 1) & mask_;
    }
    return -1;
  }

  // Greedy base: add points in order while they split the current partition
  // of elements by base images, until every element is distinguished.
  void choose_base() {
    std::vector<std::uint64_t> label(n_, 0);
    std::size_t distinct = 1;
    for (std::uint32_t pt = 0; pt < degree_ && distinct < n_; ++pt) {
      std::unordered_map<std::uint64_t, std::uint32_t> ids;
      ids.reserve(2 * n_);
      std::vector<std::uint64_t> next(n_);
      for (std::uint32_t e = 0; e < n_; ++e) {
        const std::uint64_t key = label[e] * degree_ + row(e)[pt];
        auto [it, inserted] = ids.emplace(key, static_cast<std::uint32_t>(ids.size()));
        next[e] = it->second;
      }
      if (ids.size() > distinct) {
        distinct = ids.size();
        label.swap(next);
        base_.push_back(pt);
      }
    }
  }

  std::uint32_t degree_;
  std::size_t n_ = 0;
  std::vector<std::uint32_t> images_;
  std::vector<std::uint32_t> base_;
  std::vector<std::uint32_t> slots_;
  std::size_t mask_ = 0;
};

// x -> xA + v over GF(p)^dim with A in a closed matrix group L.
class AffineBackend final : public GroupBackend {
public:
  AffineBackend(std::uint32_t p, int dim, std::vector<SmallMatrix> L) : p_(p), dim_(dim), L_(std::move(L)) {
    V_ = 1;
    for (int i = 0; i < dim_; ++i)
      V_ *= p_;
    const std::size_t m = L_.size();
    for (std::size_t i = 0; i < m; ++i)
      index_of_.emplace(L_[i], static_cast<std::uint32_t>(i));
    lmult_.resize(m * m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        lmult_[i * m + j] = index_of_.at(L_[i] * L_[j]);
    linv_.resize(m);
    lorder_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      linv_[i] = index_of_.at(L_[i].inverse());
      std::uint32_t k = 1;
      for (std::uint32_t x = static_cast<std::uint32_t>(i); x != 0; x = lmult_[std::size_t{x} * m + i])
        ++k;
      lorder_[i] = k;
    }
    vmul_.resize(std::size_t{V_} * m);
    for (std::uint32_t v = 0; v < V_; ++v) {
      const auto c = decode(v);
      for (std::size_t a = 0; a < m; ++a) {
        std::vector<std::uint32_t> out(dim_, 0);
        for (int j = 0; j < dim_; ++j) {
          std::uint64_t acc = 0;
          for (int k = 0; k < dim_; ++k)
            acc += std::uint64_t{c[k]} * L_[a].raw(k, j);
          out[j] = static_cast<std::uint32_t>(acc % p_);
        }
        vmul_[std::size_t{v} * m + a] = encode(out);
      }
    }
    vadd_.resize(std::size_t{V_} * V_);
    vneg_.resize(V_);
    for (std::uint32_t u = 0; u < V_; ++u) {
      const auto cu = decode(u);
      std::vector<std::uint32_t> neg(dim_);
      for (int k = 0; k < dim_; ++k)
        neg[k] = (p_ - cu[k]) % p_;
      vneg_[u] = encode(neg);
      for (std::uint32_t w = 0; w < V_; ++w) {
        const auto cw = decode(w);
        std::vector<std::uint32_t> s(dim_);
        for (int k = 0; k < dim_; ++k)
          s[k] = (cu[k] + cw[k]) % p_;
        vadd_[std::size_t{u} * V_ + w] = encode(s);
      }
    }
  }

  std::size_t size() const override { return std::size_t{V_} * L_.size(); }
  std::uint32_t degree() const override { return V_; }
  bool large_mode() const override { return true; }

  std::uint32_t mult(std::uint32_t a, std::uint32_t b) const override {
    const std::size_t m = L_.size();
    const std::uint32_t v1 = static_cast<std::uint32_t>(a / m), a1 = static_cast<std::uint32_t>(a % m);
    const std::uint32_t v2 = static_cast<std::uint32_t>(b / m), a2 = static_cast<std::uint32_t>(b % m);
    const std::uint32_t v = vadd_[std::size_t{vmul_[std::size_t{v1} * m + a2]} * V_ + v2];
    return static_cast<std::uint32_t>(std::size_t{v} * m + lmult_[a1 * m + a2]);
  }

  std::uint32_t inverse(std::uint32_t a) const override {
    const std::size_t m = L_.size();
    const std::uint32_t v = static_cast<std::uint32_t>(a / m), ai = linv_[a % m];
    const std::uint32_t w = vneg_[vmul_[std::size_t{v} * m + ai]];
    return static_cast<std::uint32_t>(std::size_t{w} * m + ai);
  }

  std::uint32_t image(std::uint32_t a, std::uint32_t point) const override {
    const std::size_t m = L_.size();
    return vadd_[std::size_t{vmul_[std::size_t{point} * m + a % m]} * V_ + a / m];
  }

  // (v,A)^k = (v(I + A + ... + A^(k-1)), A^k)
  std::uint32_t element_order(std::uint32_t a) const override {
    const std::size_t m = L_.size();
    const std::uint32_t ai = static_cast<std::uint32_t>(a % m);
    const std::uint32_t k = lorder_[ai];
    std::uint32_t w = 0, cur = static_cast<std::uint32_t>(a / m);
    for (std::uint32_t i = 0; i < k; ++i) {
      w = vadd_[std::size_t{w} * V_ + cur];
      cur = vmul_[std::size_t{cur} * m + ai];
    }
    return w == 0 ? k : k * p_;
  }

  std::int64_t index(const std::vector<std::uint32_t>& v, const SmallMatrix& A) const {
    auto it = index_of_.find(A);
    if (it == index_of_.end() || v.size() != static_cast<std::size_t>(dim_))
      return -1;
    return static_cast<std::int64_t>(encode(v)) * static_cast<std::int64_t>(L_.size()) + it->second;
  }

  std::uint32_t encode(const std::vector<std::uint32_t>& c) const {
    std::uint32_t v = 0;
    for (int k = 0; k < dim_; ++k)
      v = v * p_ + c[k] % p_;
    return v;
  }
  std::vector<std::uint32_t> decode(std::uint32_t v) const {
    std::vector<std::uint32_t> c(dim_);
    for (int k = dim_; k-- > 0;) {
      c[k] = v % p_;
      v /= p_;
    }
    return c;
  }
  std::size_t linear_order() const { return L_.size(); }

private:
  std::uint32_t p_;
  int dim_;
  std::uint32_t V_ = 1;
  std::vector<SmallMatrix> L_;
  std::unordered_map<SmallMatrix, std::uint32_t, SmallMatrixHash> index_of_;
  std::vector<std::uint32_t> lmult_, linv_, lorder_, vmul_, vadd_, vneg_;
};

// Open-addressing set of element indices for closures.
class IndexSet {
public:
  explicit IndexSet(std::size_t group_order, std::size_t expected) {
    if (expected * 16 >= group_order) {
      dense_.assign(group_order, 0);
    } else {
      slots_.assign(table_size_for(expected), kEmpty);
    }
  }
  bool insert(std::uint32_t x) {
    if (!dense_.empty()) {
      if (dense_[x])
        return false;
      dense_[x] = 1;
      return true;
    }
    if (2 * (count_ + 1) > slots_.size())
      grow();
    std::size_t s = (std::uint64_t{x} * 0x9e3779b97f4a7c15ull >> 20) & (slots_.size() - 1);
    while (slots_[s] != kEmpty) {
      if (slots_[s] == x)
        return false;
      s = (s + 1) & (slots_.size() - 1);
    }
    slots_[s] = x;
    ++count_;
    return true;
  }
  bool contains(std::uint32_t x) const {
    if (!dense_.empty())
      return dense_[x] != 0;
    std::size_t s = (std::uint64_t{x} * 0x9e3779b97f4a7c15ull >> 20) & (slots_.size() - 1);
    while (slots_[s] != kEmpty) {
      if (slots_[s] == x)
        return true;
      s = (s + 1) & (slots_.size() - 1);
    }
    return false;
  }

private:
  void grow() {
    std::vector<std::uint32_t> old;
    old.swap(slots_);
    slots_.assign(old.size() * 2, kEmpty);
    count_ = 0;
    for (auto x : old)
      if (x != kEmpty)
        insert(x);
  }
  std::vector<char> dense_;
  std::vector<std::uint32_t> slots_;
  std::size_t count_ = 0;
};

} // namespace

GroupTable::GroupTable(std::shared_ptr<const GroupBackend> backend, std::vector<std::uint32_t> generators)
    : backend_(std::move(backend)), generators_(std::move(generators)) {
  const std::size_t n = backend_->size();
  inverse_of_.resize(n);
  order_of_.resize(n);
  for (std::uint32_t a = 0; a < n; ++a) {
    inverse_of_[a] = backend_->inverse(a);
    order_of_[a] = backend_->element_order(a);
  }

  // Spot-check closure and inverses on random pairs.
  std::mt19937_64 rng(0);
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
  for (int it = 0; it < 10000 && n > 1; ++it) {
    const std::uint32_t a = pick(rng), b = pick(rng);
    const std::uint32_t ab = mult(a, b);
    if (mult(ab, inverse_of_[b]) != a || mult(a, inverse_of_[a]) != 0)
      throw std::logic_error("group table fails closure spot check");
  }

  class_of_.assign(n, kEmpty);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t x = 0; x < n; ++x) {
    if (class_of_[x] != kEmpty)
      continue;
    const std::uint32_t c = static_cast<std::uint32_t>(class_reps_.size());
    class_reps_.push_back(x);
    std::size_t size = 0;
    class_of_[x] = c;
    stack.assign(1, x);
    while (!stack.empty()) {
      const std::uint32_t y = stack.back();
      stack.pop_back();
      ++size;
      for (auto g : generators_) {
        const std::uint32_t z = conjugate(y, g);
        if (class_of_[z] == kEmpty) {
          class_of_[z] = c;
          stack.push_back(z);
        }
      }
    }
    class_sizes_.push_back(size);
  }
  class_inverse_.resize(class_reps_.size());
  for (std::size_t c = 0; c < class_reps_.size(); ++c)
    class_inverse_[c] = class_of_[inverse_of_[class_reps_[c]]];
}

Permutation GroupTable::permutation(std::uint32_t a) const {
  Permutation r(degree());
  for (std::uint32_t i = 0; i < degree(); ++i)
    r[i] = image(a, i);
  return r;
}

std::int64_t GroupTable::find(const Permutation& images) const {
  if (auto pb = dynamic_cast<const PermBackend*>(backend_.get()))
    return pb->find(images);
  if (images.size() != degree())
    return -1;
  // Affine: images of 0 and the basis vectors determine (v, A).
  for (std::uint32_t a = 0; a < order(); ++a)
    if (permutation(a) == images)
      return a;
  return -1;
}

std::vector<std::uint32_t> GroupTable::class_members(std::size_t c) const {
  std::vector<std::uint32_t> out;
  out.reserve(class_sizes_[c]);
  for (std::uint32_t a = 0; a < order(); ++a)
    if (class_of_[a] == c)
      out.push_back(a);
  return out;
}

GroupPtr close_group(std::uint32_t degree, const std::vector<Permutation>& generators) {
  for (const auto& g : generators)
    if (g.size() != degree || !is_permutation(g))
      throw Error(ErrorKind::InvalidGenerator, "generator is not a permutation of " + std::to_string(degree) + " points");

  std::vector<std::uint32_t> flat;
  std::size_t count = 0;
  std::vector<std::uint32_t> slots(1024, kEmpty);
  auto row = [&](std::size_t e) { return flat.data() + e * degree; };
  auto insert = [&](const std::uint32_t* img) -> bool {
    if (2 * (count + 1) > slots.size()) {
      slots.assign(slots.size() * 2, kEmpty);
      for (std::size_t e = 0; e < count; ++e) {
        std::size_t s = hash_range(row(e), degree) & (slots.size() - 1);
        while (slots[s] != kEmpty)
          s = (s + 1) & (slots.size() - 1);
        slots[s] = static_cast<std::uint32_t>(e);
      }
    }
    std::size_t s = hash_range(img, degree) & (slots.size() - 1);
    while (slots[s] != kEmpty) {
      if (std::equal(img, img + degree, row(slots[s])))
        return false;
      s = (s + 1) & (slots.size() - 1);
    }
    if (count >= kMaxGroupOrder)
      throw Error(ErrorKind::GroupTooLarge, "group closure exceeds 2^20 elements");
    slots[s] = static_cast<std::uint32_t>(count);
    flat.insert(flat.end(), img, img + degree);
    ++count;
    return true;
  };

  const Permutation id = identity_permutation(degree);
  insert(id.data());
  std::vector<std::uint32_t> prod(degree);
  for (std::size_t e = 0; e < count; ++e) {
    for (const auto& g : generators) {
      const std::uint32_t* x = row(e);
      for (std::uint32_t i = 0; i < degree; ++i)
        prod[i] = g[x[i]];
      insert(prod.data());
    }
  }

  std::vector<std::uint32_t> order(count);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::lexicographical_compare(row(a), row(a) + degree, row(b), row(b) + degree);
  });
  std::vector<std::uint32_t> sorted;
  sorted.reserve(flat.size());
  for (auto e : order)
    sorted.insert(sorted.end(), row(e), row(e) + degree);
  flat.clear();
  flat.shrink_to_fit();

  auto backend = std::make_shared<PermBackend>(degree, std::move(sorted));
  std::vector<std::uint32_t> gens;
  for (const auto& g : generators) {
    const auto idx = static_cast<std::uint32_t>(backend->find(g));
    if (idx != 0 && std::find(gens.begin(), gens.end(), idx) == gens.end())
      gens.push_back(idx);
  }
  return std::make_shared<const GroupTable>(std::move(backend), std::move(gens));
}

GroupPtr group_from_elements(std::uint32_t degree, std::vector<std::uint32_t> images,
                             const std::vector<Permutation>& generators) {
  if (degree == 0 || images.size() % degree != 0 || images.empty())
    throw Error(ErrorKind::ParseError, "element list does not match the degree");
  const std::size_t n = images.size() / degree;
  if (n > kMaxGroupOrder)
    throw Error(ErrorKind::GroupTooLarge, "element list exceeds 2^20 elements");
  auto at = [&](std::size_t e) { return images.data() + e * degree; };
  for (std::uint32_t i = 0; i < degree; ++i)
    if (at(0)[i] != i)
      throw Error(ErrorKind::ParseError, "first element is not the identity");
  for (std::size_t e = 0; e < n; ++e) {
    Permutation row(at(e), at(e) + degree);
    if (!is_permutation(row))
      throw Error(ErrorKind::ParseError, "element " + std::to_string(e) + " is not a permutation");
    if (e > 0 && !std::lexicographical_compare(at(e - 1), at(e - 1) + degree, at(e), at(e) + degree))
      throw Error(ErrorKind::ParseError, "element list is not strictly sorted");
  }
  auto backend = std::make_shared<PermBackend>(degree, std::move(images));
  std::vector<std::uint32_t> gens;
  for (const auto& g : generators) {
    const std::int64_t idx = backend->find(g);
    if (idx < 0)
      throw Error(ErrorKind::ParseError, "generator missing from element list");
    if (idx != 0 && std::find(gens.begin(), gens.end(), static_cast<std::uint32_t>(idx)) == gens.end())
      gens.push_back(static_cast<std::uint32_t>(idx));
  }
  // Closed under right multiplication by the generators, hence equal to <gens>.
  Permutation prod(degree);
  for (std::uint32_t e = 0; e < n; ++e)
    for (const auto& g : generators) {
      const std::uint32_t* x = backend->row(e);
      for (std::uint32_t i = 0; i < degree; ++i)
        prod[i] = g[x[i]];
      if (backend->find(prod) < 0)
        throw Error(ErrorKind::ParseError, "element list is not closed under the generators");
    }
  return std::make_shared<const GroupTable>(std::move(backend), std::move(gens));
}

GroupPtr close_affine_group(std::uint32_t p, int dim, const std::vector<SmallMatrix>& linear_generators) {
  const FiniteField F = field_create(p, 1);
  std::uint64_t V = 1;
  for (int i = 0; i < dim; ++i)
    V *= p;
  const SmallMatrix id = SmallMatrix::identity(F, dim);
  std::vector<SmallMatrix> elems{id};
  std::unordered_set<SmallMatrix, SmallMatrixHash> seen{id};
  for (const auto& g : linear_generators)
    if (g.dim() != dim || !(g.field() == F) || !g.is_invertible())
      throw Error(ErrorKind::InvalidGenerator, "linear part must be an invertible matrix over GF(p)");
  for (std::size_t e = 0; e < elems.size(); ++e) {
    for (const auto& g : linear_generators) {
      SmallMatrix x = elems[e] * g;
      if (seen.insert(x).second) {
        elems.push_back(x);
        if (elems.size() * V > kMaxLargeGroupOrder)
          throw Error(ErrorKind::GroupTooLarge, "affine group exceeds the large-mode cap");
      }
    }
  }
  std::sort(elems.begin() + 1, elems.end());
  auto backend = std::make_shared<AffineBackend>(p, dim, elems);
  std::vector<std::uint32_t> gens;
  for (int k = 0; k < dim; ++k) {
    std::vector<std::uint32_t> v(dim, 0);
    v[k] = 1;
    gens.push_back(static_cast<std::uint32_t>(backend->index(v, id)));
  }
  for (const auto& g : linear_generators) {
    const auto idx = static_cast<std::uint32_t>(backend->index(std::vector<std::uint32_t>(dim, 0), g));
    if (idx != 0 && std::find(gens.begin(), gens.end(), idx) == gens.end())
      gens.push_back(idx);
  }
  return std::make_shared<const GroupTable>(std::move(backend), std::move(gens));
}

std::int64_t affine_index(const GroupTable& group, const std::vector<std::uint32_t>& v, const SmallMatrix& A) {
  auto ab = dynamic_cast<const AffineBackend*>(&group.backend());
  if (!ab)
    throw std::invalid_argument("not an affine group");
  return ab->index(v, A);
}

std::vector<std::uint32_t> subgroup_closure(const GroupTable& group, const std::vector<std::uint32_t>& gens,
                                            std::size_t cap) {
  const std::size_t expected = std::min<std::size_t>(cap == SIZE_MAX ? group.order() : cap, group.order());
  IndexSet seen(group.order(), expected);
  std::vector<std::uint32_t> elems{0};
  seen.insert(0);
  for (std::size_t e = 0; e < elems.size(); ++e) {
    for (auto g : gens) {
      const std::uint32_t y = group.mult(elems[e], g);
      if (seen.insert(y)) {
        elems.push_back(y);
        if (elems.size() > cap)
          return {};
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

bool is_subgroup(const GroupTable& group, const std::vector<std::uint32_t>& subset) {
  if (subset.empty() || group.order() % subset.size() != 0)
    return false;
  std::vector<char> member(group.order(), 0);
  for (auto x : subset) {
    if (x >= group.order() || member[x])
      return false;
    member[x] = 1;
  }
  if (!member[0])
    return false;
  std::vector<std::uint32_t> gens;
  std::vector<std::uint32_t> cur{0};
  std::vector<char> in_cur(group.order(), 0);
  in_cur[0] = 1;
  for (auto h : subset) {
    if (in_cur[h])
      continue;
    gens.push_back(h);
    cur = subgroup_closure(group, gens, subset.size());
    if (cur.empty())
      return false;
    for (auto x : cur) {
      if (!member[x])
        return false;
      in_cur[x] = 1;
    }
  }
  return cur.size() == subset.size();
}

std::vector<std::uint32_t> point_stabilizer(const GroupTable& group, std::uint32_t point) {
  if (point >= group.degree())
    throw std::out_of_range("point out of range");
  std::vector<std::uint32_t> out;
  for (std::uint32_t a = 0; a < group.order(); ++a)
    if (group.image(a, point) == point)
      out.push_back(a);
  return out;
}

bool is_transitive(const GroupTable& group) {
  std::vector<char> seen(group.degree(), 0);
  std::vector<std::uint32_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::uint32_t x = stack.back();
    stack.pop_back();
    for (auto g : group.generators()) {
      const std::uint32_t y = group.image(g, x);
      if (!seen[y]) {
        seen[y] = 1;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count == group.degree();
}

TransitiveAction::TransitiveAction(GroupPtr group, std::vector<std::uint32_t> stabilizer)
    : group_(std::move(group)), stabilizer_(std::move(stabilizer)) {
  std::sort(stabilizer_.begin(), stabilizer_.end());
  if (!is_subgroup(*group_, stabilizer_))
    throw Error(ErrorKind::NotASubgroup, "stabilizer set is not a subgroup");
  const std::size_t n = group_->order();
  coset_of_.assign(n, kEmpty);
  coset_reps_.reserve(n / stabilizer_.size());
  for (std::uint32_t x = 0; x < n; ++x) {
    if (coset_of_[x] != kEmpty)
      continue;
    const std::uint32_t c = static_cast<std::uint32_t>(coset_reps_.size());
    coset_reps_.push_back(x);
    for (auto h : stabilizer_)
      coset_of_[group_->mult(h, x)] = c;
  }
}

bool TransitiveAction::fixes_some_point(std::uint32_t element) const {
  for (std::uint32_t p = 0; p < omega_size(); ++p)
    if (point_image(element, p) == p)
      return true;
  return false;
}

TransitiveAction coset_action(GroupPtr group, std::vector<std::uint32_t> subgroup) {
  return TransitiveAction(std::move(group), std::move(subgroup));
}

namespace shapes {

bool any(const GroupTable&, const std::vector<std::uint32_t>&) { return true; }

bool cyclic(const GroupTable& g, const std::vector<std::uint32_t>& h) {
  for (auto x : h)
    if (g.element_order(x) == h.size())
      return true;
  return false;
}

bool abelian(const GroupTable& g, const std::vector<std::uint32_t>& h) {
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = i + 1; j < h.size(); ++j)
      if (g.mult(h[i], h[j]) != g.mult(h[j], h[i]))
        return false;
  return true;
}

bool dihedral(const GroupTable& g, const std::vector<std::uint32_t>& h) {
  const std::size_t s = h.size();
  if (s % 2 != 0)
    return false;
  if (s == 2)
    return true;
  if (s == 4) {
    std::size_t inv = 0;
    for (auto x : h)
      inv += g.element_order(x) == 2;
    return inv == 3;
  }
  const std::size_t m = s / 2;
  for (auto c : h) {
    if (g.element_order(c) != m)
      continue;
    std::vector<std::uint32_t> rot;
    for (std::uint32_t x = c;; x = g.mult(x, c)) {
      rot.push_back(x);
      if (x == 0)
        break;
    }
    std::sort(rot.begin(), rot.end());
    bool ok = true;
    for (auto x : h)
      if (!std::binary_search(rot.begin(), rot.end(), x) && g.element_order(x) != 2) {
        ok = false;
        break;
      }
    if (ok)
      return true;
  }
  return false;
}

bool frobenius(const GroupTable& g, const std::vector<std::uint32_t>& h) {
  const std::size_t s = h.size();
  for (auto n : prime_factors(s)) {
    if (n == s)
      continue;
    std::vector<std::uint32_t> of_order_n;
    for (auto x : h)
      if (g.element_order(x) == n)
        of_order_n.push_back(x);
    if (of_order_n.size() != n - 1)
      continue;
    const std::uint32_t z = of_order_n.front();
    std::size_t centralizer = 0;
    for (auto x : h)
      centralizer += g.mult(x, z) == g.mult(z, x);
    if (centralizer != n)
      continue;
    for (auto x : h)
      if (g.element_order(x) == s / n)
        return true;
  }
  return false;
}

} // namespace shapes

SubgroupPredicate shape_predicate(const std::string& name) {
  if (name == "any")
    return shapes::any;
  if (name == "cyclic")
    return shapes::cyclic;
  if (name == "abelian")
    return shapes::abelian;
  if (name == "dihedral")
    return shapes::dihedral;
  if (name == "frobenius")
    return shapes::frobenius;
  throw Error(ErrorKind::ParseError, "unknown subgroup shape '" + name + "'");
}

std::vector<std::uint32_t> find_subgroup(const GroupTable& group, std::size_t order, const SubgroupPredicate& pred) {
  const std::size_t n = group.order();
  if (order == 0 || n % order != 0)
    throw Error(ErrorKind::NoSuchSubgroup, "subgroup order does not divide the group order");
  if (order == n) {
    std::vector<std::uint32_t> all(n);
    std::iota(all.begin(), all.end(), 0u);
    if (pred(group, all))
      return all;
    throw Error(ErrorKind::NoSuchSubgroup, "whole group fails the predicate");
  }
  std::vector<std::uint32_t> cand;
  for (std::uint32_t a = 0; a < n; ++a)
    if (order % group.element_order(a) == 0)
      cand.push_back(a);

  std::unordered_set<std::uint64_t> tried;
  auto attempt = [&](const std::vector<std::uint32_t>& gens) -> std::vector<std::uint32_t> {
    auto h = subgroup_closure(group, gens, order);
    if (h.size() != order)
      return {};
    if (!tried.insert(hash_range(h.data(), h.size())).second)
      return {};
    return pred(group, h) ? h : std::vector<std::uint32_t>{};
  };

  for (auto a : cand)
    if (group.element_order(a) == order)
      if (auto h = attempt({a}); !h.empty())
        return h;

  for (std::size_t i = 0; i < cand.size(); ++i) {
    const std::uint32_t a = cand[i];
    if (a == 0)
      continue;
    const auto cyc = subgroup_closure(group, {a});
    for (std::size_t j = i + 1; j < cand.size(); ++j) {
      const std::uint32_t b = cand[j];
      if (std::binary_search(cyc.begin(), cyc.end(), b))
        continue;
      if (auto h = attempt({a, b}); !h.empty())
        return h;
    }
  }

  // Triples: extend each proper two-generated subgroup by a further element.
  std::set<std::vector<std::uint32_t>> pairs;
  for (std::size_t i = 0; i < cand.size() && cand.size() <= 2000; ++i)
    for (std::size_t j = i + 1; j < cand.size(); ++j) {
      auto k = subgroup_closure(group, {cand[i], cand[j]}, order);
      if (!k.empty() && k.size() < order && order % k.size() == 0)
        if (pairs.insert({cand[i], cand[j]}).second) {
          for (auto c : cand)
            if (!std::binary_search(k.begin(), k.end(), c))
              if (auto h = attempt({cand[i], cand[j], c}); !h.empty())
                return h;
        }
    }
  throw Error(ErrorKind::NoSuchSubgroup, "no subgroup of order " + std::to_string(order) + " with the requested shape");
}

std::vector<std::vector<std::uint32_t>> subgroup_conjugacy_classes(const GroupTable& group, std::size_t order) {
  const std::size_t n = group.order();
  if (n > 10000)
    throw Error(ErrorKind::GroupTooLarge, "subgroup class enumeration needs |G| <= 10^4");
  if (order == 0 || n % order != 0)
    return {};
  std::vector<std::uint32_t> cand;
  for (std::uint32_t a = 0; a < n; ++a)
    if (order % group.element_order(a) == 0)
      cand.push_back(a);

  // subgroup (sorted set) -> generators
  std::map<std::vector<std::uint32_t>, std::vector<std::uint32_t>> level, found;
  for (auto a : cand) {
    auto h = subgroup_closure(group, {a});
    level.emplace(h, std::vector<std::uint32_t>{a});
  }
  for (int depth = 1; depth <= 3; ++depth) {
    std::map<std::vector<std::uint32_t>, std::vector<std::uint32_t>> next;
    for (const auto& [h, gens] : level) {
      if (h.size() == order) {
        found.emplace(h, gens);
        continue;
      }
      if (depth == 3)
        continue;
      for (auto c : cand) {
        if (std::binary_search(h.begin(), h.end(), c))
          continue;
        auto g2 = gens;
        g2.push_back(c);
        auto k = subgroup_closure(group, g2, order);
        if (!k.empty() && order % k.size() == 0)
          next.emplace(std::move(k), std::move(g2));
      }
    }
    level.swap(next);
  }

  std::set<std::vector<std::uint32_t>> canon;
  std::set<std::vector<std::uint32_t>> assigned;
  for (const auto& [h, gens] : found) {
    if (assigned.count(h))
      continue;
    std::set<std::vector<std::uint32_t>> orbit{h};
    std::vector<std::vector<std::uint32_t>> stack{h};
    while (!stack.empty()) {
      auto k = stack.back();
      stack.pop_back();
      for (auto g : group.generators()) {
        std::vector<std::uint32_t> c;
        c.reserve(k.size());
        for (auto x : k)
          c.push_back(group.conjugate(x, g));
        std::sort(c.begin(), c.end());
        if (orbit.insert(c).second)
          stack.push_back(std::move(c));
      }
    }
    assigned.insert(orbit.begin(), orbit.end());
    canon.insert(*orbit.begin());
  }
  return {canon.begin(), canon.end()};
}

GroupFile parse_group_file(const std::string& text) {
  GroupFile out;
  std::istringstream in(text);
  std::string line;
  bool have_degree = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word))
      continue;
    auto fail = [&](const std::string& why) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": " + why);
    };
    if (!have_degree) {
      long long d = -1;
      if (word != "degree" || !(ls >> d) || d <= 0 || d > 0xffffff)
        fail("expected 'degree <n>'");
      std::string extra;
      if (ls >> extra)
        fail("trailing tokens after degree");
      out.degree = static_cast<std::uint32_t>(d);
      have_degree = true;
      continue;
    }
    if (word != "gen")
      fail("expected 'gen'");
    Permutation g;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(tok, &used);
      } catch (const std::exception&) {
        fail("bad integer '" + tok + "'");
      }
      if (used != tok.size() || tok[0] == '-')
        fail("bad integer '" + tok + "'");
      g.push_back(static_cast<std::uint32_t>(v));
    }
    if (g.size() != out.degree)
      fail("generator has " + std::to_string(g.size()) + " images, expected " + std::to_string(out.degree));
    out.generators.push_back(std::move(g));
  }
  if (!have_degree)
    throw Error(ErrorKind::ParseError, "missing degree line");
  return out;
}

GroupFile read_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::ParseError, "cannot open group file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_group_file(ss.str());
}

std::string format_group_file(const GroupFile& file, const std::string& comment) {
  std::ostringstream os;
  if (!comment.empty()) {
    std::istringstream cs(comment);
    std::string line;
    while (std::getline(cs, line))
      os << "# " << line << "\n";
  }
  os << "degree " << file.degree << "\n";
  for (const auto& g : file.generators) {
    os << "gen";
    for (auto v : g)
      os << " " << v;
    os << "\n";
  }
  return os.str();
}

GroupFile group_file_of(const GroupTable& group) {
  GroupFile f;
  f.degree = group.degree();
  for (auto g : group.generators())
    f.generators.push_back(group.permutation(g));
  return f;
}

} // namespace ekr
