#include "ekr/algebra.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "ekr/error.hpp"

namespace ekr {

bool is_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0)
        n /= d;
    }
  }
  if (n > 1)
    out.push_back(n);
  return out;
}

namespace {

using Poly = std::vector<std::uint32_t>; // low degree first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0)
    a.pop_back();
}

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1)
      result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

// Remainder of a modulo a monic-or-not non-zero polynomial m.
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = inv_mod_p(m.back(), p);
  while (a.size() > dm && !a.empty()) {
    const std::size_t shift = a.size() - 1 - dm;
    const std::uint64_t c = std::uint64_t{a.back()} * lead_inv % p;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = c * m[i] % p;
      a[i + shift] = static_cast<std::uint32_t>((a[i + shift] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

bool is_irreducible(const Poly& m, std::uint32_t p) {
  const std::size_t f = m.size() - 1;
  // Trial division by every monic polynomial of degree 1..f/2.
  for (std::size_t d = 1; d <= f / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i)
      count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly divisor(d + 1, 0);
      std::uint64_t v = idx;
      for (std::size_t i = 0; i < d; ++i) {
        divisor[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      divisor[d] = 1;
      if (poly_mod(m, divisor, p).empty())
        return false;
    }
  }
  return true;
}

struct SlowArith {
  std::uint32_t p, f;
  Poly modulus;

  Poly decode(std::uint32_t a) const {
    Poly c(f, 0);
    for (std::uint32_t i = 0; i < f; ++i) {
      c[i] = a % p;
      a /= p;
    }
    return c;
  }
  std::uint32_t encode(const Poly& c) const {
    std::uint32_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;)
      v = v * p + (i < f ? c[i] : 0);
    return v;
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t v = 0, scale = 1;
    for (std::uint32_t i = 0; i < f; ++i) {
      v += ((a % p + b % p) % p) * scale;
      a /= p;
      b /= p;
      scale *= p;
    }
    return v;
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    const Poly x = decode(a), y = decode(b);
    Poly prod(2 * f, 0);
    for (std::uint32_t i = 0; i < f; ++i)
      for (std::uint32_t j = 0; j < f; ++j)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{x[i]} * y[j]) % p);
    return encode(poly_mod(prod, modulus, p));
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t result = 1, base = a;
    while (e) {
      if (e & 1)
        result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }
};

} // namespace

FiniteField field_create(std::uint32_t p, std::uint32_t f) {
  if (!is_prime(p))
    throw Error(ErrorKind::CompositeCharacteristic, "characteristic " + std::to_string(p) + " is not prime");
  if (f == 0)
    throw Error(ErrorKind::FieldTooLarge, "extension degree must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < f; ++i) {
    q *= p;
    if (q > kMaxFieldOrder)
      throw Error(ErrorKind::FieldTooLarge, "field order exceeds 2^20");
  }

  auto t = std::make_shared<FiniteField::Tables>();
  t->p = p;
  t->f = f;
  t->q = static_cast<std::uint32_t>(q);

  // Smallest monic irreducible under the integer encoding of its lower
  // coefficients, i.e. compared from the highest non-leading degree down.
  bool found = false;
  for (std::uint64_t idx = 0; idx < q && !found; ++idx) {
    Poly m(f + 1, 0);
    std::uint64_t v = idx;
    for (std::uint32_t i = 0; i < f; ++i) {
      m[i] = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
    m[f] = 1;
    if (is_irreducible(m, p)) {
      t->modulus = m;
      found = true;
    }
  }
  if (!found)
    throw std::logic_error("no irreducible polynomial found");

  SlowArith slow{p, f, t->modulus};
  const std::uint64_t units = q - 1;
  if (q == 2) {
    t->generator = 1;
  } else {
    const auto primes = prime_factors(units);
    for (std::uint32_t a = 1; a < q; ++a) {
      bool primitive = true;
      for (auto l : primes)
        if (slow.pow(a, units / l) == 1) {
          primitive = false;
          break;
        }
      if (primitive) {
        t->generator = a;
        break;
      }
    }
  }

  t->exp.assign(units, 0);
  t->log.assign(q, 0);
  std::uint32_t cur = 1;
  for (std::uint64_t k = 0; k < units; ++k) {
    t->exp[k] = cur;
    t->log[cur] = static_cast<std::uint32_t>(k);
    cur = slow.mul(cur, t->generator);
  }
  t->zech.assign(units, FiniteField::kZechZero);
  for (std::uint64_t k = 0; k < units; ++k) {
    const std::uint32_t s = slow.add(1, t->exp[k]);
    t->zech[k] = s == 0 ? FiniteField::kZechZero : t->log[s];
  }
  t->minus_one_log = p == 2 ? 0 : static_cast<std::uint32_t>(units / 2);
  return FiniteField(std::move(t));
}

std::string FiniteField::modulus_string() const {
  std::ostringstream os;
  bool first = true;
  const auto& m = tables_->modulus;
  for (std::size_t i = m.size(); i-- > 0;) {
    if (m[i] == 0)
      continue;
    if (!first)
      os << "+";
    first = false;
    if (m[i] != 1 || i == 0)
      os << m[i];
    if (i >= 1)
      os << "x";
    if (i >= 2)
      os << "^" << i;
  }
  return os.str();
}

std::uint32_t FiniteField::add(std::uint32_t a, std::uint32_t b) const {
  if (tables_->p == 2)
    return a ^ b;
  if (a == 0)
    return b;
  if (b == 0)
    return a;
  const std::uint32_t n = tables_->q - 1;
  const std::uint32_t la = tables_->log[a], lb = tables_->log[b];
  const std::uint32_t z = tables_->zech[(lb + n - la) % n];
  if (z == kZechZero)
    return 0;
  return tables_->exp[(std::uint64_t{la} + z) % n];
}

std::uint32_t FiniteField::neg(std::uint32_t a) const {
  if (a == 0 || tables_->p == 2)
    return a;
  const std::uint32_t n = tables_->q - 1;
  return tables_->exp[(std::uint64_t{tables_->log[a]} + tables_->minus_one_log) % n];
}

std::uint32_t FiniteField::mul(std::uint32_t a, std::uint32_t b) const {
  if (a == 0 || b == 0)
    return 0;
  const std::uint32_t n = tables_->q - 1;
  return tables_->exp[(std::uint64_t{tables_->log[a]} + tables_->log[b]) % n];
}

std::uint32_t FiniteField::inv(std::uint32_t a) const {
  if (a == 0)
    throw std::domain_error("inverse of zero");
  const std::uint32_t n = tables_->q - 1;
  return tables_->exp[(n - tables_->log[a]) % n];
}

std::uint32_t FiniteField::pow(std::uint32_t a, std::uint64_t e) const {
  if (e == 0)
    return 1;
  if (a == 0)
    return 0;
  const std::uint64_t n = tables_->q - 1;
  return tables_->exp[(tables_->log[a] * (e % n)) % n];
}

std::uint64_t FiniteField::mult_order(std::uint32_t a) const {
  if (a == 0)
    throw std::domain_error("order of zero");
  const std::uint64_t n = tables_->q - 1;
  std::uint64_t k = tables_->log[a];
  // order = n / gcd(n, k)
  std::uint64_t x = n, y = k;
  while (y) {
    const std::uint64_t r = x % y;
    x = y;
    y = r;
  }
  return n / x;
}

std::uint32_t FiniteField::from_int(std::int64_t c) const {
  const std::int64_t p = tables_->p;
  return static_cast<std::uint32_t>(((c % p) + p) % p);
}

std::vector<std::uint32_t> FiniteField::coefficients(std::uint32_t a) const {
  std::vector<std::uint32_t> c(tables_->f, 0);
  for (std::uint32_t i = 0; i < tables_->f; ++i) {
    c[i] = a % tables_->p;
    a /= tables_->p;
  }
  return c;
}

FieldElement FiniteField::element(std::uint32_t value) const {
  return FieldElement(*this, value);
}
FieldElement FiniteField::zero() const { return FieldElement(*this, 0); }
FieldElement FiniteField::one() const { return FieldElement(*this, 1); }

bool FiniteField::operator==(const FiniteField& other) const {
  return tables_ == other.tables_ ||
         (tables_->p == other.tables_->p && tables_->f == other.tables_->f &&
          tables_->modulus == other.tables_->modulus);
}

FieldElement::FieldElement(FiniteField field, std::uint32_t value)
    : field_(std::move(field)), value_(value) {
  if (value_ >= field_.order())
    throw std::out_of_range("field element value out of range");
}

void FieldElement::require_same_field(const FieldElement& o) const {
  if (!(field_ == o.field_))
    throw std::invalid_argument("arithmetic across different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same_field(o);
  return {field_, field_.add(value_, o.value_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  require_same_field(o);
  return {field_, field_.sub(value_, o.value_)};
}
FieldElement FieldElement::operator-() const { return {field_, field_.neg(value_)}; }
FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same_field(o);
  return {field_, field_.mul(value_, o.value_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  require_same_field(o);
  return {field_, field_.div(value_, o.value_)};
}
FieldElement FieldElement::inverse() const { return {field_, field_.inv(value_)}; }
FieldElement FieldElement::pow(std::uint64_t e) const { return {field_, field_.pow(value_, e)}; }

bool FieldElement::operator==(const FieldElement& o) const {
  return field_ == o.field_ && value_ == o.value_;
}

std::string FieldElement::to_string() const {
  const auto c = field_.coefficients(value_);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0)
      continue;
    if (!first)
      os << "+";
    first = false;
    if (c[i] != 1 || i == 0)
      os << c[i];
    if (i >= 1)
      os << "x";
    if (i >= 2)
      os << "^" << i;
  }
  return first ? "0" : os.str();
}

FieldElement primitive_element(const FiniteField& field) {
  return field.element(field.primitive_value());
}

std::uint32_t frobenius_theta(const FiniteField& field, std::uint32_t x) {
  const std::uint32_t e = field.degree();
  if (field.characteristic() != 2 || e % 2 == 0)
    throw Error(ErrorKind::ThetaUndefined, "theta needs GF(2^e) with e odd");
  return field.pow(x, std::uint64_t{1} << ((e + 1) / 2));
}

FieldElement frobenius_theta(const FieldElement& x) {
  return x.field().element(frobenius_theta(x.field(), x.value()));
}

SmallMatrix::SmallMatrix(FiniteField field, int n) : field_(std::move(field)), n_(n) {
  if (n < 1 || n > kMaxDim)
    throw std::invalid_argument("matrix dimension must be in [1, 4]");
}

SmallMatrix SmallMatrix::identity(FiniteField field, int n) {
  SmallMatrix m(std::move(field), n);
  for (int i = 0; i < n; ++i)
    m.set_raw(i, i, 1);
  return m;
}

SmallMatrix SmallMatrix::from_values(FiniteField field, int n, const std::vector<std::uint32_t>& row_major) {
  if (row_major.size() != static_cast<std::size_t>(n * n))
    throw std::invalid_argument("wrong number of matrix entries");
  SmallMatrix m(std::move(field), n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (row_major[i * n + j] >= m.field_.order())
        throw std::out_of_range("matrix entry out of range");
      m.set_raw(i, j, row_major[i * n + j]);
    }
  return m;
}

void SmallMatrix::set(int i, int j, const FieldElement& v) {
  if (!(v.field() == field_))
    throw std::invalid_argument("entry from a different field");
  set_raw(i, j, v.value());
}

SmallMatrix SmallMatrix::operator*(const SmallMatrix& o) const {
  if (n_ != o.n_ || !(field_ == o.field_))
    throw std::invalid_argument("incompatible matrices");
  SmallMatrix r(field_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      std::uint32_t acc = 0;
      for (int k = 0; k < n_; ++k)
        acc = field_.add(acc, field_.mul(raw(i, k), o.raw(k, j)));
      r.set_raw(i, j, acc);
    }
  return r;
}

bool SmallMatrix::operator==(const SmallMatrix& o) const {
  return n_ == o.n_ && field_ == o.field_ && entries_ == o.entries_;
}

std::strong_ordering SmallMatrix::operator<=>(const SmallMatrix& o) const {
  if (auto c = n_ <=> o.n_; c != 0)
    return c;
  return entries_ <=> o.entries_;
}

std::uint32_t SmallMatrix::determinant() const {
  // Gaussian elimination on a copy.
  std::array<std::uint32_t, kMaxDim * kMaxDim> a = entries_;
  auto at = [&](int i, int j) -> std::uint32_t& { return a[i * kMaxDim + j]; };
  std::uint32_t det = 1;
  for (int c = 0; c < n_; ++c) {
    int pivot = -1;
    for (int r = c; r < n_; ++r)
      if (at(r, c) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0)
      return 0;
    if (pivot != c) {
      for (int j = 0; j < n_; ++j)
        std::swap(at(pivot, j), at(c, j));
      det = field_.neg(det);
    }
    det = field_.mul(det, at(c, c));
    const std::uint32_t inv = field_.inv(at(c, c));
    for (int r = c + 1; r < n_; ++r) {
      const std::uint32_t factor = field_.mul(at(r, c), inv);
      if (factor == 0)
        continue;
      for (int j = c; j < n_; ++j)
        at(r, j) = field_.sub(at(r, j), field_.mul(factor, at(c, j)));
    }
  }
  return det;
}

SmallMatrix SmallMatrix::inverse() const {
  SmallMatrix left = *this;
  SmallMatrix right = identity(field_, n_);
  for (int c = 0; c < n_; ++c) {
    int pivot = -1;
    for (int r = c; r < n_; ++r)
      if (left.raw(r, c) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0)
      throw std::domain_error("singular matrix");
    if (pivot != c)
      for (int j = 0; j < n_; ++j) {
        std::uint32_t t = left.raw(pivot, j);
        left.set_raw(pivot, j, left.raw(c, j));
        left.set_raw(c, j, t);
        t = right.raw(pivot, j);
        right.set_raw(pivot, j, right.raw(c, j));
        right.set_raw(c, j, t);
      }
    const std::uint32_t inv = field_.inv(left.raw(c, c));
    for (int j = 0; j < n_; ++j) {
      left.set_raw(c, j, field_.mul(left.raw(c, j), inv));
      right.set_raw(c, j, field_.mul(right.raw(c, j), inv));
    }
    for (int r = 0; r < n_; ++r) {
      if (r == c || left.raw(r, c) == 0)
        continue;
      const std::uint32_t factor = left.raw(r, c);
      for (int j = 0; j < n_; ++j) {
        left.set_raw(r, j, field_.sub(left.raw(r, j), field_.mul(factor, left.raw(c, j))));
        right.set_raw(r, j, field_.sub(right.raw(r, j), field_.mul(factor, right.raw(c, j))));
      }
    }
  }
  return right;
}

SmallMatrix SmallMatrix::pow(std::uint64_t e) const {
  SmallMatrix result = identity(field_, n_), base = *this;
  while (e) {
    if (e & 1)
      result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

std::uint64_t SmallMatrix::order() const {
  if (!is_invertible())
    throw std::domain_error("order of a singular matrix");
  const SmallMatrix id = identity(field_, n_);
  SmallMatrix cur = *this;
  std::uint64_t k = 1;
  while (!(cur == id)) {
    cur = cur * *this;
    ++k;
  }
  return k;
}

std::size_t SmallMatrix::hash() const {
  std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      h ^= raw(i, j);
      h *= 1099511628211ull;
    }
  return static_cast<std::size_t>(h);
}

std::string SmallMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < n_; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < n_; ++j)
      os << (j ? " " : "") << at(i, j).to_string();
  }
  os << "]";
  return os.str();
}

} // namespace ekr
