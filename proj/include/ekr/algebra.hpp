#pragma once

// Exact arithmetic in GF(p^f) and small dense matrices over it.
//
// Field elements are encoded as integers: the coefficient vector
// (c_0, ..., c_{f-1}) of the polynomial-basis representation maps to
// c_0 + c_1 p + ... + c_{f-1} p^{f-1}. Integer order on this encoding is the
// element order used by every "lex-smallest element" rule in the library.

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ekr {

inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20;

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

class FieldElement;

class FiniteField {
public:
  std::uint32_t characteristic() const { return tables_->p; }
  std::uint32_t degree() const { return tables_->f; }
  std::uint32_t order() const { return tables_->q; }
  // Monic modulus, low-degree coefficient first (length degree() + 1).
  const std::vector<std::uint32_t>& modulus() const { return tables_->modulus; }
  std::string modulus_string() const;

  // Raw arithmetic on encoded values.
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  // Multiplicative order of a non-zero element.
  std::uint64_t mult_order(std::uint32_t a) const;
  // Encoded value of the constant polynomial c (c reduced mod p).
  std::uint32_t from_int(std::int64_t c) const;
  std::vector<std::uint32_t> coefficients(std::uint32_t a) const;

  std::uint32_t primitive_value() const { return tables_->generator; }
  std::uint32_t log(std::uint32_t a) const { return tables_->log[a]; }
  std::uint32_t exp(std::uint64_t k) const { return tables_->exp[k % (tables_->q - 1)]; }

  FieldElement element(std::uint32_t value) const;
  FieldElement zero() const;
  FieldElement one() const;

  bool operator==(const FiniteField& other) const;

private:
  friend FiniteField field_create(std::uint32_t p, std::uint32_t f);

  struct Tables {
    std::uint32_t p = 0;
    std::uint32_t f = 0;
    std::uint32_t q = 0;
    std::vector<std::uint32_t> modulus;
    std::uint32_t generator = 0;
    std::vector<std::uint32_t> exp;  // exp[k] = g^k, k in [0, q-1)
    std::vector<std::uint32_t> log;  // log[a] for a != 0
    std::vector<std::uint32_t> zech; // zech[k] = log(1 + g^k), kZechZero if zero
    std::uint32_t minus_one_log = 0;
  };
  static constexpr std::uint32_t kZechZero = 0xffffffffu;

  explicit FiniteField(std::shared_ptr<const Tables> tables) : tables_(std::move(tables)) {}

  std::shared_ptr<const Tables> tables_;
};

// Field whose monic irreducible modulus has the smallest encoded value of its
// non-leading coefficients (GF(8): x^3+x+1, GF(9): x^2+1).
FiniteField field_create(std::uint32_t p, std::uint32_t f);

class FieldElement {
public:
  FieldElement(FiniteField field, std::uint32_t value);

  const FiniteField& field() const { return field_; }
  std::uint32_t value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement inverse() const;
  FieldElement pow(std::uint64_t e) const;

  bool operator==(const FieldElement& o) const;
  std::string to_string() const;

private:
  void require_same_field(const FieldElement& o) const;

  FiniteField field_;
  std::uint32_t value_;
};

FieldElement primitive_element(const FiniteField& field);

// x -> x^(2^((e+1)/2)) on GF(2^e), e odd. Applying it twice squares.
FieldElement frobenius_theta(const FieldElement& x);
std::uint32_t frobenius_theta(const FiniteField& field, std::uint32_t x);

// n x n matrix over a finite field, n <= 4. Entries are stored as encoded
// values; the field travels with the matrix.
class SmallMatrix {
public:
  static constexpr int kMaxDim = 4;

  SmallMatrix(FiniteField field, int n);
  static SmallMatrix identity(FiniteField field, int n);
  static SmallMatrix from_values(FiniteField field, int n, const std::vector<std::uint32_t>& row_major);

  int dim() const { return n_; }
  const FiniteField& field() const { return field_; }
  std::uint32_t raw(int i, int j) const { return entries_[i * kMaxDim + j]; }
  void set_raw(int i, int j, std::uint32_t v) { entries_[i * kMaxDim + j] = v; }
  FieldElement at(int i, int j) const { return field_.element(raw(i, j)); }
  void set(int i, int j, const FieldElement& v);

  SmallMatrix operator*(const SmallMatrix& o) const;
  bool operator==(const SmallMatrix& o) const;
  // Lexicographic on row-major entries; only meaningful within one field.
  std::strong_ordering operator<=>(const SmallMatrix& o) const;

  std::uint32_t determinant() const;
  bool is_invertible() const { return determinant() != 0; }
  // Throws std::domain_error when singular.
  SmallMatrix inverse() const;
  SmallMatrix pow(std::uint64_t e) const;
  std::uint64_t order() const;
  std::size_t hash() const;
  std::string to_string() const;

private:
  FiniteField field_;
  int n_;
  std::array<std::uint32_t, kMaxDim * kMaxDim> entries_{};
};

struct SmallMatrixHash {
  std::size_t operator()(const SmallMatrix& m) const { return m.hash(); }
};

} // namespace ekr
