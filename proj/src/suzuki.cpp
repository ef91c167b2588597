#include "ekr/suzuki.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "ekr/error.hpp"

namespace ekr {

namespace {

constexpr unsigned kMaxSzExponent = 11;

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0)
    r *= b;
  return r;
}

// Orbit representatives of the nonzero residues mod n under x -> -x, x -> qx.
std::vector<std::int64_t> torus_reps(std::int64_t n, std::int64_t q) {
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<std::int64_t> reps;
  for (std::int64_t s = 1; s < n; ++s) {
    if (seen[s])
      continue;
    reps.push_back(s);
    std::int64_t x = s;
    for (int k = 0; k < 4; ++k) {
      seen[x] = 1;
      seen[n - x] = 1;
      x = x * q % n;
    }
  }
  return reps;
}

bool divides(std::int64_t a, std::int64_t b) { return a != 0 && b % a == 0; }

} // namespace

SzParameters sz_parameters(unsigned e) {
  if (e < 3 || e % 2 == 0 || e > kMaxSzExponent)
    throw Error(ErrorKind::InadmissibleParameters,
                "Suzuki exponent must be odd with 3 <= e <= " + std::to_string(kMaxSzExponent));
  SzParameters p;
  p.e = e;
  p.q = std::int64_t{1} << e;
  p.r = std::int64_t{1} << ((e + 1) / 2);
  const std::int64_t q = p.q, r = p.r;
  p.group_order = q * q * (q - 1) * (q * q + 1);
  p.a0 = q - 1;
  p.a1 = q + r + 1;
  p.a2 = q - r + 1;
  p.a0_classes = q / 2 - 1;
  p.a1_classes = (q + r) / 4;
  p.a2_classes = (q - r) / 4;
  p.num_classes = 4 + p.a0_classes + p.a1_classes + p.a2_classes;
  p.involution_class_size = (q - 1) * (q * q + 1);
  p.order4_union_size = q * (q - 1) * (q * q + 1);
  p.character_degrees.push_back(1);
  p.character_degrees.push_back(q * q);
  for (std::int64_t i = 0; i < p.a0_classes; ++i)
    p.character_degrees.push_back(q * q + 1);
  for (std::int64_t j = 0; j < p.a1_classes; ++j)
    p.character_degrees.push_back((q - r + 1) * (q - 1));
  for (std::int64_t k = 0; k < p.a2_classes; ++k)
    p.character_degrees.push_back((q + r + 1) * (q - 1));
  p.character_degrees.push_back(r * (q - 1) / 2);
  p.character_degrees.push_back(r * (q - 1) / 2);
  return p;
}

SzParameters sz_parameters_for_q(std::int64_t q) {
  if (q < 2 || (q & (q - 1)) != 0)
    throw Error(ErrorKind::InadmissibleParameters, "q must be a power of 2");
  return sz_parameters(static_cast<unsigned>(std::countr_zero(static_cast<std::uint64_t>(q))));
}

const char* to_string(SzFamily f) {
  switch (f) {
  case SzFamily::One:
    return "1";
  case SzFamily::X:
    return "X";
  case SzFamily::Xi:
    return "X_i";
  case SzFamily::Yj:
    return "Y_j";
  case SzFamily::Zk:
    return "Z_k";
  case SzFamily::W:
    return "W_l";
  }
  return "?";
}

SzCharacterTable::SzCharacterTable(const SzParameters& params) : params_(params) {
  const std::int64_t q = params.q, r = params.r, n = params.group_order;
  classes_.push_back({SzClassKind::Identity, 0, 1, 1, n});
  classes_.push_back({SzClassKind::Involution, 0, 2, params.involution_class_size, q * q});
  classes_.push_back({SzClassKind::Rho, 0, 4, params.order4_union_size / 2, 2 * q});
  classes_.push_back({SzClassKind::RhoInverse, 0, 4, params.order4_union_size / 2, 2 * q});
  for (std::int64_t s = 1; s <= params.a0_classes; ++s)
    classes_.push_back({SzClassKind::A0, s, params.a0 / std::gcd(s, params.a0), n / params.a0, params.a0});
  const auto reps1 = torus_reps(params.a1, q), reps2 = torus_reps(params.a2, q);
  for (auto s : reps1)
    classes_.push_back({SzClassKind::A1, s, params.a1 / std::gcd(s, params.a1), n / params.a1, params.a1});
  for (auto s : reps2)
    classes_.push_back({SzClassKind::A2, s, params.a2 / std::gcd(s, params.a2), n / params.a2, params.a2});

  chars_.push_back({SzFamily::One, 0, 1});
  chars_.push_back({SzFamily::X, 0, q * q});
  for (std::int64_t i = 1; i <= params.a0_classes; ++i)
    chars_.push_back({SzFamily::Xi, i, q * q + 1});
  for (auto j : reps1)
    chars_.push_back({SzFamily::Yj, j, (q - r + 1) * (q - 1)});
  for (auto k : reps2)
    chars_.push_back({SzFamily::Zk, k, (q + r + 1) * (q - 1)});
  chars_.push_back({SzFamily::W, 1, r * (q - 1) / 2});
  chars_.push_back({SzFamily::W, 2, r * (q - 1) / 2});

  const double two_pi = 2 * std::numbers::pi;
  auto eps2 = [&](std::int64_t m, std::int64_t x) {
    return 2 * std::cos(two_pi * static_cast<double>(x % m) / static_cast<double>(m));
  };
  auto eps4 = [&](std::int64_t m, std::int64_t x) { return eps2(m, x) + eps2(m, x * q % m); };

  const std::size_t k = classes_.size();
  table_.assign(chars_.size() * k, {0, 0});
  for (std::size_t a = 0; a < chars_.size(); ++a) {
    const SzCharacter& ch = chars_[a];
    for (std::size_t b = 0; b < k; ++b) {
      const SzClass& c = classes_[b];
      std::complex<double> v = 0;
      const double dq = static_cast<double>(q), dr = static_cast<double>(r);
      switch (ch.family) {
      case SzFamily::One:
        v = 1;
        break;
      case SzFamily::X:
        switch (c.kind) {
        case SzClassKind::Identity:
          v = dq * dq;
          break;
        case SzClassKind::A0:
          v = 1;
          break;
        case SzClassKind::A1:
        case SzClassKind::A2:
          v = -1;
          break;
        default:
          v = 0;
        }
        break;
      case SzFamily::Xi:
        switch (c.kind) {
        case SzClassKind::Identity:
          v = dq * dq + 1;
          break;
        case SzClassKind::Involution:
        case SzClassKind::Rho:
        case SzClassKind::RhoInverse:
          v = 1;
          break;
        case SzClassKind::A0:
          v = eps2(params.a0, ch.index * c.s);
          break;
        default:
          v = 0;
        }
        break;
      case SzFamily::Yj:
        switch (c.kind) {
        case SzClassKind::Identity:
          v = static_cast<double>(ch.degree);
          break;
        case SzClassKind::Involution:
          v = dr - 1;
          break;
        case SzClassKind::Rho:
        case SzClassKind::RhoInverse:
          v = -1;
          break;
        case SzClassKind::A1:
          v = -eps4(params.a1, ch.index * c.s);
          break;
        default:
          v = 0;
        }
        break;
      case SzFamily::Zk:
        switch (c.kind) {
        case SzClassKind::Identity:
          v = static_cast<double>(ch.degree);
          break;
        case SzClassKind::Involution:
          v = -dr - 1;
          break;
        case SzClassKind::Rho:
        case SzClassKind::RhoInverse:
          v = -1;
          break;
        case SzClassKind::A2:
          v = -eps4(params.a2, ch.index * c.s);
          break;
        default:
          v = 0;
        }
        break;
      case SzFamily::W: {
        const double sign = ch.index == 1 ? 1.0 : -1.0;
        switch (c.kind) {
        case SzClassKind::Identity:
          v = static_cast<double>(ch.degree);
          break;
        case SzClassKind::Involution:
          v = -dr / 2;
          break;
        case SzClassKind::Rho:
          v = std::complex<double>(0, sign * dr / 2);
          break;
        case SzClassKind::RhoInverse:
          v = std::complex<double>(0, -sign * dr / 2);
          break;
        case SzClassKind::A1:
          v = 1;
          break;
        case SzClassKind::A2:
          v = -1;
          break;
        default:
          v = 0;
        }
        break;
      }
      }
      table_[a * k + b] = v;
    }
  }
}

std::vector<double> SzCharacterTable::eigenvalues(const std::vector<double>& class_weights) const {
  if (class_weights.size() != classes_.size())
    throw std::invalid_argument("one weight per class expected");
  std::vector<double> out(chars_.size());
  for (std::size_t a = 0; a < chars_.size(); ++a) {
    std::complex<double> s = 0;
    for (std::size_t b = 0; b < classes_.size(); ++b)
      s += class_weights[b] * static_cast<double>(classes_[b].size) * value(a, b);
    out[a] = s.real() / static_cast<double>(chars_[a].degree);
  }
  return out;
}

SzCharacterReport sz_character_checks(std::int64_t q) {
  const SzParameters p = sz_parameters_for_q(q);
  const SzCharacterTable t(p);
  SzCharacterReport rep;
  rep.q = q;
  rep.group_order = p.group_order;
  rep.num_characters = t.characters().size();
  rep.num_classes = t.classes().size();
  rep.degrees_match_first_column = true;
  for (std::size_t a = 0; a < rep.num_characters; ++a) {
    const std::int64_t deg = t.characters()[a].degree;
    rep.sum_of_squares += deg * deg;
    if (std::abs(t.value(a, 0) - std::complex<double>(static_cast<double>(deg), 0)) > 1e-9)
      rep.degrees_match_first_column = false;
  }
  std::vector<std::int64_t> sorted_degrees;
  for (const auto& c : t.characters())
    sorted_degrees.push_back(c.degree);
  auto expected_degrees = p.character_degrees;
  std::sort(sorted_degrees.begin(), sorted_degrees.end());
  std::sort(expected_degrees.begin(), expected_degrees.end());
  if (sorted_degrees != expected_degrees)
    rep.degrees_match_first_column = false;

  // Normalised column orthogonality: sum_chi chi(x) conj(chi(y)) / sqrt(|C(x)||C(y)|).
  const auto& cls = t.classes();
  for (std::size_t x = 0; x < cls.size(); ++x)
    for (std::size_t y = x; y < cls.size(); ++y) {
      std::complex<double> s = 0;
      for (std::size_t a = 0; a < rep.num_characters; ++a)
        s += t.value(a, x) * std::conj(t.value(a, y));
      const double expect = x == y ? static_cast<double>(cls[x].centralizer) : 0.0;
      const double scale =
          std::sqrt(static_cast<double>(cls[x].centralizer) * static_cast<double>(cls[y].centralizer));
      rep.max_orthogonality_error = std::max(rep.max_orthogonality_error, std::abs(s - expect) / scale);
    }
  rep.tolerance = 1e-6;
  std::int64_t class_total = 0;
  for (const auto& c : cls)
    class_total += c.size;
  rep.ok = rep.sum_of_squares == p.group_order && rep.num_characters == rep.num_classes &&
           static_cast<std::int64_t>(rep.num_classes) == p.num_classes && class_total == p.group_order &&
           rep.degrees_match_first_column && rep.max_orthogonality_error <= rep.tolerance;
  return rep;
}

SzClassSums sz_class_sums(const SzParameters& p, int m, std::int64_t t) {
  const std::int64_t q = p.q, r = p.r;
  std::int64_t n = 0;
  switch (m) {
  case 0:
    n = p.a0;
    break;
  case 1:
    n = p.a1;
    break;
  case 2:
    n = p.a2;
    break;
  default:
    throw Error(ErrorKind::InadmissibleParameters, "torus index must be 0, 1 or 2");
  }
  if (t < 1 || n % t != 0)
    throw Error(ErrorKind::NotADivisor, std::to_string(t) + " does not divide " + std::to_string(n));
  SzClassSums s;
  s.m = m;
  s.t = t;
  switch (m) {
  case 0:
    s.size = q * q * (q * q + 1) * (q - 1 - t) / 2;
    s.divisible_sum = -q * q * (q * q + 1) * t;
    break;
  case 1:
    s.size = q * q * (q - 1) * (q - r + 1) * (q + r + 1 - t) / 4;
    s.divisible_sum = t * q * q * (q - 1) * (q - r + 1);
    break;
  default:
    s.size = q * q * (q - 1) * (q + r + 1) * (q - r + 1 - t) / 4;
    s.divisible_sum = t * q * q * (q - 1) * (q + r + 1);
  }
  return s;
}

Rational SzPoly::eval(std::int64_t q, std::int64_t r, std::int64_t t) const {
  Rational s(0);
  for (const auto& term : terms)
    s = s + term.coef * Rational(ipow(q, term.q)) * Rational(ipow(r, term.r)) * Rational(ipow(t, term.t));
  return s;
}

std::string SzPoly::to_string() const {
  if (terms.empty())
    return "0";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const SzTerm& term = terms[i];
    const bool neg = term.coef.num < 0;
    const Rational mag(neg ? -term.coef.num : term.coef.num, term.coef.den);
    if (i == 0)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string mono;
    auto var = [&](const char* v, int e) {
      if (e == 0)
        return;
      if (!mono.empty())
        mono += " ";
      mono += v;
      if (e > 1)
        mono += "^" + std::to_string(e);
    };
    var("q", term.q);
    var("r", term.r);
    var("t", term.t);
    if (mono.empty())
      out += mag.to_string();
    else if (mag == Rational(1))
      out += mono;
    else
      out += mag.to_string() + " " + mono;
  }
  return out;
}

Rational SzExpr::eval(std::int64_t q, std::int64_t r, std::int64_t t) const {
  return num.eval(q, r, t) / den.eval(q, r, t);
}

std::string SzExpr::to_string() const {
  if (den.terms.size() == 1 && den.terms[0].coef == Rational(1) && den.terms[0].q == 0 && den.terms[0].r == 0 &&
      den.terms[0].t == 0)
    return num.to_string();
  return "(" + num.to_string() + ") / (" + den.to_string() + ")";
}

const char* to_string(SzCase c) {
  switch (c) {
  case SzCase::D2t0Mid:
    return "D_2t0_mid";
  case SzCase::D2qMinus1:
    return "D_2q-1";
  case SzCase::Zt0Mid:
    return "Z_t0_mid";
  case SzCase::ZqMinus1:
    return "Z_q-1";
  case SzCase::BorelOrder4Exponent:
    return "borel_order4_exponent";
  case SzCase::BorelT0:
    return "borel_t0";
  case SzCase::SubfieldQ1:
    return "subfield_q1";
  case SzCase::TorusPlus:
    return "torus_plus";
  case SzCase::TorusMinus:
    return "torus_minus";
  }
  return "?";
}

std::vector<SzCase> all_sz_cases() {
  return {SzCase::D2t0Mid,   SzCase::D2qMinus1,  SzCase::Zt0Mid,    SzCase::ZqMinus1,  SzCase::BorelOrder4Exponent,
          SzCase::BorelT0,   SzCase::SubfieldQ1, SzCase::TorusPlus, SzCase::TorusMinus};
}

SzCase sz_case_from_string(const std::string& s) {
  std::string norm;
  for (std::size_t i = 0; i < s.size(); ++i) {
    // accept U+2212 as a minus sign
    if (s.compare(i, 3, "\xE2\x88\x92") == 0) {
      norm += '-';
      i += 2;
    } else {
      norm += s[i];
    }
  }
  for (auto c : all_sz_cases())
    if (norm == to_string(c))
      return c;
  if (norm == "D_2(q-1)")
    return SzCase::D2qMinus1;
  throw Error(ErrorKind::ParseError, "unknown Suzuki case '" + s + "'");
}

namespace {

SzTerm T(std::int64_t n, std::int64_t d, int qe, int re = 0, int te = 0) { return {Rational(n, d), qe, re, te}; }
SzPoly P(std::initializer_list<SzTerm> ts) { return {std::vector<SzTerm>(ts)}; }
SzExpr E(SzPoly n) { return {std::move(n)}; }
SzExpr E(SzPoly n, SzPoly d) { return {std::move(n), std::move(d)}; }
const SzExpr kZero = E(P({}));
const SzExpr kOne = E(P({T(1, 1, 0)}));

struct CaseDef {
  SzExpr w_rho2 = kZero, w_rho = kZero, w_a0 = kZero, w_a1 = kZero, w_a2 = kZero;
  std::vector<std::tuple<SzFamily, SzCondition, SzExpr>> entries;
  SzExpr d, tau;
  std::optional<SzExpr> bound;
};

constexpr auto A = SzCondition::Always;
constexpr auto Dv = SzCondition::IndexDivisible;
constexpr auto ND = SzCondition::IndexNotDivisible;

// Dihedral stabilizer D_2t0 with 1 < t0 < q-1; adjacency matrix.
CaseDef dihedral_mid() {
  CaseDef c;
  c.w_rho = c.w_a0 = c.w_a1 = c.w_a2 = kOne;
  const auto one = E(P({T(1, 1, 5), T(-1, 2, 4, 0, 1), T(-1, 2, 4), T(-1, 2, 2, 0, 1), T(1, 2, 2), T(-1, 1, 1)}));
  const auto xi_div = E(P({T(-1, 1, 2, 0, 1), T(1, 1, 2), T(-1, 1, 1)}));
  c.entries = {
      {SzFamily::One, A, one},
      {SzFamily::X, A, E(P({T(-1, 2, 2, 0, 1), T(1, 2, 2), T(-1, 2, 0, 0, 1), T(-1, 2, 0)}))},
      {SzFamily::Xi, ND, E(P({T(1, 1, 2), T(-1, 1, 1)}))},
      {SzFamily::Xi, Dv, xi_div},
      {SzFamily::Yj, A, E(P({T(-1, 1, 1, 1), T(-1, 1, 1)}))},
      {SzFamily::Zk, A, E(P({T(1, 1, 1, 1), T(-1, 1, 1)}))},
      {SzFamily::W, A, E(P({T(1, 1, 2)}))},
  };
  c.d = one;
  c.tau = xi_div;
  return c;
}

// Stabilizer D_2(q-1): weights 1 on rho^{+-1}, 2/r + 2/q on A1, -2/r + 2/q on A2.
CaseDef dihedral_full() {
  CaseDef c;
  c.w_rho = kOne;
  c.w_a1 = E(P({T(2, 1, 1), T(2, 1, 0, 1)}), P({T(1, 1, 1, 1)}));
  c.w_a2 = E(P({T(-2, 1, 1), T(2, 1, 0, 1)}), P({T(1, 1, 1, 1)}));
  const auto one = E(P({T(2, 1, 4), T(-2, 1, 3), T(1, 1, 2), T(-1, 1, 1)}));
  const auto low = E(P({T(-1, 1, 2), T(1, 1, 1)}));
  c.entries = {
      {SzFamily::One, A, one},
      {SzFamily::X, A, low},
      {SzFamily::Xi, A, E(P({T(1, 1, 2), T(-1, 1, 1)}))},
      {SzFamily::Yj, A, low},
      {SzFamily::Zk, A, low},
      {SzFamily::W, A, E(P({T(1, 1, 3), T(-1, 1, 2), T(2, 1, 1)}))},
  };
  c.d = one;
  c.tau = low;
  c.bound = E(P({T(1, 2, 3), T(-1, 2, 2)}));
  return c;
}

// Cyclic stabilizer Z_t0 with 1 < t0 < q-1; adjacency matrix.
CaseDef cyclic_mid() {
  CaseDef c;
  c.w_rho2 = c.w_rho = c.w_a0 = c.w_a1 = c.w_a2 = kOne;
  const auto one = E(
      P({T(1, 1, 5), T(-1, 2, 4, 0, 1), T(-1, 2, 4), T(1, 1, 3), T(-1, 2, 2, 0, 1), T(-1, 2, 2), T(-1, 1, 0)}));
  const auto xi_div = E(P({T(-1, 1, 2, 0, 1), T(1, 1, 2), T(-1, 1, 0)}));
  const auto minus_one = E(P({T(-1, 1, 0)}));
  c.entries = {
      {SzFamily::One, A, one},
      {SzFamily::X, A, E(P({T(-1, 2, 2, 0, 1), T(1, 2, 2), T(-1, 2, 0, 0, 1), T(-1, 2, 0)}))},
      {SzFamily::Xi, ND, E(P({T(1, 1, 2), T(-1, 1, 0)}))},
      {SzFamily::Xi, Dv, xi_div},
      {SzFamily::Yj, A, minus_one},
      {SzFamily::Zk, A, minus_one},
      {SzFamily::W, A, minus_one},
  };
  c.d = one;
  c.tau = xi_div;
  return c;
}

// Stabilizer Z_(q-1): weights 1 on rho^2 and rho^{+-1}, 2/q on A1 and A2.
CaseDef cyclic_full() {
  CaseDef c;
  c.w_rho2 = c.w_rho = kOne;
  c.w_a1 = c.w_a2 = E(P({T(2, 1, 0)}), P({T(1, 1, 1)}));
  const auto one = E(P({T(2, 1, 4), T(-2, 1, 3), T(1, 1, 2), T(-1, 1, 0)}));
  const auto low = E(P({T(-1, 1, 2), T(2, 1, 1), T(-1, 1, 0)}));
  c.entries = {
      {SzFamily::One, A, one},
      {SzFamily::X, A, low},
      {SzFamily::Xi, A, E(P({T(1, 1, 2), T(-1, 1, 0)}))},
      {SzFamily::Yj, A, low},
      {SzFamily::Zk, A, low},
      {SzFamily::W, A, low},
  };
  c.d = one;
  c.tau = low;
  c.bound = E(P({T(1, 2, 3), T(-1, 1, 2), T(1, 2, 1)}));
  return c;
}

// 2-group stabilizer containing an element of order 4: weights 1 on A0,
// 1 + 2(q+1)/(q(q-1)) on A1 and A2.
CaseDef borel_two_group() {
  CaseDef c;
  c.w_a0 = kOne;
  c.w_a1 = c.w_a2 = E(P({T(1, 1, 2), T(1, 1, 1), T(2, 1, 0)}), P({T(1, 1, 2), T(-1, 1, 1)}));
  const auto one = E(P({T(1, 1, 5), T(-1, 1, 4), T(1, 1, 3), T(-2, 1, 2)}));
  const auto low = E(P({T(-1, 1, 2)}));
  const auto high = E(P({T(1, 1, 3), T(1, 1, 2), T(2, 1, 1)}), P({T(1, 1, 1), T(-1, 1, 0)}));
  c.entries = {
      {SzFamily::One, A, one}, {SzFamily::X, A, low},  {SzFamily::Xi, A, low},
      {SzFamily::Yj, A, high}, {SzFamily::Zk, A, high}, {SzFamily::W, A, high},
  };
  c.d = one;
  c.tau = low;
  c.bound = E(P({T(1, 1, 2)}));
  return c;
}

// Borel-type stabilizer with an element of order 4 and Hall 2'-part of order
// t0, 1 < t0 < q-1; adjacency matrix.
CaseDef borel_mid() {
  CaseDef c;
  c.w_a0 = c.w_a1 = c.w_a2 = kOne;
  const auto one = E(P({T(1, 1, 5), T(-1, 2, 4, 0, 1), T(-3, 2, 4), T(1, 1, 3), T(-1, 2, 2, 0, 1), T(-1, 2, 2)}));
  const auto xi_div = E(P({T(-1, 1, 2, 0, 1)}));
  const auto q2 = E(P({T(1, 1, 2)}));
  c.entries = {
      {SzFamily::One, A, one},
      {SzFamily::X, A, E(P({T(-1, 2, 2, 0, 1), T(1, 2, 2), T(-1, 2, 0, 0, 1), T(-1, 2, 0)}))},
      {SzFamily::Xi, ND, kZero},
      {SzFamily::Xi, Dv, xi_div},
      {SzFamily::Yj, A, q2},
      {SzFamily::Zk, A, q2},
      {SzFamily::W, A, q2},
  };
  c.d = one;
  c.tau = xi_div;
  return c;
}

// Subfield stabilizer Sz(q1), t = q1: weight 1 on A0 \ B0 with |B0| = q1 - 1.
CaseDef subfield() {
  CaseDef c;
  c.w_a0 = kOne;
  const auto one = E(P({T(1, 2, 5), T(-1, 2, 4, 0, 1), T(1, 2, 3), T(-1, 2, 2, 0, 1)}));
  const auto xi_div = E(P({T(-1, 1, 2, 0, 1), T(1, 1, 2)}));
  c.entries = {
      {SzFamily::One, A, one},
      {SzFamily::X, A, E(P({T(1, 2, 3), T(-1, 2, 2, 0, 1), T(1, 2, 1), T(-1, 2, 0, 0, 1)}))},
      {SzFamily::Xi, ND, kZero},
      {SzFamily::Xi, Dv, xi_div},
      {SzFamily::Yj, A, kZero},
      {SzFamily::Zk, A, kZero},
      {SzFamily::W, A, kZero},
  };
  c.d = one;
  c.tau = xi_div;
  return c;
}

// Stabilizer inside Z_(q+r+1):Z_4: weight 1 on A0.
CaseDef torus_plus() {
  CaseDef c;
  c.w_a0 = kOne;
  const auto one = E(P({T(1, 2, 5), T(-1, 1, 4), T(1, 2, 3), T(-1, 1, 2)}));
  const auto low = E(P({T(-1, 1, 2)}));
  c.entries = {
      {SzFamily::One, A, one},
      {SzFamily::X, A, E(P({T(1, 2, 3), T(-1, 1, 2), T(1, 2, 1), T(-1, 1, 0)}))},
      {SzFamily::Xi, A, low},
      {SzFamily::Yj, A, kZero},
      {SzFamily::Zk, A, kZero},
      {SzFamily::W, A, kZero},
  };
  c.d = one;
  c.tau = low;
  c.bound = E(P({T(2, 1, 3), T(2, 1, 1)}), P({T(1, 1, 1), T(-1, 1, 0)}));
  return c;
}

// Stabilizer inside Z_(q-r+1):Z_4: weights 1 on A0, 2(q^2+q+2)/(q^2-q+r) on A1.
CaseDef torus_minus() {
  CaseDef c;
  c.w_a0 = kOne;
  c.w_a1 = E(P({T(2, 1, 2), T(2, 1, 1), T(4, 1, 0)}), P({T(1, 1, 2), T(-1, 1, 1), T(1, 1, 0, 1)}));
  const auto one = E(P({T(1, 1, 5), T(-1, 1, 4), T(1, 1, 3), T(-2, 1, 2)}));
  const auto low = E(P({T(-1, 1, 2)}));
  c.entries = {
      {SzFamily::One, A, one},
      {SzFamily::X, A, low},
      {SzFamily::Xi, A, low},
      {SzFamily::Yj, A, E(P({T(2, 1, 4), T(2, 1, 3), T(4, 1, 2)}), P({T(1, 1, 2), T(-1, 1, 1), T(1, 1, 0, 1)}))},
      {SzFamily::Zk, A, kZero},
      {SzFamily::W, A, E(P({T(1, 2, 3, 1), T(1, 2, 2, 1), T(1, 1, 1, 1)}))},
  };
  c.d = one;
  c.tau = low;
  c.bound = E(P({T(1, 1, 2)}));
  return c;
}

[[noreturn]] void inadmissible(const std::string& msg) { throw Error(ErrorKind::InadmissibleParameters, msg); }

// Smallest 2^f with t | 2^f - 1.
std::int64_t subfield_order_of(std::int64_t t) {
  std::int64_t x = 2;
  while ((x - 1) % t != 0)
    x *= 2;
  return x;
}

} // namespace

std::vector<double> SzCaseSpectrum::eigenvalue_list() const {
  std::vector<double> out;
  for (const auto& e : entries)
    for (std::int64_t i = 0; i < e.multiplicity; ++i)
      out.push_back(e.value.value());
  std::sort(out.rbegin(), out.rend());
  return out;
}

std::vector<double> SzCaseSpectrum::distinct() const {
  std::vector<Rational> vals;
  for (const auto& e : entries)
    if (e.multiplicity > 0 && std::find(vals.begin(), vals.end(), e.value) == vals.end())
      vals.push_back(e.value);
  std::vector<double> out;
  for (const auto& v : vals)
    out.push_back(v.value());
  std::sort(out.rbegin(), out.rend());
  return out;
}

double SzCaseSpectrum::class_weight(const SzClass& c) const {
  switch (c.kind) {
  case SzClassKind::Identity:
    return 0;
  case SzClassKind::Involution:
    return weight_rho2.value();
  case SzClassKind::Rho:
  case SzClassKind::RhoInverse:
    return weight_rho.value();
  case SzClassKind::A0:
    return divides(c.element_order, t0) ? 0 : weight_a0.value();
  case SzClassKind::A1:
    return divides(c.element_order, b1) ? 0 : weight_a1.value();
  case SzClassKind::A2:
    return divides(c.element_order, b2) ? 0 : weight_a2.value();
  }
  return 0;
}

SzCaseSpectrum sz_case_spectrum(SzCase tag, std::int64_t q, std::int64_t t) {
  SzParameters params;
  try {
    params = sz_parameters_for_q(q);
  } catch (const Error&) {
    inadmissible("q = " + std::to_string(q) + " is not 2^e with e odd, 3 <= e <= " + std::to_string(kMaxSzExponent));
  }
  SzCaseSpectrum s;
  s.tag = tag;
  s.params = params;
  const std::int64_t r = params.r;
  const auto need_mid = [&]() {
    if (!(t > 1 && t < q - 1 && (q - 1) % t == 0))
      inadmissible("case " + std::string(to_string(tag)) + " requires t | q-1 with 1 < t < q-1");
  };
  CaseDef def;
  std::int64_t min_h = 1;
  switch (tag) {
  case SzCase::D2t0Mid:
    need_mid();
    def = dihedral_mid();
    s.t = s.t0 = t;
    min_h = 2 * t;
    break;
  case SzCase::D2qMinus1:
    def = dihedral_full();
    s.t = s.t0 = q - 1;
    min_h = 2 * (q - 1);
    break;
  case SzCase::Zt0Mid:
    need_mid();
    def = cyclic_mid();
    s.t = s.t0 = t;
    min_h = t;
    break;
  case SzCase::ZqMinus1:
    def = cyclic_full();
    s.t = s.t0 = q - 1;
    min_h = q - 1;
    break;
  case SzCase::BorelOrder4Exponent:
    def = borel_two_group();
    s.t = s.t0 = 1;
    min_h = 4;
    break;
  case SzCase::BorelT0:
    if (t == 1) {
      def = borel_two_group();
      s.t = s.t0 = 1;
      min_h = 4;
    } else {
      need_mid();
      def = borel_mid();
      s.t = s.t0 = t;
      const std::int64_t q0 = subfield_order_of(t);
      min_h = q0 * q0 * t;
    }
    break;
  case SzCase::SubfieldQ1: {
    if (t <= 2 || (t & (t - 1)) != 0)
      inadmissible("subfield order must be a power of 2 above 2");
    const unsigned e1 = static_cast<unsigned>(std::countr_zero(static_cast<std::uint64_t>(t)));
    if (e1 >= params.e || params.e % e1 != 0)
      inadmissible("q must be a proper power of q1");
    def = subfield();
    s.t = t;
    s.t0 = t - 1;
    min_h = t * t * (t - 1) * (t * t + 1);
    break;
  }
  case SzCase::TorusPlus:
    def = torus_plus();
    min_h = 5;
    break;
  case SzCase::TorusMinus:
    def = torus_minus();
    min_h = 5;
    break;
  }
  const std::int64_t tv = s.t;
  auto ev = [&](const SzExpr& x) { return x.eval(q, r, tv); };
  s.weight_rho2 = ev(def.w_rho2);
  s.weight_rho = ev(def.w_rho);
  s.weight_a0 = ev(def.w_a0);
  s.weight_a1 = ev(def.w_a1);
  s.weight_a2 = ev(def.w_a2);

  std::int64_t div_count = 0;
  for (std::int64_t i = 1; i <= params.a0_classes; ++i)
    if (i % s.t0 == 0)
      ++div_count;
  bool have_tau = false;
  for (auto& [fam, cond, expr] : def.entries) {
    SzEigenEntry e{fam, cond, expr, 0, ev(expr)};
    switch (fam) {
    case SzFamily::One:
    case SzFamily::X:
      e.multiplicity = 1;
      break;
    case SzFamily::Xi:
      e.multiplicity = cond == A ? params.a0_classes : cond == Dv ? div_count : params.a0_classes - div_count;
      break;
    case SzFamily::Yj:
      e.multiplicity = params.a1_classes;
      break;
    case SzFamily::Zk:
      e.multiplicity = params.a2_classes;
      break;
    case SzFamily::W:
      e.multiplicity = 2;
      break;
    }
    if (e.multiplicity > 0 && (!have_tau || e.value < s.tau)) {
      s.tau = e.value;
      have_tau = true;
    }
    if (fam == SzFamily::One)
      s.d = e.value;
    s.entries.push_back(std::move(e));
  }
  s.printed_d = ev(def.d);
  s.printed_tau = ev(def.tau);
  if (def.bound)
    s.printed_bound = ev(*def.bound);
  if (!(s.tau < Rational(0)) || !(Rational(0) < s.d))
    throw Error(ErrorKind::DegenerateSpectrum, "closed-form spectrum has no negative eigenvalue");
  const double n = static_cast<double>(params.group_order);
  s.bound = n / (1.0 - s.d.value() / s.tau.value());
  try {
    s.bound_exact = Rational(params.group_order) * s.tau / (s.tau - s.d);
  } catch (const std::overflow_error&) {
    s.bound_exact.reset();
  }
  s.min_stabilizer_order = min_h;
  s.rho_upper = s.bound / std::sqrt(static_cast<double>(min_h) * n);
  s.rho_below_half_sqrt2 = s.rho_upper < std::sqrt(2.0) / 2;
  return s;
}

std::uint32_t SzBorel::index_of(std::uint32_t a, std::uint32_t b, std::uint32_t k) const {
  const std::int64_t idx = group->find(permutation_of(a, b, k));
  if (idx < 0)
    throw std::logic_error("Borel element missing from its group");
  return static_cast<std::uint32_t>(idx);
}

Permutation SzBorel::permutation_of(std::uint32_t a, std::uint32_t b, std::uint32_t k) const {
  const std::uint32_t q = field.order();
  if (a >= q || b >= q || k == 0 || k >= q)
    throw Error(ErrorKind::InvalidGenerator, "Borel element outside Q:K");
  const std::uint32_t a_theta = frobenius_theta(field, a);
  const std::uint32_t k_theta = field.mul(k, frobenius_theta(field, k));
  Permutation img(static_cast<std::size_t>(q) * q);
  for (std::uint32_t y1 = 0; y1 < q; ++y1)
    for (std::uint32_t y2 = 0; y2 < q; ++y2) {
      // (y1, y2)(a, b), then conjugate by k
      const std::uint32_t u = field.add(y1, a);
      const std::uint32_t v = field.add(field.add(field.mul(y1, a_theta), y2), b);
      img[y1 * q + y2] = field.mul(u, k) * q + field.mul(v, k_theta);
    }
  return img;
}

std::vector<std::uint32_t> SzBorel::sylow2() const {
  std::vector<std::uint32_t> out;
  const std::uint32_t q = field.order();
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b)
      out.push_back(index_of(a, b, 1));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint32_t> SzBorel::torus() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t k = 1; k < field.order(); ++k)
    out.push_back(index_of(0, 0, k));
  std::sort(out.begin(), out.end());
  return out;
}

SzBorel sz_borel_group(unsigned e) {
  const SzParameters params = sz_parameters(e);
  if ((std::uint64_t{1} << (3 * e)) > kMaxGroupOrder)
    throw Error(ErrorKind::GroupTooLarge, "Borel subgroup of Sz(2^" + std::to_string(e) + ") exceeds the cap");
  SzBorel b{params, field_create(2, e), nullptr};
  std::vector<Permutation> gens;
  for (unsigned i = 0; i < e; ++i) {
    gens.push_back(b.permutation_of(1u << i, 0, 1));
    gens.push_back(b.permutation_of(0, 1u << i, 1));
  }
  gens.push_back(b.permutation_of(0, 0, b.field.primitive_value()));
  b.group = close_group(static_cast<std::uint32_t>(params.q * params.q), gens);
  if (static_cast<std::int64_t>(b.group->order()) != params.q * params.q * (params.q - 1))
    throw std::logic_error("Borel closure has the wrong order");
  return b;
}

SzGroup load_sz8(const std::string& path) {
  const std::string file = path.empty() ? std::string(EKR_DATA_DIR) + "/sz8.grp" : path;
  const GroupFile gf = read_group_file(file);
  return classify_sz8(close_group(gf.degree, gf.generators));
}

SzGroup classify_sz8(GroupPtr group) {
  SzGroup sz;
  sz.params = sz_parameters(3);
  sz.group = std::move(group);
  const GroupTable& g = *sz.group;
  if (static_cast<std::int64_t>(g.order()) != sz.params.group_order ||
      static_cast<std::int64_t>(g.num_classes()) != sz.params.num_classes)
    throw Error(ErrorKind::InvalidGenerator, "group is not Sz(8)");
  const auto& p = sz.params;
  sz.kind_of_class.resize(g.num_classes());
  bool have_rho = false;
  for (std::size_t c = 0; c < g.num_classes(); ++c) {
    const std::int64_t o = g.class_element_order(c);
    const std::int64_t size = static_cast<std::int64_t>(g.class_size(c));
    SzClassKind kind;
    std::int64_t expected = 0;
    if (o == 1) {
      kind = SzClassKind::Identity;
      expected = 1;
    } else if (o == 2) {
      kind = SzClassKind::Involution;
      expected = p.involution_class_size;
    } else if (o == 4) {
      kind = have_rho ? SzClassKind::RhoInverse : SzClassKind::Rho;
      have_rho = true;
      expected = p.order4_union_size / 2;
    } else if (p.a0 % o == 0) {
      kind = SzClassKind::A0;
      expected = p.group_order / p.a0;
    } else if (p.a1 % o == 0) {
      kind = SzClassKind::A1;
      expected = p.group_order / p.a1;
    } else if (p.a2 % o == 0) {
      kind = SzClassKind::A2;
      expected = p.group_order / p.a2;
    } else {
      throw Error(ErrorKind::InvalidGenerator, "unexpected element order " + std::to_string(o));
    }
    if (size != expected)
      throw Error(ErrorKind::InvalidGenerator, "class of order-" + std::to_string(o) + " elements has size " +
                                                   std::to_string(size) + ", expected " + std::to_string(expected));
    sz.kind_of_class[c] = kind;
  }
  return sz;
}

ClassWeighting sz_case_weighting(const SzGroup& sz, const SzCaseSpectrum& spec) {
  const GroupTable& g = *sz.group;
  ClassWeighting w;
  w.weights.resize(g.num_classes());
  for (std::size_t c = 0; c < g.num_classes(); ++c) {
    SzClass cls{sz.kind_of_class[c], 0, g.class_element_order(c), static_cast<std::int64_t>(g.class_size(c)), 0};
    w.weights[c] = spec.class_weight(cls);
  }
  return w;
}

namespace {

std::uint32_t first_of_order(const GroupTable& g, std::uint32_t order) {
  for (std::uint32_t x = 0; x < g.order(); ++x)
    if (g.element_order(x) == order)
      return x;
  throw Error(ErrorKind::NoSuchSubgroup, "no element of order " + std::to_string(order));
}

// <z, y> for the first y of order `ext` normalising <z> with the requested
// order; `invert` additionally asks for y^-1 z y = z^-1.
std::vector<std::uint32_t> cyclic_extension(const GroupTable& g, std::uint32_t z, std::uint32_t ext,
                                            std::size_t order, bool invert) {
  const auto cz = subgroup_closure(g, {z});
  for (std::uint32_t y = 0; y < g.order(); ++y) {
    if (g.element_order(y) != ext)
      continue;
    const std::uint32_t c = g.conjugate(z, y);
    if (invert ? c != g.inverse(z) : !std::binary_search(cz.begin(), cz.end(), c))
      continue;
    auto h = subgroup_closure(g, {z, y}, order);
    if (h.size() == order)
      return h;
  }
  throw Error(ErrorKind::NoSuchSubgroup, "no subgroup of order " + std::to_string(order));
}

} // namespace

std::vector<SzCrossCheck> sz8_cross_validation(const SzGroup& sz) {
  const GroupTable& g = *sz.group;
  const auto& p = sz.params;
  const auto a0 = static_cast<std::uint32_t>(p.a0), a1 = static_cast<std::uint32_t>(p.a1),
             a2 = static_cast<std::uint32_t>(p.a2);
  struct Item {
    SzCase tag;
    std::vector<std::uint32_t> stabilizer;
  };
  std::vector<Item> items;
  const std::uint32_t z0 = first_of_order(g, a0);
  items.push_back({SzCase::D2qMinus1, cyclic_extension(g, z0, 2, 2 * a0, true)});
  items.push_back({SzCase::ZqMinus1, subgroup_closure(g, {z0})});
  items.push_back({SzCase::BorelOrder4Exponent, subgroup_closure(g, {first_of_order(g, 4)})});
  items.push_back({SzCase::TorusPlus, cyclic_extension(g, first_of_order(g, a1), 4, 4 * a1, false)});
  items.push_back({SzCase::TorusMinus, cyclic_extension(g, first_of_order(g, a2), 4, 4 * a2, false)});

  std::vector<SzCrossCheck> out;
  for (auto& it : items) {
    SzCrossCheck chk;
    chk.tag = it.tag;
    chk.stabilizer_order = it.stabilizer.size();
    const SzCaseSpectrum spec = sz_case_spectrum(it.tag, p.q);
    auto prof = profile(std::make_shared<const TransitiveAction>(sz.group, std::move(it.stabilizer)));
    const ClassWeighting w = sz_case_weighting(sz, spec);
    check_compatible(prof, w);
    const SpectrumReport rep = eigenvalues(collapse(prof, w), static_cast<double>(g.order()));
    chk.expected = spec.eigenvalue_list();
    chk.computed = rep.eigenvalues;
    chk.expected_bound = spec.bound;
    chk.computed_bound = rep.hoffman_bound.value_or(0);
    bool ok = chk.expected.size() == chk.computed.size();
    for (std::size_t i = 0; ok && i < chk.expected.size(); ++i) {
      const double err = std::abs(chk.expected[i] - chk.computed[i]) / std::max(1.0, std::abs(chk.expected[i]));
      chk.max_relative_error = std::max(chk.max_relative_error, err);
    }
    const double bound_err = std::abs(chk.expected_bound - chk.computed_bound) / chk.expected_bound;
    chk.max_relative_error = std::max(chk.max_relative_error, bound_err);
    chk.ok = ok && chk.max_relative_error <= kSzCrossTolerance;
    out.push_back(std::move(chk));
  }
  return out;
}

} // namespace ekr
