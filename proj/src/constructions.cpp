#include "ekr/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "ekr/algebra.hpp"
#include "ekr/error.hpp"
#include "ekr/suzuki.hpp"

namespace ekr {

const char* to_string(SubsetRole r) {
  switch (r) {
  case SubsetRole::Stabilizer: return "stabilizer";
  case SubsetRole::Intersecting: return "intersecting";
  case SubsetRole::Semiregular: return "semiregular";
  case SubsetRole::SharplyTransitive: return "sharply_transitive";
  case SubsetRole::Plain: return "plain";
  }
  return "?";
}

ExpectedValue ExpectedValue::count(std::int64_t v, std::string note) {
  ExpectedValue e;
  e.kind = Kind::Integer;
  e.integer = v;
  e.note = std::move(note);
  return e;
}

ExpectedValue ExpectedValue::radical(Rational sq, std::string note) {
  ExpectedValue e;
  e.kind = Kind::Radical;
  e.square = sq;
  e.note = std::move(note);
  return e;
}

double ExpectedValue::value() const {
  return kind == Kind::Integer ? static_cast<double>(integer) : std::sqrt(square.value());
}

std::string ExpectedValue::to_string() const {
  return kind == Kind::Integer ? std::to_string(integer) : square.sqrt_string();
}

const std::vector<std::uint32_t>& ConstructionOutput::subset(const std::string& key) const {
  auto it = named_subsets.find(key);
  if (it == named_subsets.end())
    throw std::out_of_range("no subset named " + key);
  return it->second.elements;
}

namespace {

using Elems = std::vector<std::uint32_t>;

Elems sorted(Elems v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::uint32_t must_find(const GroupTable& g, const Permutation& p) {
  const auto i = g.find(p);
  if (i < 0)
    throw Error(ErrorKind::InvalidGenerator, "element is not in the constructed group");
  return static_cast<std::uint32_t>(i);
}

ActionPtr make_action(GroupPtr g, Elems stabilizer) {
  return std::make_shared<const TransitiveAction>(coset_action(std::move(g), std::move(stabilizer)));
}

std::int64_t ipow(std::int64_t b, unsigned e) {
  std::int64_t r = 1;
  while (e--)
    r *= b;
  return r;
}

Rational rpow(const Rational& b, unsigned e) {
  Rational r(1);
  while (e--)
    r = r * b;
  return r;
}

// p and f with q = p^f, or {0, 0}.
std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint32_t q) {
  if (q < 2)
    return {0, 0};
  const auto fs = prime_factors(q);
  if (fs.size() != 1)
    return {0, 0};
  std::uint32_t f = 0;
  for (std::uint32_t x = q; x > 1; x /= static_cast<std::uint32_t>(fs[0]))
    ++f;
  return {static_cast<std::uint32_t>(fs[0]), f};
}

void add_basics(ConstructionOutput& c) {
  const auto& a = *c.action;
  c.expected["order"] = ExpectedValue::count(static_cast<std::int64_t>(a.group().order()), "group order");
  c.expected["degree"] = ExpectedValue::count(static_cast<std::int64_t>(a.omega_size()), "|G : G_w|");
  c.expected["stabilizer_order"] =
      ExpectedValue::count(static_cast<std::int64_t>(a.stabilizer_order()), "|G_w|");
}

// Field affine maps x -> a x + b on the points of GF(q), point = encoded value.
Permutation affine_line_map(const FiniteField& F, std::uint32_t a, std::uint32_t b) {
  const std::uint32_t q = F.order();
  Permutation p(q);
  for (std::uint32_t x = 0; x < q; ++x)
    p[x] = F.add(F.mul(a, x), b);
  return p;
}

GroupPtr agl1_group(const FiniteField& F) {
  return close_group(F.order(), {affine_line_map(F, 1, 1), affine_line_map(F, F.primitive_value(), 0)});
}

// PSL(2,q) on the projective line: point 0 is infinity, point v+1 is the field
// value v. Generators x -> x+1, x -> w x (w a primitive square), x -> -1/x.
struct ProjectiveLine {
  FiniteField F;
  std::uint32_t n;

  explicit ProjectiveLine(FiniteField f) : F(std::move(f)), n(F.order() + 1) {}

  Permutation mobius(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) const {
    // x -> (a x + b) / (c x + d)
    Permutation p(n);
    const std::uint32_t inf = 0;
    auto pt = [](std::uint32_t v) { return v + 1; };
    p[inf] = c == 0 ? inf : pt(F.div(a, c));
    for (std::uint32_t x = 0; x + 1 < n; ++x) {
      const std::uint32_t den = F.add(F.mul(c, x), d);
      p[pt(x)] = den == 0 ? inf : pt(F.div(F.add(F.mul(a, x), b), den));
    }
    return p;
  }

  GroupPtr psl2() const {
    const std::uint32_t w = F.mul(F.primitive_value(), F.primitive_value());
    const std::uint32_t one = 1, zero = 0;
    return close_group(n, {mobius(one, one, zero, one), mobius(w, zero, zero, one),
                           mobius(zero, F.neg(one), one, zero)});
  }
};

std::vector<SmallMatrix> matrix_closure(const std::vector<SmallMatrix>& gens, std::size_t cap) {
  const SmallMatrix id = SmallMatrix::identity(gens.front().field(), gens.front().dim());
  std::vector<SmallMatrix> out{id};
  std::unordered_set<SmallMatrix, SmallMatrixHash> seen{id};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens) {
      SmallMatrix x = out[i] * g;
      if (seen.insert(x).second) {
        out.push_back(x);
        if (out.size() > cap)
          return {};
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

bool contains(const std::vector<SmallMatrix>& sorted_group, const SmallMatrix& m) {
  return std::binary_search(sorted_group.begin(), sorted_group.end(), m);
}

// All 2x2 matrices over GF(p) in lexicographic row-major order.
template <class F>
void for_each_matrix2(const FiniteField& field, F&& fn) {
  const std::uint32_t p = field.order();
  for (std::uint32_t a = 0; a < p; ++a)
    for (std::uint32_t b = 0; b < p; ++b)
      for (std::uint32_t c = 0; c < p; ++c)
        for (std::uint32_t d = 0; d < p; ++d)
          if (fn(SmallMatrix::from_values(field, 2, {a, b, c, d})))
            return;
}

struct QuaternionPair {
  SmallMatrix a, b;
};

// First pair a < b of order-4 elements of SL(2,p) with ab = -ba.
QuaternionPair quaternion_search(const FiniteField& F) {
  std::vector<SmallMatrix> four;
  const SmallMatrix minus = SmallMatrix::from_values(F, 2, {F.neg(1), 0, 0, F.neg(1)});
  for_each_matrix2(F, [&](const SmallMatrix& m) {
    if (m.determinant() == 1 && m * m == minus)
      four.push_back(m);
    return false;
  });
  for (std::size_t i = 0; i < four.size(); ++i)
    for (std::size_t j = i + 1; j < four.size(); ++j)
      if (four[i] * four[j] == minus * (four[j] * four[i]))
        return {four[i], four[j]};
  throw Error(ErrorKind::NoSuchSubgroup, "no quaternion subgroup in SL(2,p)");
}

// SL(2,3) in SL(2,p): Q8 extended by the first order-3 matrix normalising it.
std::vector<SmallMatrix> sl23_generators(const FiniteField& F, const QuaternionPair& qp) {
  const auto q8 = matrix_closure({qp.a, qp.b}, 8);
  std::optional<SmallMatrix> c;
  for_each_matrix2(F, [&](const SmallMatrix& m) {
    if (m.determinant() != 1 || m.order() != 3)
      return false;
    const SmallMatrix mi = m.inverse();
    if (contains(q8, mi * qp.a * m) && contains(q8, mi * qp.b * m)) {
      c = m;
      return true;
    }
    return false;
  });
  if (!c)
    throw Error(ErrorKind::NoSuchSubgroup, "no order-3 normaliser of Q8");
  return {qp.a, qp.b, *c};
}

// First det-1 matrix of order 5 extending SL(2,3) to a group of order 120.
SmallMatrix sl25_extension(const FiniteField& F, const std::vector<SmallMatrix>& sl23) {
  std::optional<SmallMatrix> u;
  for_each_matrix2(F, [&](const SmallMatrix& m) {
    if (m.determinant() != 1 || m.order() != 5)
      return false;
    auto gens = sl23;
    gens.push_back(m);
    if (matrix_closure(gens, 120).size() == 120) {
      u = m;
      return true;
    }
    return false;
  });
  if (!u)
    throw Error(ErrorKind::NoSuchSubgroup, "no SL(2,5) over SL(2,3)");
  return *u;
}

// Permutation of x -> x A + v on GF(p)^dim, points encoded as in the affine backend.
Permutation affine_perm(const SmallMatrix& A, const std::vector<std::uint32_t>& v) {
  const FiniteField& F = A.field();
  const std::uint32_t p = F.order();
  const int dim = A.dim();
  std::uint32_t V = 1;
  for (int i = 0; i < dim; ++i)
    V *= p;
  Permutation out(V);
  std::vector<std::uint32_t> x(dim);
  for (std::uint32_t code = 0; code < V; ++code) {
    std::uint32_t c = code;
    for (int k = dim - 1; k >= 0; --k) {
      x[k] = c % p;
      c /= p;
    }
    std::uint32_t img = 0;
    for (int j = 0; j < dim; ++j) {
      std::uint32_t acc = v[j];
      for (int k = 0; k < dim; ++k)
        acc = F.add(acc, F.mul(x[k], A.raw(k, j)));
      img = img * p + acc;
    }
    out[code] = img;
  }
  return out;
}

std::vector<std::uint32_t> unit_vector(int dim, int k) {
  std::vector<std::uint32_t> v(dim, 0);
  v[k] = 1;
  return v;
}

// Affine group on GF(p)^dim with the given linear part, as permutations.
struct PermAffine {
  GroupPtr group;
  int dim;
  FiniteField F;

  std::uint32_t index(const SmallMatrix& A, const std::vector<std::uint32_t>& v) const {
    return must_find(*group, affine_perm(A, v));
  }
  std::uint32_t translation(const std::vector<std::uint32_t>& v) const {
    return index(SmallMatrix::identity(F, dim), v);
  }
  std::uint32_t linear(const SmallMatrix& A) const { return index(A, std::vector<std::uint32_t>(dim, 0)); }
};

PermAffine perm_affine(const FiniteField& F, int dim, const std::vector<SmallMatrix>& linear) {
  std::vector<Permutation> gens;
  const SmallMatrix id = SmallMatrix::identity(F, dim);
  for (int k = 0; k < dim; ++k)
    gens.push_back(affine_perm(id, unit_vector(dim, k)));
  for (const auto& A : linear)
    gens.push_back(affine_perm(A, std::vector<std::uint32_t>(dim, 0)));
  std::uint32_t V = 1;
  for (int i = 0; i < dim; ++i)
    V *= F.order();
  return {close_group(V, gens), dim, F};
}

void record_semiregular_bound(ConstructionOutput& c, std::size_t r_size, const std::string& note) {
  const std::int64_t n = static_cast<std::int64_t>(c.action->group().order());
  c.expected["bound"] = ExpectedValue::count(n / static_cast<std::int64_t>(r_size), note);
}

// Chooses the first stabilizer class against which the witness intersects.
// Fills the per-class report; throws NoSuchSubgroup when none qualifies.
void choose_stabilizer_class(ConstructionOutput& c, GroupPtr g, const std::vector<Elems>& classes,
                             const Elems& witness) {
  std::optional<std::size_t> chosen;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    auto act = make_action(g, classes[i]);
    const auto prof = profile(act);
    StabilizerClassReport rep;
    rep.index = i;
    rep.order = classes[i].size();
    rep.witness_intersecting = is_intersecting(prof, witness);
    rep.rho_sq = rho_squared(witness.size(), act->stabilizer_order(), act->omega_size());
    c.stabilizer_classes.push_back(rep);
    if (rep.witness_intersecting && !chosen) {
      chosen = i;
      c.action = act;
    }
  }
  if (!chosen)
    throw Error(ErrorKind::NoSuchSubgroup, "no stabilizer class makes the witness intersecting");
}

std::uint32_t first_order_element(const GroupTable& g, std::uint32_t order, const std::function<bool(std::uint32_t)>& ok) {
  for (std::uint32_t x = 0; x < g.order(); ++x)
    if (g.element_order(x) == order && ok(x))
      return x;
  throw Error(ErrorKind::NoSuchSubgroup, "no element of order " + std::to_string(order));
}

// Order-k subgroup generated by the first element of order k whose class misses the stabilizer.
Elems derangement_cyclic(const ActionProfile& prof, std::uint32_t k) {
  const auto& g = prof.group();
  const std::uint32_t x = first_order_element(g, k, [&](std::uint32_t y) {
    const auto h = subgroup_closure(g, {y});
    return std::all_of(h.begin(), h.end(), [&](std::uint32_t z) { return z == 0 || prof.is_derangement(z); });
  });
  return subgroup_closure(g, {x});
}

} // namespace

// ---------------------------------------------------------------------------

ConstructionOutput build_agl1_sharply_transitive(std::uint32_t q) {
  if (q % 2 == 0)
    throw Error(ErrorKind::EvenQ, "q must be odd");
  const auto [p, f] = prime_power(q);
  if (p == 0 || q > 1000)
    throw Error(ErrorKind::InadmissibleParameters, "q must be an odd prime power at most 1000");
  const FiniteField F = field_create(p, f);
  auto g = agl1_group(F);
  const std::uint32_t minus = F.neg(1);
  const std::uint32_t c_idx = must_find(*g, affine_line_map(F, minus, 0));

  ConstructionOutput out;
  out.name = "agl1st:" + std::to_string(q);
  out.action = make_action(g, sorted({0, c_idx}));

  // P g^i has linear part w^i; keep i in ((q-1)/2, q-1], or the squares when q = 3 mod 4.
  const std::uint32_t half = (q - 1) / 2;
  Elems R;
  for (std::uint32_t i = 1; i <= q - 1; ++i) {
    const bool keep = q % 4 == 3 ? i % 2 == 0 : i > half;
    if (!keep)
      continue;
    const std::uint32_t a = F.exp(i);
    for (std::uint32_t b = 0; b < q; ++b)
      R.push_back(must_find(*g, affine_line_map(F, a, b)));
  }
  out.named_subsets["H"] = {SubsetRole::Stabilizer, out.action->stabilizer()};
  out.named_subsets["R"] = {SubsetRole::SharplyTransitive, sorted(R)};
  out.witness = "H";
  out.certificate = "R";
  add_basics(out);
  const std::int64_t w = static_cast<std::int64_t>(q) * (q - 1) / 2;
  out.expected["degree"] = ExpectedValue::count(w, "q(q-1)/2");
  out.expected["size:R"] = ExpectedValue::count(w, "|R| = |Omega|, sharply transitive");
  out.expected["bound"] = ExpectedValue::count(2, "|G| / |R| = |G_w|, so the stabilizer is maximum");
  out.expected["rho"] = ExpectedValue::radical(Rational(1, w), "EKR property: rho = 1/sqrt|Omega|");
  return out;
}

ConstructionOutput build_psl2_even(unsigned e) {
  if (e < 2 || e > 4)
    throw Error(ErrorKind::InadmissibleParameters, "e must be 2, 3 or 4");
  const ProjectiveLine line(field_create(2, e));
  auto g = line.psl2();
  const std::int64_t q = std::int64_t{1} << e;
  auto H = find_subgroup(*g, 2 * (q - 1), shapes::dihedral);
  auto S = point_stabilizer(*g, 0);
  auto R = find_subgroup(*g, q + 1, shapes::cyclic);

  ConstructionOutput out;
  out.name = "psl2even:" + std::to_string(e);
  out.action = make_action(g, H);
  out.named_subsets["H"] = {SubsetRole::Stabilizer, out.action->stabilizer()};
  out.named_subsets["S"] = {SubsetRole::Intersecting, S};
  out.named_subsets["R"] = {SubsetRole::Semiregular, R};
  out.witness = "S";
  out.certificate = "R";
  add_basics(out);
  out.expected["order"] = ExpectedValue::count(q * (q * q - 1), "|PSL(2,q)| = q(q^2-1)");
  out.expected["degree"] = ExpectedValue::count(q * (q + 1) / 2, "q(q+1)/2");
  out.expected["size:S"] = ExpectedValue::count(q * (q - 1), "parabolic AGL(1,q)");
  out.expected["size:R"] = ExpectedValue::count(q + 1, "cyclic of order q+1, coprime to 2(q-1)");
  out.expected["bound"] = ExpectedValue::count(q * (q - 1), "|G| / (q+1)");
  out.expected["rho"] = ExpectedValue::radical(Rational(q / 2, q + 1), "sqrt(2^(e-1) / (2^e + 1))");
  return out;
}

ConstructionOutput build_product_action(const ConstructionOutput& inner, unsigned ell,
                                        const std::vector<Permutation>& top) {
  if (ell == 0)
    throw Error(ErrorKind::InadmissibleParameters, "ell must be positive");
  if (ell == 1 && top.empty()) {
    ConstructionOutput out = inner;
    out.name = "product:" + inner.name + ":1";
    return out;
  }
  std::vector<Permutation> topg = top;
  if (topg.empty()) {
    Permutation shift(ell);
    for (unsigned k = 0; k < ell; ++k)
      shift[k] = (k + 1) % ell;
    topg.push_back(shift);
  }
  for (const auto& t : topg)
    if (t.size() != ell || !is_permutation(t))
      throw Error(ErrorKind::InvalidGenerator, "top group generators must permute the ell coordinates");
  auto P = close_group(ell, topg);
  if (!is_transitive(*P))
    throw Error(ErrorKind::InvalidGenerator, "top group must be transitive");

  const auto& act = *inner.action;
  const auto& T = act.group();
  const std::size_t n = act.omega_size();
  double est = static_cast<double>(P->order());
  for (unsigned k = 0; k < ell; ++k)
    est *= static_cast<double>(T.order());
  if (est > static_cast<double>(kMaxGroupOrder))
    throw Error(ErrorKind::GroupTooLarge, "|T|^ell |P| exceeds the enumeration cap");
  std::size_t N = 1;
  for (unsigned k = 0; k < ell; ++k)
    N *= n;

  auto on_delta = [&](std::uint32_t t) {
    Permutation p(n);
    for (std::uint32_t j = 0; j < n; ++j)
      p[j] = act.point_image(t, j);
    return p;
  };
  // (s_0, ..., s_{ell-1}) acting coordinatewise, then the coordinates permuted by pi.
  auto product_perm = [&](const std::vector<Permutation>& coords, const Permutation& pi) {
    Permutation out(N);
    std::vector<std::uint32_t> x(ell), y(ell);
    for (std::uint32_t code = 0; code < N; ++code) {
      std::uint32_t c = code;
      for (unsigned k = 0; k < ell; ++k) {
        x[k] = c % n;
        c /= n;
      }
      for (unsigned k = 0; k < ell; ++k)
        y[pi[k]] = coords[k][x[k]];
      std::uint32_t img = 0;
      for (unsigned k = ell; k-- > 0;)
        img = img * n + y[k];
      out[code] = img;
    }
    return out;
  };
  const Permutation id_delta = identity_permutation(n);
  const Permutation id_top = identity_permutation(ell);

  std::vector<Permutation> gens;
  for (auto t : T.generators()) {
    std::vector<Permutation> coords(ell, id_delta);
    coords[0] = on_delta(t);
    gens.push_back(product_perm(coords, id_top));
  }
  for (const auto& t : topg)
    gens.push_back(product_perm(std::vector<Permutation>(ell, id_delta), t));
  auto g = close_group(static_cast<std::uint32_t>(N), gens);
  if (std::abs(static_cast<double>(g->order()) - est) > 0.5)
    throw Error(ErrorKind::InvalidGenerator, "inner action is not faithful");

  // All tuples from a subset of T, optionally with every top element.
  auto power_set = [&](const Elems& base, bool with_top) {
    std::vector<Permutation> bperm;
    for (auto s : base)
      bperm.push_back(on_delta(s));
    std::vector<Permutation> tops;
    if (with_top)
      for (std::uint32_t i = 0; i < P->order(); ++i)
        tops.push_back(P->permutation(i));
    else
      tops.push_back(id_top);
    Elems out;
    std::vector<std::size_t> idx(ell, 0);
    std::vector<Permutation> coords(ell);
    while (true) {
      for (unsigned k = 0; k < ell; ++k)
        coords[k] = bperm[idx[k]];
      for (const auto& pi : tops)
        out.push_back(must_find(*g, product_perm(coords, pi)));
      unsigned k = 0;
      while (k < ell && ++idx[k] == bperm.size())
        idx[k++] = 0;
      if (k == ell)
        break;
    }
    return sorted(out);
  };

  ConstructionOutput out;
  out.name = "product:" + inner.name + ":" + std::to_string(ell);
  out.action = make_action(g, point_stabilizer(*g, 0));
  out.named_subsets["H"] = {SubsetRole::Stabilizer, out.action->stabilizer()};
  const auto& S0 = inner.subset(inner.witness);
  out.named_subsets["S"] = {SubsetRole::Intersecting, power_set(S0, true)};
  out.witness = "S";
  add_basics(out);
  const std::int64_t s_size = ipow(static_cast<std::int64_t>(S0.size()), ell) * static_cast<std::int64_t>(P->order());
  out.expected["size:S"] = ExpectedValue::count(s_size, "|S_0|^ell |P|");
  out.expected["degree"] = ExpectedValue::count(static_cast<std::int64_t>(N), "|Delta|^ell");
  if (!inner.certificate.empty()) {
    const auto& R0 = inner.subset(inner.certificate);
    out.named_subsets["R"] = {SubsetRole::Semiregular, power_set(R0, false)};
    out.certificate = "R";
    const std::int64_t r_size = ipow(static_cast<std::int64_t>(R0.size()), ell);
    out.expected["size:R"] = ExpectedValue::count(r_size, "|R_0|^ell");
    record_semiregular_bound(out, static_cast<std::size_t>(r_size), "|G| / |R_0|^ell");
  }
  if (auto it = inner.expected.find("rho"); it != inner.expected.end())
    out.expected["rho"] = ExpectedValue::radical(rpow(it->second.square, ell), "inner rho to the power ell");
  else if (auto it2 = inner.expected.find("rho_lower"); it2 != inner.expected.end())
    out.expected["rho_lower"] = ExpectedValue::radical(rpow(it2->second.square, ell), "inner rho to the power ell");
  return out;
}

ConstructionOutput build_affine_tower(std::uint32_t p) {
  if (p % 2 == 0 || !is_prime(p) || std::uint64_t{p} * p * p * p > kMaxGroupOrder)
    throw Error(ErrorKind::InadmissibleParameters, "p must be an odd prime with p^4 <= 2^20");
  const FiniteField F = field_create(p, 2);
  auto g = agl1_group(F);
  const std::int64_t q = p;
  const std::uint32_t w = F.primitive_value();
  const std::uint32_t wp = F.exp(p + 1); // generates GF(p)^x
  const auto t1 = must_find(*g, affine_line_map(F, 1, 1));
  const auto tw = must_find(*g, affine_line_map(F, 1, w));
  const auto m = must_find(*g, affine_line_map(F, wp, 0));

  ConstructionOutput out;
  out.name = "affine:" + std::to_string(p);
  out.action = make_action(g, subgroup_closure(*g, {t1, m}));
  out.named_subsets["H"] = {SubsetRole::Stabilizer, out.action->stabilizer()};
  out.named_subsets["S"] = {SubsetRole::Intersecting, subgroup_closure(*g, {t1, tw, m})};
  // x -> w^i x for 0 <= i <= p: ratios have linear part outside GF(p).
  Elems R;
  for (std::uint32_t i = 0; i <= p; ++i)
    R.push_back(must_find(*g, affine_line_map(F, F.exp(i), 0)));
  out.named_subsets["R"] = {SubsetRole::Semiregular, sorted(R)};
  out.witness = "S";
  out.certificate = "R";
  add_basics(out);
  out.expected["order"] = ExpectedValue::count(q * q * (q * q - 1), "|AGL(1,q^2)|");
  out.expected["degree"] = ExpectedValue::count(q * (q + 1), "q(q+1)");
  out.expected["stabilizer_order"] = ExpectedValue::count(q * (q - 1), "|AGL(1,q)|");
  out.expected["size:S"] = ExpectedValue::count(q * q * (q - 1), "|F : E^x|, so |S|/|H| = q");
  out.expected["rho_lower"] = ExpectedValue::radical(Rational(q, q + 1), "sqrt(q/(q+1))");
  out.expected["bound"] = ExpectedValue::count(q * q * (q - 1), "|G| / (q+1) from the semiregular subset");
  return out;
}

ConstructionOutput build_table2(int row) {
  if (row < 1 || row > 5)
    throw Error(ErrorKind::InadmissibleParameters, "row must be 1..5");
  ConstructionOutput out;
  out.name = "table2:" + std::to_string(row);

  if (row == 5) {
    // A4 on the sum-zero submodule of GF(3)^4, basis f_i = e_i - e_4.
    const FiniteField F = field_create(3, 1);
    auto perm_matrix = [&](const std::vector<int>& sigma) {
      SmallMatrix A(F, 3);
      for (int i = 0; i < 3; ++i) {
        if (sigma[i] < 3)
          A.set_raw(i, sigma[i], 1);
        if (sigma[3] < 3)
          A.set_raw(i, sigma[3], F.add(A.raw(i, sigma[3]), F.neg(1)));
      }
      return A;
    };
    const SmallMatrix c3 = perm_matrix({1, 2, 0, 3});
    const SmallMatrix v1 = perm_matrix({1, 0, 3, 2});
    const SmallMatrix v2 = perm_matrix({2, 3, 0, 1});
    const auto G = perm_affine(F, 3, {c3, v1});
    if (G.group->order() != 324)
      throw Error(ErrorKind::InvalidGenerator, "3^3:A4 has the wrong order");
    Elems S = subgroup_closure(*G.group, {G.translation({1, 0, 0}), G.translation({0, 1, 0}),
                                          G.translation({0, 0, 1}), G.linear(v1), G.linear(v2)});
    choose_stabilizer_class(out, G.group, subgroup_conjugacy_classes(*G.group, 18), S);
    out.named_subsets["S"] = {SubsetRole::Intersecting, S};
    out.expected["order"] = ExpectedValue::count(324, "3^3 . 12");
    out.expected["degree"] = ExpectedValue::count(18, "table value");
    out.expected["size:S"] = ExpectedValue::count(108, "3^3:2^2");
    out.expected["rho"] = ExpectedValue::radical(Rational(2), "table value sqrt(2)");
    const auto prof = profile(out.action);
    try {
      out.named_subsets["R"] = {SubsetRole::Semiregular, derangement_cyclic(prof, 3)};
      out.certificate = "R";
      record_semiregular_bound(out, 3, "|G| / 3 from an order-3 semiregular subgroup");
    } catch (const Error&) {
      // no order-3 derangement subgroup: left to the exact solver
    }
  } else if (row <= 2) {
    const FiniteField F = field_create(5, 1);
    const auto qp = quaternion_search(F);
    auto L = sl23_generators(F, qp);
    std::vector<SmallMatrix> two{qp.a, qp.b};
    if (row == 2) {
      // SL(2,3).2: first matrix outside SL(2,3) normalising it with a group of order 48,
      // whose Sylow 2-subgroup extends Q8.
      const auto sl23 = matrix_closure(L, 24);
      std::optional<SmallMatrix> ext;
      for_each_matrix2(F, [&](const SmallMatrix& m) {
        if (!m.is_invertible() || contains(sl23, m))
          return false;
        const SmallMatrix mi = m.inverse();
        for (const auto& x : L)
          if (!contains(sl23, mi * x * m))
            return false;
        auto gens = L;
        gens.push_back(m);
        if (matrix_closure(gens, 48).size() != 48)
          return false;
        ext = m;
        return true;
      });
      if (!ext)
        throw Error(ErrorKind::NoSuchSubgroup, "no SL(2,3).2 in GL(2,5)");
      L.push_back(*ext);
      const auto big = matrix_closure(L, 48);
      const auto q8 = matrix_closure(two, 8);
      for (const auto& x : big) {
        if (contains(q8, x) || (x.order() & (x.order() - 1)) != 0)
          continue;
        auto gens = two;
        gens.push_back(x);
        if (matrix_closure(gens, 16).size() == 16) {
          two.push_back(x);
          break;
        }
      }
      if (two.size() != 3)
        throw Error(ErrorKind::NoSuchSubgroup, "no Sylow 2-subgroup of order 16");
    }
    const auto G = perm_affine(F, 2, L);
    const std::size_t order = row == 1 ? 600 : 1200;
    if (G.group->order() != order)
      throw Error(ErrorKind::InvalidGenerator, "affine group has the wrong order");
    Elems sg{G.translation({1, 0}), G.translation({0, 1})};
    for (const auto& x : two)
      sg.push_back(G.linear(x));
    Elems S = subgroup_closure(*G.group, sg);
    choose_stabilizer_class(out, G.group, subgroup_conjugacy_classes(*G.group, row == 1 ? 20 : 40), S);
    out.named_subsets["S"] = {SubsetRole::Intersecting, S};
    out.expected["order"] = ExpectedValue::count(static_cast<std::int64_t>(order), "25 |SL(2,3)| (times 2 in row 2)");
    out.expected["degree"] = ExpectedValue::count(30, "table value");
    out.expected["size:S"] = ExpectedValue::count(row == 1 ? 200 : 400, "5^2:Q8 (row 2: 5^2:Q8.2)");
    out.expected["rho"] = ExpectedValue::radical(Rational(10, 3), "table value sqrt(10/3)");
    const auto prof = profile(out.action);
    out.named_subsets["R"] = {SubsetRole::Semiregular, derangement_cyclic(prof, 3)};
    out.certificate = "R";
    record_semiregular_bound(out, 3, "|G| / 3 from an order-3 semiregular subgroup");
  } else {
    // 29^2:(SL(2,5) x 7) and 29^2:(SL(2,5) o 28) in the large-mode backend.
    const FiniteField F = field_create(29, 1);
    const auto qp = quaternion_search(F);
    auto L = sl23_generators(F, qp);
    const SmallMatrix u = sl25_extension(F, L);
    L.push_back(u);
    const std::uint32_t lam = F.exp(row == 3 ? 4 : 1);
    const SmallMatrix scalar = SmallMatrix::from_values(F, 2, {lam, 0, 0, lam});
    L.push_back(scalar);
    auto g = close_affine_group(29, 2, L);
    const std::size_t order = row == 3 ? 706440 : 1412880;
    if (g->order() != order)
      throw Error(ErrorKind::InvalidGenerator, "affine group has the wrong order");
    const SmallMatrix id = SmallMatrix::identity(F, 2);
    auto idx = [&](const std::vector<std::uint32_t>& v, const SmallMatrix& A) {
      return static_cast<std::uint32_t>(affine_index(*g, v, A));
    };
    // First eigenvector of the order-4 element a spans the translations of H.
    std::vector<std::uint32_t> ev;
    for (std::uint32_t code = 1; code < 29 * 29 && ev.empty(); ++code) {
      const std::uint32_t x0 = code / 29, x1 = code % 29;
      const std::uint32_t y0 = F.add(F.mul(x0, qp.a.raw(0, 0)), F.mul(x1, qp.a.raw(1, 0)));
      const std::uint32_t y1 = F.add(F.mul(x0, qp.a.raw(0, 1)), F.mul(x1, qp.a.raw(1, 1)));
      if (F.mul(x0, y1) == F.mul(x1, y0))
        ev = {x0, x1};
    }
    const std::uint32_t zero2 = 0;
    const std::vector<std::uint32_t> origin{zero2, zero2};
    auto H = subgroup_closure(*g, {idx(ev, id), idx(origin, qp.a), idx(origin, scalar)});
    auto S = subgroup_closure(*g, {idx({1, 0}, id), idx({0, 1}, id), idx(origin, qp.a), idx(origin, qp.b),
                                   idx(origin, scalar)});
    out.action = make_action(g, H);
    out.named_subsets["S"] = {SubsetRole::Intersecting, S};
    // <u> has order 5, coprime to |H|.
    out.named_subsets["R"] = {SubsetRole::Semiregular, subgroup_closure(*g, {idx(origin, u)})};
    out.certificate = "R";
    record_semiregular_bound(out, 5, "|G| / 5 from an order-5 semiregular subgroup");
    out.expected["order"] = ExpectedValue::count(static_cast<std::int64_t>(order), "29^2 |SL(2,5)| 7 (row 4: 29^2 |SL(2,5)| 14)");
    out.expected["degree"] = ExpectedValue::count(870, "29 . 30");
    out.expected["stabilizer_order"] = ExpectedValue::count(row == 3 ? 812 : 1624, "29:28 (row 4: 29:(2 x 28))");
    out.expected["size:S"] = ExpectedValue::count(row == 3 ? 47096 : 94192, "|S|/|H| = 58");
    out.expected["rho_lower"] = ExpectedValue::radical(Rational(58, 15), "table value sqrt(58/15)");
  }
  out.named_subsets["H"] = {SubsetRole::Stabilizer, out.action->stabilizer()};
  out.witness = "S";
  if (!out.expected.count("stabilizer_order"))
    out.expected["stabilizer_order"] =
        ExpectedValue::count(static_cast<std::int64_t>(out.action->stabilizer_order()), "|G| / |Omega|");
  return out;
}

ConstructionOutput build_suzuki_borel_example(unsigned e) {
  const SzBorel b = sz_borel_group(e);
  const std::int64_t q = b.params.q;
  auto H = subgroup_closure(*b.group, {b.index_of(1, 1, 1)});
  if (H.size() != 4)
    throw Error(ErrorKind::InvalidGenerator, "(1,1) should have order 4");
  ConstructionOutput out;
  out.name = "szborel:" + std::to_string(e);
  out.action = make_action(b.group, H);
  out.named_subsets["H"] = {SubsetRole::Stabilizer, out.action->stabilizer()};
  out.named_subsets["Q"] = {SubsetRole::Intersecting, b.sylow2()};
  out.named_subsets["K"] = {SubsetRole::Semiregular, b.torus()};
  out.witness = "Q";
  out.certificate = "K";
  add_basics(out);
  out.expected["order"] = ExpectedValue::count(q * q * (q - 1), "q^2 (q-1)");
  out.expected["degree"] = ExpectedValue::count(q * q * (q - 1) / 4, "q^2 (q-1) / 4");
  out.expected["size:Q"] = ExpectedValue::count(q * q, "Sylow 2-subgroup");
  out.expected["bound"] = ExpectedValue::count(q * q, "|G| / (q-1), K semiregular as gcd(q-1, 4) = 1");
  out.expected["rho"] = ExpectedValue::radical(Rational(q * q, 4 * (q - 1)), "q / (2 sqrt(q-1))");
  return out;
}

// ---------------------------------------------------------------------------
// Sylow p-normaliser of PSU(3,q)

namespace {

struct Psu3Model {
  explicit Psu3Model(std::uint32_t q_) : q(q_), F(field_create(q_, 2)) {}

  std::uint32_t q;
  FiniteField F; // GF(q^2)
  std::vector<std::pair<std::uint32_t, std::uint32_t>> Q; // (a, b), sorted
  std::uint32_t ca = 0, cb = 0;                           // conjugation multipliers
  GroupPtr group;
  std::vector<std::uint32_t> q_index; // group index of each Q member
  std::vector<std::uint32_t> torus;

  std::uint32_t frob(std::uint32_t x) const { return F.pow(x, q); }
  std::uint32_t point(std::uint32_t a, std::uint32_t b) const {
    auto it = std::lower_bound(Q.begin(), Q.end(), std::make_pair(a, b));
    return static_cast<std::uint32_t>(it - Q.begin());
  }
  std::pair<std::uint32_t, std::uint32_t> mul(std::pair<std::uint32_t, std::uint32_t> x,
                                              std::pair<std::uint32_t, std::uint32_t> y) const {
    const std::uint32_t a = F.sub(F.add(x.first, y.first), F.mul(frob(x.second), y.second));
    return {a, F.add(x.second, y.second)};
  }
  std::pair<std::uint32_t, std::uint32_t> conj(std::pair<std::uint32_t, std::uint32_t> x, std::uint32_t k) const {
    return {F.mul(x.first, F.pow(ca, k)), F.mul(x.second, F.pow(cb, k))};
  }
  // x -> (x y)^(g^k) on the points of Q.
  Permutation perm(std::uint32_t y, std::uint32_t k) const {
    Permutation p(Q.size());
    for (std::uint32_t x = 0; x < Q.size(); ++x) {
      const auto z = conj(mul(Q[x], Q[y]), k);
      p[x] = point(z.first, z.second);
    }
    return p;
  }
  SmallMatrix matrix(std::uint32_t a, std::uint32_t b) const {
    return SmallMatrix::from_values(F, 3, {1, a, F.neg(frob(b)), 0, 1, 0, 0, b, 1});
  }
};

void check_psu3_q(std::uint32_t q) {
  if (q % 2 == 0 || !is_prime(q) || (q + 1) % 3 == 0)
    throw Error(ErrorKind::InadmissibleQ, "q must be an odd prime with gcd(3, q+1) = 1");
  const std::uint64_t order = std::uint64_t{q} * q * q * (std::uint64_t{q} * q - 1);
  if (order > kMaxGroupOrder || order * q * q * q > (std::uint64_t{1} << 28))
    throw Error(ErrorKind::GroupTooLarge, "q^3 (q^2-1) exceeds the permutation-mode budget");
}

Psu3Model psu3_model(std::uint32_t q) {
  check_psu3_q(q);
  Psu3Model m(q);
  const auto& F = m.F;
  for (std::uint32_t a = 0; a < F.order(); ++a)
    for (std::uint32_t b = 0; b < F.order(); ++b)
      if (F.add(F.add(a, m.frob(a)), F.mul(b, m.frob(b))) == 0)
        m.Q.emplace_back(a, b);
  const std::uint64_t n = F.order() - 1;
  // g^-1 M(a,b) g = M(lambda^-(q+1) a, lambda^(1-2q) b)
  m.ca = F.exp(n - (q + 1) % n);
  m.cb = F.exp((1 + n * 2 - (2 * std::uint64_t{q}) % n) % n);
  std::uint32_t y = 0;
  while (m.Q[y].second == 0)
    ++y;
  m.group = close_group(static_cast<std::uint32_t>(m.Q.size()), {m.perm(y, 0), m.perm(0, 1)});
  const std::uint64_t expect = std::uint64_t{q} * q * q * (std::uint64_t{q} * q - 1);
  if (m.group->order() != expect)
    throw Error(ErrorKind::InvalidGenerator, "Q:<g> has the wrong order");
  for (std::uint32_t x = 0; x < m.Q.size(); ++x)
    m.q_index.push_back(must_find(*m.group, m.perm(x, 0)));
  for (std::uint32_t k = 0; k < n; ++k)
    m.torus.push_back(must_find(*m.group, m.perm(0, k)));
  return m;
}

} // namespace

Psu3Facts psu3_facts(std::uint32_t q) {
  const Psu3Model m = psu3_model(q);
  const auto& F = m.F;
  const auto& g = *m.group;
  Psu3Facts f;
  f.q_order = m.Q.size();

  const SmallMatrix lamd = SmallMatrix::from_values(
      F, 3,
      {F.primitive_value(), 0, 0, 0, F.pow(F.inv(F.primitive_value()), q), 0, 0, 0,
       F.pow(F.primitive_value(), q - 1)});
  const SmallMatrix lami = lamd.inverse();
  f.product_law_holds = true;
  f.conjugation_law_holds = true;
  for (const auto& x : m.Q) {
    const SmallMatrix mx = m.matrix(x.first, x.second);
    const auto c = m.conj(x, 1);
    if (!(lami * mx * lamd == m.matrix(c.first, c.second)))
      f.conjugation_law_holds = false;
    for (const auto& y : m.Q) {
      const auto z = m.mul(x, y);
      if (!(mx * m.matrix(y.first, y.second) == m.matrix(z.first, z.second)))
        f.product_law_holds = false;
    }
  }

  Elems center, by_equation;
  for (std::uint32_t i = 0; i < m.Q.size(); ++i) {
    const auto x = m.q_index[i];
    bool central = true;
    for (auto y : m.q_index)
      if (g.mult(x, y) != g.mult(y, x)) {
        central = false;
        break;
      }
    if (central)
      center.push_back(x);
    const auto [a, b] = m.Q[i];
    if (b == 0 && F.add(a, m.frob(a)) == 0)
      by_equation.push_back(x);
  }
  center = sorted(center);
  f.center_order = center.size();
  f.center_matches_equation = center == sorted(by_equation);

  std::optional<std::uint32_t> cls;
  f.noncentral_is_one_class = true;
  for (auto x : m.q_index) {
    if (std::binary_search(center.begin(), center.end(), x))
      continue;
    if (!cls) {
      cls = g.class_of(x);
      f.noncentral_class_size = g.class_size(*cls);
    } else if (g.class_of(x) != *cls) {
      f.noncentral_is_one_class = false;
    }
  }
  return f;
}

ConstructionOutput build_psu3_example(std::uint32_t q) {
  const Psu3Model m = psu3_model(q);
  const auto& g = *m.group;
  Elems Q = sorted(m.q_index);
  Elems H;
  for (std::size_t i = 0; i < Q.size() && H.empty(); ++i)
    for (std::size_t j = i + 1; j < Q.size(); ++j)
      if (g.mult(Q[i], Q[j]) != g.mult(Q[j], Q[i])) {
        H = subgroup_closure(g, {Q[i], Q[j]});
        break;
      }
  ConstructionOutput out;
  out.name = "psu3:" + std::to_string(q);
  out.action = make_action(m.group, H);
  out.named_subsets["H"] = {SubsetRole::Stabilizer, out.action->stabilizer()};
  out.named_subsets["Q"] = {SubsetRole::Intersecting, Q};
  out.named_subsets["K"] = {SubsetRole::Semiregular, sorted(m.torus)};
  Elems Z;
  for (std::uint32_t i = 0; i < m.Q.size(); ++i)
    if (m.Q[i].second == 0 && m.F.add(m.Q[i].first, m.frob(m.Q[i].first)) == 0)
      Z.push_back(m.q_index[i]);
  out.named_subsets["Z"] = {SubsetRole::Plain, sorted(Z)};
  out.witness = "Q";
  out.certificate = "K";
  add_basics(out);
  const std::int64_t qq = q;
  const std::int64_t p3 = qq * qq * qq; // p = q for prime q
  out.expected["order"] = ExpectedValue::count(qq * qq * qq * (qq * qq - 1), "q^3 (q^2-1)");
  out.expected["degree"] = ExpectedValue::count(qq * qq * qq * (qq * qq - 1) / p3, "q^3 (q^2-1) / p^3");
  out.expected["stabilizer_order"] = ExpectedValue::count(p3, "|<x, y>| = p^3");
  out.expected["size:Q"] = ExpectedValue::count(qq * qq * qq, "q^3");
  out.expected["size:Z"] = ExpectedValue::count(qq, "Z(Q) of order p^f");
  out.expected["bound"] = ExpectedValue::count(qq * qq * qq, "|G| / (q^2-1), torus semiregular");
  out.expected["rho"] =
      ExpectedValue::radical(Rational(qq * qq * qq * qq * qq * qq, p3 * qq * qq * qq * (qq * qq - 1)),
                             "q^3 / sqrt(p^3 q^3 (q^2-1))");
  return out;
}

ConstructionOutput build_psl2_odd_semiregular(std::uint32_t p, Psl2OddCase c, int param) {
  if (p < 5 || p > 13 || !is_prime(p))
    throw Error(ErrorKind::InadmissibleParameters, "p must be a prime in 5..13");
  const ProjectiveLine line(field_create(p, 1));
  auto g = line.psl2();
  const std::int64_t P = p;
  const std::int64_t order = P * (P * P - 1) / 2;
  ConstructionOutput out;
  Elems H, R;
  Rational rho_sq;
  std::string note;
  if (c == Psl2OddCase::Parabolic) {
    const std::int64_t ell = param == 0 ? 1 : param;
    if (ell < 1 || ell % 2 == 0 || ((P - 1) / 2) % ell != 0)
      throw Error(ErrorKind::InadmissibleParameters, "ell must be odd and divide (p-1)/2");
    const FiniteField& F = line.F;
    const std::uint32_t w = F.mul(F.primitive_value(), F.primitive_value());
    const auto t = must_find(*g, line.mobius(1, 1, 0, 1));
    const auto m = must_find(*g, line.mobius(F.pow(w, ((P - 1) / 2) / ell), 0, 0, 1));
    H = subgroup_closure(*g, {t, m});
    R = find_subgroup(*g, p + 1, shapes::dihedral);
    rho_sq = Rational(P - 1, 2 * (P + 1) * ell);
    note = "(sqrt2/2) sqrt((p-1)/((p+1) ell))";
    out.name = "psl2odd:" + std::to_string(p) + ":parabolic:" + std::to_string(ell);
  } else {
    const int eps = param == 0 ? 1 : param;
    if (eps != 1 && eps != -1)
      throw Error(ErrorKind::InadmissibleParameters, "eps must be 1 or -1");
    H = find_subgroup(*g, p + eps, shapes::dihedral);
    R = subgroup_closure(*g, {must_find(*g, line.mobius(1, 1, 0, 1))});
    const std::int64_t x = P + eps;
    rho_sq = Rational(P * P - 1, 2 * P * x);
    note = "(sqrt2/2) sqrt((p^2-1)/(p x))";
    out.name = "psl2odd:" + std::to_string(p) + ":dihedral:" + std::to_string(eps);
  }
  out.action = make_action(g, H);
  out.named_subsets["H"] = {SubsetRole::Stabilizer, out.action->stabilizer()};
  out.named_subsets["R"] = {SubsetRole::Semiregular, R};
  out.witness = "H";
  out.certificate = "R";
  add_basics(out);
  out.expected["order"] = ExpectedValue::count(order, "p(p^2-1)/2");
  out.expected["size:R"] = ExpectedValue::count(static_cast<std::int64_t>(R.size()), "D_(p+1) or Z_p");
  out.expected["rho_upper"] = ExpectedValue::radical(rho_sq, note);
  record_semiregular_bound(out, R.size(), "|G| / |R|");
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::string> construction_families() {
  return {"agl1st", "psl2even", "product", "affine", "table2", "szborel", "psu3", "psl2odd"};
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    out.push_back(cur);
  return out;
}

long parse_int(const std::string& s) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size())
      throw Error(ErrorKind::ParseError, "bad integer '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::ParseError, "bad integer '" + s + "'");
  }
}

} // namespace

ConstructionOutput build_named(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.empty())
    throw Error(ErrorKind::ParseError, "empty construction name");
  const std::string& fam = parts[0];
  auto need = [&](std::size_t n) {
    if (parts.size() != n)
      throw Error(ErrorKind::ParseError, "construction '" + spec + "' has the wrong number of parameters");
  };
  auto arg = [&](std::size_t i) {
    const long v = parse_int(parts[i]);
    if (v < 0)
      throw Error(ErrorKind::ParseError, "negative parameter in '" + spec + "'");
    return static_cast<std::uint32_t>(v);
  };
  if (fam == "agl1st") {
    need(2);
    return build_agl1_sharply_transitive(arg(1));
  }
  if (fam == "psl2even") {
    need(2);
    return build_psl2_even(arg(1));
  }
  if (fam == "affine") {
    need(2);
    return build_affine_tower(arg(1));
  }
  if (fam == "table2") {
    need(2);
    return build_table2(static_cast<int>(arg(1)));
  }
  if (fam == "szborel") {
    need(2);
    return build_suzuki_borel_example(arg(1));
  }
  if (fam == "psu3") {
    need(2);
    return build_psu3_example(arg(1));
  }
  if (fam == "psl2odd") {
    if (parts.size() < 3 || parts.size() > 4)
      throw Error(ErrorKind::ParseError, "psl2odd needs p:case[:param]");
    Psl2OddCase c;
    if (parts[2] == "parabolic")
      c = Psl2OddCase::Parabolic;
    else if (parts[2] == "dihedral")
      c = Psl2OddCase::Dihedral;
    else
      throw Error(ErrorKind::ParseError, "psl2odd case must be parabolic or dihedral");
    const int param = parts.size() == 4 ? static_cast<int>(parse_int(parts[3])) : 0;
    return build_psl2_odd_semiregular(arg(1), c, param);
  }
  if (fam == "product") {
    if (parts.size() < 2)
      throw Error(ErrorKind::ParseError, "product needs an inner construction");
    const auto inner_spec = spec.substr(fam.size() + 1);
    return build_product_action(build_named(inner_spec), 2);
  }
  throw Error(ErrorKind::ParseError, "unknown construction '" + fam + "'");
}

// ---------------------------------------------------------------------------

ConstructionCheck verify_construction(const ConstructionOutput& c) {
  return verify_construction(c, profile(c.action));
}

ConstructionCheck verify_construction(const ConstructionOutput& c, const ActionProfile& prof) {
  ConstructionCheck out;
  const auto& act = *c.action;
  const auto& g = act.group();
  bool ok = true;
  for (const auto& [name, sub] : c.named_subsets) {
    SubsetCheck s{name, sub.role, sub.elements.size(), false};
    switch (sub.role) {
    case SubsetRole::Stabilizer:
      s.ok = sub.elements == act.stabilizer() && is_subgroup(g, sub.elements);
      break;
    case SubsetRole::Intersecting:
      s.ok = is_intersecting(prof, sub.elements);
      break;
    case SubsetRole::Semiregular:
      s.ok = is_semiregular(prof, sub.elements);
      break;
    case SubsetRole::SharplyTransitive:
      s.ok = is_sharply_transitive(prof, sub.elements);
      break;
    case SubsetRole::Plain:
      s.ok = true;
      break;
    }
    ok = ok && s.ok;
    out.subsets.push_back(s);
  }

  std::vector<UpperSource> sources;
  std::optional<SemiregularBound> sb;
  if (!c.certificate.empty()) {
    try {
      sb = semiregular_upper_bound(prof, c.subset(c.certificate));
      sources.push_back(sb->source());
    } catch (const Error&) {
      ok = false;
    }
  }
  try {
    out.certificate = certify_rho(prof, c.subset(c.witness), sources);
  } catch (const Error&) {
    ok = false;
  }
  const auto& cert = out.certificate;

  for (const auto& [key, ev] : c.expected) {
    ExpectedCheck e{key, ev.to_string(), "", false};
    auto as_int = [&](std::uint64_t v) {
      e.computed = std::to_string(v);
      e.ok = ev.kind == ExpectedValue::Kind::Integer && static_cast<std::int64_t>(v) == ev.integer;
    };
    auto as_rad = [&](const Rational& sq, bool extra) {
      e.computed = sq.sqrt_string();
      e.ok = ev.kind == ExpectedValue::Kind::Radical && sq == ev.square && extra;
    };
    if (key == "order")
      as_int(g.order());
    else if (key == "degree")
      as_int(act.omega_size());
    else if (key == "stabilizer_order")
      as_int(act.stabilizer_order());
    else if (key.rfind("size:", 0) == 0) {
      auto it = c.named_subsets.find(key.substr(5));
      if (it != c.named_subsets.end())
        as_int(it->second.elements.size());
      else
        e.computed = "missing";
    } else if (key == "bound")
      as_int(cert.upper_floor);
    else if (key == "rho") {
      as_rad(cert.rho_lower_sq, cert.tight);
      if (!cert.tight)
        e.computed += " (not tight)";
    } else if (key == "rho_lower")
      as_rad(cert.rho_lower_sq, true);
    else if (key == "rho_upper")
      as_rad(sb ? sb->rho_upper_sq : cert.rho_upper_sq, true);
    else
      e.computed = "unchecked";
    ok = ok && e.ok;
    out.values.push_back(e);
  }

  if (!c.certificate.empty() && g.order() <= 10000) {
    const auto& R = c.subset(c.certificate);
    const auto& S = c.subset(c.witness);
    out.product_size = product_set_size(g, R, S);
    if (R.size() * S.size() > g.order())
      ok = false;
    if (R.size() * S.size() == g.order() && *out.product_size != g.order())
      ok = false;
  }
  out.ok = ok;
  return out;
}

} // namespace ekr
