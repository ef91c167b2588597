#include "ekr/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "ekr/algebra.hpp"
#include "ekr/constructions.hpp"
#include "ekr/derangement.hpp"
#include "ekr/error.hpp"
#include "ekr/perm.hpp"
#include "ekr/solver.hpp"
#include "ekr/spectra.hpp"
#include "ekr/suzuki.hpp"

namespace ekr {

namespace {

using Clock = std::chrono::steady_clock;
using Elems = std::vector<std::uint32_t>;

class Checks {
public:
  explicit Checks(std::vector<std::string>& out) : out_(out) {}
  bool check(bool cond, const std::string& what) {
    out_.push_back((cond ? "ok    " : "FAIL  ") + what);
    ok_ = ok_ && cond;
    return cond;
  }
  void note(const std::string& what) { out_.push_back("      " + what); }
  bool ok() const { return ok_; }

private:
  std::vector<std::string>& out_;
  bool ok_ = true;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string str(std::uint64_t x) { return std::to_string(x); }

SearchOptions search(double limit, unsigned threads, std::optional<double> prune = std::nullopt) {
  SearchOptions o;
  o.time_limit = limit;
  o.threads = threads;
  o.prune_bound = prune;
  return o;
}

double unit_hoffman(const ActionProfile& prof) {
  const SpectrumReport r = eigenvalues(collapse(prof, unit_weighting(prof)), static_cast<double>(prof.group().order()));
  return r.hoffman_bound.value_or(static_cast<double>(prof.group().order()));
}

bool verified(Checks& c, const ConstructionOutput& out, const ConstructionCheck& chk) {
  for (const auto& v : chk.values)
    if (!v.ok)
      c.note(out.name + " " + v.key + ": expected " + v.expected + ", computed " + v.computed);
  for (const auto& s : chk.subsets)
    if (!s.ok)
      c.note(out.name + " subset " + s.name + " fails its role " + to_string(s.role));
  return c.check(chk.ok, out.name + " verifies (" + str(chk.values.size()) + " expected values, " +
                             str(chk.subsets.size()) + " subsets)");
}

// PSL(2,2^e) on the cosets of the dihedral subgroup, exact.
void psl2_even_exact(Checks& c, unsigned e, std::uint64_t coclique, const Rational& rho_sq, bool check_hoffman,
                     unsigned threads) {
  const ConstructionOutput out = build_psl2_even(e);
  const ActionProfile prof = profile(out.action);
  verified(c, out, verify_construction(out, prof));
  const double h = unit_hoffman(prof);
  if (check_hoffman) {
    c.check(std::abs(h - static_cast<double>(coclique)) <= kHoffmanTolerance,
            "unit-weight Hoffman " + fmt(h) + " within 1e-6 of " + str(coclique));
    c.check(floor_bound(h) == coclique, "floored Hoffman = " + str(coclique));
  }
  // Prune at the Hoffman value: reaching it proves optimality.
  const SearchResult sr = max_coclique(DerangementGraph(prof), search(30, threads, h));
  c.check(sr.optimal && sr.best_set.size() == coclique,
          "exact max coclique " + str(sr.best_set.size()) + (sr.optimal ? " (optimal)" : " (not proven)"));
  c.check(is_intersecting(prof, sr.best_set), "solver witness intersecting");
  const RhoCertificate cert =
      certify_rho(prof, sr.best_set, {{UpperKind::ExactSolver, static_cast<double>(sr.best_set.size()), "exact"}});
  c.check(cert.rho_lower_sq == rho_sq && cert.tight,
          "rho = " + cert.rho_lower_sq.sqrt_string() + " tight, expected " + rho_sq.sqrt_string());
}

void crit_psl2_4(Checks& c, const AcceptanceOptions& o) { psl2_even_exact(c, 2, 12, Rational(2, 5), true, o.threads); }

void crit_psl2_8(Checks& c, const AcceptanceOptions& o) { psl2_even_exact(c, 3, 56, Rational(4, 9), false, o.threads); }

void crit_agl1(Checks& c, const AcceptanceOptions& o) {
  const ConstructionOutput out = build_agl1_sharply_transitive(9);
  const ActionProfile prof = profile(out.action);
  const Elems& R = out.subset("R");
  const GroupTable& g = prof.group();
  c.check(R.size() == 36 && out.action->omega_size() == 36, "|R| = " + str(R.size()) + " = |Omega| = 36");
  bool pairwise = std::binary_search(R.begin(), R.end(), 0u);
  for (std::size_t i = 0; i < R.size() && pairwise; ++i)
    for (std::size_t j = 0; j < R.size() && pairwise; ++j)
      if (i != j)
        pairwise = !out.action->fixes_some_point(g.mult(R[i], g.inverse(R[j])));
  c.check(pairwise, "every ratio of distinct members of R is fixed-point-free");
  c.check(is_sharply_transitive(prof, R), "R sharply transitive");
  const SearchResult sr = max_coclique(DerangementGraph(prof), search(1, o.threads));
  c.check(g.order() == 72, "|G| = 72 vertices");
  c.check(sr.optimal && sr.best_set.size() == 2 && out.action->stabilizer_order() == 2,
          "exact max coclique " + str(sr.best_set.size()) + " = |G_w| = 2");
  verified(c, out, verify_construction(out, prof));
}

void crit_table2_small(Checks& c, const AcceptanceOptions&) {
  const struct {
    int row;
    Rational rho;
    std::uint64_t bound;
  } rows[] = {{1, Rational(10, 3), 200}, {2, Rational(10, 3), 400}, {5, Rational(2), 108}};
  for (const auto& r : rows) {
    const ConstructionOutput out = build_table2(r.row);
    const ActionProfile prof = profile(out.action);
    const ConstructionCheck chk = verify_construction(out, prof);
    verified(c, out, chk);
    for (const auto& sc : out.stabilizer_classes)
      c.note("row " + std::to_string(r.row) + " stabilizer class " + str(sc.index) + ": S " +
             (sc.witness_intersecting ? "intersecting, rho = " + sc.rho_sq.sqrt_string() : "not intersecting"));
    const Elems& R = out.subset("R");
    c.check(R.size() == 3 && is_semiregular(prof, R), "row " + std::to_string(r.row) + ": order-3 semiregular subgroup");
    c.check(chk.certificate.upper_floor == r.bound && chk.certificate.tight &&
                chk.certificate.rho_lower_sq == r.rho,
            "row " + std::to_string(r.row) + ": tight, |S| <= " + str(chk.certificate.upper_floor) + ", rho = " +
                chk.certificate.rho_lower_sq.sqrt_string());
  }
}

void crit_table2_large(Checks& c, const AcceptanceOptions&) {
  for (int row : {3, 4}) {
    const ConstructionOutput out = build_table2(row);
    const ActionProfile prof = profile(out.action);
    const GroupTable& g = prof.group();
    const Elems& S = out.subset("S");
    const std::string tag = "row " + std::to_string(row) + ": ";
    c.check(g.large_mode(), tag + "large-mode group of order " + str(g.order()));
    c.check(is_intersecting(prof, S), tag + "S (" + str(S.size()) + " elements) intersecting");
    const Rational rho = rho_squared(S.size(), out.action->stabilizer_order(), out.action->omega_size());
    c.check(rho == Rational(58, 15), tag + "rho-lower = " + rho.sqrt_string());

    std::vector<UpperSource> uppers;
    if (!out.certificate.empty())
      uppers.push_back(semiregular_upper_bound(prof, out.subset(out.certificate)).source());
    const ClassAlgebra alg(prof);
    const SpectrumReport unit = eigenvalues(collapse(prof, alg, unit_weighting(prof)), static_cast<double>(g.order()));
    if (unit.hoffman_bound)
      uppers.push_back({UpperKind::Hoffman, *unit.hoffman_bound, "unit weights"});
    try {
      const OptimizedWeights ow = optimize_weights(prof, alg);
      uppers.push_back({UpperKind::Hoffman, ow.bound, "optimized weights"});
    } catch (const Error& e) {
      c.note(tag + "weight optimisation failed: " + e.what());
    }
    for (const auto& u : uppers)
      c.note(tag + "upper source " + to_string(u.kind) + " (" + u.note + "): " + fmt(u.value));
    const RhoCertificate cert = certify_rho(prof, S, uppers);
    c.check(cert.upper_floor >= S.size(), tag + "best upper bound " + str(cert.upper_floor) + " via " +
                                               to_string(cert.upper_kind) + " (" + cert.upper_note +
                                               "), gap " + str(cert.upper_floor - S.size()));
    verified(c, out, verify_construction(out, prof));
  }
}

void crit_wreath(Checks& c, const AcceptanceOptions&) {
  const ConstructionOutput out = build_named("product:psl2even:2");
  const ActionProfile prof = profile(out.action);
  const GroupTable& g = prof.group();
  const Elems& S = out.subset("S");
  const Elems& R = out.subset("R");
  c.check(S.size() == 288 && is_intersecting(prof, S), "|S| = 288 intersecting");
  bool z5sq = R.size() == 25 && is_subgroup(g, R);
  for (auto x : R)
    z5sq = z5sq && (x == 0 || g.element_order(x) == 5);
  for (auto x : R)
    for (auto y : R)
      z5sq = z5sq && g.mult(x, y) == g.mult(y, x);
  c.check(z5sq, "R is an elementary abelian subgroup of order 25");
  c.check(is_semiregular(prof, R), "R semiregular");
  const std::size_t rs = product_set_size(g, R, S);
  c.check(R.size() * S.size() == g.order() && rs == g.order(), "|R||S| = |RS| = |G| = " + str(g.order()));
  const ConstructionCheck chk = verify_construction(out, prof);
  verified(c, out, chk);
  c.check(chk.certificate.tight && chk.certificate.rho_lower_sq == Rational(4, 25),
          "tight, rho = " + chk.certificate.rho_lower_sq.sqrt_string());
}

void crit_suzuki_cross(Checks& c, const AcceptanceOptions&) {
  const SzGroup sz = load_sz8();
  const std::int64_t q = sz.params.q;
  // Literal targets; each is also recomputed from the printed d and tau.
  const Rational targets[] = {Rational(224), Rational(q * (q - 1) * (q - 1), 2), Rational(64), Rational(1040, 7),
                              Rational(64)};
  const auto checks = sz8_cross_validation(sz);
  c.check(checks.size() == 5, "five case weightings applicable at q = 8");
  for (std::size_t i = 0; i < checks.size() && i < 5; ++i) {
    const auto& x = checks[i];
    const SzCaseSpectrum spec = sz_case_spectrum(x.tag, q);
    const Rational printed = Rational(sz.params.group_order) * spec.printed_tau / (spec.printed_tau - spec.printed_d);
    const std::string tag = to_string(x.tag);
    c.check(x.ok && x.max_relative_error <= kSzCrossTolerance,
            tag + ": " + str(x.computed.size()) + " eigenvalues match, max rel error " + fmt(x.max_relative_error));
    c.check(printed == targets[i], tag + ": bound from printed d, tau = " + printed.to_string() + ", target " +
                                       targets[i].to_string());
    c.check(std::abs(x.computed_bound - printed.value()) <= kSzCrossTolerance * printed.value(),
            tag + ": collapsed-matrix Hoffman " + fmt(x.computed_bound));
  }
}

void crit_suzuki_sanity(Checks& c, const AcceptanceOptions&) {
  const SzGroup sz = load_sz8();
  const GroupTable& g = *sz.group;
  c.check(g.order() == 29120, "order " + str(g.order()));
  c.check(g.num_classes() == 11, str(g.num_classes()) + " conjugacy classes");
  std::uint64_t inv = 0;
  for (std::uint32_t x = 0; x < g.order(); ++x)
    inv += g.element_order(x) == 2;
  c.check(inv == 455, str(inv) + " involutions");
  const SzCharacterReport rep = sz_character_checks(8);
  c.check(rep.sum_of_squares == 29120, "sum of chi(1)^2 = " + std::to_string(rep.sum_of_squares));
  c.check(rep.max_orthogonality_error <= 1e-6, "column orthogonality error " + fmt(rep.max_orthogonality_error));
  c.check(rep.ok, "character table checks");
}

void crit_szborel(Checks& c, const AcceptanceOptions&) {
  const ConstructionOutput out = build_suzuki_borel_example(3);
  const ActionProfile prof = profile(out.action);
  const Elems& Q = out.subset("Q");
  const Elems& K = out.subset("K");
  c.check(Q.size() == 64 && is_intersecting(prof, Q), "Q (64 elements) intersecting");
  c.check(K.size() == 7 && is_semiregular(prof, K), "Z7 semiregular");
  const ConstructionCheck chk = verify_construction(out, prof);
  verified(c, out, chk);
  const auto& cert = chk.certificate;
  c.check(cert.tight && cert.rho_lower_sq == Rational(16, 7), "tight, rho = " + cert.rho_lower_sq.sqrt_string());
  c.check(cert.rho_lower > 1, "rho = " + fmt(cert.rho_lower) + " > 1");
}

void crit_psu3(Checks& c, const AcceptanceOptions&) {
  const Psu3Facts f = psu3_facts(7);
  c.check(f.q_order == 343, "|Q| = " + str(f.q_order));
  c.check(f.center_order == 7 && f.center_matches_equation, "Z(Q) of order 7 = {M(a,0) : a + a^q = 0}");
  c.check(f.product_law_holds && f.conjugation_law_holds, "product and torus conjugation laws");
  c.check(f.noncentral_class_size == 336 && f.noncentral_is_one_class,
          "non-central unipotent class of size " + str(f.noncentral_class_size));
  const ConstructionOutput out = build_psu3_example(7);
  const ActionProfile prof = profile(out.action);
  c.check(is_intersecting(prof, out.subset("Q")), "Q intersecting");
  c.check(out.subset("K").size() == 48 && is_semiregular(prof, out.subset("K")), "torus Z48 semiregular");
  const ConstructionCheck chk = verify_construction(out, prof);
  verified(c, out, chk);
  c.check(chk.certificate.tight && chk.certificate.rho_lower_sq == Rational(1, 48),
          "tight, rho = " + chk.certificate.rho_lower_sq.sqrt_string());
}

void crit_affine(Checks& c, const AcceptanceOptions& o) {
  for (std::uint32_t p : {3u, 5u}) {
    const ConstructionOutput out = build_affine_tower(p);
    const ActionProfile prof = profile(out.action);
    const Elems& S = out.subset("S");
    const std::string tag = "p = " + str(p) + ": ";
    c.check(is_intersecting(prof, S), tag + "S (" + str(S.size()) + " elements) intersecting");
    const Rational rho = rho_squared(S.size(), out.action->stabilizer_order(), out.action->omega_size());
    c.check(rho == Rational(p, p + 1), tag + "rho-lower = " + rho.sqrt_string());
    verified(c, out, verify_construction(out, prof));
    if (p == 3) {
      const SearchResult sr = max_coclique(DerangementGraph(prof), search(30, o.threads));
      c.check(prof.group().order() == 72 && sr.best_set.size() >= S.size(),
              tag + "exact solver: max coclique " + str(sr.best_set.size()) + (sr.optimal ? " (optimal)" : " (open)"));
      c.note(tag + (sr.optimal && sr.best_set.size() == S.size() ? "closed: S is maximum"
                                                                 : "gap " + str(sr.best_set.size() - S.size())));
    }
  }
}

// Random transitive actions: closure of two random permutations of small
// degree, acting on the cosets of a random cyclic or 2-generated subgroup.
struct RandomAction {
  std::string label;
  ActionPtr action;
};

std::vector<RandomAction> random_actions(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<RandomAction> out;
  while (out.size() < count) {
    const std::uint32_t n = 4 + static_cast<std::uint32_t>(rng() % 4);
    std::vector<Permutation> gens(2, identity_permutation(n));
    for (auto& p : gens)
      std::shuffle(p.begin(), p.end(), rng);
    const GroupPtr g = close_group(n, gens);
    if (g->order() < 6 || g->order() > 360)
      continue;
    std::vector<std::uint32_t> hg{static_cast<std::uint32_t>(1 + rng() % (g->order() - 1))};
    if (rng() % 2)
      hg.push_back(static_cast<std::uint32_t>(rng() % g->order()));
    Elems H = subgroup_closure(*g, hg);
    if (H.size() == g->order())
      continue;
    RandomAction ra;
    ra.label = "degree " + str(n) + " |G| = " + str(g->order()) + " |H| = " + str(H.size());
    ra.action = std::make_shared<const TransitiveAction>(g, std::move(H));
    out.push_back(std::move(ra));
  }
  return out;
}

std::vector<double> cluster(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v)
    if (out.empty() || std::abs(x - out.back()) > kSpectrumMatchTolerance * std::max(1.0, std::abs(x)))
      out.push_back(x);
  return out;
}

void field_properties(Checks& c, std::mt19937_64& rng) {
  const std::pair<std::uint32_t, std::uint32_t> fields[] = {{2, 1}, {2, 3}, {2, 4}, {2, 5}, {2, 7}, {3, 2},
                                                            {3, 3}, {5, 2}, {7, 2}, {13, 1}, {29, 1}, {31, 2}};
  std::size_t failures = 0, samples = 0;
  for (auto [p, f] : fields) {
    const FiniteField F = field_create(p, f);
    const std::uint32_t q = F.order();
    std::uniform_int_distribution<std::uint32_t> pick(0, q - 1);
    for (int it = 0; it < 200; ++it, ++samples) {
      const std::uint32_t a = pick(rng), b = pick(rng), x = pick(rng);
      bool ok = F.add(F.add(a, b), x) == F.add(a, F.add(b, x)) && F.mul(F.mul(a, b), x) == F.mul(a, F.mul(b, x)) &&
                F.add(a, b) == F.add(b, a) && F.mul(a, b) == F.mul(b, a) &&
                F.mul(a, F.add(b, x)) == F.add(F.mul(a, b), F.mul(a, x)) && F.add(a, F.neg(a)) == 0 &&
                F.pow(a, q) == a;
      if (a != 0)
        ok = ok && F.mul(a, F.inv(a)) == F.from_int(1) && (q - 1) % F.mult_order(a) == 0;
      if (p == 2 && f % 2 == 1 && f >= 3)
        ok = ok && frobenius_theta(F, frobenius_theta(F, a)) == F.mul(a, a);
      failures += !ok;
    }
    c.check(F.mult_order(F.primitive_value()) == q - 1, "GF(" + str(p) + "^" + str(f) + ") primitive element of order " +
                                                            str(q - 1));
  }
  c.check(failures == 0, "field axioms on " + str(samples) + " random triples (" + str(failures) + " failures)");

  failures = samples = 0;
  for (auto [p, f] : {std::pair<std::uint32_t, std::uint32_t>{5, 1}, {3, 2}, {29, 1}, {2, 3}}) {
    const FiniteField F = field_create(p, f);
    std::uniform_int_distribution<std::uint32_t> pick(0, F.order() - 1);
    for (int n : {2, 3}) {
      for (int it = 0; it < 100; ++it, ++samples) {
        auto rnd = [&] {
          std::vector<std::uint32_t> v(static_cast<std::size_t>(n * n));
          for (auto& e : v)
            e = pick(rng);
          return SmallMatrix::from_values(F, n, v);
        };
        const SmallMatrix A = rnd(), B = rnd(), C = rnd();
        bool ok = (A * B) * C == A * (B * C) && (A * B).determinant() == F.mul(A.determinant(), B.determinant());
        if (A.is_invertible())
          ok = ok && A * A.inverse() == SmallMatrix::identity(F, n) && A.pow(A.order()) == SmallMatrix::identity(F, n);
        failures += !ok;
      }
    }
  }
  c.check(failures == 0, "matrix associativity, multiplicative determinant and inverses on " + str(samples) +
                             " samples (" + str(failures) + " failures)");
}

void crit_properties(Checks& c, const AcceptanceOptions& o) {
  const auto actions = random_actions(o.seed, 20);
  std::size_t full_checked = 0, hoffman_checked = 0, spectrum_fail = 0, hoffman_fail = 0, pairs = 0, pair_fail = 0;
  for (const auto& ra : actions) {
    const ActionProfile prof = profile(ra.action);
    const GroupTable& g = prof.group();
    const std::size_t n = g.order();
    const ClassAlgebra alg(prof);
    const SpectrumReport rep = eigenvalues(collapse(prof, alg, unit_weighting(prof)), static_cast<double>(n));

    // (a) full |G| x |G| matrix of the unit-weighted derangement graph
    if (n <= 200) {
      std::vector<double> a(n * n, 0.0);
      for (std::uint32_t x = 0; x < n; ++x)
        for (std::uint32_t y = 0; y < n; ++y)
          a[x * n + y] = prof.is_derangement(g.mult(x, g.inverse(y))) ? 1.0 : 0.0;
      const auto full = cluster(jacobi_eigenvalues(std::move(a), n));
      const auto coll = cluster(rep.eigenvalues);
      bool same = full.size() == coll.size();
      for (std::size_t i = 0; same && i < full.size(); ++i)
        same = std::abs(full[i] - coll[i]) <= kSpectrumMatchTolerance * std::max(1.0, std::abs(full[i]));
      if (!same)
        c.note("spectrum mismatch on " + ra.label);
      spectrum_fail += !same;
      ++full_checked;
    }

    // (b) Hoffman bounds against the exact coclique
    const DerangementGraph graph(prof);
    const SearchResult co = max_coclique(graph, search(20, o.threads));
    if (co.optimal) {
      ++hoffman_checked;
      const double s = static_cast<double>(co.best_set.size());
      bool ok = !rep.hoffman_bound || *rep.hoffman_bound >= s - kHoffmanTolerance;
      try {
        ok = ok && optimize_weights(prof, alg).bound >= s - kHoffmanTolerance;
      } catch (const Error&) {
      }
      if (!ok)
        c.note("Hoffman below exact coclique on " + ra.label);
      hoffman_fail += !ok;
    }
    // (c) optimal clique times optimal coclique
    if (n <= 200 && co.optimal) {
      const SearchResult cl = max_clique(graph, search(20, o.threads));
      if (cl.optimal) {
        ++pairs;
        const bool ok = cl.best_set.size() * co.best_set.size() <= n && is_semiregular(prof, cl.best_set) &&
                        is_intersecting(prof, co.best_set);
        if (!ok)
          c.note("|R||S| > |G| on " + ra.label);
        pair_fail += !ok;
      }
    }
  }
  c.check(full_checked >= 5 && spectrum_fail == 0,
          "(a) collapsed = full-matrix spectrum on " + str(full_checked) + " of 20 random actions");
  c.check(hoffman_checked > 0 && hoffman_fail == 0,
          "(b) unit and optimized Hoffman >= exact coclique on " + str(hoffman_checked) + " actions");

  const char* certified[] = {"agl1st:3", "agl1st:7",  "agl1st:9", "psl2even:2", "psl2even:3", "psl2even:4",
                             "product:psl2even:2", "affine:3", "affine:5", "table2:1", "table2:2", "table2:5",
                             "table2:3", "table2:4", "szborel:3", "psu3:3",  "psu3:7", "psl2odd:7:parabolic",
                             "psl2odd:7:dihedral", "psl2odd:11:dihedral", "psl2odd:13:parabolic"};
  for (const char* name : certified) {
    const ConstructionOutput out = build_named(name);
    if (out.certificate.empty())
      continue;
    const ActionProfile prof = profile(out.action);
    const Elems& R = out.subset(out.certificate);
    const Elems& S = out.subset(out.witness);
    const bool ok = is_semiregular(prof, R) && is_intersecting(prof, S) && R.size() * S.size() <= prof.group().order();
    if (!ok)
      c.note("certified pair fails on " + std::string(name));
    ++pairs;
    pair_fail += !ok;
  }
  c.check(pair_fail == 0, "(c) |R||S| <= |G| on " + str(pairs) + " certified pairs");

  std::mt19937_64 rng(o.seed);
  field_properties(c, rng);
}

using Runner = void (*)(Checks&, const AcceptanceOptions&);

struct Entry {
  CriterionInfo info;
  Runner run;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e = {
      {{1, "psl2_4_exact", "psl2", 1}, crit_psl2_4},
      {{2, "psl2_8_exact", "psl2", 30}, crit_psl2_8},
      {{3, "agl1_9_sharply_transitive", "agl1", 1}, crit_agl1},
      {{4, "table2_rows_1_2_5_tight", "table2", 900}, crit_table2_small},
      {{5, "table2_rows_3_4_large", "table2", 600}, crit_table2_large},
      {{6, "wreath_psl2_4_ell2", "wreath", 300}, crit_wreath},
      {{7, "sz8_case_cross_validation", "suzuki", 120}, crit_suzuki_cross},
      {{8, "sz8_sanity", "suzuki", 60}, crit_suzuki_sanity},
      {{9, "sz_borel_e3", "szborel", 30}, crit_szborel},
      {{10, "psu3_q7", "psu3", 120}, crit_psu3},
      {{11, "affine_tower_p3_p5", "affine", 60}, crit_affine},
      {{12, "property_suites", "properties", 300}, crit_properties},
  };
  return e;
}

} // namespace

std::vector<CriterionInfo> acceptance_criteria() {
  std::vector<CriterionInfo> out;
  for (const auto& e : entries())
    out.push_back(e.info);
  return out;
}

bool criterion_selected(const CriterionInfo& c, const std::string& filter) {
  if (filter.empty())
    return true;
  std::stringstream ss(filter);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (tok == c.suite || tok == c.name || tok == std::to_string(c.id))
      return true;
  return false;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (const auto& e : entries()) {
    if (!criterion_selected(e.info, opts.only))
      continue;
    CriterionResult r;
    r.info = e.info;
    Checks c(r.details);
    const auto t0 = Clock::now();
    try {
      e.run(c, opts);
    } catch (const std::exception& ex) {
      c.check(false, std::string("exception: ") + ex.what());
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool in_time = r.seconds <= e.info.budget;
    if (!in_time)
      r.details.push_back("FAIL  runtime " + fmt(r.seconds) + " s exceeds budget " + fmt(e.info.budget) + " s");
    r.passed = c.ok() && in_time;
    if (on_result)
      on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result_line(const CriterionResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s %2d %-28s (%.2f s / %g s)", r.passed ? "PASS" : "FAIL", r.info.id,
                r.info.name.c_str(), r.seconds, r.info.budget);
  return buf;
}

std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n) {
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  double total = 0;
  for (double x : a)
    total += x * x;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        off += at(i, j) * at(i, j);
    if (off <= kOracleTolerance * kOracleTolerance * std::max(1.0, total))
      break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) < 1e-300)
          continue;
        const double theta = (at(q, q) - at(p, p)) / (2 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double cs = 1 / std::sqrt(t * t + 1), sn = t * cs;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = cs * akp - sn * akq;
          at(k, q) = sn * akp + cs * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = cs * apk - sn * aqk;
          at(q, k) = sn * apk + cs * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i)
    ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

} // namespace ekr
