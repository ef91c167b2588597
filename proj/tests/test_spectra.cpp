#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ekr/acceptance.hpp"
#include "ekr/constructions.hpp"
#include "ekr/error.hpp"
#include "ekr/solver.hpp"
#include "ekr/spectra.hpp"

using namespace ekr;

namespace {

GroupPtr symmetric(std::uint32_t n) {
  Permutation cycle(n), swap = identity_permutation(n);
  for (std::uint32_t i = 0; i < n; ++i)
    cycle[i] = (i + 1) % n;
  std::swap(swap[0], swap[1]);
  return close_group(n, {cycle, swap});
}

ActionProfile natural(std::uint32_t n) {
  const GroupPtr s = symmetric(n);
  return profile(std::make_shared<const TransitiveAction>(s, point_stabilizer(*s, 0)));
}

// Distinct eigenvalues of the full weighted |G| x |G| matrix by Jacobi.
std::vector<double> full_distinct(const ActionProfile& prof, const ClassWeighting& w) {
  const GroupTable& g = prof.group();
  const std::size_t n = g.order();
  std::vector<double> a(n * n);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y)
      a[x * n + y] = w.weights[g.class_of(g.mult(x, g.inverse(y)))];
  std::vector<double> ev = jacobi_eigenvalues(std::move(a), n);
  std::vector<double> out;
  for (auto it = ev.rbegin(); it != ev.rend(); ++it)
    if (out.empty() || std::abs(*it - out.back()) > 1e-6 * std::max(1.0, std::abs(*it)))
      out.push_back(*it);
  return out;
}

void same_spectrum(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-6).scale(1.0));
}

} // namespace

TEST_CASE("Jacobi oracle on known matrices") {
  const auto ev = jacobi_eigenvalues({2, 1, 1, 2}, 2);
  CHECK(ev[0] == doctest::Approx(1));
  CHECK(ev[1] == doctest::Approx(3));
  // path on three vertices
  const auto p = jacobi_eigenvalues({0, 1, 0, 1, 0, 1, 0, 1, 0}, 3);
  CHECK(p[0] == doctest::Approx(-std::sqrt(2.0)));
  CHECK(p[1] == doctest::Approx(0).scale(1.0));
  CHECK(p[2] == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("collapsed spectrum equals the full matrix spectrum") {
  std::vector<ActionProfile> profs{natural(4), natural(5), profile(build_psl2_even(2).action),
                                   profile(build_agl1_sharply_transitive(7).action),
                                   profile(build_affine_tower(3).action)};
  for (const auto& prof : profs) {
    const ClassWeighting w = unit_weighting(prof);
    const SpectrumReport r = eigenvalues(collapse(prof, w), static_cast<double>(prof.group().order()));
    same_spectrum(r.distinct, full_distinct(prof, w));
    CHECK(r.d == doctest::Approx(static_cast<double>(prof.derangement_count)));
  }
}

TEST_CASE("non-unit weightings too") {
  const ActionProfile prof = profile(build_psl2_even(3).action);
  ClassWeighting w = unit_weighting(prof);
  for (std::size_t c = 0; c < w.weights.size(); ++c)
    if (w.weights[c] != 0)
      w.weights[c] = 1.0 + static_cast<double>(prof.group().class_element_order(c) % 3);
  check_compatible(prof, w);
  const SpectrumReport r = eigenvalues(collapse(prof, w), static_cast<double>(prof.group().order()));
  same_spectrum(r.distinct, full_distinct(prof, w));
}

TEST_CASE("symmetric group Hoffman bound is (n-1)!") {
  CHECK(hoffman(eigenvalues(collapse(natural(4), unit_weighting(natural(4))), 24), 24) == doctest::Approx(6));
  const ActionProfile s5 = natural(5);
  const SpectrumReport r = eigenvalues(collapse(s5, unit_weighting(s5)), 120);
  CHECK(r.d == doctest::Approx(44));
  CHECK(r.tau == doctest::Approx(-11));
  CHECK(*r.hoffman_bound == doctest::Approx(24));
}

TEST_CASE("PSL(2,4) on 10 points") {
  const ActionProfile prof = profile(build_psl2_even(2).action);
  const SpectrumReport r = eigenvalues(collapse(prof, unit_weighting(prof)), 60);
  CHECK(r.d == doctest::Approx(24));
  CHECK(r.tau == doctest::Approx(-6));
  CHECK(std::abs(*r.hoffman_bound - 12) <= kHoffmanTolerance);
}

TEST_CASE("compatibility is enforced") {
  const ActionProfile prof = natural(4);
  ClassWeighting w = unit_weighting(prof);
  w.weights[prof.fixing_classes.back()] = 1;
  CHECK_THROWS_AS(check_compatible(prof, w), Error);

  const ActionProfile a5 = profile(build_psl2_even(2).action);
  ClassWeighting v = unit_weighting(a5);
  bool changed = false;
  for (auto c : a5.derangement_classes)
    if (a5.group().class_inverse(c) != c && !changed) {
      v.weights[c] = 2;
      changed = true;
    }
  if (changed)
    CHECK_THROWS_AS(check_compatible(a5, v), Error);
}

TEST_CASE("degenerate spectrum") {
  SpectrumReport r;
  r.d = 3;
  r.tau = 1;
  CHECK_THROWS_AS(hoffman(r, 10), Error);
}

TEST_CASE("optimized weights are valid and no worse than unit weights") {
  for (const char* name : {"psl2even:2", "psl2even:3", "affine:3", "table2:5", "agl1st:7"}) {
    const ActionProfile prof = profile(build_named(name).action);
    const ClassAlgebra alg(prof);
    const OptimizedWeights ow = optimize_weights(prof, alg);
    check_compatible(prof, ow.weighting);
    const auto again = weighted_hoffman(prof, alg, ow.weighting);
    REQUIRE(again);
    CHECK(*again == doctest::Approx(ow.bound));
    const SpectrumReport unit = eigenvalues(collapse(prof, alg, unit_weighting(prof)),
                                            static_cast<double>(prof.group().order()));
    CHECK(ow.bound <= *unit.hoffman_bound + 1e-6);
    const SearchResult co = max_coclique(DerangementGraph(prof));
    REQUIRE(co.optimal);
    CHECK(ow.bound >= static_cast<double>(co.best_set.size()) - 1e-6);
  }
}
