#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ekr/derangement.hpp"
#include "ekr/error.hpp"
#include "ekr/solver.hpp"

using namespace ekr;

namespace {

GroupPtr symmetric(std::uint32_t n) {
  Permutation cycle(n), swap = identity_permutation(n);
  for (std::uint32_t i = 0; i < n; ++i)
    cycle[i] = (i + 1) % n;
  std::swap(swap[0], swap[1]);
  return close_group(n, {cycle, swap});
}

ActionPtr natural(GroupPtr g) { return std::make_shared<const TransitiveAction>(g, point_stabilizer(*g, 0)); }

std::uint32_t fixed_points(const Permutation& p) {
  std::uint32_t k = 0;
  for (std::uint32_t i = 0; i < p.size(); ++i)
    k += p[i] == i;
  return k;
}

// x fixes the coset H g iff g x g^-1 lies in H.
bool fixes_a_coset(const TransitiveAction& a, std::uint32_t x) {
  const GroupTable& g = a.group();
  const auto& H = a.stabilizer();
  for (std::uint32_t y = 0; y < g.order(); ++y)
    if (std::binary_search(H.begin(), H.end(), g.mult(g.mult(y, x), g.inverse(y))))
      return true;
  return false;
}

} // namespace

TEST_CASE("derangement counts of symmetric groups") {
  // subfactorials !4 = 9, !5 = 44
  for (auto [n, d] : {std::pair<std::uint32_t, std::uint64_t>{4, 9}, {5, 44}}) {
    const ActionProfile prof = profile(natural(symmetric(n)));
    CHECK(prof.derangement_count == d);
    std::uint64_t direct = 0;
    for (std::uint32_t x = 0; x < prof.group().order(); ++x)
      direct += fixed_points(prof.group().permutation(x)) == 0;
    CHECK(direct == d);
  }
}

TEST_CASE("derangement classes agree with coset fixed points") {
  const GroupPtr s5 = symmetric(5);
  const auto H = find_subgroup(*s5, 12, shapes::dihedral);
  REQUIRE(H.size() == 12);
  const auto act = std::make_shared<const TransitiveAction>(s5, H);
  const ActionProfile prof = profile(act);
  for (std::uint32_t x = 0; x < s5->order(); ++x)
    CHECK(prof.is_derangement(x) == !fixes_a_coset(*act, x));
}

TEST_CASE("intersecting and semiregular predicates") {
  const ActionProfile prof = profile(natural(symmetric(4)));
  const GroupTable& g = prof.group();
  CHECK(is_intersecting(prof, prof.action->stabilizer()));
  std::uint32_t der = 0;
  while (!prof.is_derangement(der))
    ++der;
  CHECK_FALSE(is_intersecting(prof, {0, der}));

  // Klein four-group: regular on 4 points
  std::vector<std::uint32_t> v4;
  for (std::uint32_t x = 0; x < g.order(); ++x)
    if (x == 0 || (g.element_order(x) == 2 && fixed_points(g.permutation(x)) == 0))
      v4.push_back(x);
  REQUIRE(v4.size() == 4);
  CHECK(is_semiregular(prof, v4));
  CHECK(is_sharply_transitive(prof, v4));
  CHECK_THROWS_AS(is_semiregular(prof, {der}), Error);

  const SemiregularBound b = semiregular_upper_bound(prof, v4);
  CHECK(b.bound == 6);
  CHECK(b.rho_upper_sq == Rational(1, 4));
  CHECK(product_set_size(g, v4, prof.action->stabilizer()) == 24);

  std::uint32_t transposition = 0;
  while (fixed_points(g.permutation(transposition)) != 2)
    ++transposition;
  CHECK_THROWS_AS(semiregular_upper_bound(prof, {0, transposition}), Error);
}

TEST_CASE("semiregular iff clique through the identity") {
  const GroupPtr s5 = symmetric(5);
  const auto act = std::make_shared<const TransitiveAction>(s5, find_subgroup(*s5, 10, shapes::dihedral));
  const ActionProfile prof = profile(act);
  const DerangementGraph graph(prof);
  std::mt19937_64 rng(0);
  for (int it = 0; it < 300; ++it) {
    std::vector<std::uint32_t> R{0};
    const int k = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < k; ++i)
      R.push_back(static_cast<std::uint32_t>(1 + rng() % 119));
    std::sort(R.begin(), R.end());
    R.erase(std::unique(R.begin(), R.end()), R.end());
    bool clique = true;
    for (auto a : R)
      for (auto b : R)
        if (a != b)
          clique = clique && graph.adjacent(a, b);
    CHECK(is_semiregular(prof, R) == clique);
  }
}

TEST_CASE("floor and rho arithmetic") {
  CHECK(floor_bound(11.9999999999) == 12);
  CHECK(floor_bound(12.0) == 12);
  CHECK(floor_bound(12.4) == 12);
  CHECK(rho_squared(12, 6, 10) == Rational(2, 5));
  CHECK(rho_squared(12, 6, 10).sqrt_string() == "sqrt(2/5)");
  CHECK(rho_squared(108, 18, 18) == Rational(2));
}

TEST_CASE("certificates") {
  const ActionProfile prof = profile(natural(symmetric(4)));
  const auto& H = prof.action->stabilizer();
  const RhoCertificate c = certify_rho(prof, H, {{UpperKind::Hoffman, 6.0000001, "unit"}});
  CHECK(c.tight);
  CHECK(c.upper_floor == 6);
  CHECK(c.upper_kind == UpperKind::Hoffman);
  CHECK(c.rho_lower_sq == Rational(1, 4));

  const RhoCertificate t = certify_rho(prof, {0}, {});
  CHECK(t.upper_kind == UpperKind::Trivial);
  CHECK(t.upper_floor == 24);
  CHECK_FALSE(t.tight);

  CHECK_THROWS_AS(certify_rho(prof, H, {{UpperKind::Hoffman, 5.5, "too small"}}), Error);
  std::uint32_t der = 1;
  while (!prof.is_derangement(der))
    ++der;
  try {
    certify_rho(prof, {0, der}, {});
    FAIL("expected InconsistentCertificate");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InconsistentCertificate);
  }
}
