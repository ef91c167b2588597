#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "ekr/error.hpp"
#include "ekr/perm.hpp"

using namespace ekr;

namespace {

GroupPtr a5() {
  // a 3-cycle and a 5-cycle generate A5
  return close_group(5, {{1, 2, 0, 3, 4}, {1, 2, 3, 4, 0}});
}

std::multiset<std::size_t> class_size_multiset(const GroupTable& g) {
  std::multiset<std::size_t> s;
  for (std::size_t c = 0; c < g.num_classes(); ++c)
    s.insert(g.class_size(c));
  return s;
}

// Brute-force conjugacy classes by conjugating with every element.
std::set<std::set<std::uint32_t>> brute_classes(const GroupTable& g) {
  std::set<std::set<std::uint32_t>> out;
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    std::set<std::uint32_t> cls;
    for (std::uint32_t y = 0; y < g.order(); ++y)
      cls.insert(g.conjugate(x, y));
    out.insert(cls);
  }
  return out;
}

} // namespace

TEST_CASE("cyclic group of order 3") {
  auto g = close_group(3, {{1, 2, 0}});
  CHECK(g->order() == 3);
  CHECK(g->num_classes() == 3);
  CHECK(g->permutation(0) == Permutation{0, 1, 2});
}

TEST_CASE("A5 enumeration and classes") {
  auto g = a5();
  REQUIRE(g->order() == 60);
  CHECK(class_size_multiset(*g) == std::multiset<std::size_t>{1, 15, 20, 12, 12});
  CHECK(g->class_size(0) == 1);
  CHECK(g->class_rep(0) == 0);
  // elements sorted lexicographically
  for (std::uint32_t a = 1; a < g->order(); ++a)
    CHECK(g->permutation(a - 1) < g->permutation(a));
  // classes agree with brute force
  std::set<std::set<std::uint32_t>> ours;
  for (std::size_t c = 0; c < g->num_classes(); ++c) {
    auto m = g->class_members(c);
    ours.insert(std::set<std::uint32_t>(m.begin(), m.end()));
  }
  CHECK(ours == brute_classes(*g));
  // |x^G| |C(x)| = |G| by direct centralizer scan
  for (std::size_t c = 0; c < g->num_classes(); ++c) {
    std::size_t cent = 0;
    const auto x = g->class_rep(c);
    for (std::uint32_t y = 0; y < g->order(); ++y)
      cent += g->mult(x, y) == g->mult(y, x);
    CHECK(cent * g->class_size(c) == g->order());
  }
}

TEST_CASE("multiplication matches permutation composition") {
  auto g = a5();
  for (std::uint32_t a = 0; a < g->order(); ++a)
    for (std::uint32_t b = 0; b < g->order(); ++b)
      REQUIRE(g->permutation(g->mult(a, b)) == compose(g->permutation(a), g->permutation(b)));
  for (std::uint32_t a = 0; a < g->order(); ++a) {
    CHECK(g->mult(a, g->inverse(a)) == 0);
    std::uint32_t k = 1, x = a;
    while (x != 0) {
      x = g->mult(x, a);
      ++k;
    }
    CHECK(k == g->element_order(a));
  }
}

TEST_CASE("generator order does not change the group") {
  auto g1 = close_group(5, {{1, 2, 0, 3, 4}, {1, 2, 3, 4, 0}});
  auto g2 = close_group(5, {{1, 2, 3, 4, 0}, {1, 2, 0, 3, 4}, {1, 2, 0, 3, 4}});
  REQUIRE(g1->order() == g2->order());
  for (std::uint32_t a = 0; a < g1->order(); ++a) {
    CHECK(g1->permutation(a) == g2->permutation(a));
    CHECK(g1->class_of(a) == g2->class_of(a));
  }
}

TEST_CASE("classes closed under generator conjugation") {
  auto g = close_group(6, {{1, 0, 2, 3, 4, 5}, {1, 2, 3, 4, 5, 0}});
  CHECK(g->order() == 720);
  CHECK(g->num_classes() == 11);
  for (std::uint32_t x = 0; x < g->order(); ++x)
    for (auto s : g->generators())
      CHECK(g->class_of(g->conjugate(x, s)) == g->class_of(x));
}

TEST_CASE("coset actions") {
  auto g = a5();
  SUBCASE("whole group gives one point") {
    std::vector<std::uint32_t> all(60);
    for (std::uint32_t i = 0; i < 60; ++i)
      all[i] = i;
    auto act = coset_action(g, all);
    CHECK(act.omega_size() == 1);
  }
  SUBCASE("trivial subgroup gives the regular action") {
    auto act = coset_action(g, {0});
    CHECK(act.omega_size() == 60);
    for (std::uint32_t x = 1; x < 60; ++x)
      CHECK_FALSE(act.fixes_some_point(x));
  }
  SUBCASE("S3 gives degree 10") {
    auto h = find_subgroup(*g, 6, shapes::dihedral);
    CHECK(h.size() == 6);
    auto act = coset_action(g, h);
    CHECK(act.omega_size() == 10);
    CHECK(act.stabilizer_order() * act.omega_size() == 60);
    for (auto x : h)
      CHECK(act.point_image(x, 0) == 0);
    // the action is a homomorphism
    for (std::uint32_t a = 0; a < 60; a += 7)
      for (std::uint32_t b = 0; b < 60; b += 5)
        for (std::uint32_t p = 0; p < 10; ++p)
          CHECK(act.point_image(g->mult(a, b), p) == act.point_image(b, act.point_image(a, p)));
  }
  SUBCASE("non-subgroup rejected") {
    try {
      coset_action(g, {0, 1});
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotASubgroup);
    }
  }
}

TEST_CASE("subgroup search and classes") {
  auto z6 = close_group(6, {{1, 2, 3, 4, 5, 0}});
  CHECK(subgroup_conjugacy_classes(*z6, 3).size() == 1);
  auto g = a5();
  CHECK(subgroup_conjugacy_classes(*g, 6).size() == 1);
  CHECK(subgroup_conjugacy_classes(*g, 12).size() == 1);
  CHECK(subgroup_conjugacy_classes(*g, 4).size() == 1);
  CHECK(subgroup_conjugacy_classes(*g, 5).size() == 1);
  CHECK(find_subgroup(*g, 60, shapes::any).size() == 60);
  CHECK(find_subgroup(*g, 10, shapes::dihedral).size() == 10);
  CHECK_THROWS_AS(find_subgroup(*g, 6, shapes::cyclic), Error);
  auto h = find_subgroup(*g, 12, shapes::any);
  CHECK(is_subgroup(*g, h));
  CHECK_FALSE(shapes::abelian(*g, h));
  // S4 has Frobenius subgroups of order 6 (S3) and 12 (A4 is Z2^2:Z3, not metacyclic)
  auto s4 = close_group(4, {{1, 0, 2, 3}, {1, 2, 3, 0}});
  CHECK(shapes::frobenius(*s4, find_subgroup(*s4, 6, shapes::any)));
  CHECK_FALSE(shapes::frobenius(*s4, find_subgroup(*s4, 12, shapes::any)));
}

TEST_CASE("affine backend agrees with permutation backend") {
  auto F = field_create(3, 1);
  std::vector<SmallMatrix> gens{SmallMatrix::from_values(F, 2, {0, 1, 2, 0}),
                                SmallMatrix::from_values(F, 2, {1, 1, 0, 1})};
  auto big = close_affine_group(3, 2, gens);
  CHECK(big->large_mode());
  CHECK(big->order() == 9 * 24);
  std::vector<Permutation> pg;
  for (auto x : big->generators())
    pg.push_back(big->permutation(x));
  auto small = close_group(9, pg);
  REQUIRE(small->order() == big->order());
  CHECK(small->num_classes() == big->num_classes());
  std::mt19937_64 rng(0);
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(big->order() - 1));
  for (int it = 0; it < 2000; ++it) {
    auto a = pick(rng), b = pick(rng);
    CHECK(big->permutation(big->mult(a, b)) == compose(big->permutation(a), big->permutation(b)));
    CHECK(big->permutation(big->inverse(a)) == invert(big->permutation(a)));
    auto sa = small->find(big->permutation(a));
    REQUIRE(sa >= 0);
    CHECK(small->element_order(static_cast<std::uint32_t>(sa)) == big->element_order(a));
  }
  CHECK(big->permutation(0) == identity_permutation(9));
}

TEST_CASE("group file round trip and errors") {
  const std::string text = "# comment\n\ndegree 4\ngen 1 0 2 3  # swap\ngen 1 2 3 0\n";
  auto f = parse_group_file(text);
  CHECK(f.degree == 4);
  CHECK(f.generators.size() == 2);
  CHECK(parse_group_file(format_group_file(f, "x")).generators == f.generators);
  CHECK_THROWS_AS(parse_group_file("gen 0 1\n"), Error);
  CHECK_THROWS_AS(parse_group_file("degree 3\ngen 0 1\n"), Error);
  CHECK_THROWS_AS(parse_group_file("degree 3\ngen 0 1 x\n"), Error);
  try {
    close_group(3, {{0, 0, 1}});
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidGenerator);
  }
}

TEST_CASE("closure cap") {
  // S_10 has 3628800 elements
  Permutation t = identity_permutation(10), c(10);
  std::swap(t[0], t[1]);
  for (std::uint32_t i = 0; i < 10; ++i)
    c[i] = (i + 1) % 10;
  try {
    close_group(10, {t, c});
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GroupTooLarge);
  }
}
