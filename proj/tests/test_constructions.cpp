#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "ekr/constructions.hpp"
#include "ekr/error.hpp"
#include "ekr/solver.hpp"

using namespace ekr;

namespace {

void require_verified(const ConstructionOutput& c) {
  const auto chk = verify_construction(c);
  for (const auto& s : chk.subsets)
    CHECK_MESSAGE(s.ok, c.name << " subset " << s.name);
  for (const auto& v : chk.values)
    CHECK_MESSAGE(v.ok, c.name << " " << v.key << ": expected " << v.expected << " got " << v.computed);
  CHECK(chk.ok);
}

// Every element of the subset is conjugate into the stabilizer.
bool conjugate_into_stabilizer(const ConstructionOutput& c, const std::vector<std::uint32_t>& subset) {
  const auto& g = c.action->group();
  std::set<std::uint32_t> classes;
  for (auto h : c.action->stabilizer())
    classes.insert(g.class_of(h));
  return std::all_of(subset.begin(), subset.end(), [&](std::uint32_t x) { return classes.count(g.class_of(x)) > 0; });
}

// Exactly one member maps any point to any other, counted on the action directly.
bool sharply_transitive_by_count(const TransitiveAction& a, const std::vector<std::uint32_t>& R) {
  const std::size_t n = a.omega_size();
  for (std::uint32_t w = 0; w < n; ++w) {
    std::vector<int> hits(n, 0);
    for (auto r : R)
      ++hits[a.point_image(r, w)];
    if (std::any_of(hits.begin(), hits.end(), [](int h) { return h != 1; }))
      return false;
  }
  return true;
}

} // namespace

TEST_CASE("sharply transitive subsets of AGL(1,q)") {
  for (std::uint32_t q : {3u, 5u, 7u, 9u, 11u, 13u, 25u, 27u}) {
    const auto c = build_agl1_sharply_transitive(q);
    CHECK(c.action->omega_size() == q * (q - 1) / 2);
    CHECK(sharply_transitive_by_count(*c.action, c.subset("R")));
    require_verified(c);
  }
  CHECK(build_agl1_sharply_transitive(3).action->omega_size() == 3);
  // q = 3 mod 4: R is the regular subgroup P:<g^2>
  const auto c7 = build_agl1_sharply_transitive(7);
  CHECK(is_subgroup(c7.action->group(), c7.subset("R")));
  CHECK(c7.subset("R").size() == 21);
  // q = 1 mod 4: the coset-removal set is not a subgroup
  const auto c9 = build_agl1_sharply_transitive(9);
  CHECK(c9.subset("R").size() == 36);
  CHECK_FALSE(is_subgroup(c9.action->group(), c9.subset("R")));
  CHECK_THROWS_AS(build_agl1_sharply_transitive(8), Error);
  try {
    build_agl1_sharply_transitive(4);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EvenQ);
  }
  CHECK_THROWS_AS(build_agl1_sharply_transitive(15), Error);
}

TEST_CASE("AGL(1,9) has the EKR property by exact search") {
  const auto c = build_agl1_sharply_transitive(9);
  const auto prof = profile(c.action);
  const DerangementGraph graph(prof);
  CHECK(graph.size() == 72);
  const auto r = max_coclique(graph);
  CHECK(r.optimal);
  CHECK(r.best_set.size() == 2);
}

TEST_CASE("PSL(2,2^e) on cosets of the dihedral subgroup") {
  const std::size_t degree[] = {10, 36, 136};
  for (unsigned e = 2; e <= 4; ++e) {
    const auto c = build_psl2_even(e);
    CHECK(c.action->omega_size() == degree[e - 2]);
    require_verified(c);
  }
  const auto c2 = build_psl2_even(2);
  CHECK(c2.expected.at("rho").square == Rational(2, 5));
  CHECK(build_psl2_even(3).expected.at("rho").to_string() == "sqrt(4/9)");
  // the parabolic S = A4 is conjugate into H element by element
  CHECK(conjugate_into_stabilizer(c2, c2.subset("S")));
  const auto prof = profile(c2.action);
  const auto r = max_coclique(DerangementGraph(prof));
  CHECK(r.optimal);
  CHECK(r.best_set.size() == 12);
  CHECK_THROWS_AS(build_psl2_even(5), Error);
}

TEST_CASE("product action of PSL(2,4) wr Z2") {
  const auto inner = build_psl2_even(2);
  const auto c = build_product_action(inner, 2);
  CHECK(c.action->group().order() == 7200);
  CHECK(c.action->omega_size() == 100);
  CHECK(c.subset("S").size() == 288);
  CHECK(c.subset("R").size() == 25);
  CHECK(c.expected.at("rho").square == Rational(4, 25));
  require_verified(c);
  // every element of S fixes a point of Delta^2 in the natural action
  const auto& g = c.action->group();
  for (auto s : c.subset("S")) {
    bool fixes = false;
    for (std::uint32_t pt = 0; pt < g.degree() && !fixes; ++pt)
      fixes = g.image(s, pt) == pt;
    CHECK(fixes);
  }
  CHECK(product_set_size(g, c.subset("R"), c.subset("S")) == 7200);
  // ell = 1 is the inner construction
  const auto same = build_product_action(inner, 1);
  CHECK(same.subset("S") == inner.subset("S"));
  CHECK(same.action->omega_size() == 10);
  CHECK_THROWS_AS(build_product_action(build_psl2_even(4), 2), Error);
}

TEST_CASE("affine tower AGL(1,p^2) over AGL(1,p)") {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const auto c = build_affine_tower(p);
    CHECK(c.action->omega_size() == p * (p + 1));
    CHECK(c.subset("S").size() == p * p * (p - 1));
    CHECK(c.expected.at("rho_lower").square == Rational(p, p + 1));
    require_verified(c);
    const auto& g = c.action->group();
    for (auto x : c.subset("S")) {
      const auto o = g.element_order(x);
      CHECK((o == p || (p - 1) % o == 0));
    }
    CHECK(conjugate_into_stabilizer(c, c.subset("S")));
  }
  const auto c3 = build_affine_tower(3);
  CHECK(c3.action->group().order() == 72);
  const auto r = max_coclique(DerangementGraph(profile(c3.action)));
  CHECK(r.optimal);
  CHECK(r.best_set.size() == 18);
  CHECK_THROWS_AS(build_affine_tower(2), Error);
  CHECK_THROWS_AS(build_affine_tower(9), Error);
}

TEST_CASE("affine groups with rho above one") {
  const auto r1 = build_table2(1);
  CHECK(r1.action->group().order() == 600);
  CHECK(r1.action->omega_size() == 30);
  CHECK(r1.subset("S").size() == 200);
  require_verified(r1);
  const auto r2 = build_table2(2);
  CHECK(r2.action->group().order() == 1200);
  CHECK(r2.subset("S").size() == 400);
  require_verified(r2);
  const auto r5 = build_table2(5);
  CHECK(r5.action->group().order() == 324);
  CHECK(r5.action->omega_size() == 18);
  CHECK(r5.subset("S").size() == 108);
  CHECK(r5.expected.at("rho").square == Rational(2));
  require_verified(r5);
  // stabilizer classes: at least one carries the intersecting witness
  for (const auto* c : {&r1, &r2, &r5}) {
    REQUIRE_FALSE(c->stabilizer_classes.empty());
    CHECK(std::any_of(c->stabilizer_classes.begin(), c->stabilizer_classes.end(),
                      [](const StabilizerClassReport& r) { return r.witness_intersecting; }));
  }
  for (const auto* c : {&r1, &r2, &r5})
    CHECK(conjugate_into_stabilizer(*c, c->subset("S")));
  CHECK_THROWS_AS(build_table2(6), Error);
}

TEST_CASE("Suzuki Borel example") {
  const auto c = build_suzuki_borel_example(3);
  CHECK(c.action->group().order() == 448);
  CHECK(c.action->omega_size() == 112);
  CHECK(c.subset("Q").size() == 64);
  CHECK(c.subset("K").size() == 7);
  CHECK(c.expected.at("rho").square == Rational(16, 7));
  require_verified(c);
  CHECK(conjugate_into_stabilizer(c, c.subset("Q")));
  const auto chk = verify_construction(c);
  CHECK(chk.certificate.tight);
  CHECK(chk.certificate.rho_lower > 1.0);
}

TEST_CASE("unitary Sylow normaliser") {
  const auto f = psu3_facts(7);
  CHECK(f.q_order == 343);
  CHECK(f.center_order == 7);
  CHECK(f.center_matches_equation);
  CHECK(f.product_law_holds);
  CHECK(f.conjugation_law_holds);
  CHECK(f.noncentral_class_size == 336);
  CHECK(f.noncentral_is_one_class);

  const auto c = build_psu3_example(7);
  CHECK(c.action->group().order() == 16464);
  CHECK(c.action->omega_size() == 48);
  CHECK(c.expected.at("rho").square == Rational(1, 48));
  require_verified(c);

  const auto f3 = psu3_facts(3);
  CHECK(f3.center_order == 3);
  CHECK(f3.noncentral_class_size == 24);
  require_verified(build_psu3_example(3));

  for (std::uint32_t q : {5u, 9u, 4u}) {
    try {
      build_psu3_example(q);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InadmissibleQ);
    }
  }
}

TEST_CASE("PSL(2,p) with large semiregular subgroups") {
  const auto a = build_psl2_odd_semiregular(5, Psl2OddCase::Parabolic);
  CHECK(a.subset("R").size() == 6);
  CHECK(a.expected.at("rho_upper").value() < std::sqrt(0.5));
  require_verified(a);
  const auto b = build_psl2_odd_semiregular(7, Psl2OddCase::Dihedral);
  CHECK(b.action->stabilizer_order() == 8);
  CHECK(b.expected.at("rho_upper").square == Rational(48, 2 * 7 * 8));
  require_verified(b);
  const auto c = build_psl2_odd_semiregular(11, Psl2OddCase::Dihedral);
  CHECK(c.expected.at("rho_upper").square == Rational(10, 2 * 11));
  require_verified(c);
  require_verified(build_psl2_odd_semiregular(13, Psl2OddCase::Parabolic, 3));
  require_verified(build_psl2_odd_semiregular(13, Psl2OddCase::Dihedral, -1));
  CHECK_THROWS_AS(build_psl2_odd_semiregular(7, Psl2OddCase::Parabolic, 2), Error);
  CHECK_THROWS_AS(build_psl2_odd_semiregular(17, Psl2OddCase::Dihedral), Error);
}

TEST_CASE("rebuilding gives identical indexing") {
  for (const char* name : {"agl1st:9", "psl2even:3", "affine:3", "table2:5", "szborel:3", "psl2odd:7:dihedral"}) {
    const auto a = build_named(name);
    const auto b = build_named(name);
    CHECK(a.action->stabilizer() == b.action->stabilizer());
    REQUIRE(a.named_subsets.size() == b.named_subsets.size());
    for (const auto& [k, v] : a.named_subsets)
      CHECK(v.elements == b.named_subsets.at(k).elements);
    const auto& ga = a.action->group();
    const auto& gb = b.action->group();
    REQUIRE(ga.order() == gb.order());
    for (std::uint32_t x = 0; x < ga.order(); x += 7)
      CHECK(ga.permutation(x) == gb.permutation(x));
  }
}

TEST_CASE("named dispatch and verification failures") {
  CHECK(build_named("product:psl2even:2").action->omega_size() == 100);
  CHECK(build_named("psl2odd:5:parabolic").name == "psl2odd:5:parabolic:1");
  CHECK(construction_families().size() == 8);
  for (const char* bad : {"", "nope:3", "agl1st", "agl1st:x", "psl2odd:7:weird", "table2:1:2"}) {
    try {
      build_named(bad);
      CHECK_MESSAGE(false, bad);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ParseError);
    }
  }
  auto c = build_psl2_even(2);
  c.expected["rho"] = ExpectedValue::radical(Rational(1, 2), "wrong on purpose");
  CHECK_FALSE(verify_construction(c).ok);
  auto d = build_psl2_even(2);
  d.named_subsets["S"].elements.push_back(d.subset("R")[1]);
  CHECK_FALSE(verify_construction(d).ok);
}
