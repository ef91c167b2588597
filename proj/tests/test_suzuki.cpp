#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "ekr/error.hpp"
#include "ekr/suzuki.hpp"

using namespace ekr;

namespace {

const SzGroup& sz8() {
  static const SzGroup g = load_sz8();
  return g;
}

std::vector<double> table_spectrum(const SzCaseSpectrum& s) {
  const SzCharacterTable t(s.params);
  std::vector<double> w;
  for (const auto& c : t.classes())
    w.push_back(s.class_weight(c));
  auto ev = t.eigenvalues(w);
  std::sort(ev.rbegin(), ev.rend());
  return ev;
}

void require_close_lists(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(std::abs(a[i] - b[i]) <= 1e-6 * std::max(1.0, std::abs(b[i])));
}

// Every (case, t) pair admissible at q.
std::vector<std::pair<SzCase, std::int64_t>> admissible(std::int64_t q) {
  std::vector<std::pair<SzCase, std::int64_t>> out;
  for (auto c : all_sz_cases()) {
    switch (c) {
    case SzCase::D2t0Mid:
    case SzCase::Zt0Mid:
    case SzCase::BorelT0:
      for (std::int64_t t = (c == SzCase::BorelT0 ? 1 : 2); t < q - 1; ++t)
        if ((q - 1) % t == 0)
          out.push_back({c, t});
      break;
    case SzCase::SubfieldQ1:
      for (std::int64_t q1 = 8; q1 < q; q1 *= 2) {
        std::int64_t x = q1;
        while (x < q)
          x *= q1;
        if (x == q)
          out.push_back({c, q1});
      }
      break;
    default:
      out.push_back({c, 1});
    }
  }
  return out;
}

} // namespace

TEST_CASE("parameters and class inventory") {
  const auto p = sz_parameters(3);
  CHECK(p.q == 8);
  CHECK(p.r == 4);
  CHECK(p.r * p.r == 2 * p.q);
  CHECK(p.group_order == 29120);
  CHECK(p.num_classes == 11);
  CHECK(p.involution_class_size == 455);
  CHECK(p.order4_union_size == 3640);
  std::map<std::int64_t, int> deg;
  for (auto d : p.character_degrees)
    ++deg[d];
  CHECK(deg == std::map<std::int64_t, int>{{1, 1}, {14, 2}, {35, 3}, {64, 1}, {65, 3}, {91, 1}});
  for (unsigned e : {5u, 7u, 9u}) {
    const auto pe = sz_parameters(e);
    CHECK(pe.r * pe.r == 2 * pe.q);
    std::int64_t s = 0;
    for (auto d : pe.character_degrees)
      s += d * d;
    CHECK(s == pe.group_order);
    CHECK(static_cast<std::int64_t>(pe.character_degrees.size()) == pe.num_classes);
  }
  CHECK_THROWS_AS(sz_parameters(2), Error);
  CHECK_THROWS_AS(sz_parameters(4), Error);
  CHECK_THROWS_AS(sz_parameters_for_q(12), Error);
  CHECK(sz_parameters_for_q(32).e == 5);
}

TEST_CASE("character table orthogonality") {
  for (std::int64_t q : {8, 32}) {
    const auto rep = sz_character_checks(q);
    CAPTURE(q);
    CHECK(rep.ok);
    CHECK(rep.sum_of_squares == rep.group_order);
    CHECK(rep.num_characters == rep.num_classes);
    CHECK(rep.max_orthogonality_error < 1e-9);
  }
  CHECK(sz_character_checks(32).group_order == 32 * 32 * 31 * 1025);
  CHECK(sz_character_checks(8).num_classes == 11);
}

TEST_CASE("row orthogonality of the table") {
  const SzCharacterTable t(sz_parameters(5));
  const auto& cls = t.classes();
  const double n = static_cast<double>(t.params().group_order);
  for (std::size_t a = 0; a < t.characters().size(); ++a)
    for (std::size_t b = 0; b < t.characters().size(); ++b) {
      std::complex<double> s = 0;
      for (std::size_t c = 0; c < cls.size(); ++c)
        s += static_cast<double>(cls[c].size) * t.value(a, c) * std::conj(t.value(b, c));
      CHECK(std::abs(s / n - (a == b ? 1.0 : 0.0)) < 1e-9);
    }
}

TEST_CASE("class sums") {
  const auto p = sz_parameters(3);
  CHECK(sz_class_sums(p, 0, 7).size == 0);
  CHECK(sz_class_sums(p, 0, 1).size == 12480);
  CHECK(sz_class_sums(p, 2, 1).size == 5824);
  CHECK(sz_class_sums(p, 1, 1).size == 6720);
  CHECK_THROWS_AS(sz_class_sums(p, 0, 3), Error);
  try {
    sz_class_sums(p, 1, 5);
    FAIL("expected NotADivisor");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotADivisor);
  }

  // Character sums against the table: sum over classes of A_m outside B_m.
  for (unsigned e : {3u, 5u, 9u}) {
    const auto pe = sz_parameters(e);
    const SzCharacterTable t(pe);
    const SzFamily fam[3] = {SzFamily::Xi, SzFamily::Yj, SzFamily::Zk};
    const SzClassKind kind[3] = {SzClassKind::A0, SzClassKind::A1, SzClassKind::A2};
    const std::int64_t order[3] = {pe.a0, pe.a1, pe.a2};
    for (int m = 0; m < 3; ++m)
      for (std::int64_t tm = 1; tm <= order[m]; ++tm) {
        if (order[m] % tm)
          continue;
        const auto s = sz_class_sums(pe, m, tm);
        std::int64_t size = 0;
        for (std::size_t c = 0; c < t.classes().size(); ++c)
          if (t.classes()[c].kind == kind[m] && tm % t.classes()[c].element_order != 0)
            size += t.classes()[c].size;
        CHECK(size == s.size);
        for (std::size_t a = 0; a < t.characters().size(); ++a) {
          if (t.characters()[a].family != fam[m])
            continue;
          std::complex<double> sum = 0;
          for (std::size_t c = 0; c < t.classes().size(); ++c)
            if (t.classes()[c].kind == kind[m] && tm % t.classes()[c].element_order != 0)
              sum += static_cast<double>(t.classes()[c].size) * t.value(a, c);
          const double expect = static_cast<double>(s.sum_at(t.characters()[a].index));
          // rounding grows with the class sizes involved
          CHECK(std::abs(sum.real() - expect) <= 1e-9 * std::max({1.0, std::abs(expect), static_cast<double>(size)}));
        }
      }
  }
}

TEST_CASE("class sums against the element-order census of Sz(8)") {
  const GroupTable& g = *sz8().group;
  std::map<std::uint32_t, std::int64_t> by_order;
  for (std::uint32_t x = 0; x < g.order(); ++x)
    ++by_order[g.element_order(x)];
  const auto p = sz8().params;
  CHECK(by_order[7] == sz_class_sums(p, 0, 1).size);
  CHECK(by_order[13] == sz_class_sums(p, 1, 1).size);
  CHECK(by_order[5] == sz_class_sums(p, 2, 1).size);
  CHECK(by_order[2] == p.involution_class_size);
  CHECK(by_order[4] == p.order4_union_size);
}

TEST_CASE("closed-form case spectra agree with the character table") {
  for (std::int64_t q : {8, 32, 128, 512}) {
    for (auto [tag, t] : admissible(q)) {
      CAPTURE(q);
      CAPTURE(to_string(tag));
      CAPTURE(t);
      const auto s = sz_case_spectrum(tag, q, t);
      const auto list = s.eigenvalue_list();
      CHECK(static_cast<std::int64_t>(list.size()) == s.params.num_classes);
      require_close_lists(list, table_spectrum(s));
      CHECK(s.d == s.printed_d);
      CHECK(s.tau == s.printed_tau);
      if (s.printed_bound && s.bound_exact)
        CHECK(*s.printed_bound == *s.bound_exact);
      CHECK(s.rho_below_half_sqrt2);
    }
  }
}

TEST_CASE("case spectra at q = 8") {
  const auto d = sz_case_spectrum(SzCase::D2qMinus1, 8);
  CHECK(d.distinct() == std::vector<double>{7224, 464, 56, -56});
  CHECK(d.bound_exact == Rational(224));

  const auto z = sz_case_spectrum(SzCase::ZqMinus1, 8);
  CHECK(z.bound_exact == Rational(8 * 7 * 7, 2));

  const auto b = sz_case_spectrum(SzCase::BorelT0, 8, 1);
  CHECK(b.d == Rational(29056));
  CHECK(b.tau == Rational(-64));
  CHECK(b.bound_exact == Rational(64));
  CHECK(sz_case_spectrum(SzCase::BorelOrder4Exponent, 8).bound_exact == Rational(64));

  const auto tp = sz_case_spectrum(SzCase::TorusPlus, 8);
  CHECK(tp.bound_exact == Rational(2 * 8 * 65, 7));
  CHECK(tp.bound_exact == Rational(1040, 7));

  const auto tm = sz_case_spectrum(SzCase::TorusMinus, 8);
  CHECK(tm.bound_exact == Rational(64));
  CHECK(tm.weight_a1 == Rational(37, 15));

  for (auto [tag, t] : admissible(8))
    CHECK(sz_case_spectrum(tag, 8, t).rho_below_half_sqrt2);
}

TEST_CASE("Hoffman bounds dominate the exhibited intersecting sets") {
  for (std::int64_t q : {8, 32, 128}) {
    // A Sylow 2-subgroup of order q^2 is intersecting in the 2-group and
    // torus-minus actions; its centre of order q in the involution action.
    CHECK(sz_case_spectrum(SzCase::BorelOrder4Exponent, q).bound >= static_cast<double>(q * q) - 1e-6);
    CHECK(sz_case_spectrum(SzCase::TorusMinus, q).bound >= static_cast<double>(q * q) - 1e-6);
    CHECK(sz_case_spectrum(SzCase::TorusPlus, q).bound >= static_cast<double>(q * q) - 1e-6);
  }
}

TEST_CASE("inadmissible parameters") {
  auto kind_of = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::ParseError;
  };
  CHECK(kind_of([] { sz_case_spectrum(SzCase::D2qMinus1, 16); }) == ErrorKind::InadmissibleParameters);
  CHECK(kind_of([] { sz_case_spectrum(SzCase::D2t0Mid, 8, 7); }) == ErrorKind::InadmissibleParameters);
  CHECK(kind_of([] { sz_case_spectrum(SzCase::Zt0Mid, 32, 1); }) == ErrorKind::InadmissibleParameters);
  CHECK(kind_of([] { sz_case_spectrum(SzCase::BorelT0, 8, 7); }) == ErrorKind::InadmissibleParameters);
  CHECK(kind_of([] { sz_case_spectrum(SzCase::SubfieldQ1, 8, 8); }) == ErrorKind::InadmissibleParameters);
  CHECK(kind_of([] { sz_case_spectrum(SzCase::SubfieldQ1, 512, 2); }) == ErrorKind::InadmissibleParameters);
  CHECK(kind_of([] { sz_case_spectrum(SzCase::SubfieldQ1, 128, 8); }) == ErrorKind::InadmissibleParameters);
  CHECK_NOTHROW(sz_case_spectrum(SzCase::SubfieldQ1, 512, 8));
  CHECK_NOTHROW(sz_case_spectrum(SzCase::D2t0Mid, 512, 73));
}

TEST_CASE("case names round trip") {
  for (auto c : all_sz_cases())
    CHECK(sz_case_from_string(to_string(c)) == c);
  CHECK(sz_case_from_string("D_2q\xE2\x88\x92" "1") == SzCase::D2qMinus1);
  CHECK_THROWS_AS(sz_case_from_string("torus"), Error);
}

TEST_CASE("formula rendering") {
  const auto s = sz_case_spectrum(SzCase::D2qMinus1, 8);
  CHECK(s.entries.front().formula.to_string() == "2 q^4 - 2 q^3 + q^2 - q");
  const auto tm = sz_case_spectrum(SzCase::TorusMinus, 8);
  CHECK(tm.entries.back().formula.to_string() == "1/2 q^3 r + 1/2 q^2 r + q r");
}

TEST_CASE("Borel subgroup Q:K") {
  const SzBorel b = sz_borel_group(3);
  const GroupTable& g = *b.group;
  CHECK(g.order() == 448);
  const auto& F = b.field;
  // multiplication law on Q and the action of K
  for (std::uint32_t a = 0; a < 8; ++a)
    for (std::uint32_t bb = 0; bb < 8; ++bb)
      for (std::uint32_t c = 0; c < 8; ++c)
        for (std::uint32_t d = 0; d < 8; ++d) {
          const auto lhs = g.mult(b.index_of(a, bb, 1), b.index_of(c, d, 1));
          const auto rhs = b.index_of(F.add(a, c), F.add(F.add(F.mul(a, frobenius_theta(F, c)), bb), d), 1);
          REQUIRE(lhs == rhs);
        }
  for (std::uint32_t k = 1; k < 8; ++k) {
    const auto kk = b.index_of(0, 0, k);
    const std::uint32_t k1t = F.mul(k, frobenius_theta(F, k));
    for (std::uint32_t a = 0; a < 8; ++a)
      for (std::uint32_t bb = 0; bb < 8; ++bb)
        REQUIRE(g.conjugate(b.index_of(a, bb, 1), kk) == b.index_of(F.mul(a, k), F.mul(bb, k1t), 1));
  }

  const auto Q = b.sylow2();
  CHECK(Q.size() == 64);
  CHECK(is_subgroup(g, Q));
  int involutions = 0, order4 = 0;
  for (auto x : Q) {
    involutions += g.element_order(x) == 2;
    order4 += g.element_order(x) == 4;
  }
  CHECK(involutions == 7);
  CHECK(order4 == 56);
  std::vector<std::uint32_t> centre;
  for (auto x : Q)
    if (std::all_of(Q.begin(), Q.end(), [&](auto y) { return g.mult(x, y) == g.mult(y, x); }))
      centre.push_back(x);
  std::vector<std::uint32_t> zq;
  for (std::uint32_t bb = 0; bb < 8; ++bb)
    zq.push_back(b.index_of(0, bb, 1));
  std::sort(zq.begin(), zq.end());
  CHECK(centre == zq);
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    const auto o = g.element_order(x);
    CHECK((4 % o == 0 || 7 % o == 0));
  }
  const auto h = subgroup_closure(g, {b.index_of(1, 1, 1)});
  std::vector<std::uint32_t> expect{0, b.index_of(1, 1, 1), b.index_of(0, 1, 1), b.index_of(1, 0, 1)};
  std::sort(expect.begin(), expect.end());
  CHECK(h == expect);
  CHECK(b.torus().size() == 7);
  CHECK_THROWS_AS(b.index_of(0, 0, 0), Error);
  CHECK_THROWS_AS(sz_borel_group(7), Error);
}

TEST_CASE("Sz(8) fixture") {
  const auto& s = sz8();
  CHECK(s.group->order() == 29120);
  CHECK(s.group->num_classes() == 11);
  CHECK(s.group->degree() == 65);
  CHECK(is_transitive(*s.group));
  std::map<SzClassKind, int> kinds;
  for (auto k : s.kind_of_class)
    ++kinds[k];
  CHECK(kinds[SzClassKind::A0] == 3);
  CHECK(kinds[SzClassKind::A1] == 3);
  CHECK(kinds[SzClassKind::A2] == 1);
  CHECK(kinds[SzClassKind::Rho] == 1);
  CHECK(kinds[SzClassKind::RhoInverse] == 1);
  CHECK_THROWS(load_sz8("/nonexistent/sz8.grp"));
}

TEST_CASE("Sz(8) unit spectrum of the D14 action matches the table") {
  const auto& s = sz8();
  const GroupTable& g = *s.group;
  auto h = find_subgroup(g, 14, shapes::dihedral);
  auto prof = profile(std::make_shared<const TransitiveAction>(s.group, h));
  CHECK(prof.derangement_count == 16184);
  const auto rep = eigenvalues(collapse(prof, unit_weighting(prof)), static_cast<double>(g.order()));
  // Table oracle: weight 1 on rho^{+-1}, A1 and A2 classes.
  const SzCharacterTable t(s.params);
  std::vector<double> w;
  for (const auto& c : t.classes())
    w.push_back(c.kind == SzClassKind::Rho || c.kind == SzClassKind::RhoInverse || c.kind == SzClassKind::A1 ||
                        c.kind == SzClassKind::A2
                    ? 1.0
                    : 0.0);
  auto expect = t.eigenvalues(w);
  std::sort(expect.rbegin(), expect.rend());
  require_close_lists(rep.eigenvalues, expect);
}

TEST_CASE("Sz(8) cross-validation of the case weightings") {
  const auto checks = sz8_cross_validation(sz8());
  REQUIRE(checks.size() == 5);
  const double bounds[5] = {224, 196, 64, 1040.0 / 7, 64};
  const std::size_t orders[5] = {14, 7, 4, 52, 20};
  for (std::size_t i = 0; i < 5; ++i) {
    CAPTURE(to_string(checks[i].tag));
    CHECK(checks[i].ok);
    CHECK(checks[i].stabilizer_order == orders[i]);
    CHECK(checks[i].computed_bound == doctest::Approx(bounds[i]).epsilon(1e-9));
    CHECK(checks[i].max_relative_error < kSzCrossTolerance);
  }
}
