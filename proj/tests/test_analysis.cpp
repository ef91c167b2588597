#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "ekr/analysis.hpp"
#include "ekr/constructions.hpp"
#include "ekr/error.hpp"
#include "ekr/suzuki.hpp"

using namespace ekr;
namespace fs = std::filesystem;

namespace {

AnalysisInput input_for(const ConstructionOutput& c) {
  AnalysisInput in;
  in.source = c.name;
  in.action = c.action;
  for (const auto& [name, sub] : c.named_subsets) {
    if (sub.role == SubsetRole::Intersecting)
      in.witnesses.emplace_back(name, sub.elements);
    if (sub.role == SubsetRole::Semiregular || sub.role == SubsetRole::SharplyTransitive)
      in.semiregular.push_back(sub.elements);
  }
  return in;
}

fs::path scratch_dir(const char* name) {
  const fs::path p = fs::temp_directory_path() / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

} // namespace

TEST_CASE("twelve significant digits") {
  CHECK(round12(1.0 / 3.0) == 0.333333333333);
  CHECK(round12(2.0 / 3.0 * 1e6) == 666666.666667);
  CHECK(round12(0) == 0);
  CHECK(round12(12) == 12);
}

TEST_CASE("PSL(2,4) report") {
  AnalysisOptions o;
  o.exact = true;
  const AnalysisReport r = analyze(input_for(build_psl2_even(2)), o);
  CHECK(r.group.order == 60);
  CHECK(r.group.omega == 10);
  CHECK(r.group.stabilizer_order == 6);
  CHECK(r.classes.derangements == 24);
  REQUIRE(r.solver);
  CHECK(r.solver->size == 12);
  CHECK(r.solver->optimal);
  CHECK(r.hoffman.unit_floor == 12u);
  CHECK(r.rho.rho_lower_exact == "sqrt(2/5)");
  CHECK(r.rho.tight);
  CHECK(r.timings.empty());
}

TEST_CASE("reports round-trip and are byte-stable") {
  AnalysisOptions o;
  o.exact = true;
  const AnalysisReport a = analyze(input_for(build_table2(5)), o);
  const std::string text = serialize(a);
  CHECK(parse_report(text) == a);
  CHECK(serialize(parse_report(text)) == text);
  CHECK(serialize(analyze(input_for(build_table2(5)), o)) == text);
  CHECK(a.rho.rho_lower_exact == "sqrt(2/1)");

  o.timings = true;
  o.exact = false;
  const AnalysisReport t = analyze(input_for(build_agl1_sharply_transitive(9)), o);
  CHECK_FALSE(t.timings.empty());
  CHECK(parse_report(serialize(t)) == t);
}

TEST_CASE("field order is stable") {
  const std::string text = serialize(analyze(input_for(build_psl2_even(2))));
  const char* keys[] = {"\"source\"", "\"group\"", "\"classes\"", "\"spectrum\"", "\"hoffman\"", "\"solver\"", "\"rho\""};
  std::size_t last = 0;
  for (const char* k : keys) {
    const auto pos = text.find(k);
    REQUIRE(pos != std::string::npos);
    CHECK(pos >= last);
    last = pos;
  }
}

TEST_CASE("malformed reports") {
  CHECK_THROWS_AS(parse_report("{"), Error);
  CHECK_THROWS_AS(parse_report("{\"source\": \"x\"}"), Error);
  std::string text = serialize(analyze(input_for(build_psl2_even(2))));
  text.replace(text.find("\"rho\""), 5, "\"rhox\"");
  CHECK_THROWS_AS(parse_report(text), Error);
}

TEST_CASE("inconsistent witnesses are rejected") {
  const ConstructionOutput c = build_psl2_even(2);
  AnalysisInput in = input_for(c);
  const ActionProfile prof = profile(c.action);
  std::uint32_t der = 1;
  while (!prof.is_derangement(der))
    ++der;
  in.witnesses.emplace_back("bad", std::vector<std::uint32_t>{0, der});
  try {
    analyze(in);
    FAIL("expected InconsistentCertificate");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InconsistentCertificate);
  }
}

TEST_CASE("Sz(8) closed-form weights are picked up") {
  const SzGroup sz = load_sz8();
  AnalysisInput in;
  in.source = "sz8";
  in.action = std::make_shared<const TransitiveAction>(sz.group, find_subgroup(*sz.group, 14, shapes::dihedral));
  AnalysisOptions o;
  o.optimize = false;
  const AnalysisReport r = analyze(in, o);
  REQUIRE(r.hoffman.closed_form.size() >= 1);
  CHECK(r.hoffman.closed_form[0].tag == "D_2q-1");
  CHECK(r.hoffman.closed_form[0].bound == doctest::Approx(224));
  CHECK(r.rho.upper_floor == 224);
}

TEST_CASE("closure cache") {
  const fs::path dir = scratch_dir("ekr_cache_test");
  const GroupFile gf = group_file_of(*build_psl2_even(3).action->group_ptr());
  const GroupPtr a = close_group_cached(gf, dir.string());
  std::size_t files = 0;
  fs::path entry;
  for (const auto& e : fs::directory_iterator(dir)) {
    ++files;
    entry = e.path();
  }
  REQUIRE(files == 1);
  const GroupPtr b = close_group_cached(gf, dir.string());
  REQUIRE(b->order() == a->order());
  for (std::uint32_t x = 0; x < a->order(); x += 17)
    CHECK(b->permutation(x) == a->permutation(x));
  CHECK(b->num_classes() == a->num_classes());

  // A corrupt entry is rebuilt.
  {
    std::fstream f(entry, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(64);
    const char junk[8] = {7, 7, 7, 7, 7, 7, 7, 7};
    f.write(junk, 8);
  }
  CHECK(close_group_cached(gf, dir.string())->order() == a->order());
  fs::remove_all(dir);
}

TEST_CASE("element lists are validated") {
  const GroupPtr g = build_psl2_even(2).action->group_ptr();
  const GroupFile gf = group_file_of(*g);
  std::vector<std::uint32_t> flat;
  for (std::uint32_t x = 0; x < g->order(); ++x) {
    const Permutation p = g->permutation(x);
    flat.insert(flat.end(), p.begin(), p.end());
  }
  CHECK(group_from_elements(gf.degree, flat, gf.generators)->order() == 60);
  std::vector<std::uint32_t> missing(flat.begin(), flat.end() - gf.degree);
  CHECK_THROWS_AS(group_from_elements(gf.degree, missing, gf.generators), Error);
  std::vector<std::uint32_t> swapped = flat;
  std::swap_ranges(swapped.begin() + gf.degree, swapped.begin() + 2 * gf.degree, swapped.begin() + 2 * gf.degree);
  CHECK_THROWS_AS(group_from_elements(gf.degree, swapped, gf.generators), Error);
}
