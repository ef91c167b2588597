#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "ekr/analysis.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run ekrlab(const std::string& args) {
  const std::string cmd = std::string(EKRLAB_BIN) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0)
    r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  const fs::path p = fs::temp_directory_path() / "ekrlab_cli_test";
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::size_t count_lines(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  std::string line;
  while (std::getline(in, line))
    n += !line.empty();
  return n;
}

} // namespace

TEST_CASE("analyze a construction exactly") {
  const Run r = ekrlab("analyze --construct psl2even:2 --exact");
  REQUIRE(r.code == 0);
  const ekr::AnalysisReport rep = ekr::parse_report(r.out);
  CHECK(rep.solver->size == 12);
  CHECK(rep.rho.rho_lower_exact == "sqrt(2/5)");
  CHECK(ekrlab("analyze --construct psl2even:2 --exact").out == r.out);
}

TEST_CASE("analyze the shipped Sz(8) file") {
  const Run r = ekrlab("analyze --group sz8.grp --subgroup-order 14 --shape dihedral --no-optimize");
  REQUIRE(r.code == 0);
  const ekr::AnalysisReport rep = ekr::parse_report(r.out);
  CHECK(rep.group.order == 29120);
  CHECK(rep.rho.upper_floor == 224);
}

TEST_CASE("construct writes files that analyze can read back") {
  const fs::path dir = scratch();
  const Run r = ekrlab("construct agl1st --q 9 --out " + dir.string());
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["degree"] == 36);
  CHECK(count_lines(dir / "agl1st_9.R.txt") == 36);
  CHECK(fs::exists(dir / "agl1st_9.expected.json"));

  const Run a = ekrlab("analyze --group " + (dir / "agl1st_9.grp").string() + " --subgroup-file " +
                       (dir / "agl1st_9.H.txt").string() + " --exact");
  REQUIRE(a.code == 0);
  const ekr::AnalysisReport rep = ekr::parse_report(a.out);
  CHECK(rep.group.omega == 36);
  CHECK(rep.solver->size == 2);

  const Run s = ekrlab("solve --group " + (dir / "agl1st_9.grp").string() + " --point 0 --clique");
  REQUIRE(s.code == 0);
  CHECK(nlohmann::json::parse(s.out)["size"] == 36);
  fs::remove_all(dir);
}

TEST_CASE("construct product and szborel") {
  const fs::path dir = scratch();
  const Run p = ekrlab("construct product --inner psl2even:2 --ell 2 --out " + dir.string());
  REQUIRE(p.code == 0);
  CHECK(nlohmann::json::parse(p.out)["order"] == 7200);
  const Run s = ekrlab("construct szborel --e 3 --out " + dir.string());
  REQUIRE(s.code == 0);
  const auto j = nlohmann::json::parse(s.out);
  CHECK(j["order"] == 448);
  CHECK(j["subsets"]["Q"]["size"] == 64);
  fs::remove_all(dir);
}

TEST_CASE("spectrum command") {
  const Run r = ekrlab("spectrum --construct psl2even:2");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["hoffman_floor"] == 12);
  CHECK(ekrlab("spectrum --construct psl2even:2 --weights optimized").code == 0);
  CHECK(ekrlab("spectrum --construct psl2even:2 --weights bogus").code == 2);
}

TEST_CASE("exit codes") {
  CHECK(ekrlab("construct bogus").code == 2);
  CHECK(ekrlab("construct agl1st").code == 2);
  CHECK(ekrlab("analyze --group does-not-exist.grp").code == 2);
  CHECK(ekrlab("analyze --no-such-flag").code == 2);
  CHECK(ekrlab("construct psu3 --q 13 --out " + (fs::temp_directory_path() / "ekrlab_caps").string()).code == 3);
  CHECK(ekrlab("accept --only nothing-matches").code == 2);
}

TEST_CASE("accept filters and lists") {
  const Run list = ekrlab("accept --list");
  REQUIRE(list.code == 0);
  CHECK(list.out.find("property_suites") != std::string::npos);
  const Run r = ekrlab("accept --only psl2");
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS  1") != std::string::npos);
  CHECK(r.out.find("PASS  2") != std::string::npos);
  CHECK(r.out.find(" 3 ") == std::string::npos);
}

TEST_CASE("cache directory") {
  const fs::path dir = scratch();
  const std::string env = "EKRLAB_CACHE_DIR=" + (dir / "cache").string() + " ";
  const std::string cmd = std::string("sh -c '") + env + EKRLAB_BIN + " spectrum --group sz8.grp --point 0'";
  const Run first = [&] {
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0)
      r.out.append(buf, n);
    r.code = WEXITSTATUS(pclose(p));
    return r;
  }();
  REQUIRE(first.code == 0);
  CHECK(fs::exists(dir / "cache"));
  CHECK(std::distance(fs::directory_iterator(dir / "cache"), fs::directory_iterator{}) == 1);
  CHECK(ekrlab("spectrum --group sz8.grp --point 0").out == first.out);
  fs::remove_all(dir);
}
