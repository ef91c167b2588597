#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ekr/constructions.hpp"
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

ActionProfile act(GroupPtr g, std::vector<std::uint32_t> H) {
  return profile(std::make_shared<const TransitiveAction>(g, std::move(H)));
}

// Plain recursive maximum independent (or complete) set through vertex 0,
// using only the derangement predicate.
class Brute {
public:
  Brute(const ActionProfile& p, bool clique) : p_(p), clique_(clique) {}
  std::size_t run() {
    std::vector<std::uint32_t> cand;
    for (std::uint32_t v = 1; v < p_.group().order(); ++v)
      if (ok(0, v))
        cand.push_back(v);
    best_ = 0;
    grow(1, cand);
    return best_;
  }

private:
  bool ok(std::uint32_t a, std::uint32_t b) const {
    const GroupTable& g = p_.group();
    return p_.is_derangement(g.mult(a, g.inverse(b))) == clique_;
  }
  void grow(std::size_t size, const std::vector<std::uint32_t>& cand) {
    best_ = std::max(best_, size);
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (size + cand.size() - i <= best_)
        return;
      std::vector<std::uint32_t> next;
      for (std::size_t j = i + 1; j < cand.size(); ++j)
        if (ok(cand[i], cand[j]))
          next.push_back(cand[j]);
      grow(size + 1, next);
    }
  }
  const ActionProfile& p_;
  bool clique_;
  std::size_t best_ = 0;
};

std::vector<ActionProfile> small_actions() {
  std::vector<ActionProfile> out;
  const GroupPtr s4 = symmetric(4), s5 = symmetric(5);
  out.push_back(act(s4, point_stabilizer(*s4, 0)));
  out.push_back(act(s4, find_subgroup(*s4, 2, shapes::any)));
  out.push_back(act(s5, point_stabilizer(*s5, 0)));
  out.push_back(act(s5, find_subgroup(*s5, 10, shapes::dihedral)));
  out.push_back(profile(build_psl2_even(2).action));
  out.push_back(profile(build_agl1_sharply_transitive(7).action));
  return out;
}

} // namespace

TEST_CASE("coclique and clique agree with brute force") {
  for (const auto& prof : small_actions()) {
    const DerangementGraph graph(prof);
    const SearchResult co = max_coclique(graph);
    const SearchResult cl = max_clique(graph);
    CHECK(co.optimal);
    CHECK(cl.optimal);
    CHECK(co.best_set.size() == Brute(prof, false).run());
    CHECK(cl.best_set.size() == Brute(prof, true).run());
    CHECK(is_intersecting(prof, co.best_set));
    CHECK(is_semiregular(prof, cl.best_set));
    CHECK(co.best_set.size() >= prof.action->stabilizer_order());
    CHECK(co.best_set.size() * cl.best_set.size() <= prof.group().order());
  }
}

TEST_CASE("symmetric groups have the EKR property") {
  for (std::uint32_t n : {4u, 5u}) {
    const GroupPtr s = symmetric(n);
    const ActionProfile prof = act(s, point_stabilizer(*s, 0));
    const SearchResult co = max_coclique(DerangementGraph(prof));
    CHECK(co.best_set.size() == s->order() / n);
    CHECK(max_clique(DerangementGraph(prof)).best_set.size() == n);
  }
}

TEST_CASE("regular action gives a complete graph") {
  const GroupPtr s4 = symmetric(4);
  const ActionProfile prof = act(s4, {0});
  const SearchResult cl = max_clique(DerangementGraph(prof));
  CHECK(cl.best_set.size() == 24);
  CHECK(max_coclique(DerangementGraph(prof)).best_set.size() == 1);
}

TEST_CASE("A5 on 10 points") {
  const ActionProfile prof = profile(build_psl2_even(2).action);
  const DerangementGraph graph(prof);
  CHECK(max_coclique(graph).best_set.size() == 12);
  const SearchResult cl = max_clique(graph);
  CHECK(cl.best_set.size() >= 5);
  CHECK(cl.best_set.size() == Brute(prof, true).run());
}

TEST_CASE("AGL(1,9) clique is a regular subset") {
  const ActionProfile prof = profile(build_agl1_sharply_transitive(9).action);
  const SearchResult cl = max_clique(DerangementGraph(prof));
  CHECK(cl.best_set.size() == 36);
  CHECK(is_sharply_transitive(prof, cl.best_set));
}

TEST_CASE("prune bound stops the search") {
  const ActionProfile prof = profile(build_psl2_even(3).action);
  SearchOptions o;
  o.prune_bound = 56.0000001;
  const SearchResult r = max_coclique(DerangementGraph(prof), o);
  CHECK(r.optimal);
  CHECK(r.best_set.size() == 56);
}

TEST_CASE("time limit returns a valid incumbent") {
  const ActionProfile prof = profile(build_psl2_even(4).action);
  SearchOptions o;
  o.time_limit = 0;
  const SearchResult r = max_clique(DerangementGraph(prof), o);
  CHECK(r.time_limit_hit);
  CHECK_FALSE(r.optimal);
  CHECK(is_semiregular(prof, r.best_set));
}

TEST_CASE("threads change only wall time") {
  const ActionProfile prof = profile(build_table2(5).action);
  const DerangementGraph graph(prof);
  SearchOptions one, four;
  four.threads = 4;
  const SearchResult a = max_coclique(graph, one), b = max_coclique(graph, four);
  CHECK(a.optimal);
  CHECK(b.optimal);
  CHECK(a.best_set.size() == b.best_set.size());
  CHECK(is_intersecting(prof, b.best_set));
  const SearchResult a2 = max_coclique(graph, one);
  CHECK(a2.best_set == a.best_set);
}

TEST_CASE("greedy beyond exact range") {
  const ActionProfile prof = profile(build_psu3_example(7).action);
  CHECK_THROWS_AS(DerangementGraph{prof}, Error);
  const SearchResult g = greedy_coclique(prof);
  CHECK(std::find(g.best_set.begin(), g.best_set.end(), 0u) != g.best_set.end());
  CHECK(is_intersecting(prof, g.best_set));
  CHECK_FALSE(g.optimal);
}
