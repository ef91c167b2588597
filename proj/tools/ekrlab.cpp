// ekrlab: analyze transitive actions, write constructions, run the
// acceptance suite.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ekr/acceptance.hpp"
#include "ekr/analysis.hpp"
#include "ekr/constructions.hpp"
#include "ekr/error.hpp"
#include "ekr/solver.hpp"
#include "ekr/spectra.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using Elems = std::vector<std::uint32_t>;

namespace {

constexpr int kExitAcceptFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitCaps = 3;
constexpr int kExitCertificate = 4;

int exit_code(ekr::ErrorKind k) {
  switch (k) {
  case ekr::ErrorKind::GroupTooLarge:
  case ekr::ErrorKind::FieldTooLarge:
    return kExitCaps;
  case ekr::ErrorKind::InconsistentCertificate:
    return kExitCertificate;
  case ekr::ErrorKind::NonRealSpectrum:
  case ekr::ErrorKind::DegenerateSpectrum:
  case ekr::ErrorKind::Unbounded:
  case ekr::ErrorKind::NoConvergence:
    return 1;
  default:
    return kExitParse;
  }
}

struct Source {
  std::string group_file;
  std::string construct;
  std::optional<std::uint32_t> point;
  std::string subgroup_file;
  std::optional<std::size_t> subgroup_order;
  std::string shape = "any";
};

void add_source_options(CLI::App* app, Source& s) {
  auto* g = app->add_option("--group", s.group_file, "group file (degree line, one generator per line)");
  auto* c = app->add_option("--construct", s.construct, "named construction, e.g. psl2even:2");
  g->excludes(c);
  auto* p = app->add_option("--point", s.point, "stabilizer of this point of the group file's action");
  auto* f = app->add_option("--subgroup-file", s.subgroup_file, "stabilizer as element indices, one per line");
  auto* o = app->add_option("--subgroup-order", s.subgroup_order, "stabilizer found by subgroup search");
  app->add_option("--shape", s.shape, "any, cyclic, abelian, dihedral or frobenius")->needs(o);
  p->excludes(f)->excludes(o);
  f->excludes(o);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ekr::Error(ekr::ErrorKind::ParseError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Relative paths that do not exist fall back to the shipped data directory.
std::string resolve(const std::string& path) {
  if (fs::exists(path))
    return path;
  const fs::path shipped = fs::path(EKR_DATA_DIR) / path;
  return fs::exists(shipped) ? shipped.string() : path;
}

Elems read_subset(const std::string& path, std::size_t order) {
  std::istringstream in(read_text(path));
  Elems out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    long long v;
    while (ls >> v) {
      if (v < 0 || static_cast<std::size_t>(v) >= order)
        throw ekr::Error(ekr::ErrorKind::ParseError,
                         path + ":" + std::to_string(lineno) + ": index out of range");
      out.push_back(static_cast<std::uint32_t>(v));
    }
    if (!ls.eof())
      throw ekr::Error(ekr::ErrorKind::ParseError, path + ":" + std::to_string(lineno) + ": expected integers");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct Loaded {
  ekr::AnalysisInput input;
  std::optional<ekr::ConstructionOutput> construction;
};

Loaded load(const Source& s) {
  Loaded l;
  if (!s.construct.empty()) {
    l.construction = ekr::build_named(s.construct);
    const auto& c = *l.construction;
    l.input.source = c.name;
    if (s.point || !s.subgroup_file.empty() || s.subgroup_order)
      throw ekr::Error(ekr::ErrorKind::ParseError, "--construct fixes the stabilizer; drop the stabilizer options");
    l.input.action = c.action;
    for (const auto& [name, sub] : c.named_subsets) {
      if (sub.role == ekr::SubsetRole::Intersecting)
        l.input.witnesses.emplace_back(name, sub.elements);
      if (sub.role == ekr::SubsetRole::Semiregular || sub.role == ekr::SubsetRole::SharplyTransitive)
        l.input.semiregular.push_back(sub.elements);
    }
    return l;
  }
  if (s.group_file.empty())
    throw ekr::Error(ekr::ErrorKind::ParseError, "one of --group or --construct is required");
  const std::string path = resolve(s.group_file);
  const ekr::GroupFile gf = ekr::read_group_file(path);
  const char* cache = std::getenv("EKRLAB_CACHE_DIR");
  ekr::GroupPtr g = ekr::close_group_cached(gf, cache ? cache : "");
  l.input.source = s.group_file;
  Elems H;
  if (!s.subgroup_file.empty()) {
    H = read_subset(s.subgroup_file, g->order());
    if (!ekr::is_subgroup(*g, H))
      throw ekr::Error(ekr::ErrorKind::NotASubgroup, s.subgroup_file + " is not a subgroup");
  } else if (s.subgroup_order) {
    H = ekr::find_subgroup(*g, *s.subgroup_order, ekr::shape_predicate(s.shape));
  } else {
    const std::uint32_t pt = s.point.value_or(0);
    if (pt >= g->degree())
      throw ekr::Error(ekr::ErrorKind::ParseError, "point out of range");
    H = ekr::point_stabilizer(*g, pt);
  }
  if (H.size() == g->order())
    throw ekr::Error(ekr::ErrorKind::ParseError, "stabilizer is the whole group");
  l.input.action = std::make_shared<const ekr::TransitiveAction>(g, std::move(H));
  return l;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f)
    throw ekr::Error(ekr::ErrorKind::ParseError, "cannot write " + out);
  f << text;
}

json group_json(const ekr::TransitiveAction& a) {
  return {{"order", a.group().order()},
          {"degree", a.group().degree()},
          {"omega", a.omega_size()},
          {"stabilizer_order", a.stabilizer_order()}};
}

int cmd_solve(const Source& s, bool clique, double time_limit, unsigned threads, const std::string& out) {
  const Loaded l = load(s);
  const ekr::ActionProfile prof = ekr::profile(l.input.action);
  ekr::SearchOptions so;
  so.time_limit = time_limit;
  so.threads = threads;
  json j;
  j["source"] = l.input.source;
  j["group"] = group_json(*l.input.action);
  j["mode"] = clique ? "clique" : "coclique";
  ekr::SearchResult r;
  if (prof.group().order() <= ekr::kMaxExactVertices) {
    const ekr::DerangementGraph graph(prof);
    r = clique ? ekr::max_clique(graph, so) : ekr::max_coclique(graph, so);
    j["search"] = "exact";
  } else if (!clique) {
    r = ekr::greedy_coclique(prof);
    j["search"] = "greedy";
  } else {
    throw ekr::Error(ekr::ErrorKind::GroupTooLarge, "clique search limited to " +
                                                        std::to_string(ekr::kMaxExactVertices) + " vertices");
  }
  const bool valid = clique ? ekr::is_semiregular(prof, r.best_set) : ekr::is_intersecting(prof, r.best_set);
  if (!valid)
    throw ekr::Error(ekr::ErrorKind::InconsistentCertificate, "solver result fails the independent check");
  j["size"] = r.best_set.size();
  j["optimal"] = r.optimal;
  j["time_limit_hit"] = r.time_limit_hit;
  j["nodes"] = r.nodes_explored;
  j["best_set"] = r.best_set;
  emit(j.dump(2) + "\n", out);
  return 0;
}

int cmd_spectrum(const Source& s, const std::string& weights, const std::string& out) {
  const Loaded l = load(s);
  const ekr::ActionProfile prof = ekr::profile(l.input.action);
  const ekr::ClassAlgebra alg(prof);
  const double n = static_cast<double>(prof.group().order());
  ekr::SpectrumReport rep;
  json j;
  j["source"] = l.input.source;
  j["group"] = group_json(*l.input.action);
  j["weights"] = weights;
  if (weights == "unit") {
    rep = ekr::eigenvalues(ekr::collapse(prof, alg, ekr::unit_weighting(prof)), n);
  } else if (weights == "optimized") {
    const ekr::OptimizedWeights ow = ekr::optimize_weights(prof, alg);
    rep = ow.spectrum;
    json w = json::array();
    for (double x : ow.weighting.weights)
      w.push_back(ekr::round12(x));
    j["class_weights"] = w;
  } else {
    throw ekr::Error(ekr::ErrorKind::ParseError, "--weights must be unit or optimized");
  }
  auto r12 = [](std::vector<double> v) {
    for (auto& x : v)
      x = ekr::round12(x);
    return v;
  };
  j["eigenvalues"] = r12(rep.eigenvalues);
  j["distinct"] = r12(rep.distinct);
  j["d"] = ekr::round12(rep.d);
  j["tau"] = ekr::round12(rep.tau);
  if (rep.hoffman_bound) {
    j["hoffman"] = ekr::round12(*rep.hoffman_bound);
    j["hoffman_floor"] = ekr::floor_bound(*rep.hoffman_bound);
  } else {
    j["hoffman"] = nullptr;
    j["hoffman_floor"] = nullptr;
  }
  emit(j.dump(2) + "\n", out);
  return 0;
}

struct ConstructArgs {
  std::string name;
  std::optional<std::uint32_t> q, e, p, row, ell, param;
  std::string inner, kase, out = ".";
};

std::string need(const std::optional<std::uint32_t>& v, const char* flag, const std::string& fam) {
  if (!v)
    throw ekr::Error(ekr::ErrorKind::ParseError, fam + " needs " + flag);
  return std::to_string(*v);
}

ekr::ConstructionOutput build_from_args(const ConstructArgs& a) {
  const std::string& f = a.name;
  if (f == "agl1st" || f == "psu3")
    return ekr::build_named(f + ":" + need(a.q, "--q", f));
  if (f == "psl2even" || f == "szborel")
    return ekr::build_named(f + ":" + need(a.e, "--e", f));
  if (f == "affine")
    return ekr::build_named(f + ":" + need(a.p, "--p", f));
  if (f == "table2")
    return ekr::build_named(f + ":" + need(a.row, "--row", f));
  if (f == "psl2odd") {
    if (a.kase.empty())
      throw ekr::Error(ekr::ErrorKind::ParseError, "psl2odd needs --case parabolic|dihedral");
    std::string spec = f + ":" + need(a.p, "--p", f) + ":" + a.kase;
    if (a.param)
      spec += ":" + std::to_string(*a.param);
    return ekr::build_named(spec);
  }
  if (f == "product") {
    if (a.inner.empty())
      throw ekr::Error(ekr::ErrorKind::ParseError, "product needs --inner");
    return ekr::build_product_action(ekr::build_named(a.inner), a.ell.value_or(2));
  }
  throw ekr::Error(ekr::ErrorKind::ParseError, "unknown construction '" + f + "'");
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f)
    throw ekr::Error(ekr::ErrorKind::ParseError, "cannot write " + path.string());
  f << text;
}

int cmd_construct(const ConstructArgs& a) {
  const ekr::ConstructionOutput c = build_from_args(a);
  const ekr::ActionProfile prof = ekr::profile(c.action);
  const ekr::ConstructionCheck chk = ekr::verify_construction(c, prof);
  const ekr::TransitiveAction& act = *c.action;
  const ekr::GroupTable& g = act.group();

  std::string stem = c.name;
  std::replace(stem.begin(), stem.end(), ':', '_');
  fs::create_directories(a.out);
  const fs::path dir(a.out);

  // Prefer the action on Omega when it is faithful, so that --point 0 of the
  // written file is the construction's stabilizer.
  std::string representation = "natural", basis = "group_file";
  ekr::GroupFile gf;
  ekr::GroupPtr written;
  if (!g.large_mode()) {
    bool faithful = true;
    for (std::uint32_t x = 1; x < g.order() && faithful; ++x) {
      bool fixes_all = true;
      for (std::uint32_t w = 0; w < act.omega_size() && fixes_all; ++w)
        fixes_all = act.point_image(x, w) == w;
      faithful = !fixes_all;
    }
    if (faithful) {
      representation = "omega";
      gf.degree = static_cast<std::uint32_t>(act.omega_size());
      for (auto gen : g.generators()) {
        ekr::Permutation p(gf.degree);
        for (std::uint32_t w = 0; w < gf.degree; ++w)
          p[w] = act.point_image(gen, w);
        gf.generators.push_back(std::move(p));
      }
    } else {
      gf = ekr::group_file_of(g);
    }
    written = ekr::close_group(gf.degree, gf.generators);
    if (written->order() != g.order())
      throw ekr::Error(ekr::ErrorKind::InconsistentCertificate, "written generators do not generate the group");
  } else {
    gf = ekr::group_file_of(g);
    basis = "construction";
  }
  auto reindex = [&](const Elems& xs) {
    if (!written)
      return xs;
    Elems out;
    out.reserve(xs.size());
    for (auto x : xs) {
      ekr::Permutation p(gf.degree);
      for (std::uint32_t i = 0; i < gf.degree; ++i)
        p[i] = representation == "omega" ? act.point_image(x, i) : g.image(x, i);
      out.push_back(static_cast<std::uint32_t>(written->find(p)));
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  const std::string group_name = stem + ".grp";
  write_file(dir / group_name, ekr::format_group_file(gf, c.name + " (" + representation + " action)"));
  json subsets = json::object();
  for (const auto& [name, sub] : c.named_subsets) {
    const std::string file = stem + "." + name + ".txt";
    std::string text;
    for (auto x : reindex(sub.elements))
      text += std::to_string(x) + "\n";
    write_file(dir / file, text);
    subsets[name] = {{"role", ekr::to_string(sub.role)}, {"size", sub.elements.size()}, {"file", file}};
  }
  json expected = json::object();
  for (const auto& [key, v] : c.expected) {
    json e;
    if (v.kind == ekr::ExpectedValue::Kind::Integer)
      e["value"] = v.integer;
    else
      e["value"] = v.to_string();
    e["float"] = ekr::round12(v.value());
    e["note"] = v.note;
    expected[key] = e;
  }
  json checks = json::array();
  for (const auto& v : chk.values)
    checks.push_back({{"key", v.key}, {"expected", v.expected}, {"computed", v.computed}, {"ok", v.ok}});

  json j;
  j["name"] = c.name;
  j["group_file"] = group_name;
  j["representation"] = representation;
  j["index_basis"] = basis;
  j["order"] = g.order();
  j["degree"] = gf.degree;
  j["omega"] = act.omega_size();
  j["stabilizer_order"] = act.stabilizer_order();
  j["witness"] = c.witness;
  j["certificate"] = c.certificate;
  j["subsets"] = subsets;
  j["expected"] = expected;
  j["verification"] = {{"ok", chk.ok},
                       {"rho_lower", chk.certificate.rho_lower_sq.sqrt_string()},
                       {"rho_upper", chk.certificate.rho_upper_sq.sqrt_string()},
                       {"upper_kind", ekr::to_string(chk.certificate.upper_kind)},
                       {"upper_floor", chk.certificate.upper_floor},
                       {"tight", chk.certificate.tight},
                       {"checks", checks}};
  const std::string text = j.dump(2) + "\n";
  write_file(dir / (stem + ".expected.json"), text);
  std::cout << text;
  return chk.ok ? 0 : kExitCertificate;
}

int cmd_accept(const ekr::AcceptanceOptions& opts, bool list, bool verbose) {
  if (list) {
    for (const auto& c : ekr::acceptance_criteria())
      std::printf("%2d %-28s suite=%-10s budget=%g s\n", c.id, c.name.c_str(), c.suite.c_str(), c.budget);
    return 0;
  }
  int failed = 0, ran = 0;
  ekr::run_acceptance(opts, [&](const ekr::CriterionResult& r) {
    std::printf("%s\n", ekr::format_result_line(r).c_str());
    if (verbose || !r.passed)
      for (const auto& d : r.details)
        std::printf("      %s\n", d.c_str());
    std::fflush(stdout);
    ++ran;
    failed += !r.passed;
  });
  if (ran == 0) {
    std::fprintf(stderr, "no criterion matches '%s'\n", opts.only.c_str());
    return kExitParse;
  }
  std::printf("%d of %d criteria passed\n", ran - failed, ran);
  return failed ? kExitAcceptFailure : 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"ekrlab: intersecting and semiregular subsets of transitive groups"};
  app.require_subcommand(1);

  Source src;
  ekr::AnalysisOptions aopts;
  bool no_optimize = false;
  std::string out;
  auto* analyze = app.add_subcommand("analyze", "profile, spectra, Hoffman bounds, optional exact search, rho");
  add_source_options(analyze, src);
  analyze->add_flag("--exact", aopts.exact, "run the coclique solver (greedy beyond 5000 vertices)");
  analyze->add_option("--time-limit", aopts.time_limit, "solver time limit in seconds")->capture_default_str();
  analyze->add_option("--threads", aopts.threads, "solver threads")->capture_default_str();
  analyze->add_flag("--no-optimize", no_optimize, "skip the weight LP");
  analyze->add_flag("--timings", aopts.timings, "include wall-clock timings (breaks byte-identical output)");
  analyze->add_option("--out", out, "write the report here instead of stdout");

  bool clique = false;
  double time_limit = 60;
  unsigned threads = 1;
  auto* solve = app.add_subcommand("solve", "maximum coclique (or clique) of the derangement graph");
  add_source_options(solve, src);
  solve->add_flag("--clique", clique, "maximum semiregular subset instead");
  solve->add_option("--time-limit", time_limit)->capture_default_str();
  solve->add_option("--threads", threads)->capture_default_str();
  solve->add_option("--out", out);

  std::string weights = "unit";
  auto* spectrum = app.add_subcommand("spectrum", "collapsed spectrum and Hoffman bound");
  add_source_options(spectrum, src);
  spectrum->add_option("--weights", weights, "unit or optimized")->capture_default_str();
  spectrum->add_option("--out", out);

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "write a construction's group, subsets and expected values");
  construct->add_option("name", ca.name, "agl1st, psl2even, product, affine, table2, szborel, psu3, psl2odd")
      ->required();
  construct->add_option("--q", ca.q);
  construct->add_option("--e", ca.e);
  construct->add_option("--p", ca.p);
  construct->add_option("--row", ca.row);
  construct->add_option("--inner", ca.inner, "inner construction for product, e.g. psl2even:2");
  construct->add_option("--ell", ca.ell, "product exponent (default 2)");
  construct->add_option("--case", ca.kase, "psl2odd: parabolic or dihedral");
  construct->add_option("--param", ca.param, "psl2odd: ell or eps");
  construct->add_option("--out", ca.out, "output directory")->capture_default_str();

  ekr::AcceptanceOptions acc;
  bool list = false, verbose = false;
  auto* accept = app.add_subcommand("accept", "run the acceptance suite");
  accept->add_option("--only", acc.only, "criterion id, name or suite tag (comma separated)");
  accept->add_flag("--list", list, "list the criteria");
  accept->add_option("--seed", acc.seed, "seed for the randomized property suite")->capture_default_str();
  accept->add_option("--threads", acc.threads)->capture_default_str();
  accept->add_flag("--verbose", verbose, "print every check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParse;
  }

  try {
    if (*analyze) {
      aopts.optimize = !no_optimize;
      const Loaded l = load(src);
      emit(ekr::serialize(ekr::analyze(l.input, aopts)), out);
      return 0;
    }
    if (*solve)
      return cmd_solve(src, clique, time_limit, threads, out);
    if (*spectrum)
      return cmd_spectrum(src, weights, out);
    if (*construct)
      return cmd_construct(ca);
    if (*accept)
      return cmd_accept(acc, list, verbose);
  } catch (const ekr::Error& e) {
    std::fprintf(stderr, "ekrlab: %s\n", e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "ekrlab: %s\n", e.what());
    return 1;
  }
  return 0;
}
