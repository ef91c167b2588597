#include "ekr/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "ekr/error.hpp"
#include "ekr/solver.hpp"
#include "ekr/spectra.hpp"
#include "ekr/suzuki.hpp"

namespace ekr {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<double> round_all(std::vector<double> v) {
  for (auto& x : v)
    x = round12(x);
  return v;
}

// Eigenvalues that are zero up to solver noise are reported as 0.
std::vector<double> snap(std::vector<double> v, double scale) {
  for (auto& x : v)
    if (std::abs(x) <= 1e-9 * std::max(1.0, std::abs(scale)))
      x = 0;
  return round_all(std::move(v));
}

std::vector<CaseBound> sz8_case_bounds(const ActionProfile& prof, const ClassAlgebra& alg) {
  const GroupTable& g = prof.group();
  std::vector<CaseBound> out;
  if (g.large_mode() || g.order() != 29120)
    return out;
  SzGroup sz;
  try {
    sz = classify_sz8(prof.action->group_ptr());
  } catch (const Error&) {
    return out;
  }
  for (SzCase tag : {SzCase::D2qMinus1, SzCase::ZqMinus1, SzCase::BorelOrder4Exponent, SzCase::TorusPlus,
                     SzCase::TorusMinus}) {
    const ClassWeighting w = sz_case_weighting(sz, sz_case_spectrum(tag, 8));
    try {
      check_compatible(prof, w);
    } catch (const Error&) {
      continue;
    }
    if (auto b = weighted_hoffman(prof, alg, w))
      out.push_back({to_string(tag), *b});
  }
  return out;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

template <class T>
T get(const json& j, const char* key) {
  if (!j.contains(key))
    throw Error(ErrorKind::ParseError, std::string("report field missing: ") + key);
  return j.at(key).get<T>();
}

template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null())
    return std::nullopt;
  return j.at(key).get<T>();
}

} // namespace

double round12(double x) {
  if (!std::isfinite(x) || x == 0)
    return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

AnalysisReport analyze(const AnalysisInput& input, const AnalysisOptions& opts) {
  AnalysisReport rep;
  rep.source = input.source;
  const auto t_start = Clock::now();
  auto t = t_start;
  auto lap = [&](const char* name) {
    if (opts.timings)
      rep.timings.emplace_back(name, round12(seconds_since(t)));
    t = Clock::now();
  };

  const ActionProfile prof = profile(input.action);
  const GroupTable& g = prof.group();
  const double n = static_cast<double>(g.order());
  rep.group = {g.order(), g.degree(), input.action->omega_size(), input.action->stabilizer_order(), g.large_mode()};
  rep.classes = {g.num_classes(), prof.fixing_classes.size(), prof.derangement_classes.size(), prof.derangement_count};
  lap("profile");

  const ClassAlgebra alg(prof);
  const SpectrumReport unit = eigenvalues(collapse(prof, alg, unit_weighting(prof)), n);
  rep.spectrum = {snap(unit.eigenvalues, unit.d), snap(unit.distinct, unit.d), round12(unit.d), round12(unit.tau)};
  std::vector<UpperSource> uppers;
  if (unit.hoffman_bound) {
    rep.hoffman.unit = round12(*unit.hoffman_bound);
    rep.hoffman.unit_floor = floor_bound(*unit.hoffman_bound);
    uppers.push_back({UpperKind::Hoffman, *unit.hoffman_bound, "unit weights"});
  }
  lap("spectrum");

  if (opts.optimize) {
    try {
      const OptimizedWeights ow = optimize_weights(prof, alg);
      rep.hoffman.optimized = round12(ow.bound);
      rep.hoffman.optimized_floor = floor_bound(ow.bound);
      rep.hoffman.optimized_rounds = ow.rounds;
      uppers.push_back({UpperKind::Hoffman, ow.bound, "optimized weights"});
    } catch (const Error& e) {
      rep.hoffman.note = e.what();
    }
  }
  for (const auto& c : sz8_case_bounds(prof, alg)) {
    uppers.push_back({UpperKind::Hoffman, c.bound, "closed-form weights " + c.tag});
    rep.hoffman.closed_form.push_back({c.tag, round12(c.bound)});
  }
  lap("hoffman");

  for (const auto& r : input.semiregular)
    uppers.push_back(semiregular_upper_bound(prof, r).source());

  std::vector<std::pair<std::string, std::vector<std::uint32_t>>> witnesses;
  if (opts.exact) {
    SearchResult sr;
    SolverSummary s;
    if (g.order() <= kMaxExactVertices) {
      SearchOptions so;
      double best = n;
      for (const auto& u : uppers)
        best = std::min(best, u.value);
      so.prune_bound = best;
      so.time_limit = opts.time_limit;
      so.threads = opts.threads;
      sr = max_coclique(DerangementGraph(prof), so);
      s.mode = "exact";
    } else {
      sr = greedy_coclique(prof);
      s.mode = "greedy";
    }
    s.size = sr.best_set.size();
    s.optimal = sr.optimal;
    s.time_limit_hit = sr.time_limit_hit;
    s.nodes = sr.nodes_explored;
    s.best_set = sr.best_set;
    if (sr.optimal)
      uppers.push_back({UpperKind::ExactSolver, static_cast<double>(s.size), "exact search"});
    witnesses.emplace_back("solver", sr.best_set);
    rep.solver = std::move(s);
    lap("solver");
  }
  for (const auto& w : input.witnesses)
    witnesses.push_back(w);
  witnesses.emplace_back("stabilizer", input.action->stabilizer());

  // Every supplied witness must be consistent; the largest one is certified.
  std::size_t pick = witnesses.size() - 1;
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    if (!is_intersecting(prof, witnesses[i].second))
      throw Error(ErrorKind::InconsistentCertificate, "witness '" + witnesses[i].first + "' is not intersecting");
    if (witnesses[i].second.size() > witnesses[pick].second.size())
      pick = i;
  }
  const RhoCertificate cert = certify_rho(prof, witnesses[pick].second, uppers);
  rep.rho = {cert.lower_witness.size(),
             witnesses[pick].first,
             round12(cert.upper_bound),
             cert.upper_floor,
             to_string(cert.upper_kind),
             cert.upper_note,
             cert.rho_lower_sq.sqrt_string(),
             cert.rho_upper_sq.sqrt_string(),
             round12(cert.rho_lower),
             round12(cert.rho_upper),
             cert.tight};
  lap("certificate");
  if (opts.timings)
    rep.timings.emplace_back("total", round12(seconds_since(t_start)));
  return rep;
}

std::string serialize(const AnalysisReport& r) {
  json j;
  j["source"] = r.source;
  j["group"] = {{"order", r.group.order},
                {"degree", r.group.degree},
                {"omega", r.group.omega},
                {"stabilizer_order", r.group.stabilizer_order},
                {"large_mode", r.group.large_mode}};
  j["classes"] = {{"classes", r.classes.classes},
                  {"fixing_classes", r.classes.fixing_classes},
                  {"derangement_classes", r.classes.derangement_classes},
                  {"derangements", r.classes.derangements}};
  j["spectrum"] = {{"eigenvalues", round_all(r.spectrum.eigenvalues)},
                   {"distinct", round_all(r.spectrum.distinct)},
                   {"d", round12(r.spectrum.d)},
                   {"tau", round12(r.spectrum.tau)}};
  json cases = json::array();
  for (const auto& c : r.hoffman.closed_form)
    cases.push_back({{"tag", c.tag}, {"bound", round12(c.bound)}});
  j["hoffman"] = {{"unit", r.hoffman.unit ? json(round12(*r.hoffman.unit)) : json(nullptr)},
                  {"unit_floor", opt(r.hoffman.unit_floor)},
                  {"optimized", r.hoffman.optimized ? json(round12(*r.hoffman.optimized)) : json(nullptr)},
                  {"optimized_floor", opt(r.hoffman.optimized_floor)},
                  {"optimized_rounds", r.hoffman.optimized_rounds},
                  {"closed_form", cases},
                  {"note", r.hoffman.note}};
  if (r.solver) {
    const auto& s = *r.solver;
    j["solver"] = {{"mode", s.mode},       {"size", s.size},   {"optimal", s.optimal},
                   {"time_limit_hit", s.time_limit_hit}, {"nodes", s.nodes}, {"best_set", s.best_set}};
  } else {
    j["solver"] = nullptr;
  }
  j["rho"] = {{"witness_size", r.rho.witness_size},
              {"witness", r.rho.witness},
              {"upper_bound", round12(r.rho.upper_bound)},
              {"upper_floor", r.rho.upper_floor},
              {"upper_kind", r.rho.upper_kind},
              {"upper_note", r.rho.upper_note},
              {"rho_lower_exact", r.rho.rho_lower_exact},
              {"rho_upper_exact", r.rho.rho_upper_exact},
              {"rho_lower", round12(r.rho.rho_lower)},
              {"rho_upper", round12(r.rho.rho_upper)},
              {"tight", r.rho.tight}};
  if (!r.timings.empty()) {
    json tj = json::object();
    for (const auto& [k, v] : r.timings)
      tj[k] = round12(v);
    j["timings"] = tj;
  }
  return j.dump(2) + "\n";
}

AnalysisReport parse_report(const std::string& text) {
  AnalysisReport r;
  try {
    const json j = json::parse(text);
    r.source = get<std::string>(j, "source");
    const json& g = j.at("group");
    r.group = {get<std::uint64_t>(g, "order"), get<std::uint32_t>(g, "degree"), get<std::uint64_t>(g, "omega"),
               get<std::uint64_t>(g, "stabilizer_order"), get<bool>(g, "large_mode")};
    const json& c = j.at("classes");
    r.classes = {get<std::uint64_t>(c, "classes"), get<std::uint64_t>(c, "fixing_classes"),
                 get<std::uint64_t>(c, "derangement_classes"), get<std::uint64_t>(c, "derangements")};
    const json& s = j.at("spectrum");
    r.spectrum = {get<std::vector<double>>(s, "eigenvalues"), get<std::vector<double>>(s, "distinct"),
                  get<double>(s, "d"), get<double>(s, "tau")};
    const json& h = j.at("hoffman");
    r.hoffman.unit = get_opt<double>(h, "unit");
    r.hoffman.unit_floor = get_opt<std::uint64_t>(h, "unit_floor");
    r.hoffman.optimized = get_opt<double>(h, "optimized");
    r.hoffman.optimized_floor = get_opt<std::uint64_t>(h, "optimized_floor");
    r.hoffman.optimized_rounds = get<std::int64_t>(h, "optimized_rounds");
    for (const auto& cb : h.at("closed_form"))
      r.hoffman.closed_form.push_back({get<std::string>(cb, "tag"), get<double>(cb, "bound")});
    r.hoffman.note = get<std::string>(h, "note");
    if (j.contains("solver") && !j.at("solver").is_null()) {
      const json& v = j.at("solver");
      r.solver = SolverSummary{get<std::string>(v, "mode"), get<std::uint64_t>(v, "size"), get<bool>(v, "optimal"),
                               get<bool>(v, "time_limit_hit"), get<std::uint64_t>(v, "nodes"),
                               get<std::vector<std::uint32_t>>(v, "best_set")};
    }
    const json& p = j.at("rho");
    r.rho = {get<std::uint64_t>(p, "witness_size"),
             get<std::string>(p, "witness"),
             get<double>(p, "upper_bound"),
             get<std::uint64_t>(p, "upper_floor"),
             get<std::string>(p, "upper_kind"),
             get<std::string>(p, "upper_note"),
             get<std::string>(p, "rho_lower_exact"),
             get<std::string>(p, "rho_upper_exact"),
             get<double>(p, "rho_lower"),
             get<double>(p, "rho_upper"),
             get<bool>(p, "tight")};
    if (j.contains("timings"))
      for (const auto& [k, v] : j.at("timings").items())
        r.timings.emplace_back(k, v.get<double>());
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed report: ") + e.what());
  }
  return r;
}

GroupPtr close_group_cached(const GroupFile& file, const std::string& cache_dir) {
  if (cache_dir.empty())
    return close_group(file.degree, file.generators);
  namespace fs = std::filesystem;
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.closure",
                static_cast<unsigned long long>(fnv1a(format_group_file(file))));
  const fs::path path = fs::path(cache_dir) / name;

  if (std::ifstream in{path, std::ios::binary}) {
    std::uint32_t degree = 0;
    std::uint64_t count = 0;
    in.read(reinterpret_cast<char*>(&degree), sizeof degree);
    in.read(reinterpret_cast<char*>(&count), sizeof count);
    if (in && degree == file.degree && count > 0 && count <= kMaxGroupOrder) {
      std::vector<std::uint32_t> images(count * degree);
      in.read(reinterpret_cast<char*>(images.data()), static_cast<std::streamsize>(images.size() * 4));
      if (in) {
        try {
          return group_from_elements(degree, std::move(images), file.generators);
        } catch (const Error&) {
          // stale or corrupt entry: rebuild below
        }
      }
    }
  }

  GroupPtr g = close_group(file.degree, file.generators);
  std::error_code ec;
  fs::create_directories(cache_dir, ec);
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out)
      return g;
    const std::uint32_t degree = g->degree();
    const std::uint64_t count = g->order();
    out.write(reinterpret_cast<const char*>(&degree), sizeof degree);
    out.write(reinterpret_cast<const char*>(&count), sizeof count);
    for (std::uint32_t a = 0; a < g->order(); ++a) {
      const Permutation p = g->permutation(a);
      out.write(reinterpret_cast<const char*>(p.data()), static_cast<std::streamsize>(p.size() * 4));
    }
  }
  fs::rename(tmp, path, ec);
  return g;
}

} // namespace ekr
