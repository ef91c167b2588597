#include "ekr/derangement.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "ekr/error.hpp"

namespace ekr {

ActionProfile profile(ActionPtr action) {
  ActionProfile prof;
  prof.action = std::move(action);
  const GroupTable& g = prof.group();
  std::mt19937_64 rng(0);
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(g.order() - 1));
  prof.fixing.assign(g.num_classes(), 0);
  for (std::size_t c = 0; c < g.num_classes(); ++c) {
    const bool fixes = prof.action->fixes_some_point(g.class_rep(c));
    const std::uint32_t other = g.conjugate(g.class_rep(c), pick(rng));
    if (prof.action->fixes_some_point(other) != fixes)
      throw std::logic_error("fixed-point property is not constant on a conjugacy class");
    prof.fixing[c] = fixes;
    if (fixes) {
      prof.fixing_classes.push_back(static_cast<std::uint32_t>(c));
    } else {
      prof.derangement_classes.push_back(static_cast<std::uint32_t>(c));
      prof.derangement_count += g.class_size(c);
    }
  }
  return prof;
}

namespace {

std::vector<std::uint32_t> normalized(std::vector<std::uint32_t> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

} // namespace

bool is_intersecting(const ActionProfile& prof, const std::vector<std::uint32_t>& subset) {
  const auto s = normalized(subset);
  const GroupTable& g = prof.group();
  if (s.size() > 1 && is_subgroup(g, s)) {
    for (auto x : s)
      if (prof.is_derangement(x))
        return false;
    return true;
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::uint32_t yi = g.inverse(s[i]);
    for (std::size_t j = 0; j < s.size(); ++j)
      if (i != j && prof.is_derangement(g.mult(s[j], yi)))
        return false;
  }
  return true;
}

bool is_semiregular(const ActionProfile& prof, const std::vector<std::uint32_t>& subset) {
  const auto s = normalized(subset);
  if (s.empty() || s.front() != 0)
    throw Error(ErrorKind::IdentityMissing, "semiregular subsets must contain the identity");
  const GroupTable& g = prof.group();
  if (s.size() > 1 && is_subgroup(g, s)) {
    for (std::size_t i = 1; i < s.size(); ++i)
      if (!prof.is_derangement(s[i]))
        return false;
    return true;
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::uint32_t yi = g.inverse(s[i]);
    for (std::size_t j = 0; j < s.size(); ++j)
      if (i != j && !prof.is_derangement(g.mult(s[j], yi)))
        return false;
  }
  return true;
}

bool is_sharply_transitive(const ActionProfile& prof, const std::vector<std::uint32_t>& subset) {
  return normalized(subset).size() == prof.action->omega_size() && is_semiregular(prof, subset);
}

std::uint64_t floor_bound(double x) {
  if (!(x > 0))
    return 0;
  return static_cast<std::uint64_t>(std::floor(x + 1e-6 * std::max(1.0, x)));
}

const char* to_string(UpperKind k) {
  switch (k) {
  case UpperKind::Hoffman:
    return "hoffman";
  case UpperKind::SemiregularClique:
    return "semiregular_clique";
  case UpperKind::ExactSolver:
    return "exact_solver";
  case UpperKind::Trivial:
    return "trivial";
  }
  return "?";
}

UpperSource SemiregularBound::source() const {
  return {UpperKind::SemiregularClique, static_cast<double>(bound), "|G|/|R|"};
}

SemiregularBound semiregular_upper_bound(const ActionProfile& prof, const std::vector<std::uint32_t>& subset) {
  const auto s = normalized(subset);
  if (!is_semiregular(prof, s))
    throw Error(ErrorKind::NotSemiregular, "subset is not semiregular");
  SemiregularBound b;
  b.bound = prof.group().order() / s.size();
  b.rho_upper_sq = Rational::from_wide(static_cast<__int128>(prof.action->omega_size()),
                                       static_cast<__int128>(s.size()) * static_cast<__int128>(s.size()));
  return b;
}

Rational rho_squared(std::uint64_t size, std::uint64_t stabilizer_order, std::uint64_t omega_size) {
  return Rational::from_wide(static_cast<__int128>(size) * size,
                             static_cast<__int128>(stabilizer_order) * stabilizer_order * omega_size);
}

RhoCertificate certify_rho(const ActionProfile& prof, std::vector<std::uint32_t> lower_witness,
                           const std::vector<UpperSource>& upper_sources) {
  RhoCertificate cert;
  cert.lower_witness = normalized(std::move(lower_witness));
  if (cert.lower_witness.empty() || !is_intersecting(prof, cert.lower_witness))
    throw Error(ErrorKind::InconsistentCertificate, "lower witness is not an intersecting subset");
  const auto& act = *prof.action;
  const double n = static_cast<double>(prof.group().order());
  cert.upper_bound = n;
  cert.upper_kind = UpperKind::Trivial;
  cert.upper_note = "|G_w||Omega|";
  for (const auto& s : upper_sources) {
    if (s.value < cert.upper_bound) {
      cert.upper_bound = s.value;
      cert.upper_kind = s.kind;
      cert.upper_note = s.note;
    }
  }
  cert.upper_floor = floor_bound(cert.upper_bound);
  if (cert.lower_witness.size() > cert.upper_floor)
    throw Error(ErrorKind::InconsistentCertificate,
                "intersecting subset of size " + std::to_string(cert.lower_witness.size()) +
                    " exceeds upper bound " + std::to_string(cert.upper_floor));
  const std::uint64_t h = act.stabilizer_order(), w = act.omega_size();
  cert.rho_lower_sq = rho_squared(cert.lower_witness.size(), h, w);
  cert.rho_upper_sq = rho_squared(cert.upper_floor, h, w);
  const double scale = static_cast<double>(h) * std::sqrt(static_cast<double>(w));
  cert.rho_lower = static_cast<double>(cert.lower_witness.size()) / scale;
  cert.rho_upper = static_cast<double>(cert.upper_floor) / scale;
  cert.tight = cert.upper_floor == cert.lower_witness.size();
  return cert;
}

std::size_t product_set_size(const GroupTable& group, const std::vector<std::uint32_t>& R,
                             const std::vector<std::uint32_t>& S) {
  std::vector<char> hit(group.order(), 0);
  std::size_t count = 0;
  for (auto r : R)
    for (auto s : S) {
      const std::uint32_t x = group.mult(r, s);
      if (!hit[x]) {
        hit[x] = 1;
        ++count;
      }
    }
  return count;
}

} // namespace ekr
