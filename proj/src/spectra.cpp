#include "ekr/spectra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "ekr/error.hpp"
#include "ekr/lp.hpp"

namespace ekr {

ClassWeighting unit_weighting(const ActionProfile& prof) {
  ClassWeighting w;
  w.weights.assign(prof.group().num_classes(), 0.0);
  for (auto c : prof.derangement_classes)
    w.weights[c] = 1.0;
  return w;
}

void check_compatible(const ActionProfile& prof, const ClassWeighting& w) {
  const GroupTable& g = prof.group();
  if (w.weights.size() != g.num_classes())
    throw Error(ErrorKind::IncompatibleWeighting, "weighting has the wrong number of classes");
  for (std::size_t c = 0; c < g.num_classes(); ++c) {
    if (prof.fixing[c] && w.weights[c] != 0.0)
      throw Error(ErrorKind::IncompatibleWeighting, "non-zero weight on a fixing class");
    const double other = w.weights[g.class_inverse(c)];
    if (std::fabs(w.weights[c] - other) > 1e-12 * std::max(1.0, std::fabs(other)))
      throw Error(ErrorKind::IncompatibleWeighting, "weights differ on a class and its inverse class");
  }
}

ClassAlgebra::ClassAlgebra(const ActionProfile& prof) : k_(prof.group().num_classes()) {
  const GroupTable& g = prof.group();
  support_ = prof.derangement_classes;
  for (std::size_t c = 0; c < k_; ++c)
    sizes_.push_back(g.class_size(c));
  std::vector<std::int64_t> pos(k_, -1);
  for (std::size_t p = 0; p < support_.size(); ++p)
    pos[support_[p]] = static_cast<std::int64_t>(p);
  counts_.assign(support_.size() * k_ * k_, 0);
  std::vector<std::uint32_t> reps(k_);
  for (std::size_t j = 0; j < k_; ++j)
    reps[j] = g.class_rep(j);
  for (std::uint32_t s = 0; s < g.order(); ++s) {
    const std::int64_t p = pos[g.class_of(s)];
    if (p < 0)
      continue;
    const std::uint32_t si = g.inverse(s);
    std::uint64_t* base = counts_.data() + static_cast<std::size_t>(p) * k_ * k_;
    for (std::size_t j = 0; j < k_; ++j)
      ++base[j * k_ + g.class_of(g.mult(si, reps[j]))];
  }
}

CollapsedMatrix collapse(const ActionProfile& prof, const ClassWeighting& w) {
  check_compatible(prof, w);
  return collapse(prof, ClassAlgebra(prof), w);
}

CollapsedMatrix collapse(const ActionProfile& prof, const ClassAlgebra& algebra, const ClassWeighting& w) {
  check_compatible(prof, w);
  CollapsedMatrix m;
  m.k = algebra.k();
  m.class_sizes = algebra.class_sizes();
  m.data.assign(m.k * m.k, 0.0);
  double d = 0;
  double scale = 0;
  for (std::size_t p = 0; p < algebra.support().size(); ++p) {
    const std::size_t c = algebra.support()[p];
    const double wc = w.weights[c];
    d += wc * static_cast<double>(m.class_sizes[c]);
    scale += std::fabs(wc) * static_cast<double>(m.class_sizes[c]);
    if (wc == 0.0)
      continue;
    for (std::size_t j = 0; j < m.k; ++j)
      for (std::size_t i = 0; i < m.k; ++i)
        m.data[j * m.k + i] += wc * static_cast<double>(algebra.count(p, j, i));
  }
  m.row_sum = d;
  for (std::size_t j = 0; j < m.k; ++j) {
    double s = 0;
    for (std::size_t i = 0; i < m.k; ++i)
      s += m.data[j * m.k + i];
    if (std::fabs(s - d) > 1e-9 * std::max(1.0, scale))
      throw std::logic_error("collapsed matrix rows do not share a common sum");
  }
  return m;
}

namespace {

Eigen::MatrixXd symmetrized(const CollapsedMatrix& m) {
  const auto k = static_cast<Eigen::Index>(m.k);
  Eigen::MatrixXd S(k, k);
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < k; ++i)
      S(j, i) = std::sqrt(static_cast<double>(m.class_sizes[j]) / static_cast<double>(m.class_sizes[i])) *
                m.at(j, i);
  return S;
}

double matrix_scale(const CollapsedMatrix& m) {
  double s = 1.0;
  for (auto x : m.data)
    s = std::max(s, std::fabs(x));
  return s * static_cast<double>(m.k);
}

} // namespace

SpectrumReport eigenvalues(const CollapsedMatrix& m, double n) {
  SpectrumReport r;
  r.d = m.row_sum;
  if (m.k == 0)
    return r;
  const double scale = matrix_scale(m);
  Eigen::MatrixXd S = symmetrized(m);
  std::vector<double> vals;
  if ((S - S.transpose()).cwiseAbs().maxCoeff() <= 1e-9 * scale) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (S + S.transpose()), Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      vals.push_back(es.eigenvalues()(i));
  } else {
    Eigen::MatrixXd N = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        m.data.data(), static_cast<Eigen::Index>(m.k), static_cast<Eigen::Index>(m.k));
    Eigen::EigenSolver<Eigen::MatrixXd> es(N, false);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const auto z = es.eigenvalues()(i);
      if (std::fabs(z.imag()) > 1e-7 * scale)
        throw Error(ErrorKind::NonRealSpectrum, "collapsed matrix has a non-real eigenvalue");
      vals.push_back(z.real());
    }
  }
  std::sort(vals.begin(), vals.end(), std::greater<>());
  r.eigenvalues = vals;
  double mag = 1.0;
  for (auto v : vals)
    mag = std::max(mag, std::fabs(v));
  const double tol = kSpectrumTolerance * mag;
  for (auto v : vals)
    if (r.distinct.empty() || std::fabs(r.distinct.back() - v) > tol)
      r.distinct.push_back(v);
  for (auto& v : r.distinct)
    if (std::fabs(v) <= 1e-9 * mag)
      v = 0.0;
  r.tau = vals.back();
  try {
    r.hoffman_bound = hoffman(r, n);
  } catch (const Error&) {
    r.hoffman_bound.reset();
  }
  return r;
}

double hoffman(const SpectrumReport& r, double n) {
  const double mag = std::max({1.0, std::fabs(r.d), std::fabs(r.tau)});
  if (!(r.tau < -1e-9 * mag) || !(r.d > 1e-9 * mag))
    throw Error(ErrorKind::DegenerateSpectrum, "Hoffman bound needs tau < 0 < d");
  return n / (1.0 - r.d / r.tau);
}

std::optional<double> weighted_hoffman(const ActionProfile& prof, const ClassAlgebra& algebra,
                                       const ClassWeighting& w) {
  return eigenvalues(collapse(prof, algebra, w), static_cast<double>(prof.group().order())).hoffman_bound;
}

OptimizedWeights optimize_weights(const ActionProfile& prof) { return optimize_weights(prof, ClassAlgebra(prof)); }

namespace {
constexpr double kWeightBox = 1e3;
} // namespace

OptimizedWeights optimize_weights(const ActionProfile& prof, const ClassAlgebra& algebra) {
  const GroupTable& g = prof.group();
  const std::size_t k = algebra.k();
  const double n = static_cast<double>(g.order());

  // class pairs {c, c^-1}
  std::vector<std::vector<std::size_t>> pairs; // support positions
  std::vector<double> pair_size;
  std::vector<std::int64_t> pos(k, -1);
  for (std::size_t p = 0; p < algebra.support().size(); ++p)
    pos[algebra.support()[p]] = static_cast<std::int64_t>(p);
  for (std::size_t p = 0; p < algebra.support().size(); ++p) {
    const std::size_t c = algebra.support()[p], ci = g.class_inverse(c);
    if (ci < c)
      continue;
    std::vector<std::size_t> members{p};
    double size = static_cast<double>(g.class_size(c));
    if (ci != c) {
      members.push_back(static_cast<std::size_t>(pos[ci]));
      size += static_cast<double>(g.class_size(ci));
    }
    pairs.push_back(members);
    pair_size.push_back(size);
  }
  const std::size_t P = pairs.size();
  if (P == 0)
    throw Error(ErrorKind::Unbounded, "no derangement classes to weight");

  // Symmetrized pair matrices scaled to unit row sum.
  std::vector<Eigen::MatrixXd> Sp;
  for (std::size_t p = 0; p < P; ++p) {
    CollapsedMatrix m;
    m.k = k;
    m.class_sizes = algebra.class_sizes();
    m.data.assign(k * k, 0.0);
    for (auto s : pairs[p])
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < k; ++i)
          m.data[j * k + i] += static_cast<double>(algebra.count(s, j, i)) / pair_size[p];
    Eigen::MatrixXd S = symmetrized(m);
    Sp.push_back(0.5 * (S + S.transpose()));
  }

  Eigen::VectorXd trivial(static_cast<Eigen::Index>(k));
  for (std::size_t j = 0; j < k; ++j)
    trivial(static_cast<Eigen::Index>(j)) = std::sqrt(static_cast<double>(algebra.class_sizes()[j]));
  trivial.normalize();

  auto functional = [&](const Eigen::VectorXd& u) {
    std::vector<double> w(P);
    for (std::size_t p = 0; p < P; ++p)
      w[p] = u.dot(Sp[p] * u);
    return w;
  };

  std::vector<std::vector<double>> cuts;
  {
    std::mt19937_64 rng(0);
    std::uniform_real_distribution<double> coef(0.5, 1.5);
    Eigen::MatrixXd mix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    for (std::size_t p = 0; p < P; ++p)
      mix += coef(rng) * Sp[p];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mix);
    Eigen::Index triv = 0;
    double best = -1;
    for (Eigen::Index i = 0; i < es.eigenvectors().cols(); ++i) {
      const double overlap = std::fabs(es.eigenvectors().col(i).dot(trivial));
      if (overlap > best) {
        best = overlap;
        triv = i;
      }
    }
    for (Eigen::Index i = 0; i < es.eigenvectors().cols(); ++i)
      if (i != triv)
        cuts.push_back(functional(es.eigenvectors().col(i)));
  }

  OptimizedWeights out;
  for (int round = 1; round <= 100; ++round) {
    // variables: g+_p (P), g-_p (P), t
    lp::Problem prob;
    const std::size_t nv = 2 * P + 1;
    prob.c.assign(nv, 0.0);
    prob.c[2 * P] = 1.0;
    for (const auto& cut : cuts) {
      std::vector<double> row(nv, 0.0);
      for (std::size_t p = 0; p < P; ++p) {
        row[p] = cut[p];
        row[P + p] = -cut[p];
      }
      row[2 * P] = 1.0;
      prob.a.push_back(row);
      prob.rel.push_back(lp::Relation::GreaterEqual);
      prob.b.push_back(0.0);
    }
    std::vector<double> norm(nv, 0.0);
    for (std::size_t p = 0; p < P; ++p) {
      norm[p] = 1.0;
      norm[P + p] = -1.0;
    }
    prob.a.push_back(norm);
    prob.rel.push_back(lp::Relation::Equal);
    prob.b.push_back(1.0);
    // Box on the pair weights keeps early rounds bounded; any weighting is a
    // valid certificate, so the box never affects soundness.
    for (std::size_t v = 0; v < 2 * P; ++v) {
      std::vector<double> box(nv, 0.0);
      box[v] = 1.0;
      prob.a.push_back(box);
      prob.rel.push_back(lp::Relation::LessEqual);
      prob.b.push_back(kWeightBox);
    }
    const auto sol = lp::solve(prob);
    if (sol.status != lp::Status::Optimal)
      throw Error(ErrorKind::Unbounded, "weight program has no optimum");
    const double t = sol.x[2 * P];

    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    ClassWeighting w;
    w.weights.assign(g.num_classes(), 0.0);
    for (std::size_t p = 0; p < P; ++p) {
      const double gp = sol.x[p] - sol.x[P + p];
      M += gp * Sp[p];
      for (auto s : pairs[p])
        w.weights[algebra.support()[s]] = gp / pair_size[p];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    const double tau = es.eigenvalues()(0);
    if (tau >= -t - 1e-8) {
      out.weighting = w;
      out.spectrum = eigenvalues(collapse(prof, algebra, w), n);
      out.bound = hoffman(out.spectrum, n);
      out.rounds = round;
      return out;
    }
    cuts.push_back(functional(es.eigenvectors().col(0)));
  }
  throw Error(ErrorKind::NoConvergence, "weight optimisation did not converge in 100 rounds");
}

} // namespace ekr
