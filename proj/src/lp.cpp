#include "ekr/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ekr::lp {

namespace {

class Tableau {
public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), t_((rows + 1) * (cols + 1), 0.0), basis_(rows) {}

  double& at(std::size_t i, std::size_t j) { return t_[i * (n_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, n_); }
  double& cost(std::size_t j) { return at(m_, j); }
  // Negated objective value of the current basis.
  double rhs_cost() { return at(m_, n_); }
  std::size_t& basis(std::size_t i) { return basis_[i]; }

  void pivot(std::size_t r, std::size_t c) {
    const double inv = 1.0 / at(r, c);
    for (std::size_t j = 0; j <= n_; ++j)
      at(r, j) *= inv;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r)
        continue;
      const double f = at(i, c);
      if (f == 0.0)
        continue;
      for (std::size_t j = 0; j <= n_; ++j)
        at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
    }
    basis_[r] = c;
  }

  // Dantzig's rule over columns [0, active), falling back to Bland's rule
  // while the objective stalls. Returns false when unbounded.
  bool optimise(std::size_t active, double eps) {
    double last = rhs_cost();
    std::size_t stall = 0;
    for (std::size_t iter = 0; iter < 200000; ++iter) {
      const bool bland = stall > 50;
      std::size_t enter = active;
      double most = -eps;
      for (std::size_t j = 0; j < active; ++j)
        if (cost(j) < most) {
          enter = j;
          if (bland)
            break;
          most = cost(j);
        }
      if (enter == active)
        return true;
      std::size_t leave = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (a > eps) {
          const double ratio = rhs(i) / a;
          if (ratio < best - eps || (std::fabs(ratio - best) <= eps && leave < m_ && basis_[i] < basis_[leave])) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave == m_)
        return false;
      pivot(leave, enter);
      const double now = rhs_cost();
      if (now > last + eps) {
        last = now;
        stall = 0;
      } else {
        ++stall;
      }
    }
    throw std::runtime_error("simplex iteration limit");
  }

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

private:
  std::size_t m_, n_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
};

} // namespace

Solution solve(const Problem& p, double eps) {
  const std::size_t m = p.a.size(), nv = p.c.size();
  std::size_t slack = 0, art = 0;
  for (auto r : p.rel) {
    if (r != Relation::Equal)
      ++slack;
  }
  // after sign normalisation every >= and = row gets an artificial
  std::vector<double> sign(m, 1.0);
  std::vector<Relation> rel = p.rel;
  for (std::size_t i = 0; i < m; ++i) {
    // Negative right-hand sides flip; so do ">= 0" rows, which then start
    // with a slack in the basis instead of a degenerate artificial.
    if (p.b[i] < 0 || (p.b[i] == 0 && rel[i] == Relation::GreaterEqual)) {
      sign[i] = -1.0;
      if (rel[i] == Relation::LessEqual)
        rel[i] = Relation::GreaterEqual;
      else if (rel[i] == Relation::GreaterEqual)
        rel[i] = Relation::LessEqual;
    }
    if (rel[i] != Relation::LessEqual)
      ++art;
  }
  const std::size_t ncols = nv + slack + art;
  Tableau T(m, ncols);
  std::size_t s = nv, a = nv + slack;
  std::vector<bool> is_art(ncols, false);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < nv; ++j)
      T.at(i, j) = sign[i] * p.a[i][j];
    T.rhs(i) = sign[i] * p.b[i];
    if (rel[i] == Relation::LessEqual) {
      T.at(i, s) = 1.0;
      T.basis(i) = s++;
    } else {
      if (rel[i] == Relation::GreaterEqual)
        T.at(i, s++) = -1.0;
      T.at(i, a) = 1.0;
      is_art[a] = true;
      T.basis(i) = a++;
    }
  }

  // Phase 1: minimise the sum of artificials.
  for (std::size_t i = 0; i < m; ++i)
    if (is_art[T.basis(i)])
      for (std::size_t j = 0; j <= ncols; ++j)
        if (j == ncols || !is_art[j])
          T.at(m, j) -= T.at(i, j);
  T.optimise(ncols, eps);
  Solution sol;
  if (-T.at(m, ncols) > 1e-7) {
    sol.status = Status::Infeasible;
    return sol;
  }
  // Drive remaining artificials out of the basis.
  for (std::size_t i = 0; i < m; ++i) {
    if (!is_art[T.basis(i)])
      continue;
    for (std::size_t j = 0; j < nv + slack; ++j)
      if (std::fabs(T.at(i, j)) > eps) {
        T.pivot(i, j);
        break;
      }
  }
  // Phase 2 over non-artificial columns; artificial columns are frozen out.
  for (std::size_t j = 0; j <= ncols; ++j)
    T.at(m, j) = 0.0;
  for (std::size_t j = 0; j < nv; ++j)
    T.at(m, j) = p.c[j];
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t bcol = T.basis(i);
    const double f = T.at(m, bcol);
    if (f != 0.0)
      for (std::size_t j = 0; j <= ncols; ++j)
        T.at(m, j) -= f * T.at(i, j);
  }
  if (!T.optimise(nv + slack, eps)) {
    sol.status = Status::Unbounded;
    return sol;
  }
  sol.status = Status::Optimal;
  sol.x.assign(nv, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (T.basis(i) < nv)
      sol.x[T.basis(i)] = T.rhs(i);
  sol.objective = 0;
  for (std::size_t j = 0; j < nv; ++j)
    sol.objective += p.c[j] * sol.x[j];
  return sol;
}

} // namespace ekr::lp
