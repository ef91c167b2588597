#pragma once

// Dense two-phase simplex with Bland's rule, for the small weight-optimisation
// programs.

#include <vector>

namespace ekr::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Status { Optimal, Infeasible, Unbounded };

// minimise c.x subject to rows (a_i . x  rel_i  b_i) and x >= 0
struct Problem {
  std::vector<double> c;
  std::vector<std::vector<double>> a;
  std::vector<Relation> rel;
  std::vector<double> b;
};

struct Solution {
  Status status = Status::Infeasible;
  std::vector<double> x;
  double objective = 0;
};

Solution solve(const Problem& p, double eps = 1e-10);

} // namespace ekr::lp
