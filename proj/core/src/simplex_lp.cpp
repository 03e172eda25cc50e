#include "simplex_lp.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "randpoly/errors.hpp"

namespace randpoly::detail {

namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-11;

struct Tableau {
  Eigen::MatrixXd t;        // m x (cols + 1), last column is the RHS
  Eigen::VectorXd obj;      // maintained reduced-cost row, same width
  Eigen::VectorXd obj2;     // phase-2 objective carried through phase 1
  std::vector<int> basis;   // basic variable per row
  int cols = 0;

  void pivot(int row, int col) {
    t.row(row) /= t(row, col);
    for (int i = 0; i < t.rows(); ++i) {
      if (i == row) continue;
      const double factor = t(i, col);
      if (factor != 0.0) t.row(i) -= factor * t.row(row);
    }
    if (obj[col] != 0.0) obj -= obj[col] * t.row(row).transpose();
    if (obj2[col] != 0.0) obj2 -= obj2[col] * t.row(row).transpose();
    basis[static_cast<std::size_t>(row)] = col;
  }

  // Bland's rule over columns [0, limit). Returns false when optimal.
  bool iterate(int limit, LpStatus& status) {
    const int m = static_cast<int>(t.rows());
    int entering = -1;
    for (int j = 0; j < limit; ++j) {
      if (obj[j] > kReducedCostTol) {
        entering = j;
        break;
      }
    }
    if (entering < 0) {
      status = LpStatus::optimal;
      return false;
    }
    int leaving = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < m; ++i) {
      const double aij = t(i, entering);
      if (aij <= kPivotTol) continue;
      const double ratio = t(i, cols) / aij;
      if (leaving < 0 || ratio < best_ratio - 1e-12 ||
          (std::abs(ratio - best_ratio) <= 1e-12 &&
           basis[static_cast<std::size_t>(i)] <
               basis[static_cast<std::size_t>(leaving)])) {
        leaving = i;
        best_ratio = ratio;
      }
    }
    if (leaving < 0) {
      status = LpStatus::unbounded;
      return false;
    }
    pivot(leaving, entering);
    return true;
  }
};

}  // namespace

LpResult solve_lp_max(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                      const Eigen::VectorXd& c) {
  const int m = static_cast<int>(A.rows());
  const int d = static_cast<int>(A.cols());
  if (b.size() != m || c.size() != d)
    throw std::invalid_argument("solve_lp_max: shape mismatch");

  // Row scaling keeps the fixed tolerances meaningful for arbitrary input.
  Eigen::MatrixXd As = A;
  Eigen::VectorXd bs = b;
  for (int i = 0; i < m; ++i) {
    const double scale =
        std::max(As.row(i).cwiseAbs().maxCoeff(), std::abs(bs[i]));
    if (scale > 0.0) {
      As.row(i) /= scale;
      bs[i] /= scale;
    }
  }

  // Columns: u (d), v (d), slacks (m), then artificials for negated rows.
  std::vector<int> art_rows;
  for (int i = 0; i < m; ++i)
    if (bs[i] < 0.0) art_rows.push_back(i);
  const int n_art = static_cast<int>(art_rows.size());
  const int art_start = 2 * d + m;
  const int cols = art_start + n_art;

  Tableau tab;
  tab.cols = cols;
  tab.t = Eigen::MatrixXd::Zero(m, cols + 1);
  tab.obj = Eigen::VectorXd::Zero(cols + 1);
  tab.obj2 = Eigen::VectorXd::Zero(cols + 1);
  tab.basis.resize(static_cast<std::size_t>(m));

  int art = 0;
  for (int i = 0; i < m; ++i) {
    const double sign = bs[i] < 0.0 ? -1.0 : 1.0;
    tab.t.block(i, 0, 1, d) = sign * As.row(i);
    tab.t.block(i, d, 1, d) = -sign * As.row(i);
    tab.t(i, 2 * d + i) = sign;
    tab.t(i, cols) = sign * bs[i];
    if (bs[i] < 0.0) {
      tab.t(i, art_start + art) = 1.0;
      tab.basis[static_cast<std::size_t>(i)] = art_start + art;
      ++art;
    } else {
      tab.basis[static_cast<std::size_t>(i)] = 2 * d + i;
    }
  }

  // Phase-2 objective (in the split variables), carried through both phases.
  tab.obj2.head(d) = c;
  tab.obj2.segment(d, d) = -c;

  LpResult result;
  const int iteration_cap = 200 + 50 * (m + cols);

  if (n_art > 0) {
    // Phase 1: maximize minus the sum of artificials.
    for (int j = 0; j < n_art; ++j) tab.obj[art_start + j] = -1.0;
    for (int i = 0; i < m; ++i) {
      const int bi = tab.basis[static_cast<std::size_t>(i)];
      if (bi >= art_start) tab.obj += tab.t.row(i).transpose();
    }
    LpStatus status = LpStatus::optimal;
    int iter = 0;
    while (tab.iterate(cols, status)) {
      if (++iter > iteration_cap)
        throw Error("solve_lp_max: phase-1 iteration limit");
    }
    // The maintained RHS cell is minus the objective, i.e. the residual
    // artificial mass; positive means no feasible point exists.
    if (tab.obj[cols] > 1e-7) {
      result.status = LpStatus::infeasible;
      return result;
    }
    // Drive leftover artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
      if (tab.basis[static_cast<std::size_t>(i)] < art_start) continue;
      for (int j = 0; j < art_start; ++j) {
        if (std::abs(tab.t(i, j)) > kReducedCostTol) {
          tab.pivot(i, j);
          break;
        }
      }
    }
  }

  tab.obj = tab.obj2;
  // Express the objective in the current nonbasic variables.
  tab.obj2.setZero();
  for (int i = 0; i < m; ++i) {
    const int bi = tab.basis[static_cast<std::size_t>(i)];
    if (tab.obj[bi] != 0.0) tab.obj -= tab.obj[bi] * tab.t.row(i).transpose();
  }

  LpStatus status = LpStatus::optimal;
  int iter = 0;
  while (tab.iterate(art_start, status)) {
    if (++iter > iteration_cap)
      throw Error("solve_lp_max: phase-2 iteration limit");
  }
  if (status == LpStatus::unbounded) {
    result.status = LpStatus::unbounded;
    return result;
  }

  Eigen::VectorXd split = Eigen::VectorXd::Zero(cols);
  for (int i = 0; i < m; ++i)
    split[tab.basis[static_cast<std::size_t>(i)]] = tab.t(i, cols);
  result.x = split.head(d) - split.segment(d, d);
  result.objective = c.dot(result.x);
  result.status = LpStatus::optimal;
  return result;
}

}  // namespace randpoly::detail
