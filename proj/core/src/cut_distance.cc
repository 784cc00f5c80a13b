#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "graphonreg/error.h"
#include "graphonreg/kernel_ops.h"
#include "graphonreg/norms.h"

namespace graphonreg {
namespace {

constexpr double kMeasureMatchTolerance = 1e-9;
// Exhaustive rearrangement in heuristic mode when rows! * cols! is at most this.
constexpr double kExhaustiveArrangements = 5040;
// Local swap search is skipped for kernels with more steps than this.
constexpr int kSwapSearchMaxSteps = 64;

bool SameMeasureMultiset(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) return false;
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i] - y[i]) > kMeasureMatchTolerance) return false;
  }
  return true;
}

// Exact cut norm of a small dense matrix of block masses (rows <= 8).
double SmallCutNorm(const Eigen::MatrixXd& mass) {
  const auto m = static_cast<std::uint32_t>(mass.rows());
  double best = 0.0;
  Eigen::VectorXd colsum(mass.cols());
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    colsum.setZero();
    for (std::uint32_t i = 0; i < m; ++i) {
      if (mask & (1u << i)) colsum += mass.row(i).transpose();
    }
    best = std::max({best, colsum.cwiseMax(0.0).sum(), -colsum.cwiseMin(0.0).sum()});
  }
  return best;
}

// Branch and bound over measure-preserving step bijections. Fixing a row
// bijection first, columns are assigned one at a time; the exact cut norm
// restricted to the assigned columns is a lower bound for any completion.
class PermutationSearch {
 public:
  PermutationSearch(const StepKernel& u, const StepKernel& w) : u_(u), w_(w) {}

  double Run() {
    std::vector<int> rows;
    std::vector<bool> used(static_cast<std::size_t>(w_.rows()), false);
    AssignRow(rows, used);
    return best_;
  }

 private:
  static bool Match(double x, double y) { return std::abs(x - y) <= kMeasureMatchTolerance; }

  void AssignRow(std::vector<int>& rows, std::vector<bool>& used) {
    if (best_ == 0.0) return;
    const auto i = rows.size();
    if (i == static_cast<std::size_t>(u_.rows())) {
      std::vector<int> cols;
      std::vector<bool> col_used(static_cast<std::size_t>(w_.cols()), false);
      Eigen::MatrixXd mass(u_.rows(), 0);
      AssignCol(rows, cols, col_used, mass);
      return;
    }
    for (int k = 0; k < w_.rows(); ++k) {
      if (used[static_cast<std::size_t>(k)] ||
          !Match(u_.row_measures()[i], w_.row_measures()[static_cast<std::size_t>(k)])) {
        continue;
      }
      used[static_cast<std::size_t>(k)] = true;
      rows.push_back(k);
      AssignRow(rows, used);
      rows.pop_back();
      used[static_cast<std::size_t>(k)] = false;
    }
  }

  void AssignCol(const std::vector<int>& rows, std::vector<int>& cols, std::vector<bool>& used,
                 const Eigen::MatrixXd& mass) {
    if (mass.cols() > 0 && SmallCutNorm(mass) >= best_) return;
    const auto j = cols.size();
    if (j == static_cast<std::size_t>(u_.cols())) {
      best_ = SmallCutNorm(mass);
      return;
    }
    for (int k = 0; k < w_.cols(); ++k) {
      if (used[static_cast<std::size_t>(k)] ||
          !Match(u_.col_measures()[j], w_.col_measures()[static_cast<std::size_t>(k)])) {
        continue;
      }
      Eigen::MatrixXd next(mass.rows(), mass.cols() + 1);
      next.leftCols(mass.cols()) = mass;
      for (int i = 0; i < u_.rows(); ++i) {
        next(i, mass.cols()) = (u_.value(i, static_cast<int>(j)) - w_.value(rows[static_cast<std::size_t>(i)], k)) *
                               u_.row_measures()[static_cast<std::size_t>(i)] * u_.col_measures()[j];
      }
      used[static_cast<std::size_t>(k)] = true;
      cols.push_back(k);
      AssignCol(rows, cols, used, next);
      cols.pop_back();
      used[static_cast<std::size_t>(k)] = false;
      if (best_ == 0.0) return;
    }
  }

  const StepKernel& u_;
  const StepKernel& w_;
  double best_ = std::numeric_limits<double>::infinity();
};

double ExactPermutationDistance(const StepKernel& u, const StepKernel& w) {
  if (std::max({u.rows(), u.cols(), w.rows(), w.cols()}) > kExactCutDistanceMaxSteps) {
    throw BudgetError("exact cut distance supports at most " +
                      std::to_string(kExactCutDistanceMaxSteps) +
                      " steps per side; use heuristic mode");
  }
  if (!SameMeasureMultiset(u.row_measures(), w.row_measures()) ||
      !SameMeasureMultiset(u.col_measures(), w.col_measures())) {
    throw ValidationError(
        "exact cut distance needs equal step-measure multisets on both axes; use heuristic mode");
  }
  return PermutationSearch(u, w).Run();
}

StepKernel Rearranged(const StepKernel& w, const std::vector<int>& rows, const std::vector<int>& cols) {
  std::vector<double> a;
  std::vector<double> b;
  Eigen::MatrixXd values(w.rows(), w.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) a.push_back(w.row_measures()[static_cast<std::size_t>(rows[i])]);
  for (std::size_t j = 0; j < cols.size(); ++j) b.push_back(w.col_measures()[static_cast<std::size_t>(cols[j])]);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = w.value(rows[i], cols[j]);
    }
  }
  return StepKernel(std::move(a), std::move(b), std::move(values));
}

double OverlayCost(const StepKernel& u, const StepKernel& w, const std::vector<int>& rows,
                   const std::vector<int>& cols) {
  return CutNorm(Difference(u, Rearranged(w, rows, cols))).value;
}

double Factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Step order of a kernel axis by decreasing marginal (degree) value.
std::vector<int> MarginalOrder(const Eigen::VectorXd& marginal) {
  std::vector<int> order(static_cast<std::size_t>(marginal.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return marginal(x) > marginal(y); });
  return order;
}

// Arrangement of w's steps for the overlay. With equal step counts, the u
// position holding the r-th largest u marginal receives the w step with the
// r-th largest w marginal; otherwise w's steps are laid out by decreasing
// marginal.
std::vector<int> RankMatched(const Eigen::VectorXd& u_marginal, const Eigen::VectorXd& w_marginal) {
  const std::vector<int> u_order = MarginalOrder(u_marginal);
  const std::vector<int> w_order = MarginalOrder(w_marginal);
  if (u_order.size() != w_order.size()) return w_order;
  std::vector<int> matched(u_order.size());
  for (std::size_t r = 0; r < u_order.size(); ++r) {
    matched[static_cast<std::size_t>(u_order[r])] = w_order[r];
  }
  return matched;
}

void SwapSearch(const StepKernel& u, const StepKernel& w, std::vector<int>& rows, std::vector<int>& cols,
                double& cost) {
  for (int pass = 0; pass < 20; ++pass) {
    bool improved = false;
    for (std::vector<int>* axis : {&rows, &cols}) {
      for (std::size_t x = 0; x < axis->size(); ++x) {
        for (std::size_t y = x + 1; y < axis->size(); ++y) {
          std::swap((*axis)[x], (*axis)[y]);
          const double c = OverlayCost(u, w, rows, cols);
          if (c < cost - 1e-15) {
            cost = c;
            improved = true;
          } else {
            std::swap((*axis)[x], (*axis)[y]);
          }
        }
      }
    }
    if (!improved) return;
  }
}

double HeuristicDistance(const StepKernel& u, const StepKernel& w) {
  std::vector<int> rows(static_cast<std::size_t>(w.rows()));
  std::vector<int> cols(static_cast<std::size_t>(w.cols()));
  std::iota(rows.begin(), rows.end(), 0);
  std::iota(cols.begin(), cols.end(), 0);

  if (Factorial(w.rows()) * Factorial(w.cols()) <= kExhaustiveArrangements) {
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> r = rows;
    do {
      std::vector<int> c = cols;
      do {
        best = std::min(best, OverlayCost(u, w, r, c));
        if (best == 0.0) return 0.0;
      } while (std::next_permutation(c.begin(), c.end()));
    } while (std::next_permutation(r.begin(), r.end()));
    return best;
  }

  double best = OverlayCost(u, w, rows, cols);
  const Eigen::VectorXd u_row = u.values() * u.col_measure_vector();
  const Eigen::VectorXd u_col = u.values().transpose() * u.row_measure_vector();
  const Eigen::VectorXd w_row = w.values() * w.col_measure_vector();
  const Eigen::VectorXd w_col = w.values().transpose() * w.row_measure_vector();
  std::vector<int> greedy_rows = RankMatched(u_row, w_row);
  std::vector<int> greedy_cols = RankMatched(u_col, w_col);
  double greedy = OverlayCost(u, w, greedy_rows, greedy_cols);
  if (greedy < best) {
    best = greedy;
    rows = std::move(greedy_rows);
    cols = std::move(greedy_cols);
  }
  if (w.rows() + w.cols() <= kSwapSearchMaxSteps) SwapSearch(u, w, rows, cols, best);
  return best;
}

}  // namespace

double CutDistance(const StepKernel& u, const StepKernel& w, CutDistanceMode mode) {
  switch (mode) {
    case CutDistanceMode::kExactPermutation:
      return ExactPermutationDistance(u, w);
    case CutDistanceMode::kHeuristic:
      return HeuristicDistance(u, w);
  }
  return 0.0;
}

}  // namespace graphonreg
