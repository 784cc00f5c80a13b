#include "graphonreg/kernel_ops.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "graphonreg/error.h"

namespace graphonreg {
namespace {

std::vector<double> CumulativeBreakpoints(std::span<const double> measures) {
  std::vector<double> cuts(measures.size() + 1, 0.0);
  std::partial_sum(measures.begin(), measures.end(), cuts.begin() + 1);
  return cuts;
}

std::vector<double> Normalized(const Eigen::VectorXd& weights) {
  const double total = weights.sum();
  std::vector<double> out(static_cast<std::size_t>(weights.size()));
  for (Eigen::Index i = 0; i < weights.size(); ++i) out[static_cast<std::size_t>(i)] = weights(i) / total;
  return out;
}

Eigen::MatrixXd Gather(const Eigen::MatrixXd& values, const std::vector<int>& rows,
                       const std::vector<int>& cols) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values(rows[i], cols[j]);
    }
  }
  return out;
}

}  // namespace

AxisRefinement RefineAxis(std::span<const double> first, std::span<const double> second) {
  const std::vector<double> a = CumulativeBreakpoints(first);
  const std::vector<double> b = CumulativeBreakpoints(second);
  AxisRefinement out;
  std::size_t i = 1;
  std::size_t j = 1;
  double previous = 0.0;
  while (i < a.size() && j < b.size()) {
    // The two partitions end at 1 up to rounding; treat their final
    // breakpoints as the same point.
    const bool last_a = i + 1 == a.size();
    const bool last_b = j + 1 == b.size();
    double next;
    bool advance_a;
    bool advance_b;
    if (last_a && last_b) {
      next = std::max(a[i], b[j]);
      advance_a = advance_b = true;
    } else if (std::abs(a[i] - b[j]) <= kRefinementTolerance) {
      next = std::max(a[i], b[j]);
      advance_a = advance_b = true;
    } else if (last_b || (!last_a && a[i] < b[j])) {
      next = a[i];
      advance_a = true;
      advance_b = false;
    } else {
      next = b[j];
      advance_a = false;
      advance_b = true;
    }
    if (next - previous >= kRefinementTolerance) {
      out.measures.push_back(next - previous);
      out.first_index.push_back(static_cast<int>(i - 1));
      out.second_index.push_back(static_cast<int>(j - 1));
      previous = next;
    }
    if (advance_a) ++i;
    if (advance_b) ++j;
  }
  return out;
}

StepKernel Constant(double c) {
  if (!std::isfinite(c)) throw ValidationError("constant kernel value must be finite");
  return StepKernel::Constant(c);
}

StepKernel FromGraphUniform(const BipartiteGraph& g) {
  return StepKernel::Uniform(g.edge_weights());
}

StepKernel FromGraphWeighted(const BipartiteGraph& g) {
  const Eigen::MatrixXd& w = g.edge_weights();
  Eigen::VectorXd left = w.rowwise().sum();
  Eigen::VectorXd right = w.colwise().sum().transpose();
  if (g.left_vertex_weights()) left = Eigen::Map<const Eigen::VectorXd>(g.left_vertex_weights()->data(), w.rows());
  if (g.right_vertex_weights()) right = Eigen::Map<const Eigen::VectorXd>(g.right_vertex_weights()->data(), w.cols());
  for (Eigen::Index i = 0; i < left.size(); ++i) {
    if (left(i) <= 0.0) throw ValidationError("left vertex " + std::to_string(i) + " has zero weight");
  }
  for (Eigen::Index j = 0; j < right.size(); ++j) {
    if (right(j) <= 0.0) throw ValidationError("right vertex " + std::to_string(j) + " has zero weight");
  }
  return StepKernel(Normalized(left), Normalized(right), w);
}

StepKernel Transpose(const StepKernel& w) {
  return StepKernel({w.col_measures().begin(), w.col_measures().end()},
                    {w.row_measures().begin(), w.row_measures().end()}, w.values().transpose());
}

std::pair<StepKernel, StepKernel> CommonRefinement(const StepKernel& u, const StepKernel& w) {
  AxisRefinement rows = RefineAxis(u.row_measures(), w.row_measures());
  AxisRefinement cols = RefineAxis(u.col_measures(), w.col_measures());
  StepKernel ru(rows.measures, cols.measures, Gather(u.values(), rows.first_index, cols.first_index));
  StepKernel rw(rows.measures, cols.measures, Gather(w.values(), rows.second_index, cols.second_index));
  return {std::move(ru), std::move(rw)};
}

StepKernel Product(const StepKernel& u, const StepKernel& w) {
  auto [ru, rw] = CommonRefinement(u, w);
  return StepKernel({ru.row_measures().begin(), ru.row_measures().end()},
                    {ru.col_measures().begin(), ru.col_measures().end()},
                    ru.values().cwiseProduct(rw.values()));
}

StepKernel Difference(const StepKernel& u, const StepKernel& w) {
  auto [ru, rw] = CommonRefinement(u, w);
  return StepKernel({ru.row_measures().begin(), ru.row_measures().end()},
                    {ru.col_measures().begin(), ru.col_measures().end()},
                    ru.values() - rw.values());
}

StepKernel OperatorProduct(const StepKernel& u, const StepKernel& w) {
  const AxisRefinement middle = RefineAxis(u.col_measures(), w.row_measures());
  const auto k = static_cast<Eigen::Index>(middle.measures.size());
  Eigen::MatrixXd left(u.rows(), k);
  Eigen::MatrixXd right(k, w.cols());
  for (Eigen::Index t = 0; t < k; ++t) {
    const auto s = static_cast<std::size_t>(t);
    left.col(t) = u.values().col(middle.first_index[s]) * middle.measures[s];
    right.row(t) = w.values().row(middle.second_index[s]);
  }
  return StepKernel({u.row_measures().begin(), u.row_measures().end()},
                    {w.col_measures().begin(), w.col_measures().end()}, left * right);
}

StepKernel DirectSum(std::span<const StepKernel> parts, std::span<const double> a,
                     std::span<const double> b) {
  if (parts.empty()) throw ValidationError("direct sum needs at least one part");
  if (a.size() != parts.size() || b.size() != parts.size()) {
    throw ValidationError("direct sum weight vectors must match the number of parts");
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!(a[i] > 0.0) || !(b[i] > 0.0)) throw ValidationError("direct sum weights must be positive");
  }
  const double sa = std::accumulate(a.begin(), a.end(), 0.0);
  const double sb = std::accumulate(b.begin(), b.end(), 0.0);
  if (std::abs(sa - 1.0) > kMeasureSumTolerance || std::abs(sb - 1.0) > kMeasureSumTolerance) {
    throw ValidationError("direct sum weights must each sum to 1");
  }

  std::vector<double> rows;
  std::vector<double> cols;
  Eigen::Index total_rows = 0;
  Eigen::Index total_cols = 0;
  for (const StepKernel& p : parts) {
    total_rows += p.rows();
    total_cols += p.cols();
  }
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(total_rows, total_cols);
  Eigen::Index r0 = 0;
  Eigen::Index c0 = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const StepKernel& p = parts[i];
    for (double m : p.row_measures()) rows.push_back(m * a[i]);
    for (double m : p.col_measures()) cols.push_back(m * b[i]);
    values.block(r0, c0, p.rows(), p.cols()) = p.values();
    r0 += p.rows();
    c0 += p.cols();
  }
  return StepKernel(std::move(rows), std::move(cols), std::move(values));
}

StepKernel Symmetrize(const StepKernel& w) {
  std::vector<double> axis;
  for (double m : w.row_measures()) axis.push_back(m / 2.0);
  for (double m : w.col_measures()) axis.push_back(m / 2.0);
  const int m = w.rows();
  const int n = w.cols();
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(m + n, m + n);
  values.block(0, m, m, n) = w.values();
  values.block(m, 0, n, m) = w.values().transpose();
  return StepKernel(axis, axis, std::move(values));
}

StepKernel SixthPower(const StepKernel& w) {
  const StepKernel wt = Transpose(w);
  StepKernel acc = OperatorProduct(w, wt);
  for (int round = 0; round < 2; ++round) {
    acc = OperatorProduct(OperatorProduct(acc, w), wt);
  }
  return acc;
}

Eigen::VectorXd ApplyKernel(const StepKernel& w, const Eigen::VectorXd& f) {
  if (f.size() != w.cols()) throw ValidationError("step function does not match the column partition");
  return w.values() * f.cwiseProduct(w.col_measure_vector());
}

}  // namespace graphonreg
