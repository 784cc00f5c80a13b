#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace graphonreg {

// Absolute tolerance for "measures sum to one".
inline constexpr double kMeasureSumTolerance = 1e-9;

// A bipartite stepfunction on [0,1]^2.
//
// Row step i occupies an interval of length row_measures[i] (intervals are
// laid out left to right in index order), column step j one of length
// col_measures[j], and the kernel equals values(i, j) on the product cell.
// Instances are immutable and always satisfy the measure invariants.
class StepKernel {
 public:
  // Throws ValidationError unless every measure is positive, each measure
  // vector sums to 1 within kMeasureSumTolerance, the value matrix has shape
  // rows x cols, and all values are finite.
  StepKernel(std::vector<double> row_measures, std::vector<double> col_measures,
             Eigen::MatrixXd values);

  static StepKernel Constant(double c);

  // Equal-measure kernel with the given value matrix.
  static StepKernel Uniform(const Eigen::MatrixXd& values);

  int rows() const { return static_cast<int>(row_measures_.size()); }
  int cols() const { return static_cast<int>(col_measures_.size()); }

  std::span<const double> row_measures() const { return row_measures_; }
  std::span<const double> col_measures() const { return col_measures_; }
  const Eigen::MatrixXd& values() const { return values_; }
  double value(int i, int j) const { return values_(i, j); }

  Eigen::Map<const Eigen::VectorXd> row_measure_vector() const {
    return {row_measures_.data(), rows()};
  }
  Eigen::Map<const Eigen::VectorXd> col_measure_vector() const {
    return {col_measures_.data(), cols()};
  }

  // 0 <= W <= 1.
  bool is_graphon() const;
  // |W| <= 1.
  bool is_w1() const;

  // Integral of W over the unit square.
  double integral() const;

 private:
  std::vector<double> row_measures_;
  std::vector<double> col_measures_;
  Eigen::MatrixXd values_;
};

}  // namespace graphonreg
