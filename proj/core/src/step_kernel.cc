#include "graphonreg/step_kernel.h"

#include <cmath>
#include <numeric>
#include <string>

#include "graphonreg/error.h"

namespace graphonreg {
namespace {

void ValidateMeasures(const std::vector<double>& measures, const char* axis) {
  if (measures.empty()) {
    throw ValidationError(std::string(axis) + " partition is empty");
  }
  for (std::size_t i = 0; i < measures.size(); ++i) {
    if (!std::isfinite(measures[i]) || measures[i] <= 0.0) {
      throw ValidationError(std::string(axis) + " measure " + std::to_string(i) +
                            " is not a positive finite number");
    }
  }
  const double total = std::accumulate(measures.begin(), measures.end(), 0.0);
  if (std::abs(total - 1.0) > kMeasureSumTolerance) {
    throw ValidationError(std::string(axis) + " measures sum to " + std::to_string(total) +
                          ", expected 1");
  }
}

}  // namespace

StepKernel::StepKernel(std::vector<double> row_measures, std::vector<double> col_measures,
                       Eigen::MatrixXd values)
    : row_measures_(std::move(row_measures)),
      col_measures_(std::move(col_measures)),
      values_(std::move(values)) {
  ValidateMeasures(row_measures_, "row");
  ValidateMeasures(col_measures_, "column");
  if (values_.rows() != rows() || values_.cols() != cols()) {
    throw ValidationError("value matrix is " + std::to_string(values_.rows()) + "x" +
                          std::to_string(values_.cols()) + " but partitions are " +
                          std::to_string(rows()) + "x" + std::to_string(cols()));
  }
  if (!values_.allFinite()) throw ValidationError("kernel values must be finite");
}

StepKernel StepKernel::Constant(double c) {
  Eigen::MatrixXd v(1, 1);
  v(0, 0) = c;
  return StepKernel({1.0}, {1.0}, std::move(v));
}

StepKernel StepKernel::Uniform(const Eigen::MatrixXd& values) {
  const auto m = static_cast<std::size_t>(values.rows());
  const auto n = static_cast<std::size_t>(values.cols());
  if (m == 0 || n == 0) throw ValidationError("uniform kernel needs a nonempty value matrix");
  return StepKernel(std::vector<double>(m, 1.0 / static_cast<double>(m)),
                    std::vector<double>(n, 1.0 / static_cast<double>(n)), values);
}

bool StepKernel::is_graphon() const {
  return values_.minCoeff() >= 0.0 && values_.maxCoeff() <= 1.0;
}

bool StepKernel::is_w1() const { return values_.cwiseAbs().maxCoeff() <= 1.0; }

double StepKernel::integral() const {
  return row_measure_vector().dot(values_ * col_measure_vector());
}

}  // namespace graphonreg
