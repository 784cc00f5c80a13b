#pragma once

#include <vector>

#include <Eigen/Dense>

#include "graphonreg/step_kernel.h"

namespace graphonreg {

// Singular triples with sigma below this are treated as numerical zero.
inline constexpr double kSingularValueCutoff = 1e-12;
// Weak regularization is rejected when the proven cell bound overflows.
inline constexpr double kMaxCellBoundLog10 = 300.0;

// Singular system of the kernel operator on measure-weighted L^2:
//   W(x, y) = sum_i sigma_i u_i(x) y_i(y),
// with u_i orthonormal on the row partition (weights a) and y_i orthonormal
// on the column partition (weights b). Column i of left_vectors is u_i
// sampled on row steps; column i of right_vectors is y_i on column steps.
// Sign convention: the first entry of each y_i of magnitude above 1e-9 is
// positive.
struct SpectralDecomposition {
  Eigen::VectorXd singular_values;
  Eigen::MatrixXd left_vectors;
  Eigen::MatrixXd right_vectors;

  int rank() const { return static_cast<int>(singular_values.size()); }
};

SpectralDecomposition Svd(const StepKernel& w);

// Which sixth-power kernel to approximate: the column side is the kernel of
// T T* T T* T T* for T f(v) = integral W(u, v) f(u) du (that is, W* o W o W*
// o W o W* o W); the row side is W o W* o W o W* o W o W*.
enum class KernelSide { kColumn, kRow };

struct WeakRegularityResult {
  double eps = 0.0;
  // Discretization spacing eps^2 / 5.
  double delta = 0.0;
  KernelSide side = KernelSide::kColumn;
  int retained_terms = 0;
  int cell_count = 0;
  // log10 of the proven step bound (5 / eps^3)^(1 / eps^2).
  double cell_bound_log10 = 0.0;
  // Cells as lists of step indices on the chosen side, in order of first
  // appearance.
  std::vector<std::vector<int>> cells;
  // Kernel of the discretized low-rank operator on the cell partition.
  StepKernel approx_kernel = StepKernel::Constant(0.0);
  // Sup distance between the sixth-power kernel and approx_kernel.
  double achieved_inf_error = 0.0;

  double error_bound() const { return 2.0 * eps * eps; }
};

// Constructive weak regularity: keeps singular terms with sigma >= eps,
// rounds each kept singular function to the grid delta * Z (ties toward
// zero), partitions the steps by joint level sets and returns the kernel of
// the resulting operator with its exact sup error against the sixth power.
//
// Throws ValidationError unless 0 < eps <= 1 and w is a graphon;
// BudgetError when the proven cell bound overflows a double.
WeakRegularityResult WeakRegularize(const StepKernel& w, double eps,
                                    KernelSide side = KernelSide::kColumn);

// Rounds x / delta to the nearest integer with ties toward zero.
long long RoundToGrid(double x, double delta);

}  // namespace graphonreg
