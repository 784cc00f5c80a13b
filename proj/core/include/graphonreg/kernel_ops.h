#pragma once

#include <span>
#include <utility>
#include <vector>

#include "graphonreg/bipartite_graph.h"
#include "graphonreg/step_kernel.h"

namespace graphonreg {

// Breakpoints closer than this are merged during refinement, and refined
// steps shorter than this are dropped.
inline constexpr double kRefinementTolerance = 1e-12;

// Alignment of two partitions of [0,1] on their common refinement.
struct AxisRefinement {
  std::vector<double> measures;
  // For each refined step, the index of the step of the first (second)
  // partition containing it.
  std::vector<int> first_index;
  std::vector<int> second_index;
};

AxisRefinement RefineAxis(std::span<const double> first, std::span<const double> second);

// Kernel with a single block of value c. Throws ValidationError if c is not
// finite.
StepKernel Constant(double c);

// W(G) with unit vertex weights: every vertex gets measure 1/|side|.
StepKernel FromGraphUniform(const BipartiteGraph& g);

// W(G) with vertex measures w_i / w_U. Vertex weights default to the sum of
// incident edge weights; an isolated vertex (zero weight) is an error.
StepKernel FromGraphWeighted(const BipartiteGraph& g);

// W*(x, y) = W(y, x).
StepKernel Transpose(const StepKernel& w);

// Both kernels re-expressed on the common refinement of their row partitions
// and of their column partitions.
std::pair<StepKernel, StepKernel> CommonRefinement(const StepKernel& u, const StepKernel& w);

// Pointwise product (UW)(x, y) = U(x, y) W(x, y).
StepKernel Product(const StepKernel& u, const StepKernel& w);

// (U o W)(x, y) = integral of U(x, z) W(z, y) dz. Rows from u, columns from w.
StepKernel OperatorProduct(const StepKernel& u, const StepKernel& w);

// Pointwise difference U - W on the common refinement.
StepKernel Difference(const StepKernel& u, const StepKernel& w);

// Block-diagonal direct sum: part i rescaled into an a[i] x b[i] rectangle,
// zero elsewhere. Weight vectors must be positive and sum to 1.
StepKernel DirectSum(std::span<const StepKernel> parts, std::span<const double> a,
                     std::span<const double> b);

// Symmetric bipartite kernel with W on [0,1/2]x[1/2,1], W* on [1/2,1]x[0,1/2].
StepKernel Symmetrize(const StepKernel& w);

// W o W* o W o W* o W o W*; a kernel on the row partition of w.
StepKernel SixthPower(const StepKernel& w);

// Applies the integral operator (T_W f)(x) = integral W(x, y) f(y) dy to a
// step function given on the column partition of w.
Eigen::VectorXd ApplyKernel(const StepKernel& w, const Eigen::VectorXd& f);

}  // namespace graphonreg
