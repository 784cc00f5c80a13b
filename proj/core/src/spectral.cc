#include "graphonreg/spectral.h"

#include <cmath>
#include <map>
#include <string>

#include "graphonreg/error.h"
#include "graphonreg/kernel_ops.h"

namespace graphonreg {

SpectralDecomposition Svd(const StepKernel& w) {
  const Eigen::VectorXd sqrt_a = w.row_measure_vector().cwiseSqrt();
  const Eigen::VectorXd sqrt_b = w.col_measure_vector().cwiseSqrt();
  const Eigen::MatrixXd scaled = sqrt_a.asDiagonal() * w.values() * sqrt_b.asDiagonal();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);

  const Eigen::VectorXd& sigma = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) >= kSingularValueCutoff) ++rank;

  SpectralDecomposition out;
  out.singular_values = sigma.head(rank);
  out.left_vectors = sqrt_a.cwiseInverse().asDiagonal() * svd.matrixU().leftCols(rank);
  out.right_vectors = sqrt_b.cwiseInverse().asDiagonal() * svd.matrixV().leftCols(rank);
  for (Eigen::Index i = 0; i < rank; ++i) {
    auto y = out.right_vectors.col(i);
    const double scale = y.cwiseAbs().maxCoeff();
    for (Eigen::Index k = 0; k < y.size(); ++k) {
      if (std::abs(y(k)) > 1e-9 * scale) {
        if (y(k) < 0.0) {
          y *= -1.0;
          out.left_vectors.col(i) *= -1.0;
        }
        break;
      }
    }
  }
  return out;
}

long long RoundToGrid(double x, double delta) {
  const double r = std::abs(x) / delta;
  double n = std::floor(r);
  if (r - n > 0.5) n += 1.0;
  const auto level = static_cast<long long>(n);
  return x < 0.0 ? -level : level;
}

WeakRegularityResult WeakRegularize(const StepKernel& w, double eps, KernelSide side) {
  if (!(eps > 0.0 && eps <= 1.0)) throw ValidationError("eps must lie in (0, 1]");
  if (!w.is_graphon()) throw ValidationError("weak regularization needs a graphon (values in [0, 1])");
  const double bound_log10 = std::log10(5.0 / (eps * eps * eps)) / (eps * eps);
  if (!(bound_log10 <= kMaxCellBoundLog10)) {
    throw BudgetError("cell bound (5/eps^3)^(1/eps^2) = 10^" + std::to_string(bound_log10) +
                      " overflows; choose a larger eps");
  }

  const StepKernel base = side == KernelSide::kColumn ? w : Transpose(w);
  const SpectralDecomposition spectrum = Svd(base);
  const double delta = eps * eps / 5.0;

  int retained = 0;
  while (retained < spectrum.rank() && spectrum.singular_values(retained) >= eps) ++retained;

  // Joint level sets of the rounded singular functions.
  const int steps = base.cols();
  std::map<std::vector<long long>, int> cell_of_levels;
  std::vector<int> cell_of_step(static_cast<std::size_t>(steps));
  std::vector<std::vector<int>> cells;
  for (int k = 0; k < steps; ++k) {
    std::vector<long long> levels(static_cast<std::size_t>(retained));
    for (int i = 0; i < retained; ++i) {
      levels[static_cast<std::size_t>(i)] = RoundToGrid(spectrum.right_vectors(k, i), delta);
    }
    auto [it, inserted] = cell_of_levels.try_emplace(std::move(levels), static_cast<int>(cells.size()));
    if (inserted) cells.emplace_back();
    cells[static_cast<std::size_t>(it->second)].push_back(k);
    cell_of_step[static_cast<std::size_t>(k)] = it->second;
  }

  const auto n_cells = static_cast<Eigen::Index>(cells.size());
  Eigen::MatrixXd rounded(n_cells, retained);
  std::vector<double> cell_measures(cells.size(), 0.0);
  for (Eigen::Index c = 0; c < n_cells; ++c) {
    const auto& members = cells[static_cast<std::size_t>(c)];
    for (int i = 0; i < retained; ++i) {
      rounded(c, i) = delta * static_cast<double>(RoundToGrid(spectrum.right_vectors(members.front(), i), delta));
    }
    for (int k : members) cell_measures[static_cast<std::size_t>(c)] += base.col_measures()[static_cast<std::size_t>(k)];
  }
  const Eigen::VectorXd sigma6 = spectrum.singular_values.head(retained).array().pow(6.0).matrix();
  const Eigen::MatrixXd approx = rounded * sigma6.asDiagonal() * rounded.transpose();

  const StepKernel sixth = SixthPower(Transpose(base));
  if (sixth.rows() != steps || sixth.cols() != steps) {
    throw Error("sixth-power kernel lost steps during refinement; step measures below tolerance");
  }
  double error = 0.0;
  for (int l = 0; l < steps; ++l) {
    for (int k = 0; k < steps; ++k) {
      const double diff = sixth.value(k, l) - approx(cell_of_step[static_cast<std::size_t>(k)],
                                                     cell_of_step[static_cast<std::size_t>(l)]);
      error = std::max(error, std::abs(diff));
    }
  }

  WeakRegularityResult result;
  result.eps = eps;
  result.delta = delta;
  result.side = side;
  result.retained_terms = retained;
  result.cell_count = static_cast<int>(cells.size());
  result.cell_bound_log10 = bound_log10;
  result.cells = std::move(cells);
  result.approx_kernel = StepKernel(cell_measures, cell_measures, approx);
  result.achieved_inf_error = error;
  return result;
}

}  // namespace graphonreg
