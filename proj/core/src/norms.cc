#include "graphonreg/norms.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "graphonreg/error.h"
#include "graphonreg/kernel_ops.h"

namespace graphonreg {
namespace {

// Work limit (subsets x other side) under which CutNorm picks the exact path.
constexpr double kAutoExactWork = 1u << 30;
constexpr int kDefaultHeuristicRestarts = 20;

// Block masses c_ij = w_ij a_i b_j.
Eigen::MatrixXd Masses(const StepKernel& w) {
  return w.row_measure_vector().asDiagonal() * w.values() * w.col_measure_vector().asDiagonal();
}

std::vector<int> MaskToIndices(std::uint32_t mask, int size) {
  std::vector<int> out;
  for (int i = 0; i < size; ++i) {
    if (mask & (1u << i)) out.push_back(i);
  }
  return out;
}

std::vector<int> SignedSupport(const Eigen::VectorXd& v, double sign) {
  std::vector<int> out;
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (sign * v(j) > 0.0) out.push_back(static_cast<int>(j));
  }
  return out;
}

// Exact maximization over 0/1 vectors on the row side of `mass`, which must
// have at most kExactCutNormMaxSteps rows. Returns (row witness, col witness).
std::pair<std::vector<int>, std::vector<int>> ExactWitness(const Eigen::MatrixXd& mass) {
  const int m = static_cast<int>(mass.rows());
  const Eigen::Index n = mass.cols();
  Eigen::VectorXd colsum = Eigen::VectorXd::Zero(n);
  std::uint32_t mask = 0;
  double best = 0.0;
  std::uint32_t best_mask = 0;
  double best_sign = 1.0;
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t step = 1; step < total; ++step) {
    const int bit = std::countr_zero(step);
    mask ^= (1u << bit);
    if ((step & 4095u) == 0) {
      // Periodic exact refresh bounds rounding drift of the Gray-code updates.
      colsum.setZero();
      for (int i = 0; i < m; ++i) {
        if (mask & (1u << i)) colsum += mass.row(i).transpose();
      }
    } else if (mask & (1u << bit)) {
      colsum += mass.row(bit).transpose();
    } else {
      colsum -= mass.row(bit).transpose();
    }
    const double positive = colsum.cwiseMax(0.0).sum();
    const double negative = -colsum.cwiseMin(0.0).sum();
    if (positive > best) {
      best = positive;
      best_mask = mask;
      best_sign = 1.0;
    }
    if (negative > best) {
      best = negative;
      best_mask = mask;
      best_sign = -1.0;
    }
  }
  if (best == 0.0) return {};
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i) {
    if (best_mask & (1u << i)) sums += mass.row(i).transpose();
  }
  return {MaskToIndices(best_mask, m), SignedSupport(sums, best_sign)};
}

CutNormResult MakeResult(const StepKernel& w, std::vector<int> rows, std::vector<int> cols, bool exact) {
  CutNormResult r;
  r.value = RectangleMass(w, rows, cols);
  r.witness_rows = std::move(rows);
  r.witness_cols = std::move(cols);
  r.exact = exact;
  return r;
}

}  // namespace

double Norm(const StepKernel& w, LpNorm p) {
  const Eigen::ArrayXXd abs = w.values().array().abs();
  const auto a = w.row_measure_vector();
  const auto b = w.col_measure_vector();
  switch (p) {
    case LpNorm::kL1:
      return a.dot(abs.matrix() * b);
    case LpNorm::kL2:
      return std::sqrt(a.dot(abs.square().matrix() * b));
    case LpNorm::kLinf:
      return abs.maxCoeff();
  }
  return 0.0;
}

double RectangleMass(const StepKernel& w, std::span<const int> rows, std::span<const int> cols) {
  double total = 0.0;
  for (int j : cols) {
    double column = 0.0;
    for (int i : rows) column += w.value(i, j) * w.row_measures()[static_cast<std::size_t>(i)];
    total += column * w.col_measures()[static_cast<std::size_t>(j)];
  }
  return std::abs(total);
}

CutNormResult CutNormExact(const StepKernel& w) {
  const int side = std::min(w.rows(), w.cols());
  if (side > kExactCutNormMaxSteps) {
    throw BudgetError("exact cut norm needs min(rows, cols) <= " +
                      std::to_string(kExactCutNormMaxSteps) + ", got " + std::to_string(side) +
                      "; use the heuristic cut norm instead");
  }
  if (w.rows() <= w.cols()) {
    auto [rows, cols] = ExactWitness(Masses(w));
    return MakeResult(w, std::move(rows), std::move(cols), true);
  }
  auto [cols, rows] = ExactWitness(Masses(w).transpose());
  return MakeResult(w, std::move(rows), std::move(cols), true);
}

CutNormResult CutNormHeuristic(const StepKernel& w, int restarts, std::uint64_t seed) {
  if (restarts < 1) throw ValidationError("heuristic cut norm needs at least one restart");
  const Eigen::MatrixXd mass = Masses(w);
  const Eigen::Index m = mass.rows();
  CutNormResult best;
  best.exact = false;
  double best_value = -1.0;
  for (int r = 0; r < restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    Eigen::VectorXd start = Eigen::VectorXd::Ones(m);
    if (r > 0) {
      std::bernoulli_distribution coin(0.5);
      for (Eigen::Index i = 0; i < m; ++i) start(i) = coin(rng) ? 1.0 : 0.0;
    }
    for (double sign : {1.0, -1.0}) {
      Eigen::VectorXd s = start;
      Eigen::VectorXd t;
      double value = -1.0;
      for (int iter = 0; iter < 200; ++iter) {
        const Eigen::VectorXd colsum = mass.transpose() * s;
        t = (sign * colsum).unaryExpr([](double x) { return x > 0.0 ? 1.0 : 0.0; });
        const Eigen::VectorXd rowsum = mass * t;
        Eigen::VectorXd next = (sign * rowsum).unaryExpr([](double x) { return x > 0.0 ? 1.0 : 0.0; });
        const double next_value = sign * next.dot(rowsum);
        const bool improved = next_value > value + 1e-15 * std::max(1.0, std::abs(value));
        s = std::move(next);
        if (!improved) break;
        value = next_value;
      }
      const Eigen::VectorXd colsum = mass.transpose() * s;
      t = (sign * colsum).unaryExpr([](double x) { return x > 0.0 ? 1.0 : 0.0; });
      std::vector<int> rows;
      std::vector<int> cols;
      for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > 0.0) rows.push_back(static_cast<int>(i));
      }
      for (Eigen::Index j = 0; j < t.size(); ++j) {
        if (t(j) > 0.0) cols.push_back(static_cast<int>(j));
      }
      const double candidate = RectangleMass(w, rows, cols);
      if (candidate > best_value) {
        best_value = candidate;
        best.value = candidate;
        best.witness_rows = std::move(rows);
        best.witness_cols = std::move(cols);
      }
    }
  }
  return best;
}

CutNormResult CutNorm(const StepKernel& w, std::uint64_t seed) {
  const int side = std::min(w.rows(), w.cols());
  const int other = std::max(w.rows(), w.cols());
  if (side <= kExactCutNormMaxSteps && std::ldexp(static_cast<double>(other), side) <= kAutoExactWork) {
    return CutNormExact(w);
  }
  return CutNormHeuristic(w, kDefaultHeuristicRestarts, seed);
}

HomogeneityResult HomogeneityCheck(const BipartiteGraph& g, double density, double eps) {
  if (!(density >= 0.0 && density <= 1.0)) throw ValidationError("density must lie in [0, 1]");
  if (!(eps > 0.0)) throw ValidationError("eps must be positive");
  const StepKernel diff = Difference(FromGraphUniform(g), Constant(density));
  const CutNormResult cut = CutNorm(diff);
  return {cut.value <= eps, cut.value, cut.exact};
}

bool RegularityCheckBruteForce(const BipartiteGraph& g, double density, double eps) {
  if (!(density >= 0.0 && density <= 1.0)) throw ValidationError("density must lie in [0, 1]");
  if (!(eps > 0.0)) throw ValidationError("eps must be positive");
  const int nu = g.left_count();
  const int nv = g.right_count();
  if (nu > kBruteForceRegularityMaxVertices || nv > kBruteForceRegularityMaxVertices) {
    throw BudgetError("brute-force regularity check supports at most " +
                      std::to_string(kBruteForceRegularityMaxVertices) + " vertices per side");
  }
  const Eigen::MatrixXd& w = g.edge_weights();
  std::vector<double> degree(static_cast<std::size_t>(nv), 0.0);
  std::vector<double> deviation(static_cast<std::size_t>(nv));
  std::uint32_t mask = 0;
  const std::uint32_t total = 1u << nu;
  for (std::uint32_t step = 1; step < total; ++step) {
    const int bit = std::countr_zero(step);
    mask ^= (1u << bit);
    const double sign = (mask & (1u << bit)) ? 1.0 : -1.0;
    for (int j = 0; j < nv; ++j) degree[static_cast<std::size_t>(j)] += sign * w(bit, j);
    const int a = std::popcount(mask);
    if (!(a > eps * nu)) continue;
    for (int j = 0; j < nv; ++j) deviation[static_cast<std::size_t>(j)] = degree[static_cast<std::size_t>(j)] - density * a;
    std::sort(deviation.begin(), deviation.end(), std::greater<>());
    double top = 0.0;
    double bottom = 0.0;
    for (int k = 1; k <= nv; ++k) {
      top += deviation[static_cast<std::size_t>(k - 1)];
      bottom += deviation[static_cast<std::size_t>(nv - k)];
      if (!(k > eps * nv)) continue;
      const double allowed = eps * a * k + 1e-9;
      if (top > allowed || -bottom > allowed) return false;
    }
  }
  return true;
}

bool HolderTripleCheck(std::span<const double> a, std::span<const double> b, double u, double v) {
  if (a.empty() || a.size() != b.size()) throw PremiseError("a and b must be nonempty and of equal length");
  if (!(u > 0.0) || !(v > 0.0)) throw PremiseError("u and v must be positive");
  double cubic = 0.0;
  double linear = 0.0;
  double mass = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0.0) || !(b[i] > 0.0)) throw PremiseError("a_i and b_i must be positive");
    cubic += a[i] * a[i] * a[i] * b[i];
    linear += a[i] * b[i];
    mass += b[i];
  }
  constexpr double kSlack = 1e-12;
  if (cubic > u * v * (1.0 + kSlack)) throw PremiseError("premise sum a_i^3 b_i <= u v fails");
  if (mass > v * (1.0 + kSlack)) throw PremiseError("premise sum b_i <= v fails");
  return linear <= std::cbrt(u) * v * (1.0 + 4 * kSlack);
}

}  // namespace graphonreg
