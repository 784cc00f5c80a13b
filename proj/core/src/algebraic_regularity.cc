#include "graphonreg/algebraic_regularity.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "graphonreg/error.h"
#include "graphonreg/kernel_ops.h"
#include "graphonreg/norms.h"
#include "parallel.h"

namespace graphonreg {
namespace {

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

constexpr double kExactDoubleLimit = 9007199254740992.0;  // 2^53

void CheckProfileBudget(const BipartiteGraph& g) {
  const std::int64_t cells = static_cast<std::int64_t>(g.left_count()) * g.right_count();
  if (cells > kMaxProfileCells) {
    throw BudgetError("profile kernel needs |U||V| <= " + std::to_string(kMaxProfileCells) +
                      ", got " + std::to_string(cells));
  }
}

// Gram matrix on the requested side: A^T A (column) or A A^T (row).
Eigen::MatrixXd Gram(const Eigen::MatrixXd& a, KernelSide side) {
  if (side == KernelSide::kColumn) return a.transpose() * a;
  return a * a.transpose();
}

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x != y) parent_[std::max(x, y)] = std::min(x, y);
  }

 private:
  std::vector<int> parent_;
};

// Groups 0..n-1 by root; each group ascending, groups by size descending then
// least member.
std::vector<std::vector<int>> CollectCells(DisjointSets& sets, int n) {
  std::vector<std::vector<int>> by_root(n);
  for (int v = 0; v < n; ++v) by_root[sets.find(v)].push_back(v);
  std::vector<std::vector<int>> cells;
  for (auto& c : by_root) {
    if (!c.empty()) cells.push_back(std::move(c));
  }
  std::stable_sort(cells.begin(), cells.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() > y.size();
    return x.front() < y.front();
  });
  return cells;
}

struct GapScan {
  // Smallest significant gap and its size relative to the upper value.
  double gap = 0.0;
  double relative = 0.0;
  bool found = false;
};

// A gap between consecutive sorted values lo < hi is significant when
// (hi - lo) / hi >= kMinRelativeGap.
GapScan SmallestSignificantGap(const Eigen::MatrixXd& k) {
  const int n = static_cast<int>(k.rows());
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n) * (n - 1));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i != j) values.push_back(k(i, j));
    }
  }
  std::sort(values.begin(), values.end());
  GapScan out;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double g = values[i] - values[i - 1];
    if (values[i] <= 0.0 || g / values[i] < kMinRelativeGap) continue;
    if (!out.found || g < out.gap) {
      out.gap = g;
      out.relative = g / values[i];
      out.found = true;
    }
  }
  return out;
}

std::vector<bool> LargeFlags(const std::vector<std::vector<int>>& cells, int side_count,
                             const std::optional<double>& threshold) {
  std::vector<bool> large(cells.size());
  const double t = threshold ? *threshold : 1.0 / std::sqrt(static_cast<double>(side_count));
  const std::size_t biggest = cells.empty() ? 0 : cells.front().size();
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const double relative = static_cast<double>(cells[c].size()) / side_count;
    large[c] = relative >= t || (!threshold && cells[c].size() == biggest);
  }
  return large;
}

std::vector<int> Representatives(const std::vector<std::vector<int>>& cells) {
  std::vector<int> out;
  out.reserve(cells.size());
  for (const auto& c : cells) out.push_back(c.front());
  return out;
}

}  // namespace

CountMatrix PathCounts(const BipartiteGraph& g, KernelSide side) {
  CheckProfileBudget(g);
  const Eigen::MatrixXd& w = g.edge_weights();
  double max_weight = 0.0;
  for (Eigen::Index j = 0; j < w.cols(); ++j) {
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      if (w(i, j) != std::floor(w(i, j))) {
        throw ValidationError("path counts need integer edge weights");
      }
      max_weight = std::max(max_weight, w(i, j));
    }
  }
  const double u = g.left_count();
  const double v = g.right_count();
  const double outer = side == KernelSide::kColumn ? u : v;
  const double inner = side == KernelSide::kColumn ? v : u;
  const double bound = std::pow(outer, 3) * std::pow(inner, 2) * std::pow(max_weight, 6);
  if (bound >= 9.2e18) {
    throw BudgetError("path counts overflow 64-bit integers");
  }
  const CountMatrix a = w.cast<std::int64_t>();
  const CountMatrix m = side == KernelSide::kColumn ? CountMatrix(a.transpose() * a)
                                                    : CountMatrix(a * a.transpose());
  return m * m * m;
}

ProfileMatrix ProfileKernel(const BipartiteGraph& g, KernelSide side) {
  CheckProfileBudget(g);
  const double u = g.left_count();
  const double v = g.right_count();
  ProfileMatrix out;
  out.side = side;
  if (side == KernelSide::kColumn) {
    out.normalization.divisor = u * u * u * v * v;
    out.normalization.note = "(A^T A)^3 / (|U|^3 |V|^2)";
  } else {
    out.normalization.divisor = v * v * v * u * u;
    out.normalization.note = "(A A^T)^3 / (|V|^3 |U|^2)";
  }
  const double max_weight = g.edge_weights().size() ? g.edge_weights().maxCoeff() : 0.0;
  out.normalization.counts_exact =
      g.is_simple() && out.normalization.divisor * std::pow(max_weight, 6) <= kExactDoubleLimit;

  const Eigen::MatrixXd m = Gram(g.edge_weights(), side);
  out.values = (m * m * m) / out.normalization.divisor;
  return out;
}

double ProfileDistance(const Eigen::MatrixXd& k, int v, int w) {
  double d = 0.0;
  const int n = static_cast<int>(k.cols());
  for (int c = 0; c < n; ++c) {
    if (c == v || c == w) continue;
    d = std::max(d, std::abs(k(v, c) - k(w, c)));
  }
  return d;
}

ProfileClustering ClusterProfiles(const ProfileMatrix& profile, const ClusterStrategy& strategy) {
  const Eigen::MatrixXd& k = profile.values;
  const int n = static_cast<int>(k.rows());
  if (n == 0 || k.cols() != n) throw ValidationError("profile matrix must be square and nonempty");

  ProfileClustering out;
  if (strategy.kind == ClusterStrategy::Kind::kFixedTolerance) {
    if (!(strategy.tolerance >= 0.0) || !std::isfinite(strategy.tolerance)) {
      throw ValidationError("cluster tolerance must be finite and nonnegative");
    }
    out.tolerance = strategy.tolerance;
  } else {
    const GapScan scan = SmallestSignificantGap(k);
    out.gap = scan.gap;
    out.relative_gap = scan.relative;
    out.gap_found = scan.found;
    // Profiles closer than the gap itself merge: distance <= tolerance iff
    // distance < gap.
    out.tolerance = scan.found ? std::nextafter(scan.gap, 0.0) : std::numeric_limits<double>::infinity();
  }

  DisjointSets sets(n);
  if (std::isinf(out.tolerance)) {
    for (int v = 1; v < n; ++v) sets.unite(0, v);
  } else {
    // Row means differ by at most d(v, v') + 2 max|K| / n, which prunes pairs.
    Eigen::VectorXd mean = k.rowwise().mean();
    const double slack = 2.0 * k.cwiseAbs().maxCoeff() / n + 1e-12;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return mean(x) < mean(y); });
    for (int a = 0; a < n; ++a) {
      const int v = order[a];
      for (int b = a + 1; b < n; ++b) {
        const int w = order[b];
        if (mean(w) - mean(v) > out.tolerance + slack) break;
        if (sets.find(v) == sets.find(w)) continue;
        if (ProfileDistance(k, v, w) <= out.tolerance) sets.unite(v, w);
      }
    }
  }

  out.cells = CollectCells(sets, n);
  out.cell_of.assign(n, 0);
  for (std::size_t c = 0; c < out.cells.size(); ++c) {
    for (int v : out.cells[c]) out.cell_of[v] = static_cast<int>(c);
  }
  if (std::isfinite(out.tolerance)) {
    for (const auto& cell : out.cells) {
      for (int v : cell) {
        if (ProfileDistance(k, cell.front(), v) > out.tolerance) {
          out.non_metric_merge = true;
          break;
        }
      }
      if (out.non_metric_merge) break;
    }
  }
  return out;
}

std::vector<int> RegularityDecomposition::row_representatives() const {
  return Representatives(row_cells());
}

std::vector<int> RegularityDecomposition::col_representatives() const {
  return Representatives(col_cells());
}

int RegularityDecomposition::large_row_count() const {
  return static_cast<int>(std::count(row_large.begin(), row_large.end(), true));
}

int RegularityDecomposition::large_col_count() const {
  return static_cast<int>(std::count(col_large.begin(), col_large.end(), true));
}

StepKernel RegularityDecomposition::step_kernel() const {
  std::vector<double> rows;
  std::vector<double> cols;
  for (const auto& c : row_cells()) rows.push_back(static_cast<double>(c.size()) / left_count);
  for (const auto& c : col_cells()) cols.push_back(static_cast<double>(c.size()) / right_count);
  return StepKernel(std::move(rows), std::move(cols), densities);
}

StepKernel RegularityDecomposition::large_cell_kernel() const {
  std::vector<int> ri;
  std::vector<int> ci;
  double row_total = 0.0;
  double col_total = 0.0;
  for (std::size_t c = 0; c < row_cells().size(); ++c) {
    if (row_large[c]) {
      ri.push_back(static_cast<int>(c));
      row_total += static_cast<double>(row_cells()[c].size());
    }
  }
  for (std::size_t c = 0; c < col_cells().size(); ++c) {
    if (col_large[c]) {
      ci.push_back(static_cast<int>(c));
      col_total += static_cast<double>(col_cells()[c].size());
    }
  }
  if (ri.empty() || ci.empty()) throw Error("decomposition has no large cells on one side");
  std::vector<double> rows;
  std::vector<double> cols;
  for (int r : ri) rows.push_back(static_cast<double>(row_cells()[r].size()) / row_total);
  for (int c : ci) cols.push_back(static_cast<double>(col_cells()[c].size()) / col_total);
  Eigen::MatrixXd values(ri.size(), ci.size());
  for (std::size_t i = 0; i < ri.size(); ++i) {
    for (std::size_t j = 0; j < ci.size(); ++j) values(i, j) = densities(ri[i], ci[j]);
  }
  return StepKernel(std::move(rows), std::move(cols), values);
}

RegularityDecomposition AlgebraicRegularize(const BipartiteGraph& g,
                                            const RegularizeOptions& options) {
  if (options.cell_threshold &&
      !(*options.cell_threshold > 0.0 && *options.cell_threshold <= 1.0)) {
    throw ValidationError("cell threshold must lie in (0, 1]");
  }
  if (options.residual_restarts < 1) throw ValidationError("residual restarts must be positive");

  RegularityDecomposition out;
  out.left_count = g.left_count();
  out.right_count = g.right_count();
  out.row_clustering = ClusterProfiles(ProfileKernel(g, KernelSide::kRow), options.strategy);
  out.col_clustering = ClusterProfiles(ProfileKernel(g, KernelSide::kColumn), options.strategy);
  out.row_large = LargeFlags(out.row_cells(), out.left_count, options.cell_threshold);
  out.col_large = LargeFlags(out.col_cells(), out.right_count, options.cell_threshold);
  out.profile_gap = std::min(out.row_clustering.gap, out.col_clustering.gap);

  const Eigen::MatrixXd& a = g.edge_weights();
  const auto nr = static_cast<Eigen::Index>(out.row_cells().size());
  const auto nc = static_cast<Eigen::Index>(out.col_cells().size());
  out.edge_counts = Eigen::MatrixXd::Zero(nr, nc);
  for (int j = 0; j < out.right_count; ++j) {
    const int cj = out.col_clustering.cell_of[j];
    for (int i = 0; i < out.left_count; ++i) {
      out.edge_counts(out.row_clustering.cell_of[i], cj) += a(i, j);
    }
  }
  out.densities.resize(nr, nc);
  for (Eigen::Index r = 0; r < nr; ++r) {
    for (Eigen::Index c = 0; c < nc; ++c) {
      const double pairs = static_cast<double>(out.row_cells()[r].size()) *
                           static_cast<double>(out.col_cells()[c].size());
      out.densities(r, c) = out.edge_counts(r, c) / pairs;
    }
  }

  Eigen::MatrixXd residual(out.left_count, out.right_count);
  for (int j = 0; j < out.right_count; ++j) {
    const int cj = out.col_clustering.cell_of[j];
    for (int i = 0; i < out.left_count; ++i) {
      residual(i, j) = a(i, j) - out.densities(out.row_clustering.cell_of[i], cj);
    }
  }
  out.residual_cut_norm =
      CutNormHeuristic(StepKernel::Uniform(residual), options.residual_restarts, options.seed).value;
  return out;
}

ScanEntry RegularizeInstance(FamilyId family, std::int64_t q, const RegularizeOptions& options) {
  const BipartiteGraph g = Generate(family, q);
  const RegularityDecomposition d = AlgebraicRegularize(g, options);
  const LimitPrediction prediction = PredictLimit(family, q);
  ScanEntry e;
  e.family = family;
  e.q = q;
  e.case_label = prediction.case_label;
  e.n_row_cells = static_cast<int>(d.row_cells().size());
  e.n_col_cells = static_cast<int>(d.col_cells().size());
  e.n_large_row_cells = d.large_row_count();
  e.n_large_col_cells = d.large_col_count();
  e.residual_cut_norm = d.residual_cut_norm;
  e.row_gap_found = d.row_clustering.gap_found;
  e.col_gap_found = d.col_clustering.gap_found;
  e.large_kernel = d.large_cell_kernel();
  e.d_cut_to_prediction =
      CutDistance(e.large_kernel, prediction.representative, CutDistanceMode::kHeuristic);
  return e;
}

AccumulationResult AccumulationScan(FamilyId family, const std::vector<std::int64_t>& q_list,
                                    double merge_tol, const RegularizeOptions& options,
                                    int threads) {
  if (!(merge_tol >= 0.0) || !std::isfinite(merge_tol)) {
    throw ValidationError("merge tolerance must be finite and nonnegative");
  }
  for (std::int64_t q : q_list) ValidateFamilyParameter(family, q);

  const int n = static_cast<int>(q_list.size());
  std::vector<ScanEntry> entries(n);
  detail::ParallelFor(n, threads,
                      [&](int i) { entries[i] = RegularizeInstance(family, q_list[i], options); });

  DisjointSets sets(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (sets.find(i) == sets.find(j)) continue;
      const double d = CutDistance(entries[i].large_kernel, entries[j].large_kernel,
                                   CutDistanceMode::kHeuristic);
      if (d <= merge_tol) sets.unite(i, j);
    }
  }

  AccumulationResult out;
  std::vector<int> cluster_of_root(n, -1);
  for (int i = 0; i < n; ++i) {
    const int root = sets.find(i);
    if (cluster_of_root[root] < 0) {
      cluster_of_root[root] = static_cast<int>(out.clusters.size());
      ScanCluster c;
      c.id = cluster_of_root[root];
      out.clusters.push_back(std::move(c));
    }
    ScanCluster& c = out.clusters[cluster_of_root[root]];
    entries[i].cluster = c.id;
    c.members.push_back(entries[i].q);
    if (entries[i].q >= c.representative_q) {
      c.representative_q = entries[i].q;
      c.representative = entries[i].large_kernel;
    }
  }
  out.entries = std::move(entries);
  return out;
}

}  // namespace graphonreg
