#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "graphonreg/bipartite_graph.h"
#include "graphonreg/families.h"
#include "graphonreg/spectral.h"
#include "graphonreg/step_kernel.h"

namespace graphonreg {

// Largest |U| * |V| accepted by the profile kernel.
inline constexpr std::int64_t kMaxProfileCells = 4'000'000;
// A gap between consecutive sorted profile values lo < hi is significant
// when (hi - lo) / hi reaches this. Without a significant gap, gap_auto
// keeps all vertices in one cell.
inline constexpr double kMinRelativeGap = 0.15;

struct ProfileNormalization {
  // Path counts are divided by this: |U|^3 |V|^2 on the column side,
  // |V|^3 |U|^2 on the row side.
  double divisor = 1.0;
  // True when every intermediate count is an integer below 2^53, so the
  // counts behind the kernel values are exact.
  bool counts_exact = true;
  std::string note;
};

// Sixth-power profile kernel of a graph on one side.
//
// Column side: K3(v, v') = |{(u1, v2, u2, v3, u3) : u1~v, u1~v2, u2~v2,
// u2~v3, u3~v3, u3~v'}| / (|U|^3 |V|^2), i.e. (A^T A)^3 / (|U|^3 |V|^2).
// Row side: (A A^T)^3 / (|V|^3 |U|^2).
struct ProfileMatrix {
  KernelSide side = KernelSide::kColumn;
  Eigen::MatrixXd values;
  ProfileNormalization normalization;
};

// Exact path counts (A^T A)^3 or (A A^T)^3 in 64-bit integers. Edge weights
// must be integers.
Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> PathCounts(const BipartiteGraph& g,
                                                                       KernelSide side);

// Throws BudgetError if |U| * |V| > kMaxProfileCells.
ProfileMatrix ProfileKernel(const BipartiteGraph& g, KernelSide side);

struct ClusterStrategy {
  enum class Kind { kGapAuto, kFixedTolerance };
  Kind kind = Kind::kGapAuto;
  double tolerance = 0.0;

  static ClusterStrategy GapAuto() { return {}; }
  static ClusterStrategy Fixed(double tau) { return {Kind::kFixedTolerance, tau}; }
};

struct ProfileClustering {
  // Each cell is sorted ascending; cells by size descending, ties by least
  // vertex.
  std::vector<std::vector<int>> cells;
  std::vector<int> cell_of;
  // Merge tolerance applied to profile distances.
  double tolerance = 0.0;
  // Smallest significant gap between consecutive sorted off-diagonal profile
  // values, absolute and relative to its upper value (gap_auto only).
  double gap = 0.0;
  double relative_gap = 0.0;
  // False when gap_auto found no significant gap; all vertices are then kept
  // in a single cell.
  bool gap_found = true;
  // True when single-linkage closure put a vertex in a cell whose
  // representative profile is farther than the tolerance.
  bool non_metric_merge = false;
};

// Profile distance: max over w not in {v, v'} of |K(v, w) - K(v', w)|.
double ProfileDistance(const Eigen::MatrixXd& k, int v, int w);

// Single-linkage clustering of vertices by profile distance <= tolerance.
// gap_auto finds the smallest significant gap between consecutive sorted
// off-diagonal profile values and merges profiles strictly closer than it
// (the tolerance is the largest double below the gap).
ProfileClustering ClusterProfiles(const ProfileMatrix& k, const ClusterStrategy& strategy);

struct RegularizeOptions {
  // Relative cell size below which a cell is small. When unset the threshold
  // is |side|^(-1/2), and cells of the largest size are always large.
  std::optional<double> cell_threshold;
  ClusterStrategy strategy = ClusterStrategy::GapAuto();
  int residual_restarts = 20;
  std::uint64_t seed = 0x5eed;
};

struct RegularityDecomposition {
  int left_count = 0;
  int right_count = 0;
  ProfileClustering row_clustering;
  ProfileClustering col_clustering;
  std::vector<bool> row_large;
  std::vector<bool> col_large;
  // Edge counts and exact densities between row cell i and column cell j.
  Eigen::MatrixXd edge_counts;
  Eigen::MatrixXd densities;
  // Heuristic cut norm of W(g) minus the blockwise-constant kernel.
  double residual_cut_norm = 0.0;
  // Smaller of the two sides' profile gaps.
  double profile_gap = 0.0;

  const std::vector<std::vector<int>>& row_cells() const { return row_clustering.cells; }
  const std::vector<std::vector<int>>& col_cells() const { return col_clustering.cells; }
  // Least-index vertex of each cell.
  std::vector<int> row_representatives() const;
  std::vector<int> col_representatives() const;
  int large_row_count() const;
  int large_col_count() const;

  // Stepfunction on all cells with measures |cell| / |side|.
  StepKernel step_kernel() const;
  // Stepfunction on the large cells, measures renormalized over them.
  StepKernel large_cell_kernel() const;
};

RegularityDecomposition AlgebraicRegularize(const BipartiteGraph& g,
                                            const RegularizeOptions& options = {});

struct ScanEntry {
  FamilyId family = FamilyId::kPaleySumSquares;
  std::int64_t q = 0;
  CaseLabel case_label;
  int n_row_cells = 0;
  int n_col_cells = 0;
  int n_large_row_cells = 0;
  int n_large_col_cells = 0;
  double residual_cut_norm = 0.0;
  bool row_gap_found = true;
  bool col_gap_found = true;
  StepKernel large_kernel = StepKernel::Constant(0.0);
  double d_cut_to_prediction = 0.0;
  int cluster = -1;
};

struct ScanCluster {
  int id = 0;
  // Member with the largest q.
  std::int64_t representative_q = 0;
  StepKernel representative = StepKernel::Constant(0.0);
  std::vector<std::int64_t> members;
};

struct AccumulationResult {
  std::vector<ScanEntry> entries;
  std::vector<ScanCluster> clusters;
};

// Regularizes every instance (in parallel with up to `threads` workers),
// restricts to large cells and merges the stepfunctions by single linkage
// under heuristic cut distance <= merge_tol. Output order follows q_list.
AccumulationResult AccumulationScan(FamilyId family, const std::vector<std::int64_t>& q_list,
                                    double merge_tol, const RegularizeOptions& options = {},
                                    int threads = 1);

// Regularizes one family instance and compares it with the predicted limit.
ScanEntry RegularizeInstance(FamilyId family, std::int64_t q, const RegularizeOptions& options = {});

}  // namespace graphonreg
