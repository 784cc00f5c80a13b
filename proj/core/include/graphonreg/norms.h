#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "graphonreg/bipartite_graph.h"
#include "graphonreg/step_kernel.h"

namespace graphonreg {

// Largest min(rows, cols) accepted by the exact cut norm.
inline constexpr int kExactCutNormMaxSteps = 26;
// Largest step count per side accepted by the exact cut distance.
inline constexpr int kExactCutDistanceMaxSteps = 8;
// Largest side accepted by the brute-force regularity check.
inline constexpr int kBruteForceRegularityMaxVertices = 16;

enum class LpNorm { kL1, kL2, kLinf };

// Measure-weighted L^p norm of the kernel values.
double Norm(const StepKernel& w, LpNorm p);

// Cut norm together with an optimizing pair of step subsets.
//
// Invariant: value == |sum_{i in S, j in T} w_ij a_i b_j| for the reported
// witness (S = witness_rows, T = witness_cols).
struct CutNormResult {
  double value = 0.0;
  std::vector<int> witness_rows;
  std::vector<int> witness_cols;
  bool exact = false;
};

// |sum over S x T of w_ij a_i b_j| for the given step subsets.
double RectangleMass(const StepKernel& w, std::span<const int> rows, std::span<const int> cols);

// Exact cut norm by enumerating all subsets of the smaller side; the other
// side is optimized by sign. Throws BudgetError if min(rows, cols) exceeds
// kExactCutNormMaxSteps.
CutNormResult CutNormExact(const StepKernel& w);

// Lower bound on the cut norm by alternating maximization from `restarts`
// seeded starting sets. Restart r only depends on (seed, r), so the value is
// nondecreasing in `restarts`.
CutNormResult CutNormHeuristic(const StepKernel& w, int restarts, std::uint64_t seed);

// Exact cut norm within budget, else the heuristic with 20 restarts.
CutNormResult CutNorm(const StepKernel& w, std::uint64_t seed = 0);

enum class CutDistanceMode { kExactPermutation, kHeuristic };

// delta_box(U, W).
//
// kExactPermutation minimizes the exact cut norm of U - W over all bijections
// of row steps and of column steps that preserve step measures; it requires
// equal measure multisets and at most kExactCutDistanceMaxSteps steps per
// side (ValidationError / BudgetError otherwise).
//
// kHeuristic rearranges the steps of W (exhaustively when small, otherwise
// greedily followed by pairwise swaps), overlays the rearranged partitions
// and evaluates the cut norm of the difference; with the exact cut norm this
// is an upper bound on delta_box.
double CutDistance(const StepKernel& u, const StepKernel& w, CutDistanceMode mode);

struct HomogeneityResult {
  bool homogeneous = false;
  double distance = 0.0;
  // False when the heuristic cut norm was used; the heuristic can only
  // underestimate the distance, so a failing instance may pass.
  bool exact = true;
};

// Is g eps-homogeneous of the given density, i.e. d_box(W(g), W(density)) <= eps
// with unit vertex weights.
HomogeneityResult HomogeneityCheck(const BipartiteGraph& g, double density, double eps);

// Exhaustive eps-regularity check: for all A with |A| > eps|U| and B with
// |B| > eps|V|, | e(A,B) - density |A||B| | <= eps |A||B|.
// Simple graphs with both sides of at most kBruteForceRegularityMaxVertices.
bool RegularityCheckBruteForce(const BipartiteGraph& g, double density, double eps);

// sum a_i b_i <= u^(1/3) v, given sum a_i^3 b_i <= u v and sum b_i <= v.
// Throws PremiseError when a premise fails or an input is not positive.
bool HolderTripleCheck(std::span<const double> a, std::span<const double> b, double u, double v);

}  // namespace graphonreg
