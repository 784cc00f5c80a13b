#include "graphonreg/kernel_ops.h"

#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "graphonreg/error.h"
#include "gtest/gtest.h"
#include "test_support.h"

namespace graphonreg {
namespace {

using testing::Expand;
using testing::MakeRng;
using testing::RandomGridKernel;
using testing::SampledSupDistance;

constexpr int kGrid = 24;

Eigen::MatrixXd M(std::initializer_list<std::initializer_list<double>> rows) {
  Eigen::MatrixXd m(rows.size(), rows.begin()->size());
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (double x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

TEST(StepKernelTest, RejectsBadInput) {
  EXPECT_THROW(StepKernel({0.5, 0.4}, {1.0}, M({{1}, {1}})), ValidationError);
  EXPECT_THROW(StepKernel({1.0, 0.0}, {1.0}, M({{1}, {1}})), ValidationError);
  EXPECT_THROW(StepKernel({1.0}, {1.0}, M({{1, 2}})), ValidationError);
  EXPECT_THROW(StepKernel({1.0}, {1.0}, M({{std::nan("")}})), ValidationError);
  EXPECT_THROW(Constant(std::numeric_limits<double>::infinity()), ValidationError);
}

TEST(StepKernelTest, Flags) {
  EXPECT_TRUE(Constant(0.5).is_graphon());
  EXPECT_FALSE(Constant(-0.5).is_graphon());
  EXPECT_TRUE(Constant(-0.5).is_w1());
  EXPECT_FALSE(Constant(1.5).is_w1());
  EXPECT_DOUBLE_EQ(Constant(0.5).integral(), 0.5);
}

TEST(FromGraphTest, Uniform) {
  const StepKernel one = FromGraphUniform(BipartiteGraph(M({{1}})));
  EXPECT_EQ(one.rows(), 1);
  EXPECT_DOUBLE_EQ(one.value(0, 0), 1.0);

  const StepKernel empty = FromGraphUniform(BipartiteGraph(Eigen::MatrixXd::Zero(2, 2)));
  EXPECT_DOUBLE_EQ(empty.row_measures()[1], 0.5);
  EXPECT_DOUBLE_EQ(empty.values().cwiseAbs().maxCoeff(), 0.0);

  const StepKernel w = FromGraphUniform(BipartiteGraph(M({{1}, {0}})));
  EXPECT_DOUBLE_EQ(w.row_measures()[0], 0.5);
  EXPECT_DOUBLE_EQ(w.col_measures()[0], 1.0);
  EXPECT_DOUBLE_EQ(w.value(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(w.value(1, 0), 0.0);
}

TEST(FromGraphTest, Weighted) {
  const StepKernel w = FromGraphWeighted(BipartiteGraph(M({{1, 1}, {2, 0}})));
  EXPECT_NEAR(w.row_measures()[0], 0.5, 1e-15);
  EXPECT_NEAR(w.row_measures()[1], 0.5, 1e-15);
  EXPECT_NEAR(w.col_measures()[0], 0.75, 1e-15);
  EXPECT_NEAR(w.col_measures()[1], 0.25, 1e-15);
  EXPECT_DOUBLE_EQ(w.value(1, 0), 2.0);

  const StepKernel full = FromGraphWeighted(BipartiteGraph(Eigen::MatrixXd::Ones(2, 2)));
  EXPECT_NEAR(full.col_measures()[1], 0.5, 1e-15);

  try {
    FromGraphWeighted(BipartiteGraph(M({{1, 0}, {0, 0}})));
    FAIL() << "isolated vertex accepted";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("1"), std::string::npos);
  }
}

TEST(KernelOpsTest, TransposeExamples) {
  EXPECT_DOUBLE_EQ(Transpose(Constant(0.3)).value(0, 0), 0.3);
  auto rng = MakeRng(1);
  for (int t = 0; t < 20; ++t) {
    const StepKernel w = testing::RandomKernel(rng, 3, 5, -1, 1);
    const StepKernel tt = Transpose(Transpose(w));
    EXPECT_EQ(tt.values(), w.values());
    const StepKernel tr = Transpose(w);
    EXPECT_EQ(tr.rows(), 5);
    EXPECT_DOUBLE_EQ(tr.value(4, 2), w.value(2, 4));
  }
}

TEST(KernelOpsTest, ProductExamples) {
  EXPECT_DOUBLE_EQ(Product(Constant(0.5), Constant(0.4)).value(0, 0), 0.2);
  const StepKernel p = Product(StepKernel::Uniform(M({{1, 0}, {0, 1}})),
                               StepKernel::Uniform(M({{1, 1}, {0, 0}})));
  EXPECT_EQ(p.values(), M({{1, 0}, {0, 0}}));
}

TEST(KernelOpsTest, OperatorProductExamples) {
  EXPECT_DOUBLE_EQ(OperatorProduct(Constant(0.5), Constant(0.4)).value(0, 0), 0.2);
  const StepKernel i2 = StepKernel::Uniform(Eigen::MatrixXd::Identity(2, 2));
  EXPECT_TRUE(OperatorProduct(i2, i2).values().isApprox(0.5 * Eigen::MatrixXd::Identity(2, 2)));
  auto rng = MakeRng(2);
  const StepKernel w = testing::RandomKernel(rng, 3, 4, -1, 1);
  EXPECT_EQ(OperatorProduct(w, Constant(0)).values().cwiseAbs().maxCoeff(), 0.0);
}

// Products of lattice kernels agree with plain matrix arithmetic on the
// expanded grid.
TEST(KernelOpsTest, LatticeOracle) {
  auto rng = MakeRng(3);
  for (int t = 0; t < 30; ++t) {
    const auto u = RandomGridKernel(rng, testing::UniformInt(rng, 1, 6), testing::UniformInt(rng, 1, 6), kGrid, -1, 1);
    const auto w = RandomGridKernel(rng, testing::UniformInt(rng, 1, 6), testing::UniformInt(rng, 1, 6), kGrid, -1, 1);
    const Eigen::MatrixXd eu = Expand(u, kGrid);
    const Eigen::MatrixXd ew = Expand(w, kGrid);

    const StepKernel prod = Product(u.kernel, w.kernel);
    const StepKernel op = OperatorProduct(u.kernel, w.kernel);
    const StepKernel diff = Difference(u.kernel, w.kernel);
    const Eigen::MatrixXd eprod = eu.cwiseProduct(ew);
    const Eigen::MatrixXd eop = eu * ew / kGrid;
    const Eigen::MatrixXd ediff = eu - ew;
    for (int i = 0; i < kGrid; ++i) {
      for (int j = 0; j < kGrid; ++j) {
        const double x = (i + 0.5) / kGrid;
        const double y = (j + 0.5) / kGrid;
        EXPECT_NEAR(testing::Evaluate(prod, x, y), eprod(i, j), 1e-12);
        EXPECT_NEAR(testing::Evaluate(op, x, y), eop(i, j), 1e-12);
        EXPECT_NEAR(testing::Evaluate(diff, x, y), ediff(i, j), 1e-12);
      }
    }
  }
}

TEST(KernelOpsTest, RefinementPreservesFunctionAndNorm) {
  auto rng = MakeRng(4);
  for (int t = 0; t < 20; ++t) {
    const StepKernel u = testing::RandomKernel(rng, 3, 2, -1, 1);
    const StepKernel w = testing::RandomKernel(rng, 2, 4, -1, 1);
    const auto [ru, rw] = CommonRefinement(u, w);
    EXPECT_EQ(ru.rows(), rw.rows());
    EXPECT_EQ(ru.cols(), rw.cols());
    EXPECT_LT(SampledSupDistance(ru, u), 1e-15);
    EXPECT_LT(SampledSupDistance(rw, w), 1e-15);
    EXPECT_NEAR(ru.integral(), u.integral(), 1e-12);
  }
  const auto [a, b] = CommonRefinement(Constant(1), StepKernel::Uniform(M({{1, 2}, {3, 4}})));
  EXPECT_EQ(a.rows(), 2);
  EXPECT_EQ(a.values(), Eigen::MatrixXd::Ones(2, 2));
}

TEST(KernelOpsTest, RefinementMergesNearlyEqualBreakpoints) {
  const AxisRefinement r = RefineAxis(std::vector<double>{0.5, 0.5},
                                      std::vector<double>{0.5 + 1e-14, 0.5 - 1e-14});
  EXPECT_EQ(r.measures.size(), 2u);
}

TEST(KernelOpsTest, TransposeOfOperatorProduct) {
  auto rng = MakeRng(5);
  for (int t = 0; t < 20; ++t) {
    const StepKernel u = testing::RandomKernel(rng, 3, 4, -1, 1);
    const StepKernel w = testing::RandomKernel(rng, 2, 5, -1, 1);
    const StepKernel lhs = Transpose(OperatorProduct(u, w));
    const StepKernel rhs = OperatorProduct(Transpose(w), Transpose(u));
    EXPECT_LT(SampledSupDistance(lhs, rhs), 1e-10);
  }
}

TEST(KernelOpsTest, OperatorIdentity) {
  auto rng = MakeRng(6);
  for (int t = 0; t < 20; ++t) {
    // Shared middle partition, so T_W f can be fed to T_U directly.
    const std::vector<double> middle = testing::RandomMeasures(rng, 4);
    const StepKernel u(testing::RandomMeasures(rng, 3), middle, testing::RandomMatrix(rng, 3, 4, -1, 1));
    const StepKernel w(middle, testing::RandomMeasures(rng, 5), testing::RandomMatrix(rng, 4, 5, -1, 1));
    const Eigen::VectorXd f = testing::RandomMatrix(rng, 5, 1, -1, 1);
    const Eigen::VectorXd composed = ApplyKernel(u, ApplyKernel(w, f));
    const Eigen::VectorXd direct = ApplyKernel(OperatorProduct(u, w), f);
    EXPECT_LT((composed - direct).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(KernelOpsTest, DirectSum) {
  const StepKernel w = StepKernel::Uniform(M({{0.2, 0.7}, {0.1, 0.9}}));
  const std::vector<StepKernel> one{w};
  const std::vector<double> unit{1.0};
  const StepKernel same = DirectSum(one, unit, unit);
  EXPECT_EQ(same.values(), w.values());

  const std::vector<StepKernel> parts{Constant(0.3), Constant(0.8)};
  const std::vector<double> half{0.5, 0.5};
  const StepKernel d = DirectSum(parts, half, half);
  EXPECT_EQ(d.values(), M({{0.3, 0}, {0, 0.8}}));
  EXPECT_NEAR(std::accumulate(d.row_measures().begin(), d.row_measures().end(), 0.0), 1.0, 1e-12);

  const std::vector<double> bad{0.5, 0.6};
  EXPECT_THROW(DirectSum(parts, bad, half), ValidationError);

  // Restricting to a diagonal block and rescaling gives the part back.
  auto rng = MakeRng(7);
  const StepKernel p0 = testing::RandomKernel(rng, 2, 3, 0, 1);
  const StepKernel p1 = testing::RandomKernel(rng, 3, 2, 0, 1);
  const std::vector<StepKernel> ps{p0, p1};
  const std::vector<double> a{0.3, 0.7};
  const std::vector<double> b{0.6, 0.4};
  const StepKernel ds = DirectSum(ps, a, b);
  EXPECT_EQ(ds.values().block(0, 0, 2, 3), p0.values());
  EXPECT_EQ(ds.values().block(2, 3, 3, 2), p1.values());
  EXPECT_NEAR(ds.row_measures()[3] / 0.7, p1.row_measures()[1], 1e-15);
}

TEST(KernelOpsTest, Symmetrize) {
  const StepKernel s = Symmetrize(Constant(1));
  EXPECT_EQ(s.values(), M({{0, 1}, {1, 0}}));
  EXPECT_DOUBLE_EQ(s.row_measures()[0], 0.5);
  EXPECT_EQ(Symmetrize(Constant(0)).values().cwiseAbs().maxCoeff(), 0.0);

  auto rng = MakeRng(8);
  for (int t = 0; t < 10; ++t) {
    const StepKernel w = testing::RandomKernel(rng, 3, 4, 0, 1);
    const StepKernel sym = Symmetrize(w);
    EXPECT_LT(SampledSupDistance(sym, Transpose(sym)), 1e-15);
  }
}

TEST(KernelOpsTest, SixthPower) {
  EXPECT_NEAR(SixthPower(Constant(1)).value(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(SixthPower(Constant(0.7)).value(0, 0), std::pow(0.7, 6), 1e-15);
  const StepKernel i2 = StepKernel::Uniform(Eigen::MatrixXd::Identity(2, 2));
  EXPECT_TRUE(SixthPower(i2).values().isApprox(Eigen::MatrixXd::Identity(2, 2) / 32.0));

  auto rng = MakeRng(9);
  for (int t = 0; t < 20; ++t) {
    const auto w = RandomGridKernel(rng, 4, 3, kGrid, 0, 1);
    const StepKernel s = SixthPower(w.kernel);
    EXPECT_TRUE(s.is_graphon());
    const Eigen::MatrixXd e = Expand(w, kGrid);
    const Eigen::MatrixXd g = e * e.transpose() / kGrid;
    const Eigen::MatrixXd oracle = g * g * g / (kGrid * kGrid);
    for (int i = 0; i < kGrid; ++i) {
      for (int j = 0; j < kGrid; ++j) {
        EXPECT_NEAR(testing::Evaluate(s, (i + 0.5) / kGrid, (j + 0.5) / kGrid), oracle(i, j), 1e-12);
      }
    }
  }
}

}  // namespace
}  // namespace graphonreg
