#include "graphonreg/json_io.h"

#include <algorithm>
#include <limits>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "graphonreg/error.h"
#include "graphonreg/kernel_ops.h"
#include "test_support.h"

namespace graphonreg {
namespace {

using nlohmann::json;

TEST(JsonIo, StepKernelRoundTrip) {
  auto rng = testing::MakeRng(41);
  for (int t = 0; t < 20; ++t) {
    const StepKernel w = testing::RandomKernel(rng, testing::UniformInt(rng, 1, 6), testing::UniformInt(rng, 1, 6), -1.0, 1.0);
    const std::string text = ToJson(w);
    EXPECT_EQ(text.back(), '\n');
    const StepKernel back = StepKernelFromJson(text);
    EXPECT_EQ(back.values(), w.values());
    EXPECT_TRUE(std::equal(back.row_measures().begin(), back.row_measures().end(), w.row_measures().begin()));
    EXPECT_TRUE(std::equal(back.col_measures().begin(), back.col_measures().end(), w.col_measures().begin()));
  }
}

TEST(JsonIo, StepKernelParseErrors) {
  EXPECT_THROW(StepKernelFromJson("{"), ValidationError);
  EXPECT_THROW(StepKernelFromJson(R"({"row_measures":[1],"values":[[1]]})"), ValidationError);
  EXPECT_THROW(StepKernelFromJson(R"({"row_measures":[0.5],"col_measures":[1],"values":[[1]]})"), ValidationError);
  EXPECT_THROW(StepKernelFromJson(R"({"row_measures":[1],"col_measures":[1],"values":[["a"]]})"), ValidationError);
  EXPECT_THROW(StepKernelFromJson(R"({"row_measures":[0.5,0.5],"col_measures":[1],"values":[[1],[1,2]]})"),
               ValidationError);
}

TEST(JsonIo, RejectsNonFiniteOnWrite) {
  CutNormResult r;
  r.value = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(ToJson(r), ValidationError);
  r.value = std::numeric_limits<double>::infinity();
  EXPECT_THROW(ToJson(r), ValidationError);
}

TEST(JsonIo, GraphRoundTripWithOrigin) {
  const BipartiteGraph g = Generate(FamilyId::kPaleySumSquares, 5);
  const std::string text = ToJson(g, GraphOrigin{FamilyId::kPaleySumSquares, 5});
  const json j = json::parse(text);
  EXPECT_EQ(j["family"], "paley_sum_squares");
  EXPECT_EQ(j["q"], 5);
  EXPECT_EQ(j["edge_count"], 15);
  const BipartiteGraph back = GraphFromJson(text);
  EXPECT_EQ(back.edge_weights(), g.edge_weights());

  const BipartiteGraph weighted(Eigen::MatrixXd::Ones(2, 2), std::vector<double>{1.0, 3.0}, std::vector<double>{2.0, 2.0});
  const BipartiteGraph wback = GraphFromJson(ToJson(weighted));
  ASSERT_TRUE(wback.left_vertex_weights().has_value());
  EXPECT_EQ(*wback.left_vertex_weights(), (std::vector<double>{1.0, 3.0}));
}

TEST(JsonIo, ResultDocuments) {
  const json cut = json::parse(ToJson(CutNormExact(StepKernel::Uniform(Eigen::MatrixXd::Identity(2, 2)))));
  EXPECT_TRUE(cut["exact"].get<bool>());
  EXPECT_NEAR(cut["value"].get<double>(), 0.5, 1e-15);

  const json weak = json::parse(ToJson(WeakRegularize(StepKernel::Constant(1.0), 0.5)));
  EXPECT_EQ(weak["cell_count"], 1);
  EXPECT_EQ(weak["side"], "column");
  EXPECT_NEAR(weak["error_bound"].get<double>(), 0.5, 1e-15);
  EXPECT_EQ(StepKernelFromJson(weak["approx_kernel"].dump()).rows(), 1);

  const json dec = json::parse(ToJson(AlgebraicRegularize(Generate(FamilyId::kProdCubes, 13))));
  EXPECT_EQ(dec["cols"]["cells"].size(), 4u);
  EXPECT_EQ(dec["rows"]["large"].size(), 4u);

  const json scan = json::parse(ToJson(FamilyId::kSumCubes, AccumulationScan(FamilyId::kSumCubes, {5, 7}, 0.2)));
  EXPECT_EQ(scan["family"], "sum_cubes");
  EXPECT_EQ(scan["entries"].size(), 2u);

  const json report = json::parse(ToJson(ExpansionProbe(MorphismId::kAdd, 7, 0.5, 1.0, 2, 3)));
  EXPECT_EQ(report["morphism"], "add");
  EXPECT_NEAR(report["quadruple_ratio"].get<double>(), 1.0 / 7.0, 1e-15);
}

}  // namespace
}  // namespace graphonreg
