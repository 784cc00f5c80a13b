#include "graphonreg/json_io.h"

#include <cmath>
#include <span>
#include <vector>

#include <json.hpp>

#include "graphonreg/error.h"

namespace graphonreg {
namespace {

using nlohmann::json;

double Finite(double x) {
  if (!std::isfinite(x)) throw ValidationError("cannot serialize a non-finite number");
  return x;
}

json Numbers(std::span<const double> xs) {
  json a = json::array();
  for (double x : xs) a.push_back(Finite(x));
  return a;
}

json MatrixJson(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(Finite(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json KernelJson(const StepKernel& w) {
  return {{"row_measures", Numbers(w.row_measures())},
          {"col_measures", Numbers(w.col_measures())},
          {"values", MatrixJson(w.values())}};
}

json Cells(const std::vector<std::vector<int>>& cells) {
  json out = json::array();
  for (const auto& c : cells) out.push_back(c);
  return out;
}

std::string Dump(const json& j) {
  try {
    return j.dump() + "\n";
  } catch (const json::exception& e) {
    throw ValidationError(std::string("JSON serialization failed: ") + e.what());
  }
}

json Parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

const json& Field(const json& obj, const char* key) {
  if (!obj.is_object()) throw ValidationError("expected a JSON object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(std::string("missing key '") + key + "'");
  return *it;
}

double ReadNumber(const json& x, const char* what) {
  if (!x.is_number()) throw ValidationError(std::string(what) + " must be a number");
  const double v = x.get<double>();
  if (!std::isfinite(v)) throw ValidationError(std::string(what) + " must be finite");
  return v;
}

std::vector<double> ReadVector(const json& x, const char* what) {
  if (!x.is_array()) throw ValidationError(std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(x.size());
  for (const json& e : x) out.push_back(ReadNumber(e, what));
  return out;
}

Eigen::MatrixXd ReadMatrix(const json& x, const char* what) {
  if (!x.is_array() || x.empty()) throw ValidationError(std::string(what) + " must be a nonempty array of rows");
  const std::size_t cols = x.front().is_array() ? x.front().size() : 0;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(x.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::vector<double> row = ReadVector(x[i], what);
    if (row.size() != cols) throw ValidationError(std::string(what) + " rows must have equal length");
    for (std::size_t j = 0; j < cols; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
  }
  return m;
}

}  // namespace

std::string ToJson(const StepKernel& w) { return Dump(KernelJson(w)); }

StepKernel StepKernelFromJson(std::string_view text) {
  const json j = Parse(text);
  std::vector<double> rows = ReadVector(Field(j, "row_measures"), "row_measures");
  std::vector<double> cols = ReadVector(Field(j, "col_measures"), "col_measures");
  Eigen::MatrixXd values = ReadMatrix(Field(j, "values"), "values");
  return StepKernel(std::move(rows), std::move(cols), std::move(values));
}

std::string ToJson(const CutNormResult& r) {
  return Dump({{"value", Finite(r.value)},
               {"witness_rows", r.witness_rows},
               {"witness_cols", r.witness_cols},
               {"exact", r.exact}});
}

std::string ToJson(const WeakRegularityResult& r) {
  return Dump({{"eps", Finite(r.eps)},
               {"delta", Finite(r.delta)},
               {"side", r.side == KernelSide::kColumn ? "column" : "row"},
               {"retained_terms", r.retained_terms},
               {"cell_count", r.cell_count},
               {"cell_bound_log10", Finite(r.cell_bound_log10)},
               {"cells", Cells(r.cells)},
               {"achieved_inf_error", Finite(r.achieved_inf_error)},
               {"error_bound", Finite(r.error_bound())},
               {"approx_kernel", KernelJson(r.approx_kernel)}});
}

std::string ToJson(const BipartiteGraph& g, const std::optional<GraphOrigin>& origin) {
  json j;
  if (origin) {
    j["family"] = std::string(FamilyTag(origin->family));
    j["q"] = origin->q;
  }
  j["left_count"] = g.left_count();
  j["right_count"] = g.right_count();
  j["edge_count"] = g.edge_count();
  j["edge_weights"] = MatrixJson(g.edge_weights());
  if (g.left_vertex_weights()) j["left_vertex_weights"] = Numbers(*g.left_vertex_weights());
  if (g.right_vertex_weights()) j["right_vertex_weights"] = Numbers(*g.right_vertex_weights());
  return Dump(j);
}

BipartiteGraph GraphFromJson(std::string_view text) {
  const json j = Parse(text);
  Eigen::MatrixXd w = ReadMatrix(Field(j, "edge_weights"), "edge_weights");
  std::optional<std::vector<double>> left;
  std::optional<std::vector<double>> right;
  if (j.contains("left_vertex_weights")) left = ReadVector(j["left_vertex_weights"], "left_vertex_weights");
  if (j.contains("right_vertex_weights")) right = ReadVector(j["right_vertex_weights"], "right_vertex_weights");
  return BipartiteGraph(std::move(w), std::move(left), std::move(right));
}

std::string ToJson(const RegularityDecomposition& d) {
  auto side = [](const ProfileClustering& c, const std::vector<bool>& large) {
    return json{{"cells", Cells(c.cells)},
                {"large", json(std::vector<bool>(large))},
                {"tolerance", std::isfinite(c.tolerance) ? json(c.tolerance) : json(nullptr)},
                {"gap", Finite(c.gap)},
                {"relative_gap", Finite(c.relative_gap)},
                {"gap_found", c.gap_found},
                {"non_metric_merge", c.non_metric_merge}};
  };
  json j{{"left_count", d.left_count},
         {"right_count", d.right_count},
         {"rows", side(d.row_clustering, d.row_large)},
         {"cols", side(d.col_clustering, d.col_large)},
         {"row_representatives", d.row_representatives()},
         {"col_representatives", d.col_representatives()},
         {"densities", MatrixJson(d.densities)},
         {"residual_cut_norm", Finite(d.residual_cut_norm)},
         {"profile_gap", Finite(d.profile_gap)},
         {"large_cell_kernel", KernelJson(d.large_cell_kernel())}};
  return Dump(j);
}

std::string ToJson(FamilyId family, const AccumulationResult& r) {
  json entries = json::array();
  for (const ScanEntry& e : r.entries) {
    entries.push_back({{"q", e.q},
                       {"case_label", e.case_label.label},
                       {"n_row_cells", e.n_row_cells},
                       {"n_col_cells", e.n_col_cells},
                       {"n_large_row_cells", e.n_large_row_cells},
                       {"n_large_col_cells", e.n_large_col_cells},
                       {"residual_cut_norm", Finite(e.residual_cut_norm)},
                       {"d_cut_to_prediction", Finite(e.d_cut_to_prediction)},
                       {"row_gap_found", e.row_gap_found},
                       {"col_gap_found", e.col_gap_found},
                       {"cluster", e.cluster}});
  }
  json clusters = json::array();
  for (const ScanCluster& c : r.clusters) {
    clusters.push_back({{"id", c.id},
                        {"representative_q", c.representative_q},
                        {"members", c.members},
                        {"representative", KernelJson(c.representative)}});
  }
  return Dump({{"family", std::string(FamilyTag(family))},
               {"entries", std::move(entries)},
               {"clusters", std::move(clusters)}});
}

std::string ToJson(const ExpanderReport& r) {
  json probes = json::array();
  for (const ProbeResult& p : r.probes) {
    probes.push_back({{"family", p.family},
                      {"structured", p.structured},
                      {"size_a", p.size_a},
                      {"size_b", p.size_b},
                      {"fraction", Finite(p.fraction)}});
  }
  return Dump({{"morphism", std::string(MorphismTag(r.morphism))},
               {"q", r.q},
               {"quadruple_ratio", r.quadruple_ratio ? json(Finite(*r.quadruple_ratio)) : json(nullptr)},
               {"min_image_fraction", Finite(r.min_image_fraction)},
               {"min_set_size", r.min_set_size},
               {"probe_families", r.probe_families},
               {"probes", std::move(probes)},
               {"verdict", std::string(VerdictName(r.verdict))}});
}

}  // namespace graphonreg
