#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "graphonreg/algebraic_regularity.h"
#include "graphonreg/bipartite_graph.h"
#include "graphonreg/expander.h"
#include "graphonreg/families.h"
#include "graphonreg/norms.h"
#include "graphonreg/spectral.h"
#include "graphonreg/step_kernel.h"

namespace graphonreg {

// Serializers emit compact JSON terminated by a newline. Every writer throws
// ValidationError on a non-finite number. Parsers throw ValidationError on
// malformed JSON, missing keys, non-finite numbers or violated invariants.

// {"row_measures": [...], "col_measures": [...], "values": [[...], ...]}
std::string ToJson(const StepKernel& w);
StepKernel StepKernelFromJson(std::string_view text);

// {"value", "witness_rows", "witness_cols", "exact"}
std::string ToJson(const CutNormResult& r);

std::string ToJson(const WeakRegularityResult& r);

struct GraphOrigin {
  FamilyId family;
  std::int64_t q;
};

// {"left_count", "right_count", "edge_count", "edge_weights": [[...]]} plus
// optional vertex weights and "family" / "q" when an origin is given.
std::string ToJson(const BipartiteGraph& g, const std::optional<GraphOrigin>& origin = {});
BipartiteGraph GraphFromJson(std::string_view text);

std::string ToJson(const RegularityDecomposition& d);
std::string ToJson(FamilyId family, const AccumulationResult& r);
std::string ToJson(const ExpanderReport& r);

}  // namespace graphonreg
