#include "graphonreg/bipartite_graph.h"

#include <cmath>
#include <string>

#include "graphonreg/error.h"

namespace graphonreg {
namespace {

void ValidateVertexWeights(const std::optional<std::vector<double>>& weights, Eigen::Index count,
                           const char* side) {
  if (!weights) return;
  if (static_cast<Eigen::Index>(weights->size()) != count) {
    throw ValidationError(std::string(side) + " vertex weights have length " +
                          std::to_string(weights->size()) + ", expected " + std::to_string(count));
  }
  for (double x : *weights) {
    if (!std::isfinite(x) || x < 0.0) {
      throw ValidationError(std::string(side) + " vertex weights must be nonnegative and finite");
    }
  }
}

}  // namespace

BipartiteGraph::BipartiteGraph(Eigen::MatrixXd edge_weights,
                               std::optional<std::vector<double>> left_vertex_weights,
                               std::optional<std::vector<double>> right_vertex_weights)
    : edge_weights_(std::move(edge_weights)),
      left_weights_(std::move(left_vertex_weights)),
      right_weights_(std::move(right_vertex_weights)) {
  if (edge_weights_.rows() < 1 || edge_weights_.cols() < 1) {
    throw ValidationError("bipartite graph needs at least one vertex on each side");
  }
  if (!edge_weights_.allFinite() || edge_weights_.minCoeff() < 0.0) {
    throw ValidationError("edge weights must be nonnegative and finite");
  }
  ValidateVertexWeights(left_weights_, edge_weights_.rows(), "left");
  ValidateVertexWeights(right_weights_, edge_weights_.cols(), "right");
}

long BipartiteGraph::edge_count() const {
  return static_cast<long>((edge_weights_.array() != 0.0).count());
}

bool BipartiteGraph::is_simple() const {
  return ((edge_weights_.array() == 0.0) || (edge_weights_.array() == 1.0)).all();
}

BipartiteGraph BipartiteGraph::transposed() const {
  return BipartiteGraph(edge_weights_.transpose(), right_weights_, left_weights_);
}

}  // namespace graphonreg
