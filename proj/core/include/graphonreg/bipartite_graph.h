#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace graphonreg {

// Finite weighted bipartite graph (U, V, E, w). Simple graphs carry 0/1 edge
// weights. Vertex weights are optional; when absent, the weighted graphon
// conversion derives them from edge-weight sums.
class BipartiteGraph {
 public:
  // Throws ValidationError on an empty side, negative or non-finite weights,
  // or vertex-weight vectors of the wrong length.
  explicit BipartiteGraph(Eigen::MatrixXd edge_weights,
                          std::optional<std::vector<double>> left_vertex_weights = {},
                          std::optional<std::vector<double>> right_vertex_weights = {});

  // Simple graph from a boolean adjacency predicate evaluated on every pair.
  template <typename EdgePredicate>
  static BipartiteGraph FromPredicate(int left_count, int right_count, EdgePredicate&& edge) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(left_count, right_count);
    for (int j = 0; j < right_count; ++j) {
      for (int i = 0; i < left_count; ++i) {
        if (edge(i, j)) w(i, j) = 1.0;
      }
    }
    return BipartiteGraph(std::move(w));
  }

  int left_count() const { return static_cast<int>(edge_weights_.rows()); }
  int right_count() const { return static_cast<int>(edge_weights_.cols()); }
  const Eigen::MatrixXd& edge_weights() const { return edge_weights_; }
  const std::optional<std::vector<double>>& left_vertex_weights() const { return left_weights_; }
  const std::optional<std::vector<double>>& right_vertex_weights() const { return right_weights_; }

  // Number of pairs with nonzero weight.
  long edge_count() const;
  // True when every edge weight is 0 or 1.
  bool is_simple() const;

  BipartiteGraph transposed() const;

 private:
  Eigen::MatrixXd edge_weights_;
  std::optional<std::vector<double>> left_weights_;
  std::optional<std::vector<double>> right_weights_;
};

}  // namespace graphonreg
