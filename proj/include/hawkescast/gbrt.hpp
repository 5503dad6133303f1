#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace hawkescast {

struct GbrtConfig {
  int n_trees = 200;
  int max_depth = 6;
  double learning_rate = 0.1;
  int min_samples_leaf = 5;
  int n_bins = 64;
};

/// Gradient-boosted regression trees with squared-error loss on the given
/// target. Histogram-based greedy splits; deterministic given (data, config).
class TreeEnsembleRegressor {
 public:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;  // leaf contribution (already learning-rate scaled)
  };

  TreeEnsembleRegressor() = default;
  explicit TreeEnsembleRegressor(GbrtConfig config) : config_(config) {}

  void fit(const std::vector<std::vector<double>>& rows, const std::vector<double>& targets);

  double predict(std::span<const double> features) const;

  /// True when the training target was (numerically) constant; the model then
  /// degenerates to a constant predictor.
  bool is_constant() const { return constant_; }
  bool trained() const { return trained_; }
  std::size_t n_features() const { return n_features_; }

  nlohmann::json to_json() const;
  static TreeEnsembleRegressor from_json(const nlohmann::json& j);

 private:
  GbrtConfig config_;
  double base_score_ = 0.0;
  std::vector<std::vector<Node>> trees_;
  std::size_t n_features_ = 0;
  bool constant_ = false;
  bool trained_ = false;
};

}  // namespace hawkescast
