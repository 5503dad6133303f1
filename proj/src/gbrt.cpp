#include "hawkescast/gbrt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace hawkescast {

namespace {

// Per-feature quantile bin edges; values <= edge[k] map to bin k.
std::vector<double> bin_edges(std::vector<double> values, int n_bins) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  const std::size_t n_unique = values.size();
  std::vector<double> edges;
  if (n_unique <= 1) return edges;
  const std::size_t n_edges = std::min<std::size_t>(static_cast<std::size_t>(n_bins) - 1,
                                                    n_unique - 1);
  for (std::size_t k = 1; k <= n_edges; ++k) {
    const std::size_t idx = k * n_unique / (n_edges + 1);
    const std::size_t lo = std::min(idx, n_unique - 2);
    edges.push_back(0.5 * (values[lo] + values[lo + 1]));
  }
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

std::uint8_t bin_of(double v, const std::vector<double>& edges) {
  const auto it = std::upper_bound(edges.begin(), edges.end(), v);
  return static_cast<std::uint8_t>(it - edges.begin());
}

struct HistCell {
  double count = 0.0;
  double sum = 0.0;
};

}  // namespace

void TreeEnsembleRegressor::fit(const std::vector<std::vector<double>>& rows,
                                const std::vector<double>& targets) {
  if (rows.empty()) throw std::invalid_argument("TreeEnsembleRegressor: empty training set");
  if (rows.size() != targets.size())
    throw std::invalid_argument("TreeEnsembleRegressor: rows/targets size mismatch");
  const std::size_t n = rows.size();
  n_features_ = rows[0].size();
  trees_.clear();

  base_score_ = std::accumulate(targets.begin(), targets.end(), 0.0) / static_cast<double>(n);
  double spread = 0.0;
  for (double t : targets) spread = std::max(spread, std::abs(t - base_score_));
  constant_ = spread < 1e-12;
  trained_ = true;
  if (constant_) return;

  // Column-major binned copy of the data.
  std::vector<std::vector<double>> edges(n_features_);
  std::vector<std::vector<std::uint8_t>> codes(n_features_, std::vector<std::uint8_t>(n));
  std::vector<std::vector<double>> raw(n_features_, std::vector<double>(n));
  for (std::size_t f = 0; f < n_features_; ++f) {
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = rows[i][f];
    raw[f] = col;
    edges[f] = bin_edges(col, config_.n_bins);
    for (std::size_t i = 0; i < n; ++i) codes[f][i] = bin_of(col[i], edges[f]);
  }

  std::vector<double> residual(targets);
  for (auto& r : residual) r -= base_score_;

  std::vector<std::size_t> order(n);
  std::vector<HistCell> hist;

  for (int round = 0; round < config_.n_trees; ++round) {
    std::iota(order.begin(), order.end(), 0);
    std::vector<Node> tree;
    tree.push_back({});
    // Frontier entries: (node index, [begin, end) into order, depth).
    struct Work {
      int node;
      std::size_t begin, end;
      int depth;
    };
    std::vector<Work> stack{{0, 0, n, 0}};
    while (!stack.empty()) {
      const Work w = stack.back();
      stack.pop_back();
      const std::size_t cnt = w.end - w.begin;
      double sum = 0.0;
      for (std::size_t i = w.begin; i < w.end; ++i) sum += residual[order[i]];
      const double mean = sum / static_cast<double>(cnt);

      int best_f = -1;
      int best_bin = -1;
      double best_gain = 1e-12;
      const double parent_score = sum * sum / static_cast<double>(cnt);
      if (w.depth < config_.max_depth &&
          cnt >= 2 * static_cast<std::size_t>(config_.min_samples_leaf)) {
        for (std::size_t f = 0; f < n_features_; ++f) {
          if (edges[f].empty()) continue;
          const std::size_t nb = edges[f].size() + 1;
          hist.assign(nb, {});
          for (std::size_t i = w.begin; i < w.end; ++i) {
            const auto idx = order[i];
            auto& cell = hist[codes[f][idx]];
            cell.count += 1.0;
            cell.sum += residual[idx];
          }
          double cl = 0.0, sl = 0.0;
          for (std::size_t b = 0; b + 1 < nb; ++b) {
            cl += hist[b].count;
            sl += hist[b].sum;
            const double cr = static_cast<double>(cnt) - cl;
            if (cl < config_.min_samples_leaf || cr < config_.min_samples_leaf) continue;
            const double sr = sum - sl;
            const double gain = sl * sl / cl + sr * sr / cr - parent_score;
            if (gain > best_gain) {
              best_gain = gain;
              best_f = static_cast<int>(f);
              best_bin = static_cast<int>(b);
            }
          }
        }
      }

      if (best_f < 0) {
        tree[static_cast<std::size_t>(w.node)].value = config_.learning_rate * mean;
        continue;
      }

      const double thr = edges[static_cast<std::size_t>(best_f)][static_cast<std::size_t>(best_bin)];
      const auto mid = std::stable_partition(
          order.begin() + static_cast<std::ptrdiff_t>(w.begin),
          order.begin() + static_cast<std::ptrdiff_t>(w.end),
          [&](std::size_t idx) { return raw[static_cast<std::size_t>(best_f)][idx] <= thr; });
      const auto split_at = static_cast<std::size_t>(mid - order.begin());

      const int left = static_cast<int>(tree.size());
      tree.push_back({});
      const int right = static_cast<int>(tree.size());
      tree.push_back({});
      auto& node = tree[static_cast<std::size_t>(w.node)];
      node.feature = best_f;
      node.threshold = thr;
      node.left = left;
      node.right = right;
      stack.push_back({right, split_at, w.end, w.depth + 1});
      stack.push_back({left, w.begin, split_at, w.depth + 1});
    }

    // Update residuals with this tree's predictions.
    for (std::size_t i = 0; i < n; ++i) {
      int node = 0;
      while (tree[static_cast<std::size_t>(node)].feature >= 0) {
        const auto& nd = tree[static_cast<std::size_t>(node)];
        node = raw[static_cast<std::size_t>(nd.feature)][i] <= nd.threshold ? nd.left : nd.right;
      }
      residual[i] -= tree[static_cast<std::size_t>(node)].value;
    }
    trees_.push_back(std::move(tree));
  }
}

double TreeEnsembleRegressor::predict(std::span<const double> features) const {
  if (!trained_) throw std::logic_error("TreeEnsembleRegressor: predict before fit");
  if (features.size() != n_features_)
    throw std::invalid_argument("TreeEnsembleRegressor: feature dimension mismatch");
  double out = base_score_;
  for (const auto& tree : trees_) {
    int node = 0;
    while (tree[static_cast<std::size_t>(node)].feature >= 0) {
      const auto& nd = tree[static_cast<std::size_t>(node)];
      node = features[static_cast<std::size_t>(nd.feature)] <= nd.threshold ? nd.left : nd.right;
    }
    out += tree[static_cast<std::size_t>(node)].value;
  }
  return out;
}

nlohmann::json TreeEnsembleRegressor::to_json() const {
  nlohmann::json j;
  j["base_score"] = base_score_;
  j["n_features"] = n_features_;
  j["constant"] = constant_;
  j["config"] = {{"n_trees", config_.n_trees},
                 {"max_depth", config_.max_depth},
                 {"learning_rate", config_.learning_rate},
                 {"min_samples_leaf", config_.min_samples_leaf},
                 {"n_bins", config_.n_bins}};
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& tree : trees_) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& nd : tree) {
      nodes.push_back({nd.feature, nd.threshold, nd.left, nd.right, nd.value});
    }
    trees.push_back(std::move(nodes));
  }
  j["trees"] = std::move(trees);
  return j;
}

TreeEnsembleRegressor TreeEnsembleRegressor::from_json(const nlohmann::json& j) {
  TreeEnsembleRegressor model;
  model.base_score_ = j.at("base_score").get<double>();
  model.n_features_ = j.at("n_features").get<std::size_t>();
  model.constant_ = j.at("constant").get<bool>();
  const auto& c = j.at("config");
  model.config_ = {c.at("n_trees").get<int>(), c.at("max_depth").get<int>(),
                   c.at("learning_rate").get<double>(), c.at("min_samples_leaf").get<int>(),
                   c.at("n_bins").get<int>()};
  for (const auto& tree : j.at("trees")) {
    std::vector<Node> nodes;
    for (const auto& nd : tree) {
      nodes.push_back({nd.at(0).get<int>(), nd.at(1).get<double>(), nd.at(2).get<int>(),
                       nd.at(3).get<int>(), nd.at(4).get<double>()});
    }
    model.trees_.push_back(std::move(nodes));
  }
  model.trained_ = true;
  return model;
}

}  // namespace hawkescast
