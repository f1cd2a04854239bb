#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hiercast {

enum class LossKind { Tweedie, MSE };

const char* loss_name(LossKind loss);

// Row-major view over a dense feature matrix. NaN encodes an absent value.
struct DataView {
  const double* data = nullptr;
  std::size_t rows = 0;
  std::size_t cols = 0;

  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

struct GbmParams {
  LossKind loss = LossKind::Tweedie;
  double tweedie_power = 1.5;  // must stay strictly inside (1, 2)
  int rounds = 300;
  double learning_rate = 0.1;
  int max_leaves = 31;
  int min_data_in_leaf = 20;
  int max_bins = 63;  // per-feature histogram bins, capped at 254
  double lambda = 1.0;
  bool goss = false;
  double goss_top_rate = 0.2;
  double goss_other_rate = 0.1;
  std::uint64_t seed = 0;
  int threads = 1;
};

// feature = -1 marks a leaf. Split sends x <= threshold left; absent values
// follow absent_left. Leaf values are raw-scale and unscaled by the learning
// rate, which is applied when trees are summed.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  bool absent_left = false;
  int left = -1;
  int right = -1;
  double value = 0.0;
};

struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  double output(const double* x, std::size_t cols) const;
  std::pair<double, double> leaf_range() const;
};

struct BoostedModel {
  LossKind loss = LossKind::Tweedie;
  double tweedie_power = 1.5;
  double base_score = 0.0;
  double learning_rate = 0.1;
  std::vector<std::string> feature_names;
  std::vector<Tree> trees;
  std::vector<double> train_loss;  // mean training loss after each round

  double raw_score(const double* x) const;
  double predict_one(const double* x) const;  // exp(raw) under Tweedie
  // Reachable raw-score interval: base plus the sum of per-tree leaf extremes.
  std::pair<double, double> raw_bounds() const;
};

// Tweedie negative log-likelihood up to a term constant in mu.
// Throws DomainError when mu <= 0 or p outside (1, 2).
double tweedie_loss(double y, double mu, double p);

// Gradient and hessian of tweedie_loss in the raw score f, mu = exp(f).
// f is clamped to [-30, 30] before exponentiating; the hessian is floored at
// 1e-16 so Newton leaf values stay finite.
std::pair<double, double> tweedie_grad_hess(double y, double f, double p);

struct GossSample {
  std::vector<int> indices;
  std::vector<double> weights;
};

// Keeps the ceil(a*n) largest-|gradient| rows at weight 1 and samples
// ceil(b*n) of the remainder without replacement at weight (1-a)/b.
// Deterministic given the seed. Throws ConfigError unless 0 < a, 0 < b,
// a + b <= 1.
GossSample goss_sample(const std::vector<double>& gradients, double top_rate, double other_rate,
                       std::uint64_t seed);

BoostedModel train(const DataView& matrix, const std::vector<double>& labels,
                   const std::vector<std::string>& feature_names, const GbmParams& params);

std::vector<double> predict(const BoostedModel& model, const DataView& matrix);

// Versioned text format; doubles are written with shortest round-trip
// precision so reloaded models predict bit-identically.
void save_model(const BoostedModel& model, const std::string& path);
BoostedModel load_model(const std::string& path);

}  // namespace hiercast
