#include "hiercast/gbm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "hiercast/errors.hpp"
#include "hiercast/parallel.hpp"
#include "hiercast/rng.hpp"
#include "hiercast/util.hpp"

namespace hiercast {

namespace {
constexpr const char* kModule = "gbm";
constexpr int kMissingBin = 255;
constexpr double kMinGain = 1e-12;
constexpr double kHessFloor = 1e-16;
constexpr double kScoreClamp = 30.0;

struct FeatureBins {
  // upper[i] is the inclusive upper edge of bin i; the last edge is +inf.
  std::vector<double> upper;

  int count() const { return static_cast<int>(upper.size()); }
  int bin_of(double x) const {
    auto it = std::lower_bound(upper.begin(), upper.end(), x);
    return it == upper.end() ? count() - 1 : static_cast<int>(it - upper.begin());
  }
};

// Quantile bins over the finite values of one feature. Each distinct value
// gets its own bin whenever that fits, which makes the histogram split search
// coincide with exhaustive search on small data.
FeatureBins make_bins(std::vector<double> vals, int max_bins) {
  FeatureBins bins;
  if (vals.empty()) return bins;
  std::sort(vals.begin(), vals.end());
  std::vector<std::pair<double, int>> distinct;
  for (double v : vals) {
    if (distinct.empty() || distinct.back().first != v)
      distinct.emplace_back(v, 1);
    else
      ++distinct.back().second;
  }
  const double inf = std::numeric_limits<double>::infinity();
  if (static_cast<int>(distinct.size()) <= max_bins) {
    for (std::size_t i = 0; i + 1 < distinct.size(); ++i)
      bins.upper.push_back((distinct[i].first + distinct[i + 1].first) / 2.0);
    bins.upper.push_back(inf);
    return bins;
  }
  const double per_bin = static_cast<double>(vals.size()) / max_bins;
  double cut = per_bin;
  int acc = 0;
  for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
    acc += distinct[i].second;
    if (acc >= cut - 1e-9 && static_cast<int>(bins.upper.size()) < max_bins - 1) {
      bins.upper.push_back((distinct[i].first + distinct[i + 1].first) / 2.0);
      cut = acc + per_bin;
    }
  }
  bins.upper.push_back(inf);
  return bins;
}

struct HistEntry {
  double g = 0.0;
  double h = 0.0;
  int count = 0;
};

struct SplitInfo {
  double gain = 0.0;
  int feature = -1;
  int bin = -1;
  bool absent_left = false;
  double threshold = 0.0;
};

struct BuildNode {
  std::vector<int> rows;
  std::vector<HistEntry> hist;
  double g = 0.0;
  double h = 0.0;
  int tree_node = -1;
  SplitInfo best;
};

std::pair<double, double> mse_grad_hess(double y, double f) { return {f - y, 1.0}; }

class Trainer {
 public:
  Trainer(const DataView& X, const std::vector<double>& y, std::vector<std::string> names,
          const GbmParams& params)
      : X_(X), y_(y), params_(params), threads_(resolve_threads(params.threads)) {
    model_.loss = params.loss;
    model_.tweedie_power = params.tweedie_power;
    model_.learning_rate = params.learning_rate;
    model_.feature_names = std::move(names);
  }

  BoostedModel run() {
    const std::size_t n = X_.rows;
    double mean = 0.0;
    for (double v : y_) mean += v;
    mean /= static_cast<double>(n);
    model_.base_score = params_.loss == LossKind::Tweedie ? std::log(mean + 1e-9) : mean;

    bin_features();
    f_.assign(n, model_.base_score);
    grad_.resize(n);
    hess_.resize(n);
    wg_.resize(n);
    wh_.resize(n);

    for (int round = 0; round < params_.rounds; ++round) {
      compute_gradients();
      std::vector<int> rows;
      if (params_.goss) {
        GossSample s = goss_sample(grad_, params_.goss_top_rate, params_.goss_other_rate,
                                   mix_seed(params_.seed, static_cast<std::uint64_t>(round)));
        rows = std::move(s.indices);
        for (std::size_t i = 0; i < rows.size(); ++i) {
          const int r = rows[i];
          wg_[static_cast<std::size_t>(r)] = s.weights[i] * grad_[static_cast<std::size_t>(r)];
          wh_[static_cast<std::size_t>(r)] = s.weights[i] * hess_[static_cast<std::size_t>(r)];
        }
      } else {
        rows.resize(n);
        for (std::size_t i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = static_cast<int>(i);
        wg_ = grad_;
        wh_ = hess_;
      }
      Tree tree = grow_tree(std::move(rows));
      apply_tree(tree);
      model_.trees.push_back(std::move(tree));
      model_.train_loss.push_back(mean_loss());
    }
    return std::move(model_);
  }

 private:
  void bin_features() {
    const std::size_t k = X_.cols;
    bins_.resize(k);
    parallel_for(k, threads_, [&](std::size_t b, std::size_t e) {
      for (std::size_t j = b; j < e; ++j) {
        std::vector<double> vals;
        vals.reserve(X_.rows);
        for (std::size_t r = 0; r < X_.rows; ++r) {
          const double v = X_.at(r, j);
          if (!std::isnan(v)) vals.push_back(v);
        }
        bins_[j] = make_bins(std::move(vals), std::min(params_.max_bins, 254));
      }
    });
    hist_offset_.resize(k + 1);
    hist_offset_[0] = 0;
    for (std::size_t j = 0; j < k; ++j)
      hist_offset_[j + 1] = hist_offset_[j] + static_cast<std::size_t>(bins_[j].count()) + 1;
    binned_.resize(X_.rows * k);
    parallel_for(k, threads_, [&](std::size_t b, std::size_t e) {
      for (std::size_t j = b; j < e; ++j)
        for (std::size_t r = 0; r < X_.rows; ++r) {
          const double v = X_.at(r, j);
          binned_[r * k + j] = std::isnan(v) || bins_[j].count() == 0
                                   ? static_cast<std::uint8_t>(kMissingBin)
                                   : static_cast<std::uint8_t>(bins_[j].bin_of(v));
        }
    });
  }

  void compute_gradients() {
    parallel_for(X_.rows, threads_, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        auto [g, h] = params_.loss == LossKind::Tweedie
                          ? tweedie_grad_hess(y_[i], f_[i], params_.tweedie_power)
                          : mse_grad_hess(y_[i], f_[i]);
        grad_[i] = g;
        hess_[i] = h;
      }
    });
  }

  void build_hist(BuildNode& node) const {
    node.hist.assign(hist_offset_.back(), HistEntry{});
    const std::size_t k = X_.cols;
    parallel_for(k, threads_, [&](std::size_t b, std::size_t e) {
      for (std::size_t j = b; j < e; ++j) {
        HistEntry* slice = node.hist.data() + hist_offset_[j];
        const int missing_slot = bins_[j].count();
        for (int r : node.rows) {
          const std::uint8_t bin = binned_[static_cast<std::size_t>(r) * k + j];
          HistEntry& ent = slice[bin == kMissingBin ? missing_slot : bin];
          ent.g += wg_[static_cast<std::size_t>(r)];
          ent.h += wh_[static_cast<std::size_t>(r)];
          ++ent.count;
        }
      }
    });
  }

  void node_sums(BuildNode& node) const {
    node.g = 0.0;
    node.h = 0.0;
    for (int r : node.rows) {
      node.g += wg_[static_cast<std::size_t>(r)];
      node.h += wh_[static_cast<std::size_t>(r)];
    }
  }

  void find_best(BuildNode& node) const {
    node.best = SplitInfo{};
    const double lam = params_.lambda;
    auto score = [lam](double g, double h) { return g * g / (h + lam); };
    const double parent = score(node.g, node.h);
    const int total = static_cast<int>(node.rows.size());
    for (std::size_t j = 0; j < X_.cols; ++j) {
      const int nb = bins_[j].count();
      if (nb < 2 && (nb < 1 || node.hist[hist_offset_[j] + static_cast<std::size_t>(nb)].count == 0))
        continue;
      const HistEntry* slice = node.hist.data() + hist_offset_[j];
      const HistEntry& missing = slice[nb];
      // Pass 1: absent values go right. Pass 2 (only when absent values are
      // present): absent values go left.
      for (int pass = 0; pass < (missing.count > 0 ? 2 : 1); ++pass) {
        const bool absent_left = pass == 1;
        double gl = absent_left ? missing.g : 0.0;
        double hl = absent_left ? missing.h : 0.0;
        int cl = absent_left ? missing.count : 0;
        for (int i = 0; i + 1 < nb || (i < nb && !absent_left && missing.count > 0); ++i) {
          gl += slice[i].g;
          hl += slice[i].h;
          cl += slice[i].count;
          const int cr = total - cl;
          if (cl < params_.min_data_in_leaf || cr < params_.min_data_in_leaf) continue;
          const double gain = score(gl, hl) + score(node.g - gl, node.h - hl) - parent;
          if (gain > node.best.gain) {
            node.best.gain = gain;
            node.best.feature = static_cast<int>(j);
            node.best.bin = i;
            node.best.absent_left = absent_left;
            node.best.threshold = bins_[j].upper[static_cast<std::size_t>(i)];
          }
        }
      }
    }
  }

  Tree grow_tree(std::vector<int> root_rows) {
    Tree tree;
    tree.nodes.push_back(TreeNode{});
    std::vector<BuildNode> nodes;
    nodes.reserve(static_cast<std::size_t>(2 * params_.max_leaves));
    {
      BuildNode root;
      root.rows = std::move(root_rows);
      root.tree_node = 0;
      node_sums(root);
      build_hist(root);
      find_best(root);
      nodes.push_back(std::move(root));
    }
    std::vector<std::size_t> open = {0};
    int leaves = 1;
    while (leaves < params_.max_leaves) {
      std::size_t pick = open.size();
      for (std::size_t oi = 0; oi < open.size(); ++oi) {
        const BuildNode& cand = nodes[open[oi]];
        if (cand.best.gain <= kMinGain) continue;
        if (pick == open.size() || cand.best.gain > nodes[open[pick]].best.gain ||
            (cand.best.gain == nodes[open[pick]].best.gain &&
             cand.tree_node < nodes[open[pick]].tree_node))
          pick = oi;
      }
      if (pick == open.size()) break;
      const std::size_t pi = open[pick];
      open.erase(open.begin() + static_cast<std::ptrdiff_t>(pick));
      const SplitInfo split = nodes[pi].best;

      BuildNode lnode, rnode;
      const std::size_t k = X_.cols;
      for (int r : nodes[pi].rows) {
        const std::uint8_t bin =
            binned_[static_cast<std::size_t>(r) * k + static_cast<std::size_t>(split.feature)];
        const bool left = bin == kMissingBin ? split.absent_left : bin <= split.bin;
        (left ? lnode : rnode).rows.push_back(r);
      }
      node_sums(lnode);
      node_sums(rnode);
      // Scan the smaller child; derive the larger one from the parent by
      // subtraction.
      BuildNode& small = lnode.rows.size() <= rnode.rows.size() ? lnode : rnode;
      BuildNode& big = lnode.rows.size() <= rnode.rows.size() ? rnode : lnode;
      build_hist(small);
      big.hist = std::move(nodes[pi].hist);
      for (std::size_t i = 0; i < big.hist.size(); ++i) {
        big.hist[i].g -= small.hist[i].g;
        big.hist[i].h -= small.hist[i].h;
        big.hist[i].count -= small.hist[i].count;
      }
      find_best(lnode);
      find_best(rnode);

      const int parent_tn = nodes[pi].tree_node;
      lnode.tree_node = static_cast<int>(tree.nodes.size());
      tree.nodes.push_back(TreeNode{});
      rnode.tree_node = static_cast<int>(tree.nodes.size());
      tree.nodes.push_back(TreeNode{});
      TreeNode& tn = tree.nodes[static_cast<std::size_t>(parent_tn)];
      tn.feature = split.feature;
      tn.threshold = split.threshold;
      tn.absent_left = split.absent_left;
      tn.left = lnode.tree_node;
      tn.right = rnode.tree_node;

      nodes[pi] = BuildNode{};  // release rows and histogram
      open.push_back(nodes.size());
      nodes.push_back(std::move(lnode));
      open.push_back(nodes.size());
      nodes.push_back(std::move(rnode));
      ++leaves;
    }
    for (std::size_t oi : open) {
      const BuildNode& leaf = nodes[oi];
      tree.nodes[static_cast<std::size_t>(leaf.tree_node)].value =
          -leaf.g / (leaf.h + params_.lambda);
    }
    return tree;
  }

  void apply_tree(const Tree& tree) {
    parallel_for(X_.rows, threads_, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i)
        f_[i] += params_.learning_rate * tree.output(X_.data + i * X_.cols, X_.cols);
    });
  }

  double mean_loss() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < X_.rows; ++i) {
      if (params_.loss == LossKind::Tweedie) {
        const double f = std::clamp(f_[i], -kScoreClamp, kScoreClamp);
        acc += tweedie_loss(y_[i], std::exp(f), params_.tweedie_power);
      } else {
        acc += (y_[i] - f_[i]) * (y_[i] - f_[i]);
      }
    }
    return acc / static_cast<double>(X_.rows);
  }

  const DataView& X_;
  const std::vector<double>& y_;
  GbmParams params_;
  int threads_;
  BoostedModel model_;
  std::vector<FeatureBins> bins_;
  std::vector<std::uint8_t> binned_;
  std::vector<std::size_t> hist_offset_;
  std::vector<double> f_, grad_, hess_, wg_, wh_;
};

void validate_params(const GbmParams& p) {
  if (p.rounds < 1) throw ConfigError(kModule, "rounds must be >= 1");
  if (!(p.learning_rate > 0.0 && p.learning_rate <= 1.0))
    throw ConfigError(kModule, "learning_rate must be in (0, 1]");
  if (p.max_leaves < 1) throw ConfigError(kModule, "max_leaves must be >= 1");
  if (p.min_data_in_leaf < 1) throw ConfigError(kModule, "min_data_in_leaf must be >= 1");
  if (p.max_bins < 2) throw ConfigError(kModule, "max_bins must be >= 2");
  if (p.lambda < 0.0) throw ConfigError(kModule, "lambda must be >= 0");
  if (p.loss == LossKind::Tweedie && !(p.tweedie_power > 1.0 && p.tweedie_power < 2.0))
    throw ConfigError(kModule, "tweedie_power must be strictly inside (1, 2)");
  if (p.goss) {
    if (!(p.goss_top_rate > 0.0) || !(p.goss_other_rate > 0.0) ||
        p.goss_top_rate + p.goss_other_rate > 1.0)
      throw ConfigError(kModule, "goss rates must satisfy 0 < a, 0 < b, a + b <= 1");
  }
}
}  // namespace

const char* loss_name(LossKind loss) { return loss == LossKind::Tweedie ? "tweedie" : "mse"; }

double Tree::output(const double* x, std::size_t cols) const {
  (void)cols;
  int i = 0;
  while (nodes[static_cast<std::size_t>(i)].feature >= 0) {
    const TreeNode& n = nodes[static_cast<std::size_t>(i)];
    const double v = x[static_cast<std::size_t>(n.feature)];
    const bool left = std::isnan(v) ? n.absent_left : v <= n.threshold;
    i = left ? n.left : n.right;
  }
  return nodes[static_cast<std::size_t>(i)].value;
}

std::pair<double, double> Tree::leaf_range() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const TreeNode& n : nodes)
    if (n.feature < 0) {
      lo = std::min(lo, n.value);
      hi = std::max(hi, n.value);
    }
  return {lo, hi};
}

double BoostedModel::raw_score(const double* x) const {
  double raw = base_score;
  for (const Tree& t : trees) raw += learning_rate * t.output(x, feature_names.size());
  return raw;
}

double BoostedModel::predict_one(const double* x) const {
  const double raw = raw_score(x);
  return loss == LossKind::Tweedie ? std::exp(raw) : raw;
}

std::pair<double, double> BoostedModel::raw_bounds() const {
  double lo = base_score;
  double hi = base_score;
  for (const Tree& t : trees) {
    auto [tl, th] = t.leaf_range();
    lo += learning_rate * tl;
    hi += learning_rate * th;
  }
  return {lo, hi};
}

double tweedie_loss(double y, double mu, double p) {
  if (!(p > 1.0 && p < 2.0)) throw DomainError(kModule, "power must be strictly inside (1, 2)");
  if (!(mu > 0.0)) throw DomainError(kModule, "mu must be positive");
  if (y < 0.0) throw DomainError(kModule, "y must be non-negative");
  return -y * std::pow(mu, 1.0 - p) / (1.0 - p) + std::pow(mu, 2.0 - p) / (2.0 - p);
}

std::pair<double, double> tweedie_grad_hess(double y, double f, double p) {
  if (!(p > 1.0 && p < 2.0)) throw DomainError(kModule, "power must be strictly inside (1, 2)");
  f = std::clamp(f, -kScoreClamp, kScoreClamp);
  const double e1 = std::exp((1.0 - p) * f);
  const double e2 = std::exp((2.0 - p) * f);
  const double grad = -y * e1 + e2;
  const double hess = std::max(-y * (1.0 - p) * e1 + (2.0 - p) * e2, kHessFloor);
  return {grad, hess};
}

GossSample goss_sample(const std::vector<double>& gradients, double top_rate, double other_rate,
                       std::uint64_t seed) {
  if (!(top_rate > 0.0) || !(other_rate > 0.0) || top_rate + other_rate > 1.0)
    throw ConfigError(kModule, "goss rates must satisfy 0 < a, 0 < b, a + b <= 1");
  const int n = static_cast<int>(gradients.size());
  const int n_top = std::min(n, static_cast<int>(std::ceil(top_rate * n)));
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::fabs(gradients[static_cast<std::size_t>(a)]) >
           std::fabs(gradients[static_cast<std::size_t>(b)]);
  });
  std::vector<int> rest(order.begin() + n_top, order.end());
  std::sort(rest.begin(), rest.end());
  const int n_other = std::min(static_cast<int>(rest.size()),
                               static_cast<int>(std::ceil(other_rate * n)));
  Rng rng(seed);
  for (int i = 0; i < n_other; ++i) {
    const std::uint64_t j =
        static_cast<std::uint64_t>(i) + rng.next_below(static_cast<std::uint64_t>(rest.size() - static_cast<std::size_t>(i)));
    std::swap(rest[static_cast<std::size_t>(i)], rest[static_cast<std::size_t>(j)]);
  }

  GossSample out;
  const double other_weight = (1.0 - top_rate) / other_rate;
  std::vector<std::pair<int, double>> picked;
  picked.reserve(static_cast<std::size_t>(n_top + n_other));
  for (int i = 0; i < n_top; ++i) picked.emplace_back(order[static_cast<std::size_t>(i)], 1.0);
  for (int i = 0; i < n_other; ++i)
    picked.emplace_back(rest[static_cast<std::size_t>(i)], other_weight);
  std::sort(picked.begin(), picked.end());
  for (auto& [idx, w] : picked) {
    out.indices.push_back(idx);
    out.weights.push_back(w);
  }
  return out;
}

BoostedModel train(const DataView& matrix, const std::vector<double>& labels,
                   const std::vector<std::string>& feature_names, const GbmParams& params) {
  validate_params(params);
  if (matrix.rows != labels.size())
    throw ShapeError(kModule, "matrix rows " + std::to_string(matrix.rows) +
                                  " != label count " + std::to_string(labels.size()));
  if (matrix.rows == 0) throw DataError(kModule, "empty training set");
  if (feature_names.size() != matrix.cols)
    throw ShapeError(kModule, "feature name count does not match matrix columns");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!std::isfinite(labels[i]))
      throw DataError(kModule, "non-finite label at row " + std::to_string(i));
    if (params.loss == LossKind::Tweedie && labels[i] < 0.0)
      throw DataError(kModule, "negative label at row " + std::to_string(i) +
                                   " is invalid under the tweedie loss");
  }
  for (std::size_t i = 0; i < matrix.rows * matrix.cols; ++i)
    if (std::isinf(matrix.data[i]))
      throw DataError(kModule, "infinite feature value at flat index " + std::to_string(i));

  Trainer trainer(matrix, labels, feature_names, params);
  return trainer.run();
}

std::vector<double> predict(const BoostedModel& model, const DataView& matrix) {
  if (matrix.cols != model.feature_names.size())
    throw ShapeError(kModule, "matrix has " + std::to_string(matrix.cols) +
                                  " features but the model expects " +
                                  std::to_string(model.feature_names.size()));
  std::vector<double> out(matrix.rows);
  for (std::size_t i = 0; i < matrix.rows; ++i)
    out[i] = model.predict_one(matrix.data + i * matrix.cols);
  return out;
}

void save_model(const BoostedModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError(kModule, "cannot open " + path + " for writing");
  out << "hiercast_gbm 1\n";
  out << "loss " << loss_name(model.loss) << "\n";
  out << "power " << fmt_double(model.tweedie_power) << "\n";
  out << "base_score " << fmt_double(model.base_score) << "\n";
  out << "learning_rate " << fmt_double(model.learning_rate) << "\n";
  out << "features " << model.feature_names.size();
  for (const std::string& name : model.feature_names) {
    if (name.find_first_of(" \t\n") != std::string::npos)
      throw ValueError(kModule, "feature name '" + name + "' contains whitespace");
    out << " " << name;
  }
  out << "\n";
  out << "trees " << model.trees.size() << "\n";
  for (const Tree& tree : model.trees) {
    out << "tree " << tree.nodes.size() << "\n";
    for (const TreeNode& n : tree.nodes)
      out << "node " << n.feature << " " << fmt_double(n.threshold) << " "
          << (n.absent_left ? 1 : 0) << " " << n.left << " " << n.right << " "
          << fmt_double(n.value) << "\n";
  }
  out << "train_loss " << model.train_loss.size();
  for (double v : model.train_loss) out << " " << fmt_double(v);
  out << "\n";
  out << "end\n";
  if (!out) throw IoError(kModule, "write failure on " + path);
}

BoostedModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(kModule, "cannot open " + path);
  auto next = [&in, &path]() {
    std::string tok;
    if (!(in >> tok)) throw SchemaError(kModule, path + ": truncated model file");
    return tok;
  };
  auto next_int = [&next, &path]() {
    auto v = parse_int(next());
    if (!v) throw SchemaError(kModule, path + ": expected an integer");
    return *v;
  };
  auto next_real = [&next, &path]() {
    auto v = parse_real(next());
    if (!v) throw SchemaError(kModule, path + ": expected a number");
    return *v;
  };
  auto expect = [&next, &path](const std::string& word) {
    if (next() != word) throw SchemaError(kModule, path + ": expected '" + word + "'");
  };

  expect("hiercast_gbm");
  if (next_int() != 1) throw SchemaError(kModule, path + ": unsupported model version");
  BoostedModel model;
  expect("loss");
  const std::string loss = next();
  if (loss == "tweedie")
    model.loss = LossKind::Tweedie;
  else if (loss == "mse")
    model.loss = LossKind::MSE;
  else
    throw SchemaError(kModule, path + ": unknown loss '" + loss + "'");
  expect("power");
  model.tweedie_power = next_real();
  expect("base_score");
  model.base_score = next_real();
  expect("learning_rate");
  model.learning_rate = next_real();
  expect("features");
  const long long nf = next_int();
  model.feature_names.resize(static_cast<std::size_t>(nf));
  for (auto& name : model.feature_names) name = next();
  expect("trees");
  const long long nt = next_int();
  model.trees.resize(static_cast<std::size_t>(nt));
  for (auto& tree : model.trees) {
    expect("tree");
    const long long nn = next_int();
    tree.nodes.resize(static_cast<std::size_t>(nn));
    for (auto& n : tree.nodes) {
      expect("node");
      n.feature = static_cast<int>(next_int());
      n.threshold = next_real();
      n.absent_left = next_int() != 0;
      n.left = static_cast<int>(next_int());
      n.right = static_cast<int>(next_int());
      n.value = next_real();
    }
  }
  expect("train_loss");
  const long long nl = next_int();
  model.train_loss.resize(static_cast<std::size_t>(nl));
  for (auto& v : model.train_loss) v = next_real();
  expect("end");
  return model;
}

}  // namespace hiercast
