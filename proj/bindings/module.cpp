#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hiercast/cli.hpp"
#include "hiercast/decompose.hpp"
#include "hiercast/evaluate.hpp"
#include "hiercast/gbm.hpp"
#include "hiercast/pipeline.hpp"

namespace py = pybind11;

namespace {

using Matrix = py::array_t<double, py::array::c_style | py::array::forcecast>;

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

// Borrowed view; the caller keeps the array alive for the duration of the call.
hiercast::DataView view_of(const Matrix& x) {
  if (x.ndim() != 2) throw py::value_error("feature matrix must be 2-dimensional");
  hiercast::DataView view;
  view.data = x.data();
  view.rows = static_cast<std::size_t>(x.shape(0));
  view.cols = static_cast<std::size_t>(x.shape(1));
  return view;
}

hiercast::LossKind loss_from_name(const std::string& name) {
  if (name == "tweedie") return hiercast::LossKind::Tweedie;
  if (name == "mse") return hiercast::LossKind::MSE;
  throw py::value_error("loss must be 'tweedie' or 'mse', got '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Hierarchical retail demand forecasting kernels: trend/seasonality "
      "decomposition, Tweedie gradient boosting, proportional allocation, "
      "and the command line front end.";
  m.attr("__version__") = "0.1.0";

  m.def("tweedie_loss", &hiercast::tweedie_loss, py::arg("y"), py::arg("mu"), py::arg("p"),
        "Tweedie negative log-likelihood up to a term constant in mu; "
        "requires mu > 0 and 1 < p < 2.");

  m.def("tweedie_grad_hess", &hiercast::tweedie_grad_hess, py::arg("y"), py::arg("f"),
        py::arg("p"),
        "Gradient and hessian of the Tweedie loss in the raw score f, mu = exp(f).");

  m.def(
      "decompose",
      [](const std::vector<double>& series, int period,
         const std::map<int, std::string>& holiday_labels) {
        const hiercast::Components c = hiercast::decompose(series, period, holiday_labels);
        py::dict out;
        out["trend"] = to_array(c.trend);
        out["seasonal"] = to_array(c.seasonal);
        out["holiday"] = to_array(c.holiday);
        out["residual"] = to_array(c.residual);
        return out;
      },
      py::arg("series"), py::arg("period") = 7,
      py::arg("holiday_labels") = std::map<int, std::string>{},
      "Additive decomposition Y = T + S + H + R; holiday_labels maps 1-based "
      "day indices to event labels.");

  m.def(
      "strength_scores",
      [](const std::vector<double>& series, int period,
         const std::map<int, std::string>& holiday_labels) {
        const hiercast::Components c = hiercast::decompose(series, period, holiday_labels);
        const hiercast::StrengthScores s = hiercast::strength_scores(c);
        py::dict out;
        out["trend_score"] = s.trend_score;
        out["seasonality_score"] = s.seasonality_score;
        out["group"] = std::string(hiercast::group_name(s.group));
        return out;
      },
      py::arg("series"), py::arg("period") = 7,
      py::arg("holiday_labels") = std::map<int, std::string>{},
      "Variance-ratio strength scores in [0, 1] plus the resulting group label.");

  m.def(
      "allocate",
      [](const std::vector<double>& weights, double total) {
        return to_array(hiercast::allocate(weights, total));
      },
      py::arg("weights"), py::arg("total"),
      "Proportional split of total over non-negative weights; zero weight "
      "mass degrades to a uniform split.");

  m.def("rmsse", &hiercast::rmsse, py::arg("train"), py::arg("actual"), py::arg("forecast"),
        "Root mean squared scaled error of a forecast against the naive "
        "one-step denominator from the training period.");

  py::class_<hiercast::BoostedModel>(m, "GbmModel",
                                     "Trained gradient boosted tree ensemble.")
      .def_readonly("feature_names", &hiercast::BoostedModel::feature_names)
      .def_readonly("train_loss", &hiercast::BoostedModel::train_loss)
      .def_readonly("base_score", &hiercast::BoostedModel::base_score)
      .def_property_readonly("loss",
                             [](const hiercast::BoostedModel& model) {
                               return std::string(hiercast::loss_name(model.loss));
                             })
      .def_property_readonly("num_trees",
                             [](const hiercast::BoostedModel& model) {
                               return model.trees.size();
                             })
      .def(
          "predict",
          [](const hiercast::BoostedModel& model, const Matrix& x) {
            const hiercast::DataView view = view_of(x);
            if (view.cols != model.feature_names.size())
              throw py::value_error("matrix has " + std::to_string(view.cols) +
                                    " columns, model expects " +
                                    std::to_string(model.feature_names.size()));
            return to_array(hiercast::predict(model, view));
          },
          py::arg("x"), "Mean-scale predictions, one per row.")
      .def(
          "save",
          [](const hiercast::BoostedModel& model, const std::string& path) {
            hiercast::save_model(model, path);
          },
          py::arg("path"), "Writes the versioned text format; reloads predict "
                           "bit-identically.");

  m.def(
      "train_gbm",
      [](const Matrix& x, const std::vector<double>& y,
         std::vector<std::string> feature_names, const std::string& loss, double tweedie_power,
         int rounds, double learning_rate, int max_leaves, int min_data_in_leaf, int max_bins,
         double lambda_, bool goss, double goss_top_rate, double goss_other_rate,
         std::uint64_t seed, int threads) {
        const hiercast::DataView view = view_of(x);
        if (feature_names.empty())
          for (std::size_t c = 0; c < view.cols; ++c)
            feature_names.push_back("f" + std::to_string(c));
        hiercast::GbmParams params;
        params.loss = loss_from_name(loss);
        params.tweedie_power = tweedie_power;
        params.rounds = rounds;
        params.learning_rate = learning_rate;
        params.max_leaves = max_leaves;
        params.min_data_in_leaf = min_data_in_leaf;
        params.max_bins = max_bins;
        params.lambda = lambda_;
        params.goss = goss;
        params.goss_top_rate = goss_top_rate;
        params.goss_other_rate = goss_other_rate;
        params.seed = seed;
        params.threads = threads;
        return hiercast::train(view, y, feature_names, params);
      },
      py::arg("x"), py::arg("y"), py::arg("feature_names") = std::vector<std::string>{},
      py::kw_only(), py::arg("loss") = "tweedie", py::arg("tweedie_power") = 1.5,
      py::arg("rounds") = 300, py::arg("learning_rate") = 0.1, py::arg("max_leaves") = 31,
      py::arg("min_data_in_leaf") = 20, py::arg("max_bins") = 63, py::arg("lambda_") = 1.0,
      py::arg("goss") = false, py::arg("goss_top_rate") = 0.2,
      py::arg("goss_other_rate") = 0.1, py::arg("seed") = 0, py::arg("threads") = 1,
      "Trains a boosted tree model on a dense row-major matrix; NaN encodes "
      "absent values.");

  m.def(
      "load_gbm",
      [](const std::string& path) { return hiercast::load_model(path); }, py::arg("path"),
      "Loads a model written by GbmModel.save.");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> full = {"hiercast"};
        full.insert(full.end(), args.begin(), args.end());
        std::vector<char*> argv;
        argv.reserve(full.size());
        for (std::string& a : full) argv.push_back(a.data());
        return hiercast::run_cli(static_cast<int>(argv.size()), argv.data());
      },
      py::arg("args"),
      "Runs the command line front end in-process (synth, pipeline, train, "
      "forecast, evaluate, decompose) and returns its exit code.");
}
