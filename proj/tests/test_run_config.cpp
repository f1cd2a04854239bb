#include <doctest.h>

#include <string>
#include <vector>

#include "hiercast/errors.hpp"
#include "hiercast/run_config.hpp"
#include "test_helpers.hpp"

using namespace hiercast;

TEST_SUITE_BEGIN("run_config");

TEST_CASE("defaults cover every module") {
  const RunConfig config = RunConfig::defaults();
  CHECK(config.get("gbm", "loss") == "tweedie");
  CHECK(config.get_int("run", "horizon") == 28);
  CHECK(config.get_real("gbm", "tweedie_power") == 1.5);
  CHECK(config.get_bool("group", "ts_split"));
  CHECK(config.get_int_list("features", "lags") == std::vector<int>{7, 14, 28});
  CHECK(config.get_list("group", "by") == std::vector<std::string>{"store"});
  CHECK(config.get("data", "sales").empty());
}

TEST_CASE("unknown keys are rejected with their path") {
  RunConfig config = RunConfig::defaults();
  CHECK_THROWS_WITH_AS(config.set("gbm.learningrate", "0.2"),
                       doctest::Contains("gbm.learningrate"), ConfigError);
  CHECK_THROWS_WITH_AS(config.set("gbn.rounds", "5"), doctest::Contains("gbn.rounds"),
                       ConfigError);
  CHECK_THROWS_AS(config.set("no_dot", "1"), ConfigError);
  CHECK_THROWS_WITH_AS(config.get("gbm", "nope"), doctest::Contains("gbm.nope"), ConfigError);
  CHECK_THROWS_AS(config.get("nope", "rounds"), ConfigError);
}

TEST_CASE("typed getters validate their values") {
  RunConfig config = RunConfig::defaults();
  config.set("gbm.rounds", "many");
  CHECK_THROWS_WITH_AS(config.get_int("gbm", "rounds"), doctest::Contains("gbm.rounds"),
                       ConfigError);
  config.set("gbm.lambda", "soft");
  CHECK_THROWS_AS(config.get_real("gbm", "lambda"), ConfigError);
  config.set("gbm.goss", "maybe");
  CHECK_THROWS_AS(config.get_bool("gbm", "goss"), ConfigError);
  config.set("features.lags", "7,groundhog");
  CHECK_THROWS_AS(config.get_int_list("features", "lags"), ConfigError);

  config.set("gbm.goss", "YES");
  CHECK(config.get_bool("gbm", "goss"));
  config.set("gbm.goss", "off");
  CHECK_FALSE(config.get_bool("gbm", "goss"));
  config.set("features.lags", " 1 , 2 ,3 ");
  CHECK(config.get_int_list("features", "lags") == std::vector<int>{1, 2, 3});
}

TEST_CASE("canonical form drives the hash and skips run-shape keys") {
  RunConfig a = RunConfig::defaults();
  RunConfig b = RunConfig::defaults();
  CHECK(a.canonical() == b.canonical());
  CHECK(a.hash() == b.hash());
  CHECK(a.hash().size() == 16);

  // threads and output base change where a run lives, not what it computes
  b.set("run.threads", "8");
  b.set("run.out", "elsewhere");
  CHECK(a.hash() == b.hash());
  CHECK(a.canonical().find("threads") == std::string::npos);
  CHECK(a.canonical().find("out = ") == std::string::npos);

  b.set("gbm.rounds", "301");
  CHECK(a.hash() != b.hash());
  CHECK(a.canonical().find("[gbm]") != std::string::npos);
}

TEST_CASE("config files merge section by section") {
  testutil::TempDir dir("cfg");
  testutil::write_text(dir.file("run.ini"),
                       "# comment\n"
                       "[gbm]\n"
                       "rounds = 50   ; trailing comment\n"
                       "loss=mse\n"
                       "\n"
                       "[run]\n"
                       "seed = 9\n");
  RunConfig config = RunConfig::defaults();
  config.merge_file(dir.file("run.ini"));
  CHECK(config.get_int("gbm", "rounds") == 50);
  CHECK(config.get("gbm", "loss") == "mse");
  CHECK(config.get_int("run", "seed") == 9);
  CHECK(config.get_int("run", "horizon") == 28);  // untouched default

  testutil::write_text(dir.file("bad_key.ini"), "[gbm]\nround = 50\n");
  CHECK_THROWS_WITH_AS(config.merge_file(dir.file("bad_key.ini")),
                       doctest::Contains("gbm.round"), ConfigError);
  testutil::write_text(dir.file("bad_section.ini"), "[boosting]\nrounds = 50\n");
  CHECK_THROWS_AS(config.merge_file(dir.file("bad_section.ini")), ConfigError);
  testutil::write_text(dir.file("no_section.ini"), "rounds = 50\n");
  CHECK_THROWS_AS(config.merge_file(dir.file("no_section.ini")), ConfigError);
  testutil::write_text(dir.file("no_eq.ini"), "[gbm]\nrounds\n");
  CHECK_THROWS_AS(config.merge_file(dir.file("no_eq.ini")), ConfigError);
  CHECK_THROWS_AS(config.merge_file(dir.file("missing.ini")), IoError);
}

TEST_CASE("pipeline_config reflects overrides") {
  RunConfig config = RunConfig::defaults();
  config.set("group.by", "store,state");
  config.set("gbm.loss", "mse");
  config.set("gbm.rounds", "40");
  config.set("run.train_end", "92");
  config.set("features.horizon_as_feature", "false");
  const PipelineConfig p = config.pipeline_config();
  CHECK(p.group_by == std::vector<std::string>{"store", "state"});
  CHECK(p.gbm.loss == LossKind::MSE);
  CHECK(p.gbm.rounds == 40);
  CHECK(p.train_end == 92);
  CHECK_FALSE(p.features.horizon_as_feature);
  CHECK(p.features.horizon == p.horizon);

  config.set("gbm.loss", "huber");
  CHECK_THROWS_AS(config.pipeline_config(), ConfigError);
}

TEST_CASE("synth_spec shares the run seed") {
  RunConfig config = RunConfig::defaults();
  config.set("run.seed", "77");
  config.set("synth.days", "200");
  config.set("synth.zero_inflation", "0.6");
  const SynthSpec s = config.synth_spec();
  CHECK(s.seed == 77);
  CHECK(s.days == 200);
  CHECK(s.zero_inflation == 0.6);
}

TEST_SUITE_END();
