#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "relay_rgg/harness.hpp"

using namespace relay_rgg;

namespace {

ExperimentConfig config_from(const std::string& text) {
  std::filesystem::create_directories("test_out");
  const std::string path = "test_out/tmp_config.cfg";
  std::ofstream(path) << text;
  return load_config(path, {}, nullptr);
}

}  // namespace

TEST_CASE("wilson interval") {
  const WilsonInterval iv = wilson95(80, 100);
  CHECK(iv.lo <= 0.8);
  CHECK(iv.hi >= 0.8);
  CHECK(iv.lo >= 0.0);
  CHECK(iv.hi <= 1.0);
  SUBCASE("contains the point estimate across counts") {
    for (long n : {1L, 7L, 100L, 5000L}) {
      for (long k = 0; k <= n; k += std::max(1L, n / 7)) {
        const WilsonInterval w = wilson95(k, n);
        const double p = static_cast<double>(k) / static_cast<double>(n);
        CHECK(w.lo <= p + 1e-12);
        CHECK(w.hi >= p - 1e-12);
      }
    }
  }
  SUBCASE("degenerate inputs") {
    const WilsonInterval w = wilson95(0, 0);
    CHECK(w.lo == 0.0);
    CHECK(w.hi == 1.0);
  }
}

TEST_CASE("summarize") {
  SUBCASE("empty") {
    const SummaryStats s = summarize({});
    CHECK(s.count == 0);
  }
  SUBCASE("single record") {
    TrialRecord r;
    r.kind = "t";
    r.index = 0;
    r.cells = {{"x", 2.5}, {"ok", true}};
    const SummaryStats s = summarize({r});
    CHECK(s.num("x")->mean == 2.5);
    CHECK(s.num("x")->variance == 0.0);
    CHECK(s.flag("ok")->freq == 1.0);
  }
  SUBCASE("three-record fixture") {
    std::vector<TrialRecord> rs;
    for (int i = 0; i < 3; ++i) {
      TrialRecord r;
      r.kind = "t";
      r.index = i;
      r.cells = {{"x", static_cast<double>(i + 1)},
                 {"k", static_cast<long long>(10 * i)},
                 {"ok", i != 1}};
      rs.push_back(r);
    }
    const SummaryStats s = summarize(rs);
    CHECK(s.num("x")->mean == doctest::Approx(2.0));
    CHECK(s.num("x")->variance == doctest::Approx(2.0 / 3.0));
    CHECK(s.num("x")->min == 1.0);
    CHECK(s.num("x")->max == 3.0);
    CHECK(s.num("k")->mean == doctest::Approx(10.0));
    CHECK(s.flag("ok")->trues == 2);
  }
  SUBCASE("infinite entries are skipped for doubles") {
    std::vector<TrialRecord> rs(2);
    rs[0].kind = rs[1].kind = "t";
    rs[0].index = 0;
    rs[1].index = 1;
    rs[0].cells = {{"x", 1.0}};
    rs[1].cells = {{"x", std::numeric_limits<double>::infinity()}};
    const SummaryStats s = summarize(rs);
    CHECK(s.num("x")->count == 1);
    CHECK(s.num("x")->mean == 1.0);
  }
  SUBCASE("mixed kinds rejected") {
    std::vector<TrialRecord> rs(2);
    rs[0].kind = "a";
    rs[1].kind = "b";
    CHECK_THROWS_AS(summarize(rs), config_error);
  }
}

TEST_CASE("config parsing") {
  SUBCASE("file plus overrides; overrides win") {
    std::filesystem::create_directories("test_out");
    std::ofstream("test_out/c1.cfg")
        << "# comment\nn=1000\nrn=0.1\ntrials=3\nseed=5\n";
    std::vector<std::string> warnings;
    const ExperimentConfig cfg =
        load_config("test_out/c1.cfg", {{"trials", "7"}}, &warnings);
    CHECK(cfg.n() == 1000);
    CHECK(cfg.trials == 7);
    CHECK(warnings.empty());
  }
  SUBCASE("duplicate key warns, last wins") {
    std::ofstream("test_out/c2.cfg") << "n=5\nn=9\n";
    std::vector<std::string> warnings;
    const ExperimentConfig cfg = load_config("test_out/c2.cfg", {}, &warnings);
    CHECK(cfg.n() == 9);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("duplicate") != std::string::npos);
  }
  SUBCASE("unknown key and bad types rejected") {
    std::ofstream("test_out/c3.cfg") << "frobnicate=1\n";
    CHECK_THROWS_AS(load_config("test_out/c3.cfg", {}, nullptr), config_error);
    std::ofstream("test_out/c4.cfg") << "n=abc\n";
    CHECK_THROWS_AS(load_config("test_out/c4.cfg", {}, nullptr), config_error);
    CHECK_THROWS_AS(load_config("no/such/file.cfg", {}, nullptr), config_error);
  }
  SUBCASE("empty file plus full overrides is valid") {
    const ExperimentConfig cfg = load_config(
        "", {{"n", "100"}, {"rn", "0.2"}, {"gamma_builtin", "segment 0.3"},
             {"trials", "2"}, {"seed", "1"}},
        nullptr);
    CHECK_NOTHROW(validate_config(cfg, "distance"));
  }
  SUBCASE("round trip is semantically identical") {
    const ExperimentConfig cfg = config_from(
        "n=2000\nbeta=0.3\ngamma_builtin=segment 0.3\nmode=ratio\neps=0.5\n"
        "trials=4\nseed=9\nalpha=0.2\n");
    std::filesystem::create_directories("test_out");
    std::ofstream("test_out/c5.cfg") << serialize_config(cfg);
    const ExperimentConfig again = load_config("test_out/c5.cfg", {}, nullptr);
    CHECK(serialize_config(again) == serialize_config(cfg));
  }
  SUBCASE("beta/alpha regime warning") {
    const ExperimentConfig cfg = config_from(
        "n=2000\nbeta=0.3\ngamma_builtin=segment 0.3\ntrials=1\nalpha=0.2\n");
    const auto warnings = validate_config(cfg, "length");
    bool found = false;
    for (const std::string& w : warnings)
      found |= w.find("beta") != std::string::npos;
    CHECK(found);  // beta = 0.3 >= (1-alpha)/4 = 0.2 in two-point mode
  }
  SUBCASE("validation failures") {
    CHECK_THROWS_AS(validate_config(config_from("n=10\nrn=0.1\ntrials=-1\n"),
                                    "distance"),
                    config_error);
    CHECK_THROWS_AS(
        validate_config(config_from("n=10\nrn=0.1\ntrials=1\n"), "distance"),
        config_error);  // no gamma
    CHECK_THROWS_AS(
        validate_config(
            config_from("n=10\nrn=0.1\ntrials=1\ngamma_builtin=segment 0.3\n"
                        "mode=ratio\neps=0\n"),
            "length"),
        config_error);
    CHECK_THROWS_AS(
        validate_config(
            config_from("n=10\nrn=0.1\ntrials=1\ngamma_builtin=segment 0.3\n"
                        "M=2\nLn=10\n"),
            "weight"),
        config_error);
  }
}

TEST_CASE("distance experiment") {
  SUBCASE("zero trials") {
    const ExperimentConfig cfg = load_config(
        "", {{"n", "100"}, {"rn", "0.2"}, {"gamma_builtin", "segment 0.3"},
             {"trials", "0"}, {"seed", "1"}},
        nullptr);
    const ExperimentResult res = run_distance_experiment(cfg);
    CHECK(res.records.empty());
    CHECK(res.summary.count == 0);
    CHECK(res.csv == "trial\n");
  }
  SUBCASE("dense regime pins F_uv to one") {
    const ExperimentConfig cfg = load_config(
        "", {{"n", "2000"}, {"rn", "0.25"}, {"gamma_builtin", "segment 0.3"},
             {"trials", "30"}, {"seed", "21"}, {"eps", "1"}},
        nullptr);
    const ExperimentResult res = run_distance_experiment(cfg);
    CHECK(res.summary.flag("f_uv")->freq == 1.0);
    CHECK(res.summary.flag("e_uv")->freq == 1.0);
  }
}

TEST_CASE("experiment output is bit-deterministic") {
  const ExperimentConfig cfg = load_config(
      "", {{"n", "3000"}, {"rn", "0.1"}, {"gamma_builtin", "segment 0.3"},
           {"trials", "12"}, {"seed", "33"}},
      nullptr);
  const ExperimentResult a = run_length_experiment(cfg, 1);
  const ExperimentResult b = run_length_experiment(cfg, 4);
  const ExperimentResult c = run_length_experiment(cfg, 1);
  CHECK(a.csv == b.csv);
  CHECK(a.csv == c.csv);
  CHECK(a.summary_json == b.summary_json);
}

TEST_CASE("trend experiment") {
  const auto mk = [](long n, const char* trials) {
    return load_config(
        "", {{"n", std::to_string(n)}, {"rn_scale", "4.47213595499958"},
             {"gamma_builtin", "segment 0.3"}, {"trials", trials},
             {"seed", "3"}, {"eps", "1"}},
        nullptr);
  };
  SUBCASE("identical configs trivially pass") {
    const ExperimentConfig cfg = mk(2000, "10");
    const ExperimentResult res = run_trend_experiment({cfg, cfg});
    CHECK(res.records.size() == 2);
    CHECK(res.summary_json.find("\"f_uv_non_decreasing_within_ci\": true") !=
          std::string::npos);
  }
  SUBCASE("decreasing n*r^2 rejected") {
    ExperimentConfig big = mk(8000, "5");
    ExperimentConfig small = mk(2000, "5");
    CHECK_THROWS_AS(run_trend_experiment({big, small}), config_error);
  }
  SUBCASE("fewer than two configs rejected") {
    CHECK_THROWS_AS(run_trend_experiment({mk(2000, "5")}), config_error);
  }
}

TEST_CASE("write_outputs naming") {
  const ExperimentConfig cfg = load_config(
      "", {{"n", "200"}, {"rn", "0.2"}, {"gamma_builtin", "segment 0.3"},
           {"trials", "2"}, {"seed", "77"}, {"out", "test_out/exp"}},
      nullptr);
  const ExperimentResult res = run_distance_experiment(cfg);
  const auto [csv_path, json_path] = write_outputs(res, cfg, "distance");
  CHECK(csv_path.find("distance-77.csv") != std::string::npos);
  CHECK(std::filesystem::exists(csv_path));
  CHECK(std::filesystem::exists(json_path));
  std::ifstream in(csv_path, std::ios::binary);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  CHECK(content == res.csv);
}

TEST_CASE("RELAY_RGG_THREADS caps the worker pool") {
  ::setenv("RELAY_RGG_THREADS", "2", 1);
  CHECK(resolve_workers(8) == 2);
  CHECK(resolve_workers(1) == 1);
  ::setenv("RELAY_RGG_THREADS", "0", 1);  // ignored: must stay positive
  CHECK(resolve_workers(3) == 3);
  ::unsetenv("RELAY_RGG_THREADS");
  CHECK(resolve_workers(5) == 5);
  CHECK(resolve_workers(0) >= 1);
}

TEST_CASE("format_double round trips") {
  for (double v : {0.1, 1.0, 3.0303, 1e-17, 12345.6789, 0.9 * 0.2}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
}
