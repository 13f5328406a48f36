// Copyright 2026 The tiedecay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "test_support.hpp"
#include "tiedecay/error.hpp"
#include "tiedecay/experiments.hpp"
#include "tiedecay/format.hpp"
#include "tiedecay/spectral.hpp"

using namespace tiedecay;

namespace {

std::string records_text(const ExperimentResult& r) {
  std::ostringstream out;
  write_records_csv(out, r.records);
  return out.str();
}

std::string summary_text(const ExperimentResult& r) {
  std::ostringstream out;
  write_summary_csv(out, r.summaries);
  return out.str();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

ExperimentConfig config_with(std::vector<double> alphas) {
  ExperimentConfig c;
  c.alphas = std::move(alphas);
  return c;
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(1e-300) == "1e-300");
  for (double v : {M_PI, 1.0 / 3.0, 6.02214076e23, -2.5e-7}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("five-number summaries") {
  const double flat[] = {1, 1, 1, 1};
  auto s = summary_stats(flat);
  CHECK(s.q1 == 1.0);
  CHECK(s.median == 1.0);
  CHECK(s.q3 == 1.0);
  CHECK(s.outliers.empty());

  const double tail[] = {1, 2, 3, 4, 100};
  s = summary_stats(tail);
  CHECK(s.q1 == 2.0);
  CHECK(s.median == 3.0);
  CHECK(s.q3 == 4.0);
  CHECK(s.lo == -1.0);
  CHECK(s.hi == 7.0);
  REQUIRE(s.outliers.size() == 1);
  CHECK(s.outliers[0] == 100.0);

  const double one[] = {0.42};
  s = summary_stats(one);
  CHECK(s.q1 == 0.42);
  CHECK(s.median == 0.42);
  CHECK(s.q3 == 0.42);

  // Interpolated between order statistics: positions 0.75, 1.5, 2.25.
  const double four[] = {4, 1, 3, 2};
  s = summary_stats(four);
  CHECK(s.q1 == 1.75);
  CHECK(s.median == 2.5);
  CHECK(s.q3 == 3.25);

  CHECK_THROWS_AS(summary_stats(std::span<const double>{}), Error);
}

TEST_CASE("log grid") {
  const auto g = log_grid({1e-3, 1e2, 26});
  REQUIRE(g.size() == 26);
  CHECK(g.front() == 1e-3);
  CHECK(g.back() == 1e2);
  CHECK(std::abs(g[5] - 1e-2) <= 1e-15);
  CHECK_THROWS_AS(log_grid({1.0, 1.0, 5}), Error);
  CHECK_THROWS_AS(log_grid({1.0, 2.0, 1}), Error);
}

TEST_CASE("config keys") {
  ExperimentConfig c;
  c.set("--input", "x.txt");
  c.set("mode", "alpha-sweep");
  c.set("alpha_grid", "0.01:10:4");
  c.set("method", "rt,res");
  c.set("ensemble", "7");
  c.set("seed", "123");
  c.set("min-edges", "2");
  c.set("directed", "true");
  c.set("exp-method", "auto");
  CHECK(c.input == "x.txt");
  CHECK(c.mode == Mode::AlphaSweep);
  CHECK(c.alpha_values().size() == 4);
  CHECK(c.methods == std::vector<Method>{Method::RandomTimes, Method::RandomEdgeShuffling});
  CHECK(c.ensemble == 7);
  CHECK(c.seed == 123);
  CHECK(c.min_edges == 2);
  CHECK(c.directed);
  CHECK(c.exp_method == ExpMethod::Auto);
  c.set("alpha", "1,2");
  CHECK(c.alpha_values() == std::vector<double>{1.0, 2.0});
  CHECK_NOTHROW(c.validate());

  CHECK_THROWS_AS(c.set("bogus", "1"), Error);
  CHECK_THROWS_AS(c.set("ensemble", "many"), Error);
  CHECK_THROWS_AS(c.set("mode", "fast"), Error);
  CHECK_THROWS_AS(c.set("alpha-grid", "1:2"), Error);

  ExperimentConfig d;
  CHECK(d.alpha_values() == std::vector<double>{0.01, 1.0, 100.0});
  CHECK_THROWS_AS(d.validate(), Error);
  d.mode = Mode::AlphaSweep;
  CHECK(d.alpha_values().size() == 26);
}

TEST_CASE("config files, later keys win") {
  const auto path = std::filesystem::temp_directory_path() / "tiedecay_test_config.txt";
  std::ofstream(path) << "# comment\ninput = a.txt\nensemble=3\n\nalpha=0.5\nensemble=4\n";
  ExperimentConfig c;
  c.load_file(path.string());
  CHECK(c.input == "a.txt");
  CHECK(c.ensemble == 4);
  CHECK(c.alphas == std::vector<double>{0.5});
  std::ofstream(path) << "input a.txt\n";
  CHECK_THROWS_AS(c.load_file(path.string()), Error);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(c.load_file("/nonexistent/config"), Error);
}

TEST_CASE("summary path") {
  CHECK(summary_path("runs.csv") == "runs_summary.csv");
  CHECK(summary_path("out/runs") == "out/runs_summary.csv");
}

TEST_CASE("record ordering") {
  std::vector<ExperimentRecord> r(4);
  r[0] = {"m", "rt", 1.0, 5, 0.0, 0, 0.0, {}, {}};
  r[1] = {"m", "original", 1.0, std::nullopt, 0.0, 0, 0.0, {}, {}};
  r[2] = {"m", "rt", 1.0, std::nullopt, 0.0, 0, 0.0, {}, {}};
  r[3] = {"m", "rt", 0.5, 9, 0.0, 0, 0.0, {}, {}};
  sort_records(r);
  CHECK(r[0].method == "original");
  CHECK(r[1].alpha == 0.5);
  CHECK(!r[2].seed.has_value());
  CHECK(r[3].seed == 5u);
}

TEST_CASE("csv schema") {
  ExperimentRecord r{"time-series", "original", 1.0, std::nullopt, 3.0, 2, 0.25, 0.5,
                     "positive_slope;degenerate_fiedler"};
  std::ostringstream out;
  write_records_csv(out, std::span<const ExperimentRecord>(&r, 1));
  CHECK(out.str() ==
        "mode,method,alpha,seed,t_n,event_count,gap,shrinkage_ratio,flags\n"
        "time-series,original,1,,3,2,0.25,0.5,positive_slope;degenerate_fiedler\n");
}

TEST_CASE("slope flags") {
  const double alphas[] = {0.1, 1.0, 10.0, 100.0};
  const double gaps[] = {0.9, 0.5, 0.5 + 2e-9, 0.6};
  const auto f = positive_slope_flags(alphas, gaps);
  CHECK(f == std::vector<bool>{false, true, true, false});
  const double flat[] = {0.5, 0.5, 0.5 + 5e-10, 0.5};
  CHECK(positive_slope_flags(alphas, flat) == std::vector<bool>(4, false));
  const double bad[] = {1.0, 1.0, 2.0, 3.0};
  CHECK_THROWS_AS(positive_slope_flags(bad, gaps), Error);
}

TEST_CASE("two-node sweep is strictly decreasing") {
  const auto s = parse_events("0 a b\n4 a b\n");
  ExperimentConfig c;
  c.mode = Mode::AlphaSweep;
  const auto r = run_alpha_sweep(s, c);
  REQUIRE(r.records.size() == 26);
  for (std::size_t k = 0; k < r.records.size(); ++k) {
    const double a = r.records[k].alpha;
    CHECK(std::abs(r.records[k].gap - (1.0 - std::exp(2.0 * (std::exp(-4.0 * a) - 1.0) / a))) <= 1e-10);
    CHECK(r.records[k].flags.empty());
    if (k > 0) CHECK(r.records[k].gap < r.records[k - 1].gap);
  }
}

TEST_CASE("shipped fixture has a rising stretch that survives refinement") {
  const auto s = read_events_file(testing::data_path("nonmonotone_gap.txt"));
  ExperimentConfig coarse;
  coarse.grid = AlphaGrid{1e-3, 1e2, 26};
  ExperimentConfig fine;
  fine.grid = AlphaGrid{1e-3, 1e2, 51};
  const auto a = run_alpha_sweep(s, coarse).records;
  const auto b = run_alpha_sweep(s, fine).records;
  int flagged = 0;
  for (std::size_t k = 0; k + 1 < a.size(); ++k) {
    if (a[k].flags.empty()) continue;
    ++flagged;
    // Coarse interval k spans fine intervals 2k and 2k+1.
    CHECK((!b[2 * k].flags.empty() || !b[2 * k + 1].flags.empty()));
  }
  CHECK(flagged > 0);
}

TEST_CASE("single event time gives an identity propagator") {
  const auto s = parse_events("0 a b\n0 b c\n");
  const auto r = run_time_series(s, config_with({1.0}));
  REQUIRE(r.records.size() == 1);
  CHECK(r.records[0].gap == 0.0);
  CHECK(r.records[0].t_n == 0.0);
  CHECK(r.records[0].event_count == 2);
  CHECK(r.records[0].flags == "degenerate_fiedler");

  const auto agg = run_aggregate_compare(s, config_with({1.0}));
  REQUIRE(agg.records.size() == 2);
  CHECK(agg.records[0].gap == 0.0);
  CHECK(agg.records[1].gap == 0.0);
}

TEST_CASE("time series ends at the sweep value") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto s = testing::random_stream(seed, {5, 20, seed % 2 == 0, 15});
    const auto ts = run_time_series(s, config_with({0.1, 1.0}));
    const auto sw = run_alpha_sweep(s, config_with({0.1, 1.0}));
    for (const auto& sweep_row : sw.records) {
      const ExperimentRecord* last = nullptr;
      for (const auto& r : ts.records)
        if (r.alpha == sweep_row.alpha) last = &r;
      REQUIRE(last != nullptr);
      CHECK(last->t_n == s.horizon());
      CHECK(std::abs(last->gap - sweep_row.gap) <= 1e-12);
    }
    for (const auto& r : ts.records) {
      CHECK(r.gap >= 0.0);
      CHECK(r.gap <= 1.0);
      if (r.shrinkage_ratio) {
        CHECK(*r.shrinkage_ratio >= 0.0);
      } else {
        CHECK(r.flags.find("degenerate_fiedler") != std::string::npos);
      }
    }
  }
}

TEST_CASE("three-node two-case shrinkage") {
  // Same first step; the closing event lands on different pairs.
  const auto a = parse_events("0 1 2\n0 2 3\n1 1 2\n2 1 2\n");
  const auto b = parse_events("0 1 2\n0 2 3\n1 1 3\n2 1 2\n");
  const auto ra = run_time_series(a, config_with({1.0})).records;
  const auto rb = run_time_series(b, config_with({1.0})).records;
  REQUIRE(ra.size() == 3);
  REQUIRE(rb.size() == 3);
  CHECK(ra[1].gap == rb[1].gap);
  CHECK(*rb[1].shrinkage_ratio < *ra[1].shrinkage_ratio);
  CHECK(rb[2].gap > ra[2].gap);
}

TEST_CASE("ensemble output") {
  const auto s = parse_events("0 a b\n1 b c\n1 a c\n4 a b\n6 c d\n9 b d\n");
  ExperimentConfig c = config_with({0.5, 2.0});
  c.ensemble = 6;
  c.seed = 17;
  const auto r = run_ensemble(s, c);
  // originals + members for every method and alpha
  CHECK(r.records.size() == 2 + 4 * 6 * 2);
  CHECK(r.summaries.size() == 4 * 2);
  for (const auto& row : r.summaries) {
    CHECK(row.summary.q1 <= row.summary.median);
    CHECK(row.summary.median <= row.summary.q3);
  }
  for (const auto& rec : r.records) {
    CHECK(rec.gap >= 0.0);
    CHECK(rec.gap <= 1.0);
    CHECK(rec.t_n == s.horizon());
  }

  ExperimentConfig serial = c;
  serial.threads = 1;
  ExperimentConfig parallel = c;
  parallel.threads = 4;
  const auto x = run_ensemble(s, serial);
  const auto y = run_ensemble(s, parallel);
  CHECK(records_text(x) == records_text(y));
  CHECK(summary_text(x) == summary_text(y));
  CHECK(records_text(x) == records_text(r));
}

TEST_CASE("single member ensemble is deterministic") {
  const auto s = parse_events("0 a b\n2 b c\n5 a c\n");
  ExperimentConfig c = config_with({1.0});
  c.ensemble = 1;
  c.methods = {Method::RandomTimes};
  c.seed = 8;
  const auto r = run_ensemble(s, c);
  CHECK(r.records.size() == 2);
  CHECK(records_text(r) == records_text(run_ensemble(s, c)));
}

TEST_CASE("aggregate comparison carries both gaps") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto s = testing::random_stream(seed, {5, 25, false, 20});
    if (!(s.horizon() > s.origin())) continue;
    const auto r = run_aggregate_compare(s, config_with({0.01, 1.0, 100.0}));
    REQUIRE(r.records.size() == 6);
    for (const auto& rec : r.records) {
      CHECK((rec.method == "aggregate" || rec.method == "tie_decay"));
      CHECK(rec.gap >= 0.0);
      CHECK(rec.gap <= 1.0);
    }
  }
}

TEST_CASE("run_experiment writes byte-identical files") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "tiedecay_test_run";
  fs::create_directories(dir);
  const fs::path input = dir / "events.txt";
  std::ofstream(input) << to_text(testing::random_stream(33, {5, 20, false, 15}));

  auto run = [&](const std::string& name, unsigned threads) {
    ExperimentConfig c;
    c.input = input.string();
    c.ensemble = 5;
    c.seed = 4;
    c.threads = threads;
    c.out = (dir / name).string();
    run_experiment(c);
    return slurp(dir / name) + slurp(summary_path((dir / name).string()));
  };
  const auto first = run("a.csv", 1);
  const auto second = run("b.csv", 3);
  CHECK(first == second);
  CHECK(first.rfind(std::string(kRecordHeader), 0) == 0);
  CHECK(first.find(std::string(kSummaryHeader)) != std::string::npos);

  ExperimentConfig stats;
  stats.input = input.string();
  stats.mode = Mode::Stats;
  stats.out = (dir / "stats.csv").string();
  run_experiment(stats);
  CHECK(slurp(dir / "stats.csv").rfind("nodes,edges,events,mean_events_per_node", 0) == 0);

  ExperimentConfig missing;
  missing.input = (dir / "nope.txt").string();
  CHECK_THROWS_AS(run_experiment(missing), Error);
  fs::remove_all(dir);
}
