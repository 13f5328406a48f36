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


// Exercises the shared library through its C header only.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "tiedecay/tiedecay.h"

namespace {

td_stream* parse(const char* text, int directed = 0) {
  td_stream* s = nullptr;
  REQUIRE(td_stream_parse(text, std::strlen(text), directed, &s) == TD_OK);
  return s;
}

}  // namespace

TEST_CASE("status names are stable") {
  CHECK(std::string(td_status_name(TD_OK)) == "ok");
  CHECK(std::string(td_status_name(TD_ERR_PARSE)) == "parse");
  CHECK(std::string(td_status_name(TD_ERR_INVALID_ARGUMENT)) == "invalid_argument");
  CHECK(std::string(td_version()) == "1.0.0");
}

TEST_CASE("parse errors come back as codes") {
  td_stream* s = nullptr;
  const char bad[] = "0 a\n";
  CHECK(td_stream_parse(bad, std::strlen(bad), 0, &s) == TD_ERR_PARSE);
  CHECK(s == nullptr);
  CHECK(std::string(td_last_error()).find("line 1") != std::string::npos);
  CHECK(td_stream_parse("", 0, 0, &s) == TD_ERR_EMPTY);
  CHECK(td_stream_parse("0 a b", 5, 0, nullptr) == TD_ERR_INVALID_ARGUMENT);
  CHECK(td_stream_read_file("/nonexistent/x.txt", 0, &s) == TD_ERR_IO);
  td_stream_free(nullptr);
}

TEST_CASE("stats and gaps") {
  td_stream* s = parse("0 a b\n20 a b\n");
  td_stream_stats st{};
  REQUIRE(td_stream_get_stats(s, &st) == TD_OK);
  CHECK(st.nodes == 2);
  CHECK(st.edges == 1);
  CHECK(st.events == 2);
  CHECK(st.distinct_times == 2);
  CHECK(st.horizon == 20.0);

  double gap = -1.0;
  REQUIRE(td_spectral_gap(s, 1.0, 1.0, &gap) == TD_OK);
  CHECK(std::abs(gap - (1.0 - std::exp(2.0 * (std::exp(-1.0) - 1.0)))) <= 1e-12);
  CHECK(td_spectral_gap(s, -1.0, 1.0, &gap) == TD_ERR_INVALID_ARGUMENT);

  double agg = -1.0;
  REQUIRE(td_aggregate_gap(s, 1.0, &agg) == TD_OK);
  CHECK(agg > 0.0);
  CHECK(agg <= 1.0);

  const double x0[] = {1.0, 0.0};
  double x[2] = {0, 0};
  REQUIRE(td_evolve_opinions(s, 1.0, 200.0, x0, 2, x) == TD_OK);
  CHECK(std::abs(x[0] + x[1] - 1.0) <= 1e-12);
  CHECK(td_evolve_opinions(s, 1.0, 1.0, x0, 3, x) == TD_ERR_INVALID_ARGUMENT);
  td_stream_free(s);
}

TEST_CASE("randomize, exclude and write") {
  td_stream* s = parse("0 a b\n1 b c\n2 c a\n3 c d\n5 a b\n");
  td_stream* r = nullptr;
  REQUIRE(td_stream_randomize(s, "rt", 3, -1, &r) == TD_OK);
  td_stream_stats st{};
  REQUIRE(td_stream_get_stats(r, &st) == TD_OK);
  CHECK(st.events == 5);
  CHECK(td_stream_randomize(s, "nope", 3, -1, &r) == TD_ERR_INVALID_ARGUMENT);
  td_stream_free(r);

  td_stream* k = nullptr;
  REQUIRE(td_stream_exclude_low_degree(s, 2, &k) == TD_OK);
  REQUIRE(td_stream_get_stats(k, &st) == TD_OK);
  CHECK(st.nodes == 3);
  td_stream_free(k);
  td_stream* path = parse("0 a b\n1 b c\n");
  CHECK(td_stream_exclude_low_degree(path, 2, &k) == TD_ERR_EMPTY);
  td_stream_free(path);

  const auto file = std::filesystem::temp_directory_path() / "tiedecay_capi_events.txt";
  REQUIRE(td_stream_write_file(s, file.string().c_str()) == TD_OK);
  td_stream* back = nullptr;
  REQUIRE(td_stream_read_file(file.string().c_str(), 0, &back) == TD_OK);
  REQUIRE(td_stream_get_stats(back, &st) == TD_OK);
  CHECK(st.events == 5);
  td_stream_free(back);
  std::filesystem::remove(file);
  td_stream_free(s);
}

TEST_CASE("config and run") {
  td_config* c = nullptr;
  REQUIRE(td_config_create(&c) == TD_OK);
  CHECK(td_config_set(c, "bogus", "1") == TD_ERR_INVALID_ARGUMENT);
  CHECK(td_run(c) == TD_ERR_INVALID_ARGUMENT);

  const auto dir = std::filesystem::temp_directory_path() / "tiedecay_capi_run";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "in.txt") << "0 a b\n1 b c\n3 a c\n";
  CHECK(td_config_set(c, "input", (dir / "in.txt").string().c_str()) == TD_OK);
  CHECK(td_config_set(c, "mode", "alpha-sweep") == TD_OK);
  CHECK(td_config_set(c, "out", (dir / "sweep.csv").string().c_str()) == TD_OK);
  CHECK(td_run(c) == TD_OK);
  CHECK(std::filesystem::exists(dir / "sweep.csv"));
  CHECK(td_config_load_file(c, (dir / "missing.cfg").string().c_str()) == TD_ERR_IO);
  td_config_free(c);
  std::filesystem::remove_all(dir);
}
