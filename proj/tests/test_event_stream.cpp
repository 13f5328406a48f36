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


#include <sstream>

#include "doctest.h"
#include "test_support.hpp"
#include "tiedecay/error.hpp"
#include "tiedecay/event_stream.hpp"

using namespace tiedecay;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("minimal two-line input") {
  const auto s = parse_events("0 a b\n20 a b");
  CHECK(s.node_count() == 2);
  CHECK(s.event_count() == 2);
  CHECK(s.horizon() == 20.0);
  CHECK(s.origin() == 0.0);
  const auto st = stream_stats(s);
  CHECK(st.edges == 1);
  CHECK(st.events == 2);
  CHECK(s.label(0) == "a");
  CHECK(s.label(1) == "b");
}

TEST_CASE("times are shifted to start at zero") {
  const auto s = parse_events("140 x y\n100 y z\n# note\n\n160 z x\n");
  CHECK(s.first_time() == 0.0);
  CHECK(s.horizon() == 60.0);
  // ids follow first appearance in time order
  CHECK(s.label(0) == "y");
  CHECK(s.label(1) == "z");
  CHECK(s.label(2) == "x");
}

TEST_CASE("parse errors") {
  CHECK(code_of([] { parse_events(""); }) == ErrorCode::Empty);
  CHECK(code_of([] { parse_events("# only a comment\n"); }) == ErrorCode::Empty);
  CHECK(code_of([] { parse_events("0 a\n"); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_events("0 a b c\n"); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_events("x a b\n"); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_events("-1 a b\n"); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_events("0 a a\n"); }) == ErrorCode::Parse);
  CHECK(code_of([] { read_events_file("/nonexistent/events.txt"); }) == ErrorCode::Io);
  try {
    parse_events("0 a b\n1 a b\n2 a\n");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("from_events validation") {
  CHECK(code_of([] { EventStream::from_events({}, 2, false); }) == ErrorCode::Empty);
  CHECK(code_of([] { EventStream::from_events({{0, 0, 2}}, 2, false); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([] { EventStream::from_events({{0, 1, 1}}, 2, false); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([] { EventStream::from_events({{1, 0, 1}}, 2, false, 2.0); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("round trip through text") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = testing::random_stream(seed);
    const auto text = to_text(s);
    const auto back = parse_events(text);
    // Reparsing a stream that starts at zero reproduces it exactly.
    if (s.first_time() != 0.0) continue;
    CHECK(to_text(back) == text);
    CHECK(back.event_count() == s.event_count());
  }
  const auto s = parse_events("0 u v\n0.1 v w\n7.25 w u\n");
  CHECK(to_text(parse_events(to_text(s))) == to_text(s));
  std::istringstream in(to_text(s));
  CHECK(to_text(parse_events(in)) == "0 u v\n0.1 v w\n7.25 w u\n");
}

TEST_CASE("stream stats") {
  const auto s = parse_events("0 a b\n");
  const auto st = stream_stats(s);
  CHECK(st.nodes == 2);
  CHECK(st.edges == 1);
  CHECK(st.events == 1);
  // Two endpoints per event, averaged over nodes.
  CHECK(st.mean_events_per_node == 1.0);

  const auto u = parse_events("0 a b\n1 b a\n");
  CHECK(stream_stats(u).edges == 1);
  const auto d = parse_events("0 a b\n1 b a\n", ParseOptions{true});
  CHECK(stream_stats(d).edges == 2);
}

TEST_CASE("grouping by time") {
  const auto s = parse_events("0 a b\n0 b c\n20 a c\n");
  const auto g = group_event_times(s);
  REQUIRE(g.size() == 2);
  CHECK(g[0].time == 0.0);
  CHECK(g[0].events.size() == 2);
  CHECK(g[1].time == 20.0);
  CHECK(g[1].events.size() == 1);
  CHECK(distinct_time_count(s) == 2);

  const auto d = parse_events("0 a b\n1 a b\n2 a b\n3 a b\n");
  CHECK(group_event_times(d).size() == 4);
}

TEST_CASE("group count matches a line scan of a random file") {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const auto s = testing::random_stream(seed, {8, 60, false, 15});
    std::set<std::string> stamps;
    std::istringstream in(to_text(s));
    std::string t, a, b;
    while (in >> t >> a >> b) stamps.insert(t);
    CHECK(group_event_times(s).size() == stamps.size());
  }
}

TEST_CASE("low-degree exclusion") {
  const auto s = parse_events("0 a b\n1 b c\n2 c a\n3 c d\n4 c d\n");
  CHECK(to_text(exclude_low_degree_nodes(s, 0)) == to_text(s));

  const auto kept = exclude_low_degree_nodes(s, 2);
  CHECK(kept.node_count() == 3);
  CHECK(kept.event_count() == 3);
  CHECK(kept.origin() == s.origin());
  for (const auto& label : kept.labels()) CHECK(label != "d");

  // a-b-c path: the ends go first, then b has nothing left.
  const auto path = parse_events("0 a b\n1 b c\n");
  CHECK(code_of([&] { exclude_low_degree_nodes(path, 2); }) == ErrorCode::Empty);
  CHECK(code_of([&] { exclude_low_degree_nodes(path, -1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("exclusion keeps the time frame") {
  const auto s = parse_events("0 x y\n5 a b\n6 b c\n7 c a\n");
  const auto kept = exclude_low_degree_nodes(s, 2);
  CHECK(kept.first_time() == 5.0);
  CHECK(kept.origin() == 0.0);
}
