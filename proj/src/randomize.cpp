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

#include "tiedecay/randomize.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tiedecay/error.hpp"
#include "tiedecay/rng.hpp"

namespace tiedecay {

namespace {

struct EdgeTimes {
  EdgeKey key;
  std::vector<double> times;
};

std::vector<EdgeTimes> edge_list(const EventStream& stream) {
  std::vector<EdgeTimes> out;
  for (auto& [key, times] : stream.edge_index()) out.push_back({key, times});
  return out;
}

EventStream rebuild(const EventStream& source, const std::vector<EdgeTimes>& edges) {
  std::vector<Event> events;
  events.reserve(source.event_count());
  for (const EdgeTimes& e : edges)
    for (double t : e.times) events.push_back({t, e.key.first, e.key.second});
  // from_events sorts stably; sort the unsorted per-edge lists first so the
  // result does not depend on swap history beyond the time values.
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.time != b.time) return a.time < b.time;
    if (a.source != b.source) return a.source < b.source;
    return a.target < b.target;
  });
  return EventStream::from_events(std::move(events), source.node_count(), source.directed(),
                                  source.origin(), source.labels(), source.time_resolution());
}

std::size_t default_repetitions(const EventStream& stream, std::optional<std::size_t> reps) {
  return reps.value_or(distinct_time_count(stream));
}

void require_two_edges(const std::vector<EdgeTimes>& edges, const char* what) {
  if (edges.size() < 2)
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " needs at least two edges");
}

// Uniform pair of distinct indices in [0, n): first = below(n), second =
// below(n - 1) shifted past first.
std::pair<std::size_t, std::size_t> distinct_pair(Rng& rng, std::size_t n) {
  const auto a = static_cast<std::size_t>(rng.below(n));
  auto b = static_cast<std::size_t>(rng.below(n - 1));
  if (b >= a) ++b;
  return {a, b};
}

EdgeKey make_key(NodeId a, NodeId b, bool directed) {
  if (directed || a < b) return {a, b};
  return {b, a};
}

}  // namespace

std::string_view method_code(Method method) {
  switch (method) {
    case Method::IntervalShuffling: return "is";
    case Method::ShuffledTimeStamps: return "sts";
    case Method::RandomTimes: return "rt";
    case Method::RandomEdgeShuffling: return "res";
  }
  return "?";
}

Method parse_method(std::string_view text) {
  if (text == "is" || text == "interval_shuffling") return Method::IntervalShuffling;
  if (text == "sts" || text == "shuffled_time_stamps") return Method::ShuffledTimeStamps;
  if (text == "rt" || text == "random_times") return Method::RandomTimes;
  if (text == "res" || text == "random_edge_shuffling") return Method::RandomEdgeShuffling;
  throw Error(ErrorCode::InvalidArgument, "unknown randomization method '" + std::string(text) + "'");
}

EventStream interval_shuffle(const EventStream& stream, std::uint64_t seed) {
  Rng rng(seed);
  auto edges = edge_list(stream);
  for (EdgeTimes& e : edges) {
    auto& t = e.times;
    if (t.size() <= 2) continue;
    std::vector<double> gaps(t.size() - 1);
    for (std::size_t k = 0; k + 1 < t.size(); ++k) gaps[k] = t[k + 1] - t[k];
    // Fisher-Yates, high index first.
    for (std::size_t i = gaps.size() - 1; i > 0; --i) {
      const auto j = static_cast<std::size_t>(rng.below(i + 1));
      std::swap(gaps[i], gaps[j]);
    }
    const double last = t.back();
    for (std::size_t k = 1; k + 1 < t.size(); ++k) t[k] = t[k - 1] + gaps[k - 1];
    t.back() = last;
  }
  return rebuild(stream, edges);
}

EventStream shuffle_time_stamps(const EventStream& stream, std::uint64_t seed,
                                std::optional<std::size_t> repetitions) {
  auto edges = edge_list(stream);
  require_two_edges(edges, "shuffled time stamps");
  Rng rng(seed);
  const std::size_t reps = default_repetitions(stream, repetitions);
  for (std::size_t r = 0; r < reps; ++r) {
    auto [a, b] = distinct_pair(rng, edges.size());
    const auto ka = static_cast<std::size_t>(rng.below(edges[a].times.size()));
    const auto kb = static_cast<std::size_t>(rng.below(edges[b].times.size()));
    std::swap(edges[a].times[ka], edges[b].times[kb]);
  }
  return rebuild(stream, edges);
}

EventStream random_times(const EventStream& stream, std::uint64_t seed) {
  const double lo = stream.origin();
  const double hi = stream.horizon();
  if (!(hi > lo)) throw Error(ErrorCode::InvalidArgument, "random times needs a time window of positive length");
  Rng rng(seed);
  auto edges = edge_list(stream);
  for (EdgeTimes& e : edges)
    for (double& t : e.times) t = std::min(hi, lo + (hi - lo) * rng.uniform());
  return rebuild(stream, edges);
}

EventStream random_edge_shuffle(const EventStream& stream, std::uint64_t seed,
                                std::optional<std::size_t> repetitions) {
  auto edges = edge_list(stream);
  require_two_edges(edges, "random edge shuffling");
  const bool directed = stream.directed();
  std::set<EdgeKey> present;
  for (const EdgeTimes& e : edges) present.insert(e.key);

  Rng rng(seed);
  const std::size_t reps = default_repetitions(stream, repetitions);
  for (std::size_t r = 0; r < reps; ++r) {
    for (int attempt = 0; attempt < kMaxSwapAttempts; ++attempt) {
      auto [a, b] = distinct_pair(rng, edges.size());
      NodeId i = edges[a].key.first;
      NodeId j = edges[a].key.second;
      NodeId k = edges[b].key.first;
      NodeId l = edges[b].key.second;
      // Undirected edges have no intrinsic orientation; draw one per edge so
      // both rewirings, and both ways of handing over the event times, are
      // equally likely.
      if (!directed && rng.coin()) std::swap(i, j);
      if (!directed && rng.coin()) std::swap(k, l);
      if (i == l || k == j) continue;
      const EdgeKey first = make_key(i, l, directed);
      const EdgeKey second = make_key(k, j, directed);
      if (present.count(first) != 0 || present.count(second) != 0) continue;

      present.erase(edges[a].key);
      present.erase(edges[b].key);
      edges[a].key = first;
      edges[b].key = second;
      present.insert(first);
      present.insert(second);
      break;
    }
  }
  return rebuild(stream, edges);
}

EventStream randomize(const EventStream& stream, const RandomizerSpec& spec) {
  switch (spec.method) {
    case Method::IntervalShuffling: return interval_shuffle(stream, spec.seed);
    case Method::ShuffledTimeStamps: return shuffle_time_stamps(stream, spec.seed, spec.repetitions);
    case Method::RandomTimes: return random_times(stream, spec.seed);
    case Method::RandomEdgeShuffling: return random_edge_shuffle(stream, spec.seed, spec.repetitions);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown randomization method");
}

}  // namespace tiedecay
