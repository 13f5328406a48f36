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

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "tiedecay/event_stream.hpp"

namespace tiedecay {

// Reference models for event streams. Every function returns a new stream
// with the same nodes, labels and origin as its input. Outputs depend only on
// the input and the seed.

enum class Method {
  IntervalShuffling,
  ShuffledTimeStamps,
  RandomTimes,
  RandomEdgeShuffling,
};

inline constexpr std::array<Method, 4> kAllMethods = {
    Method::IntervalShuffling, Method::ShuffledTimeStamps, Method::RandomTimes,
    Method::RandomEdgeShuffling};

/// "is", "sts", "rt" or "res".
std::string_view method_code(Method method);
/// Accepts the short codes and the snake_case long names.
Method parse_method(std::string_view text);

struct RandomizerSpec {
  Method method = Method::IntervalShuffling;
  std::uint64_t seed = 0;
  /// Swap count for the swap-based methods; defaults to the number of
  /// distinct event times.
  std::optional<std::size_t> repetitions;
};

/// Per edge, permutes the inter-event times uniformly while keeping the first
/// and last event times fixed. Edges with at most two events are unchanged.
EventStream interval_shuffle(const EventStream& stream, std::uint64_t seed);

/// Repeatedly picks two distinct edges, one event on each, and swaps the two
/// time stamps.
EventStream shuffle_time_stamps(const EventStream& stream, std::uint64_t seed,
                                std::optional<std::size_t> repetitions = std::nullopt);

/// Per edge, redraws each event time uniformly on [origin, T].
EventStream random_times(const EventStream& stream, std::uint64_t seed);

/// Degree-preserving double edge swaps: (i,j),(k,l) -> (i,l),(k,j), each new
/// edge keeping the full time list of the edge it replaces. Swaps that would
/// create a self-loop or an existing edge are redrawn up to
/// kMaxSwapAttempts times and then skipped. Undirected edges are oriented by
/// a fair coin each before the swap. Both swap-based methods need at least
/// two edges.
EventStream random_edge_shuffle(const EventStream& stream, std::uint64_t seed,
                                std::optional<std::size_t> repetitions = std::nullopt);

inline constexpr int kMaxSwapAttempts = 100;

EventStream randomize(const EventStream& stream, const RandomizerSpec& spec);

}  // namespace tiedecay
