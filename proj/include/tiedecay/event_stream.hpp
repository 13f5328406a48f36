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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tiedecay {

using NodeId = std::uint32_t;

struct Event {
  double time = 0.0;
  NodeId source = 0;
  NodeId target = 0;

  friend bool operator==(const Event&, const Event&) = default;
};

/// Node pair identifying an edge. Undirected streams always use the
/// canonical orientation (smaller index first).
struct EdgeKey {
  NodeId first = 0;
  NodeId second = 0;

  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

/// Per-edge sorted event times. Keys are canonical for undirected streams.
using EdgeEventIndex = std::map<EdgeKey, std::vector<double>>;

struct ParseOptions {
  bool directed = false;
  double time_resolution = 1.0;
};

/// Time-sorted, validated contact events on a dense node set.
///
/// `origin` is the time at which opinion dynamics start (M = identity). Parsed
/// streams are shifted so that the first event sits at origin = 0; randomized
/// streams inherit the origin of their source so all members of an ensemble
/// share one time frame.
class EventStream {
 public:
  EventStream() = default;

  /// Validates and stably sorts `events`. Throws on out-of-range node
  /// indices, self-events, negative or nonfinite times, or an empty list.
  static EventStream from_events(std::vector<Event> events, std::size_t node_count,
                                 bool directed, double origin = 0.0,
                                 std::vector<std::string> labels = {},
                                 double time_resolution = 1.0);

  std::span<const Event> events() const noexcept { return events_; }
  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t event_count() const noexcept { return events_.size(); }
  bool directed() const noexcept { return directed_; }
  double time_resolution() const noexcept { return time_resolution_; }
  double origin() const noexcept { return origin_; }
  /// Time of the last event.
  double horizon() const noexcept { return events_.back().time; }
  double first_time() const noexcept { return events_.front().time; }

  /// Original identifier of node `i` (its decimal index when none was given).
  const std::string& label(NodeId i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  EdgeKey edge_of(const Event& e) const noexcept;
  EdgeEventIndex edge_index() const;

 private:
  std::vector<Event> events_;
  std::size_t node_count_ = 0;
  bool directed_ = false;
  double time_resolution_ = 1.0;
  double origin_ = 0.0;
  std::vector<std::string> labels_;
};

/// Events sharing one time stamp.
struct EventGroup {
  double time = 0.0;
  std::vector<Event> events;
};

struct StreamStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t events = 0;
  double mean_events_per_node = 0.0;
};

/// Parses `t i j` lines. Blank lines and lines starting with `#` are skipped.
/// Labels are relabeled densely in order of first appearance and times are
/// shifted so the earliest event occurs at 0.
EventStream parse_events(std::string_view text, const ParseOptions& options = {});
EventStream parse_events(std::istream& in, const ParseOptions& options = {});
EventStream read_events_file(const std::string& path, const ParseOptions& options = {});

/// Writes one `t i j` line per event using the stream's node labels. Times are
/// printed as shortest round-trip decimals, so reparsing reproduces the
/// stream exactly when its origin is 0.
void write_events(std::ostream& out, const EventStream& stream);
std::string to_text(const EventStream& stream);

StreamStats stream_stats(const EventStream& stream);

std::vector<EventGroup> group_event_times(const EventStream& stream);

/// Number of distinct time stamps.
std::size_t distinct_time_count(const EventStream& stream);

/// Iteratively drops nodes with fewer than `min_edges` distinct incident
/// edges (and their events) until every surviving node qualifies.
EventStream exclude_low_degree_nodes(const EventStream& stream, int min_edges);

}  // namespace tiedecay
