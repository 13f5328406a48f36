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

#include "tiedecay/event_stream.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "tiedecay/error.hpp"
#include "tiedecay/format.hpp"

namespace tiedecay {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

// Splits on runs of whitespace.
std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

struct RawEvent {
  double time;
  std::string_view a;
  std::string_view b;
};

[[noreturn]] void parse_error(std::size_t line_no, const std::string& what) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

EventStream EventStream::from_events(std::vector<Event> events, std::size_t node_count,
                                     bool directed, double origin,
                                     std::vector<std::string> labels,
                                     double time_resolution) {
  if (events.empty()) throw Error(ErrorCode::Empty, "event stream is empty");
  if (node_count == 0) throw Error(ErrorCode::InvalidArgument, "node count must be positive");
  if (!(time_resolution > 0.0) || !std::isfinite(time_resolution))
    throw Error(ErrorCode::InvalidArgument, "time resolution must be positive");
  if (!std::isfinite(origin) || origin < 0.0)
    throw Error(ErrorCode::InvalidArgument, "origin must be a finite non-negative time");
  for (const Event& e : events) {
    if (!std::isfinite(e.time) || e.time < 0.0)
      throw Error(ErrorCode::InvalidArgument, "event time must be finite and non-negative");
    if (e.time < origin)
      throw Error(ErrorCode::InvalidArgument, "event time precedes the stream origin");
    if (e.source >= node_count || e.target >= node_count)
      throw Error(ErrorCode::InvalidArgument, "node index out of range");
    if (e.source == e.target)
      throw Error(ErrorCode::InvalidArgument, "self-event on node " + std::to_string(e.source));
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const Event& x, const Event& y) { return x.time < y.time; });

  if (labels.empty()) {
    labels.reserve(node_count);
    for (std::size_t i = 0; i < node_count; ++i) labels.push_back(std::to_string(i));
  } else if (labels.size() != node_count) {
    throw Error(ErrorCode::InvalidArgument, "label count does not match node count");
  }

  EventStream s;
  s.events_ = std::move(events);
  s.node_count_ = node_count;
  s.directed_ = directed;
  s.time_resolution_ = time_resolution;
  s.origin_ = origin;
  s.labels_ = std::move(labels);
  return s;
}

EdgeKey EventStream::edge_of(const Event& e) const noexcept {
  if (directed_ || e.source < e.target) return {e.source, e.target};
  return {e.target, e.source};
}

EdgeEventIndex EventStream::edge_index() const {
  EdgeEventIndex index;
  for (const Event& e : events_) index[edge_of(e)].push_back(e.time);
  return index;
}

EventStream parse_events(std::string_view text, const ParseOptions& options) {
  std::vector<RawEvent> raw;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;

    auto tokens = tokenize(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (tokens.size() != 3) parse_error(line_no, "expected 't i j', got " + std::to_string(tokens.size()) + " fields");

    double t = 0.0;
    auto tok = tokens[0];
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), t);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
      parse_error(line_no, "bad time '" + std::string(tok) + "'");
    if (!std::isfinite(t) || t < 0.0) parse_error(line_no, "time must be finite and non-negative");
    if (tokens[1] == tokens[2]) parse_error(line_no, "self-event on '" + std::string(tokens[1]) + "'");
    raw.push_back({t, tokens[1], tokens[2]});
  }
  if (raw.empty()) throw Error(ErrorCode::Empty, "empty input");

  std::stable_sort(raw.begin(), raw.end(),
                   [](const RawEvent& x, const RawEvent& y) { return x.time < y.time; });

  // Dense ids by first appearance in time order so that write/reparse is stable.
  std::unordered_map<std::string_view, NodeId> ids;
  std::vector<std::string> labels;
  auto id_of = [&](std::string_view label) {
    auto [it, inserted] = ids.try_emplace(label, static_cast<NodeId>(labels.size()));
    if (inserted) labels.emplace_back(label);
    return it->second;
  };

  const double t0 = raw.front().time;
  std::vector<Event> events;
  events.reserve(raw.size());
  for (const RawEvent& r : raw) {
    NodeId a = id_of(r.a);
    NodeId b = id_of(r.b);
    events.push_back({r.time - t0, a, b});
  }
  const std::size_t n = labels.size();
  return EventStream::from_events(std::move(events), n, options.directed, 0.0,
                                  std::move(labels), options.time_resolution);
}

EventStream parse_events(std::istream& in, const ParseOptions& options) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_events(buf.str(), options);
}

EventStream read_events_file(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  return parse_events(in, options);
}

void write_events(std::ostream& out, const EventStream& stream) {
  for (const Event& e : stream.events()) {
    out << format_double(e.time) << ' ' << stream.label(e.source) << ' '
        << stream.label(e.target) << '\n';
  }
}

std::string to_text(const EventStream& stream) {
  std::ostringstream out;
  write_events(out, stream);
  return out.str();
}

StreamStats stream_stats(const EventStream& stream) {
  StreamStats st;
  st.nodes = stream.node_count();
  st.events = stream.event_count();
  std::set<EdgeKey> edges;
  for (const Event& e : stream.events()) edges.insert(stream.edge_of(e));
  st.edges = edges.size();
  // Each event involves two nodes.
  st.mean_events_per_node = 2.0 * static_cast<double>(st.events) / static_cast<double>(st.nodes);
  return st;
}

std::vector<EventGroup> group_event_times(const EventStream& stream) {
  std::vector<EventGroup> groups;
  for (const Event& e : stream.events()) {
    if (groups.empty() || groups.back().time != e.time) groups.push_back({e.time, {}});
    groups.back().events.push_back(e);
  }
  return groups;
}

std::size_t distinct_time_count(const EventStream& stream) {
  std::size_t count = 0;
  double last = 0.0;
  for (const Event& e : stream.events()) {
    if (count == 0 || e.time != last) ++count;
    last = e.time;
  }
  return count;
}

EventStream exclude_low_degree_nodes(const EventStream& stream, int min_edges) {
  if (min_edges < 0) throw Error(ErrorCode::InvalidArgument, "min_edges must be non-negative");
  const std::size_t n = stream.node_count();
  std::vector<bool> alive(n, true);
  auto edges = stream.edge_index();

  for (bool changed = true; changed;) {
    changed = false;
    std::vector<int> degree(n, 0);
    for (const auto& [key, times] : edges) {
      if (!alive[key.first] || !alive[key.second]) continue;
      ++degree[key.first];
      ++degree[key.second];
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (alive[i] && degree[i] < min_edges) {
        alive[i] = false;
        changed = true;
      }
    }
  }

  std::vector<NodeId> remap(n, 0);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    remap[i] = static_cast<NodeId>(labels.size());
    labels.push_back(stream.label(static_cast<NodeId>(i)));
  }
  std::vector<Event> kept;
  for (const Event& e : stream.events()) {
    if (alive[e.source] && alive[e.target]) kept.push_back({e.time, remap[e.source], remap[e.target]});
  }
  if (kept.empty()) throw Error(ErrorCode::Empty, "node exclusion left no events");
  const std::size_t kept_nodes = labels.size();
  return EventStream::from_events(std::move(kept), kept_nodes, stream.directed(), stream.origin(),
                                  std::move(labels), stream.time_resolution());
}

}  // namespace tiedecay
