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

#include "tiedecay/tiedecay.h"

#include <fstream>
#include <new>
#include <string>

#include "tiedecay/aggregate.hpp"
#include "tiedecay/error.hpp"
#include "tiedecay/event_stream.hpp"
#include "tiedecay/experiments.hpp"
#include "tiedecay/propagator.hpp"
#include "tiedecay/randomize.hpp"
#include "tiedecay/spectral.hpp"

struct td_stream {
  tiedecay::EventStream stream;
};

struct td_config {
  tiedecay::ExperimentConfig config;
};

namespace {

thread_local std::string last_error;

td_status to_status(tiedecay::ErrorCode code) {
  using tiedecay::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return TD_ERR_INVALID_ARGUMENT;
    case ErrorCode::Parse: return TD_ERR_PARSE;
    case ErrorCode::Io: return TD_ERR_IO;
    case ErrorCode::Numeric: return TD_ERR_NUMERIC;
    case ErrorCode::Empty: return TD_ERR_EMPTY;
    case ErrorCode::Degenerate: return TD_ERR_DEGENERATE;
  }
  return TD_ERR_INTERNAL;
}

td_status fail(td_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename Fn>
td_status guarded(Fn&& body) {
  try {
    body();
    return TD_OK;
  } catch (const tiedecay::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(TD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TD_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(TD_ERR_INTERNAL, "unknown error");
  }
}

#define TD_REQUIRE(cond, what)                                \
  do {                                                        \
    if (!(cond)) return fail(TD_ERR_INVALID_ARGUMENT, what);  \
  } while (0)

}  // namespace

extern "C" {

const char* td_version(void) { return "1.0.0"; }

const char* td_last_error(void) { return last_error.c_str(); }

const char* td_status_name(td_status status) {
  switch (status) {
    case TD_OK: return "ok";
    case TD_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case TD_ERR_PARSE: return "parse";
    case TD_ERR_IO: return "io";
    case TD_ERR_NUMERIC: return "numeric";
    case TD_ERR_EMPTY: return "empty";
    case TD_ERR_DEGENERATE: return "degenerate";
    case TD_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

td_status td_stream_parse(const char* text, size_t length, int directed, td_stream** out) {
  TD_REQUIRE(out != nullptr, "output handle is null");
  TD_REQUIRE(text != nullptr || length == 0, "text is null");
  return guarded([&] {
    tiedecay::ParseOptions options;
    options.directed = directed != 0;
    auto stream = tiedecay::parse_events(std::string_view(text == nullptr ? "" : text, length), options);
    *out = new td_stream{std::move(stream)};
  });
}

td_status td_stream_read_file(const char* path, int directed, td_stream** out) {
  TD_REQUIRE(out != nullptr, "output handle is null");
  TD_REQUIRE(path != nullptr, "path is null");
  return guarded([&] {
    tiedecay::ParseOptions options;
    options.directed = directed != 0;
    *out = new td_stream{tiedecay::read_events_file(path, options)};
  });
}

void td_stream_free(td_stream* stream) { delete stream; }

td_status td_stream_get_stats(const td_stream* stream, td_stream_stats* out) {
  TD_REQUIRE(stream != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    const auto st = tiedecay::stream_stats(stream->stream);
    *out = td_stream_stats{st.nodes, st.edges, st.events, st.mean_events_per_node,
                           tiedecay::distinct_time_count(stream->stream), stream->stream.horizon()};
  });
}

td_status td_stream_write_file(const td_stream* stream, const char* path) {
  TD_REQUIRE(stream != nullptr && path != nullptr, "null argument");
  return guarded([&] {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw tiedecay::Error(tiedecay::ErrorCode::Io, std::string("cannot write '") + path + "'");
    tiedecay::write_events(file, stream->stream);
    if (!file) throw tiedecay::Error(tiedecay::ErrorCode::Io, std::string("write to '") + path + "' failed");
  });
}

td_status td_stream_exclude_low_degree(const td_stream* stream, int min_edges, td_stream** out) {
  TD_REQUIRE(stream != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    *out = new td_stream{tiedecay::exclude_low_degree_nodes(stream->stream, min_edges)};
  });
}

td_status td_stream_randomize(const td_stream* stream, const char* method, uint64_t seed,
                              int64_t repetitions, td_stream** out) {
  TD_REQUIRE(stream != nullptr && method != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    tiedecay::RandomizerSpec spec;
    spec.method = tiedecay::parse_method(method);
    spec.seed = seed;
    if (repetitions >= 0) spec.repetitions = static_cast<std::size_t>(repetitions);
    *out = new td_stream{tiedecay::randomize(stream->stream, spec)};
  });
}

td_status td_spectral_gap(const td_stream* stream, double alpha, double upto, double* gap) {
  TD_REQUIRE(stream != nullptr && gap != nullptr, "null argument");
  return guarded([&] { *gap = tiedecay::propagator_gap(stream->stream, alpha, upto); });
}

td_status td_aggregate_gap(const td_stream* stream, double alpha, double* gap) {
  TD_REQUIRE(stream != nullptr && gap != nullptr, "null argument");
  return guarded([&] {
    const auto agg = tiedecay::aggregate_weights(stream->stream, alpha);
    *gap = tiedecay::spectral_gap(tiedecay::aggregate_propagator(agg, agg.duration()));
  });
}

td_status td_evolve_opinions(const td_stream* stream, double alpha, double upto, const double* x0,
                             size_t n, double* x_out) {
  TD_REQUIRE(stream != nullptr && x0 != nullptr && x_out != nullptr, "null argument");
  TD_REQUIRE(n == stream->stream.node_count(), "opinion length does not match node count");
  return guarded([&] {
    tiedecay::RowVector x = Eigen::Map<const tiedecay::RowVector>(x0, static_cast<Eigen::Index>(n));
    const tiedecay::RowVector result = tiedecay::evolve_opinions(x, stream->stream, alpha, upto);
    Eigen::Map<tiedecay::RowVector>(x_out, static_cast<Eigen::Index>(n)) = result;
  });
}

td_status td_config_create(td_config** out) {
  TD_REQUIRE(out != nullptr, "output handle is null");
  return guarded([&] { *out = new td_config{}; });
}

void td_config_free(td_config* config) { delete config; }

td_status td_config_set(td_config* config, const char* key, const char* value) {
  TD_REQUIRE(config != nullptr && key != nullptr && value != nullptr, "null argument");
  return guarded([&] { config->config.set(key, value); });
}

td_status td_config_load_file(td_config* config, const char* path) {
  TD_REQUIRE(config != nullptr && path != nullptr, "null argument");
  return guarded([&] { config->config.load_file(path); });
}

td_status td_run(const td_config* config) {
  TD_REQUIRE(config != nullptr, "null argument");
  return guarded([&] { tiedecay::run_experiment(config->config); });
}

}  // extern "C"
