/*
 * Copyright 2026 The tiedecay Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the tiedecay library.
 *
 * Objects are opaque handles created by td_*_create / parse / read functions
 * and released with the matching td_*_free (which accept NULL). Every fallible
 * call returns a td_status; on failure td_last_error() describes the problem
 * until the next failing call on the same thread. Output parameters are only
 * written on success.
 */

#ifndef TIEDECAY_H
#define TIEDECAY_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TD_API __declspec(dllexport)
#else
#define TD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum td_status {
  TD_OK = 0,
  TD_ERR_INVALID_ARGUMENT = 1,
  TD_ERR_PARSE = 2,
  TD_ERR_IO = 3,
  TD_ERR_NUMERIC = 4,
  TD_ERR_EMPTY = 5,
  TD_ERR_DEGENERATE = 6,
  TD_ERR_INTERNAL = 99
} td_status;

typedef struct td_stream td_stream;
typedef struct td_config td_config;

typedef struct td_stream_stats {
  size_t nodes;
  size_t edges;
  size_t events;
  double mean_events_per_node;
  size_t distinct_times;
  double horizon;
} td_stream_stats;

TD_API const char* td_version(void);
TD_API const char* td_last_error(void);
/* Stable lowercase identifier, e.g. "parse" or "invalid_argument". */
TD_API const char* td_status_name(td_status status);

/* Event streams: one `t i j` contact per line, '#' comments. */
TD_API td_status td_stream_parse(const char* text, size_t length, int directed, td_stream** out);
TD_API td_status td_stream_read_file(const char* path, int directed, td_stream** out);
TD_API void td_stream_free(td_stream* stream);
TD_API td_status td_stream_get_stats(const td_stream* stream, td_stream_stats* out);
TD_API td_status td_stream_write_file(const td_stream* stream, const char* path);
TD_API td_status td_stream_exclude_low_degree(const td_stream* stream, int min_edges,
                                              td_stream** out);
/* method: "is", "sts", "rt" or "res". repetitions < 0 selects the default
 * (number of distinct event times). */
TD_API td_status td_stream_randomize(const td_stream* stream, const char* method, uint64_t seed,
                                     int64_t repetitions, td_stream** out);

/* Spectral gap of the opinion propagator M(upto). */
TD_API td_status td_spectral_gap(const td_stream* stream, double alpha, double upto,
                                 double* gap);
/* Gap of the aggregate-network propagator over the stream's full window. */
TD_API td_status td_aggregate_gap(const td_stream* stream, double alpha, double* gap);
/* x_out = x0 * M(upto); both arrays hold `n` doubles, n = node count. */
TD_API td_status td_evolve_opinions(const td_stream* stream, double alpha, double upto,
                                    const double* x0, size_t n, double* x_out);

/* Experiment configuration; keys match the CLI long flags without dashes. */
TD_API td_status td_config_create(td_config** out);
TD_API void td_config_free(td_config* config);
TD_API td_status td_config_set(td_config* config, const char* key, const char* value);
TD_API td_status td_config_load_file(td_config* config, const char* path);
TD_API td_status td_run(const td_config* config);

#ifdef __cplusplus
}
#endif

#endif /* TIEDECAY_H */
