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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tiedecay/event_stream.hpp"
#include "tiedecay/propagator.hpp"
#include "tiedecay/randomize.hpp"

namespace tiedecay {

enum class Mode {
  Ensemble,
  AlphaSweep,
  TimeSeries,
  AggregateCompare,
  // Export helpers.
  Stats,
  Randomize,
  AggregateWeights,
  Trajectory,
  Weights,
};

std::string_view mode_name(Mode mode);
Mode parse_mode(std::string_view text);

struct AlphaGrid {
  double lo = 1e-3;
  double hi = 1e2;
  int points = 26;
};

/// `points` values spaced evenly in log(alpha) from lo to hi inclusive.
std::vector<double> log_grid(const AlphaGrid& grid);

/// Everything a CLI run needs. Keys accepted by set() match the long CLI
/// flags without the leading dashes (underscores are accepted for dashes).
struct ExperimentConfig {
  std::string input;
  Mode mode = Mode::Ensemble;
  std::vector<double> alphas;
  std::optional<AlphaGrid> grid;
  std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
  std::size_t ensemble = 50;
  std::uint64_t seed = 0;
  int min_edges = 0;
  bool directed = false;
  std::string out;
  ExpMethod exp_method = ExpMethod::Pade;
  /// Worker threads for ensembles and alpha grids; 0 means hardware concurrency.
  unsigned threads = 0;
  /// Query time for the `weights` export.
  std::optional<double> at;
  /// Initial opinions for the `trajectory` export.
  std::vector<double> x0;

  void set(std::string_view key, std::string_view value);
  /// Flat `key=value` lines; `#` starts a comment line.
  void load_file(const std::string& path);
  void validate() const;

  /// The explicit list, else the grid, else {0.01, 1, 100} (the grid default
  /// 1e-3..1e2 for alpha-sweep).
  std::vector<double> alpha_values() const;
};

struct FiveNumberSummary {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double lo = 0.0;  ///< q1 - 1.5 IQR
  double hi = 0.0;  ///< q3 + 1.5 IQR
  std::vector<double> outliers;
};

/// Quartiles by linear interpolation between order statistics at position
/// p (n - 1) of the sorted sample; outliers are values outside [lo, hi].
FiveNumberSummary summary_stats(std::span<const double> values);

namespace flags {
inline constexpr std::string_view kPositiveSlope = "positive_slope";
inline constexpr std::string_view kDegenerateFiedler = "degenerate_fiedler";
}  // namespace flags

struct ExperimentRecord {
  std::string mode;
  std::string method;
  double alpha = 0.0;
  std::optional<std::uint64_t> seed;
  double t_n = 0.0;
  std::size_t event_count = 0;
  double gap = 0.0;
  std::optional<double> shrinkage_ratio;
  std::string flags;
};

struct SummaryRow {
  std::string method;
  double alpha = 0.0;
  FiveNumberSummary summary;
};

struct ExperimentResult {
  std::vector<ExperimentRecord> records;
  std::vector<SummaryRow> summaries;
};

/// Gap of M(upto) with ties evolved at rate `alpha`.
double propagator_gap(const EventStream& stream, double alpha, double upto,
                      ExpMethod method = ExpMethod::Pade);

/// Original gap plus `ensemble` randomized members per method and alpha. Each
/// member's randomization is shared across alphas; every randomized stream is
/// evaluated at the original horizon.
ExperimentResult run_ensemble(const EventStream& stream, const ExperimentConfig& config);

/// Gap of M(T) per alpha, flagging records whose gap rises towards the next
/// grid point.
ExperimentResult run_alpha_sweep(const EventStream& stream, const ExperimentConfig& config);

/// Per alpha and distinct event time t_n: gap of M(t_n) (before the events at
/// t_n) and the shrinkage of M(t_n)'s left Fiedler vector by Y(t_n+).
ExperimentResult run_time_series(const EventStream& stream, const ExperimentConfig& config);

/// Per alpha: tie-decay gap of M(T) next to the aggregate-network gap at T.
ExperimentResult run_aggregate_compare(const EventStream& stream, const ExperimentConfig& config);

/// flags[k] is set when gap rises from alphas[k] to alphas[k + 1] by more than
/// `dead_band`, i.e. the central difference in log(alpha) at the midpoint of
/// that interval is positive. Expects ascending alphas.
std::vector<bool> positive_slope_flags(std::span<const double> alphas, std::span<const double> gaps,
                                       double dead_band = 1e-9);

/// Sorts by method, alpha, seed (absent first), t_n.
void sort_records(std::vector<ExperimentRecord>& records);

inline constexpr std::string_view kRecordHeader =
    "mode,method,alpha,seed,t_n,event_count,gap,shrinkage_ratio,flags";
inline constexpr std::string_view kSummaryHeader = "method,alpha,q1,median,q3,lo,hi,n_outliers";

void write_records_csv(std::ostream& out, std::span<const ExperimentRecord> records);
void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows);

/// `runs.csv` -> `runs_summary.csv`; paths without a .csv suffix get
/// `_summary.csv` appended.
std::string summary_path(const std::string& out_path);

/// Loads the input, applies node exclusion, runs the configured mode and
/// writes its outputs (stdout when `out` is empty).
void run_experiment(const ExperimentConfig& config);

}  // namespace tiedecay
