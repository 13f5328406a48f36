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

#include "tiedecay/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "tiedecay/aggregate.hpp"
#include "tiedecay/error.hpp"
#include "tiedecay/format.hpp"
#include "tiedecay/rng.hpp"
#include "tiedecay/spectral.hpp"

namespace tiedecay {

namespace {

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorCode::InvalidArgument, what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
    config_error(std::string(key) + ": expected a number, got '" + std::string(text) + "'");
  return v;
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view text) {
  text = trim(text);
  Int v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    config_error(std::string(key) + ": expected an integer, got '" + std::string(text) + "'");
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text.empty() || text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  config_error(std::string(key) + ": expected a boolean, got '" + std::string(text) + "'");
}

// Runs fn(0..n-1) on up to `threads` workers; results land wherever fn puts
// them, so output order never depends on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::size_t events_at(const EventStream& stream, double t) {
  auto events = stream.events();
  auto lo = std::lower_bound(events.begin(), events.end(), t,
                             [](const Event& e, double v) { return e.time < v; });
  auto hi = std::upper_bound(events.begin(), events.end(), t,
                             [](double v, const Event& e) { return v < e.time; });
  return static_cast<std::size_t>(hi - lo);
}

void append_flag(std::string& flags, std::string_view flag) {
  if (!flags.empty()) flags += ';';
  flags += flag;
}

}  // namespace

std::string_view mode_name(Mode mode) {
  switch (mode) {
    case Mode::Ensemble: return "ensemble";
    case Mode::AlphaSweep: return "alpha-sweep";
    case Mode::TimeSeries: return "time-series";
    case Mode::AggregateCompare: return "aggregate-compare";
    case Mode::Stats: return "stats";
    case Mode::Randomize: return "randomize";
    case Mode::AggregateWeights: return "aggregate-weights";
    case Mode::Trajectory: return "trajectory";
    case Mode::Weights: return "weights";
  }
  return "?";
}

Mode parse_mode(std::string_view text) {
  for (Mode m : {Mode::Ensemble, Mode::AlphaSweep, Mode::TimeSeries, Mode::AggregateCompare,
                 Mode::Stats, Mode::Randomize, Mode::AggregateWeights, Mode::Trajectory,
                 Mode::Weights}) {
    if (text == mode_name(m)) return m;
  }
  config_error("unknown mode '" + std::string(text) + "'");
}

std::vector<double> log_grid(const AlphaGrid& grid) {
  if (!(grid.lo > 0.0) || !(grid.hi > grid.lo) || grid.points < 2)
    config_error("alpha grid needs 0 < lo < hi and at least 2 points");
  std::vector<double> out(static_cast<std::size_t>(grid.points));
  const double a = std::log(grid.lo);
  const double b = std::log(grid.hi);
  for (int k = 0; k < grid.points; ++k)
    out[static_cast<std::size_t>(k)] = std::exp(a + (b - a) * k / (grid.points - 1));
  out.front() = grid.lo;
  out.back() = grid.hi;
  return out;
}

void ExperimentConfig::set(std::string_view raw_key, std::string_view value) {
  std::string key(trim(raw_key));
  while (!key.empty() && key.front() == '-') key.erase(key.begin());
  std::replace(key.begin(), key.end(), '_', '-');
  value = trim(value);

  if (key == "input") {
    input = std::string(value);
  } else if (key == "mode") {
    mode = parse_mode(value);
  } else if (key == "alpha") {
    alphas.clear();
    for (auto part : split(value, ',')) alphas.push_back(parse_double(key, part));
  } else if (key == "alpha-grid") {
    auto parts = split(value, ':');
    if (parts.size() != 3) config_error("alpha-grid: expected LO:HI:POINTS");
    grid = AlphaGrid{parse_double(key, parts[0]), parse_double(key, parts[1]),
                     parse_int<int>(key, parts[2])};
  } else if (key == "method") {
    methods.clear();
    if (value == "all") {
      methods.assign(kAllMethods.begin(), kAllMethods.end());
    } else {
      for (auto part : split(value, ',')) methods.push_back(parse_method(part));
    }
  } else if (key == "ensemble") {
    ensemble = parse_int<std::size_t>(key, value);
  } else if (key == "seed") {
    seed = parse_int<std::uint64_t>(key, value);
  } else if (key == "min-edges") {
    min_edges = parse_int<int>(key, value);
  } else if (key == "directed") {
    directed = parse_bool(key, value);
  } else if (key == "out") {
    out = std::string(value);
  } else if (key == "exp-method") {
    if (value == "pade") exp_method = ExpMethod::Pade;
    else if (value == "spectral") exp_method = ExpMethod::Spectral;
    else if (value == "auto") exp_method = ExpMethod::Auto;
    else config_error("exp-method: expected pade, spectral or auto");
  } else if (key == "threads") {
    threads = parse_int<unsigned>(key, value);
  } else if (key == "at") {
    at = parse_double(key, value);
  } else if (key == "x0") {
    x0.clear();
    for (auto part : split(value, ',')) x0.push_back(parse_double(key, part));
  } else {
    config_error("unknown option '" + key + "'");
  }
}

void ExperimentConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config '" + path + "'");
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos)
      config_error(path + ":" + std::to_string(line_no) + ": expected key=value");
    set(text.substr(0, eq), text.substr(eq + 1));
  }
}

void ExperimentConfig::validate() const {
  if (input.empty()) config_error("input path is required");
  if (ensemble < 1) config_error("ensemble size must be at least 1");
  if (min_edges < 0) config_error("min-edges must be non-negative");
  if (methods.empty()) config_error("at least one randomization method is required");
  for (double a : alphas)
    if (!(a > 0.0)) config_error("alpha values must be positive");
  if (grid) log_grid(*grid);
  if ((mode == Mode::Randomize) && methods.size() != 1)
    config_error("randomize mode needs exactly one method");
  if (mode == Mode::Weights && !at) config_error("weights mode needs --at");
}

std::vector<double> ExperimentConfig::alpha_values() const {
  if (!alphas.empty()) return alphas;
  if (grid) return log_grid(*grid);
  if (mode == Mode::AlphaSweep) return log_grid(AlphaGrid{});
  return {0.01, 1.0, 100.0};
}

FiveNumberSummary summary_stats(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::Empty, "summary of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  auto quantile = [&](double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto below = static_cast<std::size_t>(std::floor(pos));
    const std::size_t above = std::min(below + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(below);
    return sorted[below] + frac * (sorted[above] - sorted[below]);
  };
  FiveNumberSummary s;
  s.q1 = quantile(0.25);
  s.median = quantile(0.5);
  s.q3 = quantile(0.75);
  const double iqr = s.q3 - s.q1;
  s.lo = s.q1 - 1.5 * iqr;
  s.hi = s.q3 + 1.5 * iqr;
  for (double v : sorted)
    if (v < s.lo || v > s.hi) s.outliers.push_back(v);
  return s;
}

double propagator_gap(const EventStream& stream, double alpha, double upto, ExpMethod method) {
  PropagateOptions options;
  options.method = method;
  return spectral_gap(propagate(stream, alpha, upto, options).m);
}

ExperimentResult run_ensemble(const EventStream& stream, const ExperimentConfig& config) {
  const auto alphas = config.alpha_values();
  const double horizon = stream.horizon();
  const std::size_t at_horizon = events_at(stream, horizon);
  const std::string mode(mode_name(Mode::Ensemble));
  ExperimentResult result;

  for (double alpha : alphas) {
    result.records.push_back({mode, "original", alpha, std::nullopt, horizon, at_horizon,
                              propagator_gap(stream, alpha, horizon, config.exp_method), {}, {}});
  }

  for (Method method : config.methods) {
    std::vector<ExperimentRecord> rows(config.ensemble * alphas.size());
    parallel_for(config.ensemble, config.threads, [&](std::size_t member) {
      const std::uint64_t seed = member_seed(config.seed, member);
      const EventStream shuffled = randomize(stream, {method, seed, std::nullopt});
      const std::size_t count = events_at(shuffled, horizon);
      for (std::size_t a = 0; a < alphas.size(); ++a) {
        rows[member * alphas.size() + a] = {
            mode, std::string(method_code(method)), alphas[a], seed, horizon, count,
            propagator_gap(shuffled, alphas[a], horizon, config.exp_method), {}, {}};
      }
    });
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      std::vector<double> gaps;
      for (std::size_t m = 0; m < config.ensemble; ++m) gaps.push_back(rows[m * alphas.size() + a].gap);
      result.summaries.push_back({std::string(method_code(method)), alphas[a], summary_stats(gaps)});
    }
    result.records.insert(result.records.end(), rows.begin(), rows.end());
  }
  sort_records(result.records);
  std::stable_sort(result.summaries.begin(), result.summaries.end(),
                   [](const SummaryRow& x, const SummaryRow& y) {
                     return std::tie(x.method, x.alpha) < std::tie(y.method, y.alpha);
                   });
  return result;
}

std::vector<bool> positive_slope_flags(std::span<const double> alphas, std::span<const double> gaps,
                                       double dead_band) {
  if (alphas.size() != gaps.size()) throw Error(ErrorCode::InvalidArgument, "alpha/gap length mismatch");
  std::vector<bool> out(alphas.size(), false);
  for (std::size_t k = 0; k + 1 < alphas.size(); ++k) {
    const double run = std::log(alphas[k + 1]) - std::log(alphas[k]);
    if (!(run > 0.0)) throw Error(ErrorCode::InvalidArgument, "alphas must be strictly increasing");
    const double rise = gaps[k + 1] - gaps[k];
    out[k] = rise > dead_band;
  }
  return out;
}

ExperimentResult run_alpha_sweep(const EventStream& stream, const ExperimentConfig& config) {
  auto alphas = config.alpha_values();
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
  const double horizon = stream.horizon();
  std::vector<double> gaps(alphas.size());
  parallel_for(alphas.size(), config.threads, [&](std::size_t k) {
    gaps[k] = propagator_gap(stream, alphas[k], horizon, config.exp_method);
  });
  const auto rising = positive_slope_flags(alphas, gaps);
  const std::size_t count = events_at(stream, horizon);
  ExperimentResult result;
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    ExperimentRecord r{std::string(mode_name(Mode::AlphaSweep)), "original", alphas[k], std::nullopt,
                       horizon, count, gaps[k], {}, {}};
    if (rising[k]) append_flag(r.flags, flags::kPositiveSlope);
    result.records.push_back(std::move(r));
  }
  sort_records(result.records);
  return result;
}

ExperimentResult run_time_series(const EventStream& stream, const ExperimentConfig& config) {
  const auto alphas = config.alpha_values();
  const auto groups = group_event_times(stream);
  std::vector<std::vector<ExperimentRecord>> per_alpha(alphas.size());

  parallel_for(alphas.size(), config.threads, [&](std::size_t a) {
    const double alpha = alphas[a];
    PropagatorStepper stepper(stream.node_count(), alpha, stream.directed(), stream.origin(),
                              config.exp_method);
    auto& rows = per_alpha[a];
    for (std::size_t n = 0; n < groups.size(); ++n) {
      stepper.advance_to(groups[n].time);
      ExperimentRecord r{std::string(mode_name(Mode::TimeSeries)), "original", alpha, std::nullopt,
                         groups[n].time, groups[n].events.size(), spectral_gap(stepper.matrix()),
                         {}, {}};
      stepper.apply(groups[n].events);
      const double next = n + 1 < groups.size() ? groups[n + 1].time : groups[n].time;
      const Matrix y = stepper.factor_to(next);
      try {
        r.shrinkage_ratio = shrinkage_ratio(stepper.matrix(), y).ratio;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::Degenerate) throw;
        append_flag(r.flags, flags::kDegenerateFiedler);
      }
      stepper.advance_with(next, y);
      rows.push_back(std::move(r));
    }
  });

  ExperimentResult result;
  for (auto& rows : per_alpha) result.records.insert(result.records.end(), rows.begin(), rows.end());
  sort_records(result.records);
  return result;
}

ExperimentResult run_aggregate_compare(const EventStream& stream, const ExperimentConfig& config) {
  const auto alphas = config.alpha_values();
  const double horizon = stream.horizon();
  const std::size_t count = events_at(stream, horizon);
  const std::string mode(mode_name(Mode::AggregateCompare));
  std::vector<ExperimentRecord> rows(2 * alphas.size());
  parallel_for(alphas.size(), config.threads, [&](std::size_t k) {
    const double alpha = alphas[k];
    const double tie_gap = propagator_gap(stream, alpha, horizon, config.exp_method);
    double agg_gap = 0.0;
    if (horizon > stream.origin()) {
      const AggregateNetwork agg = aggregate_weights(stream, alpha);
      agg_gap = spectral_gap(aggregate_propagator(agg, agg.duration()));
    }
    rows[2 * k] = {mode, "tie_decay", alpha, std::nullopt, horizon, count, tie_gap, {}, {}};
    rows[2 * k + 1] = {mode, "aggregate", alpha, std::nullopt, horizon, count, agg_gap, {}, {}};
  });
  ExperimentResult result;
  result.records = std::move(rows);
  sort_records(result.records);
  return result;
}

void sort_records(std::vector<ExperimentRecord>& records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const ExperimentRecord& x, const ExperimentRecord& y) {
                     return std::tie(x.method, x.alpha, x.seed, x.t_n) <
                            std::tie(y.method, y.alpha, y.seed, y.t_n);
                   });
}

void write_records_csv(std::ostream& out, std::span<const ExperimentRecord> records) {
  out << kRecordHeader << '\n';
  for (const ExperimentRecord& r : records) {
    out << r.mode << ',' << r.method << ',' << format_double(r.alpha) << ',';
    if (r.seed) out << *r.seed;
    out << ',' << format_double(r.t_n) << ',' << r.event_count << ',' << format_double(r.gap) << ',';
    if (r.shrinkage_ratio) out << format_double(*r.shrinkage_ratio);
    out << ',' << r.flags << '\n';
  }
}

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows) {
  out << kSummaryHeader << '\n';
  for (const SummaryRow& r : rows) {
    const auto& s = r.summary;
    out << r.method << ',' << format_double(r.alpha) << ',' << format_double(s.q1) << ','
        << format_double(s.median) << ',' << format_double(s.q3) << ',' << format_double(s.lo) << ','
        << format_double(s.hi) << ',' << s.outliers.size() << '\n';
  }
}

std::string summary_path(const std::string& out_path) {
  constexpr std::string_view suffix = ".csv";
  if (out_path.size() >= suffix.size() &&
      out_path.compare(out_path.size() - suffix.size(), suffix.size(), suffix) == 0)
    return out_path.substr(0, out_path.size() - suffix.size()) + "_summary.csv";
  return out_path + "_summary.csv";
}

namespace {

// Writes to `path`, or stdout when it is empty.
template <typename Fn>
void emit(const std::string& path, Fn write) {
  if (path.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  write(file);
  if (!file) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

double single_alpha(const ExperimentConfig& config) {
  const auto alphas = config.alpha_values();
  if (config.alphas.size() != 1) config_error(std::string(mode_name(config.mode)) + " mode needs exactly one --alpha");
  return alphas.front();
}

}  // namespace

void run_experiment(const ExperimentConfig& config) {
  config.validate();
  ParseOptions options;
  options.directed = config.directed;
  EventStream stream = read_events_file(config.input, options);
  if (config.min_edges > 0) stream = exclude_low_degree_nodes(stream, config.min_edges);

  ExperimentResult result;
  switch (config.mode) {
    case Mode::Ensemble: result = run_ensemble(stream, config); break;
    case Mode::AlphaSweep: result = run_alpha_sweep(stream, config); break;
    case Mode::TimeSeries: result = run_time_series(stream, config); break;
    case Mode::AggregateCompare: result = run_aggregate_compare(stream, config); break;
    case Mode::Stats: {
      const StreamStats st = stream_stats(stream);
      emit(config.out, [&](std::ostream& out) {
        out << "nodes,edges,events,mean_events_per_node,distinct_times,horizon\n"
            << st.nodes << ',' << st.edges << ',' << st.events << ','
            << format_double(st.mean_events_per_node) << ',' << distinct_time_count(stream) << ','
            << format_double(stream.horizon()) << '\n';
      });
      return;
    }
    case Mode::Randomize: {
      const EventStream shuffled = randomize(stream, {config.methods.front(), config.seed, std::nullopt});
      emit(config.out, [&](std::ostream& out) { write_events(out, shuffled); });
      return;
    }
    case Mode::AggregateWeights: {
      const AggregateNetwork agg = aggregate_weights(stream, single_alpha(config));
      emit(config.out, [&](std::ostream& out) { write_aggregate_csv(out, agg); });
      return;
    }
    case Mode::Trajectory: {
      RowVector x0(static_cast<Eigen::Index>(stream.node_count()));
      if (config.x0.empty()) {
        for (Eigen::Index i = 0; i < x0.size(); ++i)
          x0(i) = x0.size() > 1 ? static_cast<double>(i) / static_cast<double>(x0.size() - 1) : 0.0;
      } else {
        if (config.x0.size() != stream.node_count())
          config_error("x0 has " + std::to_string(config.x0.size()) + " values for " +
                       std::to_string(stream.node_count()) + " nodes");
        for (Eigen::Index i = 0; i < x0.size(); ++i) x0(i) = config.x0[static_cast<std::size_t>(i)];
      }
      const auto traj = opinion_trajectory(x0, stream, single_alpha(config));
      emit(config.out, [&](std::ostream& out) { write_trajectory_csv(out, traj); });
      return;
    }
    case Mode::Weights: {
      TieDecayState state(stream.node_count(), single_alpha(config), stream.directed(), stream.origin());
      if (*config.at < stream.origin()) config_error("--at precedes the stream origin");
      for (const EventGroup& g : group_event_times(stream)) {
        if (g.time > *config.at) break;
        state.advance_to(g.time);
        state.apply(g.events);
      }
      state.advance_to(*config.at);
      emit(config.out, [&](std::ostream& out) { write_weights_csv(out, state); });
      return;
    }
  }

  emit(config.out, [&](std::ostream& out) { write_records_csv(out, result.records); });
  if (config.mode == Mode::Ensemble) {
    const std::string path = config.out.empty() ? std::string() : summary_path(config.out);
    emit(path, [&](std::ostream& out) { write_summary_csv(out, result.summaries); });
  }
}

}  // namespace tiedecay
