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

#include "tiedecay/propagator.hpp"

#include <cmath>
#include <ostream>

#include "tiedecay/error.hpp"
#include "tiedecay/format.hpp"
#include "tiedecay/matrix_exp.hpp"

namespace tiedecay {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw Error(ErrorCode::InvalidArgument, "decay rate must be positive and finite");
}

void check_dimension(const RowVector& x, const EventStream& stream) {
  if (static_cast<std::size_t>(x.size()) != stream.node_count())
    throw Error(ErrorCode::InvalidArgument,
                "opinion vector has " + std::to_string(x.size()) + " entries, stream has " +
                    std::to_string(stream.node_count()) + " nodes");
  if (!x.allFinite()) throw Error(ErrorCode::InvalidArgument, "opinions must be finite");
}

}  // namespace

double decay_coefficient(double alpha, double dt) {
  check_alpha(alpha);
  if (!std::isfinite(dt) || dt < 0.0)
    throw Error(ErrorCode::InvalidArgument, "interval length must be finite and non-negative");
  return std::expm1(-alpha * dt) / alpha;
}

Matrix interval_factor(const Matrix& laplacian, double delta_t, double alpha, ExpMethod method) {
  if (!laplacian.allFinite()) throw Error(ErrorCode::Numeric, "Laplacian has nonfinite entries");
  const double c = decay_coefficient(alpha, delta_t);
  const auto n = laplacian.rows();
  if (c == 0.0 || laplacian.isZero(0.0)) return Matrix::Identity(n, n);

  const Matrix a = c * laplacian.transpose();
  switch (method) {
    case ExpMethod::Pade:
      return expm(a);
    case ExpMethod::Spectral:
      if (laplacian != laplacian.transpose())
        throw Error(ErrorCode::InvalidArgument, "spectral exponential needs a symmetric Laplacian");
      return expm_symmetric(a);
    case ExpMethod::Auto:
      return laplacian == laplacian.transpose() ? expm_symmetric(a) : expm(a);
  }
  return expm(a);
}

PropagatorStepper::PropagatorStepper(std::size_t node_count, double alpha, bool directed,
                                     double origin, ExpMethod method)
    : state_(node_count, alpha, directed, origin),
      m_(Matrix::Identity(static_cast<Eigen::Index>(node_count), static_cast<Eigen::Index>(node_count))),
      method_(method) {}

Matrix PropagatorStepper::factor_to(double t) const {
  if (t < time()) throw Error(ErrorCode::InvalidArgument, "cannot propagate backwards in time");
  return interval_factor(laplacian(state_), t - time(), alpha(), method_);
}

void PropagatorStepper::advance_to(double t, std::vector<IntervalFactor>* log) {
  if (t == time()) return;
  Matrix y = factor_to(t);
  m_ = m_ * y;
  if (log != nullptr) log->push_back({time(), t, std::move(y)});
  state_.advance_to(t);
}

void PropagatorStepper::advance_with(double t, const Matrix& y) {
  if (t < time()) throw Error(ErrorCode::InvalidArgument, "cannot propagate backwards in time");
  m_ = m_ * y;
  state_.advance_to(t);
}

Propagator propagate(const EventStream& stream, double alpha, double upto,
                     const PropagateOptions& options) {
  check_alpha(alpha);
  if (stream.event_count() == 0) throw Error(ErrorCode::Empty, "event stream is empty");
  if (!std::isfinite(upto) || upto < stream.origin())
    throw Error(ErrorCode::InvalidArgument, "query time precedes the stream origin");

  PropagatorStepper stepper(stream.node_count(), alpha, stream.directed(), stream.origin(),
                            options.method);
  Propagator out;
  auto* log = options.keep_factors ? &out.factors : nullptr;
  for (const EventGroup& g : group_event_times(stream)) {
    if (g.time >= upto) break;
    stepper.advance_to(g.time, log);
    stepper.apply(g.events);
    ++out.groups_applied;
  }
  stepper.advance_to(upto, log);
  out.m = stepper.matrix();
  out.time = upto;
  return out;
}

RowVector evolve_opinions(const RowVector& x0, const EventStream& stream, double alpha,
                          double upto, ExpMethod method) {
  check_alpha(alpha);
  check_dimension(x0, stream);
  if (!std::isfinite(upto) || upto < stream.origin())
    throw Error(ErrorCode::InvalidArgument, "query time precedes the stream origin");

  TieDecayState state(stream.node_count(), alpha, stream.directed(), stream.origin());
  RowVector x = x0;
  auto step_to = [&](double t) {
    if (t == state.current_time()) return;
    x = x * interval_factor(laplacian(state), t - state.current_time(), alpha, method);
    state.advance_to(t);
  };
  for (const EventGroup& g : group_event_times(stream)) {
    if (g.time >= upto) break;
    step_to(g.time);
    state.apply(g.events);
  }
  step_to(upto);
  return x;
}

std::vector<TrajectoryPoint> opinion_trajectory(const RowVector& x0, const EventStream& stream,
                                                double alpha) {
  check_alpha(alpha);
  check_dimension(x0, stream);
  TieDecayState state(stream.node_count(), alpha, stream.directed(), stream.origin());
  std::vector<TrajectoryPoint> out{{stream.origin(), x0}};
  RowVector x = x0;
  for (const EventGroup& g : group_event_times(stream)) {
    if (g.time > state.current_time()) {
      x = x * interval_factor(laplacian(state), g.time - state.current_time(), alpha);
      state.advance_to(g.time);
      out.push_back({g.time, x});
    }
    state.apply(g.events);
  }
  return out;
}

void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryPoint> trajectory) {
  out << 't';
  const auto n = trajectory.empty() ? 0 : trajectory.front().x.size();
  for (Eigen::Index i = 0; i < n; ++i) out << ",x" << (i + 1);
  out << '\n';
  for (const TrajectoryPoint& p : trajectory) {
    out << format_double(p.time);
    for (Eigen::Index i = 0; i < p.x.size(); ++i) out << ',' << format_double(p.x(i));
    out << '\n';
  }
}

RowVector ode_oracle(const RowVector& x0, const EventStream& stream, double alpha, double upto,
                     double step) {
  check_alpha(alpha);
  check_dimension(x0, stream);
  if (!(step > 0.0) || !std::isfinite(step))
    throw Error(ErrorCode::InvalidArgument, "integration step must be positive");
  if (!std::isfinite(upto) || upto < stream.origin())
    throw Error(ErrorCode::InvalidArgument, "query time precedes the stream origin");

  TieDecayState state(stream.node_count(), alpha, stream.directed(), stream.origin());
  RowVector x = x0;

  // dx/ds = -x L0^T exp(-alpha s), s measured from the interval start.
  auto integrate = [&](double t_end) {
    const double span = t_end - state.current_time();
    if (span <= 0.0) return;
    const Matrix lt = laplacian(state).transpose();
    const auto n_steps = static_cast<long long>(std::ceil(span / step));
    const double h = span / static_cast<double>(n_steps);
    auto rhs = [&](const RowVector& v, double s) -> RowVector {
      return -(v * lt) * std::exp(-alpha * s);
    };
    for (long long k = 0; k < n_steps; ++k) {
      const double s = static_cast<double>(k) * h;
      const RowVector k1 = rhs(x, s);
      const RowVector k2 = rhs(x + 0.5 * h * k1, s + 0.5 * h);
      const RowVector k3 = rhs(x + 0.5 * h * k2, s + 0.5 * h);
      const RowVector k4 = rhs(x + h * k3, s + h);
      x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    state.advance_to(t_end);
  };

  for (const EventGroup& g : group_event_times(stream)) {
    if (g.time >= upto) break;
    integrate(g.time);
    state.apply(g.events);
  }
  integrate(upto);
  return x;
}

DeGrootTransition degroot_transition(const Matrix& adjacency) {
  DeGrootTransition out;
  out.b = adjacency;
  for (Eigen::Index j = 0; j < adjacency.cols(); ++j) {
    const double total = adjacency.col(j).sum();
    if (total > 0.0) {
      out.b.col(j) /= total;
    } else {
      out.b.col(j).setZero();
      out.b(j, j) = 1.0;
    }
  }
  return out;
}

DeGrootTransition degroot_transition(const TieDecayState& state) {
  return degroot_transition(state.weights());
}

RowVector degroot_run(const RowVector& y_init, const EventStream& stream, double alpha,
                      double delta_t, long long steps) {
  check_alpha(alpha);
  check_dimension(y_init, stream);
  if (!(delta_t > 0.0) || !std::isfinite(delta_t))
    throw Error(ErrorCode::InvalidArgument, "grid spacing must be positive");
  if (steps < 0) throw Error(ErrorCode::InvalidArgument, "step count must be non-negative");

  // Bucket events by grid index.
  auto grid_index = [&](double t) {
    const double rel = t - stream.origin();
    auto k = static_cast<long long>(std::floor(rel / delta_t));
    if (static_cast<double>(k + 1) * delta_t <= rel) ++k;
    return k;
  };

  const auto& events = stream.events();
  std::size_t next = 0;
  TieDecayState state(stream.node_count(), alpha, stream.directed(), 0.0);
  RowVector y = y_init;
  std::vector<Event> batch;
  for (long long n = 0; n < steps; ++n) {
    const double t = static_cast<double>(n) * delta_t;
    state.advance_to(t);
    batch.clear();
    while (next < events.size() && grid_index(events[next].time) <= n) {
      batch.push_back({t, events[next].source, events[next].target});
      ++next;
    }
    state.apply(batch);
    y = y * degroot_transition(state).b;
  }
  return y;
}

DeGrootTransition degroot_from_laplacian(const Matrix& laplacian, double t_prev, double t_next,
                                         double alpha) {
  if (!(t_next >= t_prev)) throw Error(ErrorCode::InvalidArgument, "t_next precedes t_prev");
  return {interval_factor(laplacian, t_next - t_prev, alpha), 0};
}

}  // namespace tiedecay
