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
#include <iosfwd>
#include <span>
#include <vector>

#include "tiedecay/event_stream.hpp"
#include "tiedecay/linalg.hpp"
#include "tiedecay/tie_decay.hpp"

namespace tiedecay {

enum class ExpMethod {
  Pade,      ///< scaling and squaring, any matrix
  Spectral,  ///< eigendecomposition; requires a symmetric Laplacian
  Auto,      ///< Spectral when the Laplacian is exactly symmetric, else Pade
};

/// (exp(-alpha dt) - 1) / alpha, evaluated with expm1 so that alpha*dt << 1
/// keeps full relative precision. Always in [-dt, 0].
double decay_coefficient(double alpha, double dt);

/// Propagator of one inter-event interval of length `delta_t` whose ties
/// start at Laplacian `laplacian` and decay at rate `alpha`:
/// exp(c L^T) with c = decay_coefficient(alpha, delta_t). Non-negative and
/// column-stochastic.
Matrix interval_factor(const Matrix& laplacian, double delta_t, double alpha,
                       ExpMethod method = ExpMethod::Pade);

struct IntervalFactor {
  double start = 0.0;
  double end = 0.0;
  Matrix y;
};

/// Incremental form of the opinion propagator. Holds M(t) together with the
/// tie-decay state that drives the next interval.
class PropagatorStepper {
 public:
  PropagatorStepper(std::size_t node_count, double alpha, bool directed, double origin,
                    ExpMethod method = ExpMethod::Pade);

  /// Factor from the current time to `t` under the current ties (no events).
  Matrix factor_to(double t) const;

  /// M <- M * factor_to(t); ties decay to `t`. Zero-length steps are no-ops.
  /// The applied factor is appended to `log` when one is given.
  void advance_to(double t, std::vector<IntervalFactor>* log = nullptr);

  /// Same as advance_to with a factor already obtained from factor_to(t).
  void advance_with(double t, const Matrix& y);

  /// Bumps ties for events at the current time (the t- to t+ jump).
  void apply(std::span<const Event> events) { state_.apply(events); }

  const Matrix& matrix() const noexcept { return m_; }
  const TieDecayState& state() const noexcept { return state_; }
  double time() const noexcept { return state_.current_time(); }
  double alpha() const noexcept { return state_.alpha(); }

 private:
  TieDecayState state_;
  Matrix m_;
  ExpMethod method_;
};

struct PropagateOptions {
  bool keep_factors = false;
  ExpMethod method = ExpMethod::Pade;
};

struct Propagator {
  Matrix m;
  double time = 0.0;
  /// Number of event groups whose ties have been applied.
  std::size_t groups_applied = 0;
  std::vector<IntervalFactor> factors;
};

/// M(upto) = Y_0 Y_1 ... from the stream origin. When `upto` coincides with an
/// event time the events at that time are not applied (M is continuous there).
Propagator propagate(const EventStream& stream, double alpha, double upto,
                     const PropagateOptions& options = {});

/// x0 * M(upto), one factor at a time.
RowVector evolve_opinions(const RowVector& x0, const EventStream& stream, double alpha,
                          double upto, ExpMethod method = ExpMethod::Pade);

/// Opinions at the origin and at every distinct event time.
struct TrajectoryPoint {
  double time = 0.0;
  RowVector x;
};
std::vector<TrajectoryPoint> opinion_trajectory(const RowVector& x0, const EventStream& stream,
                                                double alpha);
void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryPoint> trajectory);

/// Reference solution of dx/dt = -x L(t)^T by classical RK4 with steps no
/// longer than `step`, integrating the decaying Laplacian directly. Shares
/// nothing with the matrix-exponential path; meant for verification.
RowVector ode_oracle(const RowVector& x0, const EventStream& stream, double alpha, double upto,
                     double step);

struct DeGrootTransition {
  Matrix b;
  std::size_t step = 0;
};

/// Column-normalizes the tie matrix; an all-zero column becomes the matching
/// identity column (a node without in-ties keeps its opinion).
DeGrootTransition degroot_transition(const TieDecayState& state);
DeGrootTransition degroot_transition(const Matrix& adjacency);

/// Discrete-time DeGroot dynamics on a grid of spacing `delta_t`. Event times
/// are floored onto the grid (relative to the stream origin). After `steps`
/// steps the result is y_init B(0) B(dt) ... B((steps-1) dt).
RowVector degroot_run(const RowVector& y_init, const EventStream& stream, double alpha,
                      double delta_t, long long steps);

/// The interval propagator between consecutive event times viewed as a
/// DeGroot transition matrix.
DeGrootTransition degroot_from_laplacian(const Matrix& laplacian, double t_prev, double t_next,
                                         double alpha);

}  // namespace tiedecay
