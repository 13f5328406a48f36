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

#include "tiedecay/event_stream.hpp"
#include "tiedecay/linalg.hpp"

namespace tiedecay {

/// Tie strengths b_ij(t) of a tie-decay network. Every tie decays as
/// exp(-alpha t) between events and jumps by 1 per event.
class TieDecayState {
 public:
  TieDecayState(std::size_t node_count, double alpha, bool directed, double start_time = 0.0);

  const Matrix& weights() const noexcept { return weights_; }
  double current_time() const noexcept { return time_; }
  double alpha() const noexcept { return alpha_; }
  bool directed() const noexcept { return directed_; }
  std::size_t node_count() const noexcept { return static_cast<std::size_t>(weights_.rows()); }

  /// Multiplies every tie by exp(-alpha (t - current_time)). Throws if t is in
  /// the past.
  void advance_to(double t);

  /// Adds one unit per event. All events must carry the current time.
  void apply(std::span<const Event> events);

 private:
  Matrix weights_;
  double time_;
  double alpha_;
  bool directed_;
};

TieDecayState decay_to(TieDecayState state, double t);
TieDecayState apply_events(TieDecayState state, std::span<const Event> events);

/// Combinatorial Laplacian: L_ij = -b_ij off the diagonal, L_ii = sum_j b_ij.
Matrix laplacian(const Matrix& weights);
inline Matrix laplacian(const TieDecayState& state) { return laplacian(state.weights()); }

/// Laplacian of the static network formed by one batch of simultaneous events.
Matrix event_laplacian(std::span<const Event> events, std::size_t node_count, bool directed);

/// Nonzero ties as `row,col,weight` CSV lines.
void write_weights_csv(std::ostream& out, const TieDecayState& state);

}  // namespace tiedecay
