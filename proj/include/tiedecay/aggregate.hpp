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

#include <iosfwd>

#include "tiedecay/event_stream.hpp"
#include "tiedecay/linalg.hpp"

namespace tiedecay {

/// Static network whose edge weights are the time averages of the tie-decay
/// weights over the observation window [origin, T].
struct AggregateNetwork {
  Matrix weights;
  double alpha = 0.0;
  double origin = 0.0;
  double horizon = 0.0;
  bool directed = false;

  double duration() const noexcept { return horizon - origin; }
};

/// w_ij = sum_l (1 - exp(-alpha (T - t_l))) / (alpha (T - origin)), the exact
/// mean of b_ij(t) over the window.
AggregateNetwork aggregate_weights(const EventStream& stream, double alpha);

/// exp(-t L^T) for the aggregate Laplacian L.
Matrix aggregate_propagator(const AggregateNetwork& aggregate, double t);

/// `i,j,w` rows; undirected networks list each pair once with i < j.
void write_aggregate_csv(std::ostream& out, const AggregateNetwork& aggregate);

}  // namespace tiedecay
