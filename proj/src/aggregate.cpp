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

#include "tiedecay/aggregate.hpp"

#include <cmath>
#include <ostream>

#include "tiedecay/error.hpp"
#include "tiedecay/format.hpp"
#include "tiedecay/matrix_exp.hpp"
#include "tiedecay/tie_decay.hpp"

namespace tiedecay {

AggregateNetwork aggregate_weights(const EventStream& stream, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw Error(ErrorCode::InvalidArgument, "decay rate must be positive and finite");
  AggregateNetwork agg;
  agg.alpha = alpha;
  agg.origin = stream.origin();
  agg.horizon = stream.horizon();
  agg.directed = stream.directed();
  if (!(agg.duration() > 0.0))
    throw Error(ErrorCode::InvalidArgument, "aggregation needs a time window of positive length");

  const auto n = static_cast<Eigen::Index>(stream.node_count());
  agg.weights = Matrix::Zero(n, n);
  const double scale = alpha * agg.duration();
  for (const Event& e : stream.events()) {
    const double w = -std::expm1(-alpha * (agg.horizon - e.time)) / scale;
    agg.weights(e.source, e.target) += w;
    if (!agg.directed) agg.weights(e.target, e.source) += w;
  }
  return agg;
}

Matrix aggregate_propagator(const AggregateNetwork& aggregate, double t) {
  if (!std::isfinite(t) || t < 0.0) throw Error(ErrorCode::InvalidArgument, "time must be non-negative");
  const auto n = aggregate.weights.rows();
  if (t == 0.0 || aggregate.weights.isZero(0.0)) return Matrix::Identity(n, n);
  const Matrix a = -t * laplacian(aggregate.weights).transpose();
  return aggregate.directed ? expm(a) : expm_symmetric(a);
}

void write_aggregate_csv(std::ostream& out, const AggregateNetwork& aggregate) {
  out << "i,j,w\n";
  const Matrix& w = aggregate.weights;
  for (Eigen::Index i = 0; i < w.rows(); ++i)
    for (Eigen::Index j = aggregate.directed ? 0 : i + 1; j < w.cols(); ++j)
      if (w(i, j) != 0.0) out << i << ',' << j << ',' << format_double(w(i, j)) << '\n';
}

}  // namespace tiedecay
