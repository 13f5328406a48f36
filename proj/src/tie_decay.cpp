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

#include "tiedecay/tie_decay.hpp"

#include <cmath>
#include <ostream>

#include "tiedecay/error.hpp"
#include "tiedecay/format.hpp"

namespace tiedecay {

namespace {
constexpr double kFlushBelow = 1e-300;
}

TieDecayState::TieDecayState(std::size_t node_count, double alpha, bool directed, double start_time)
    : weights_(Matrix::Zero(static_cast<Eigen::Index>(node_count), static_cast<Eigen::Index>(node_count))),
      time_(start_time),
      alpha_(alpha),
      directed_(directed) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw Error(ErrorCode::InvalidArgument, "decay rate must be positive and finite");
  if (!std::isfinite(start_time)) throw Error(ErrorCode::InvalidArgument, "start time must be finite");
}

void TieDecayState::advance_to(double t) {
  if (!std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "time must be finite");
  if (t < time_)
    throw Error(ErrorCode::InvalidArgument,
                "cannot decay backwards from " + format_double(time_) + " to " + format_double(t));
  if (t == time_) return;
  const double factor = std::exp(-alpha_ * (t - time_));
  weights_ *= factor;
  weights_ = weights_.unaryExpr([](double w) { return w < kFlushBelow ? 0.0 : w; });
  time_ = t;
}

void TieDecayState::apply(std::span<const Event> events) {
  const auto n = static_cast<NodeId>(weights_.rows());
  for (const Event& e : events) {
    if (e.time != time_)
      throw Error(ErrorCode::InvalidArgument, "event at " + format_double(e.time) +
                                                  " applied to state at " + format_double(time_));
    if (e.source >= n || e.target >= n || e.source == e.target)
      throw Error(ErrorCode::InvalidArgument, "invalid event endpoints");
  }
  for (const Event& e : events) {
    weights_(e.source, e.target) += 1.0;
    if (!directed_) weights_(e.target, e.source) += 1.0;
  }
}

TieDecayState decay_to(TieDecayState state, double t) {
  state.advance_to(t);
  return state;
}

TieDecayState apply_events(TieDecayState state, std::span<const Event> events) {
  state.apply(events);
  return state;
}

Matrix laplacian(const Matrix& weights) {
  Matrix l = -weights;
  l.diagonal().setZero();
  for (Eigen::Index i = 0; i < weights.rows(); ++i) {
    double degree = 0.0;
    for (Eigen::Index j = 0; j < weights.cols(); ++j)
      if (j != i) degree += weights(i, j);
    l(i, i) = degree;
  }
  return l;
}

Matrix event_laplacian(std::span<const Event> events, std::size_t node_count, bool directed) {
  const auto n = static_cast<Eigen::Index>(node_count);
  Matrix l = Matrix::Zero(n, n);
  auto add = [&](NodeId i, NodeId j) {
    l(i, j) -= 1.0;
    l(i, i) += 1.0;
  };
  for (const Event& e : events) {
    add(e.source, e.target);
    if (!directed) add(e.target, e.source);
  }
  return l;
}

void write_weights_csv(std::ostream& out, const TieDecayState& state) {
  out << "row,col,weight\n";
  const Matrix& w = state.weights();
  for (Eigen::Index i = 0; i < w.rows(); ++i)
    for (Eigen::Index j = 0; j < w.cols(); ++j)
      if (w(i, j) != 0.0) out << i << ',' << j << ',' << format_double(w(i, j)) << '\n';
}

}  // namespace tiedecay
