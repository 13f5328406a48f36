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

#include "tiedecay/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "tiedecay/error.hpp"
#include "tiedecay/format.hpp"

namespace tiedecay {

namespace {

constexpr double kPropagatorTolerance = 1e-6;
constexpr double kSeparation = 1e-10;
// Beyond this the left vectors keep fewer than about four correct digits.
constexpr double kMaxCondition = 1e12;
// Computed eigenvalues this close are treated as one repeated eigenvalue.
constexpr double kCluster = 1e-10;

using Complex = std::complex<double>;

bool ranks_before(const Complex& a, const Complex& b) {
  const double ma = std::abs(a);
  const double mb = std::abs(b);
  if (ma != mb) return ma > mb;
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

std::vector<Eigen::Index> sorted_order(const ComplexVector& values) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return ranks_before(values(i), values(j)); });
  return order;
}

void check_input(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw Error(ErrorCode::InvalidArgument, "eigendecomposition needs a nonempty square matrix");
  if (!m.allFinite()) throw Error(ErrorCode::Numeric, "matrix has nonfinite entries");
}

// Unit 2-norm, largest-modulus component real positive.
// Eigen's default of 40 QR sweeps per row stalls on nearly decoupled
// propagators (an isolated node next to a near-consensus block).
Eigen::EigenSolver<Matrix> solve(const Matrix& m, bool vectors) {
  Eigen::EigenSolver<Matrix> solver;
  solver.setMaxIterations(static_cast<Eigen::Index>(1000 * m.rows()));
  solver.compute(m, vectors);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::Numeric, "eigensolver did not converge");
  return solver;
}

void fix_phase(Eigen::Ref<ComplexVector> u) {
  const double norm = u.norm();
  if (norm == 0.0) return;
  Eigen::Index arg = 0;
  u.cwiseAbs().maxCoeff(&arg);
  const Complex pivot = u(arg);
  u *= std::abs(pivot) / pivot / norm;
}

// Sorted eigenvalues with unit, phase-fixed right eigenvectors.
void sorted_pairs(const Matrix& m, ComplexVector& values, ComplexMatrix& vectors) {
  const auto solver = solve(m, /*vectors=*/true);
  const ComplexVector raw_values = solver.eigenvalues();
  const ComplexMatrix raw_vectors = solver.eigenvectors();
  const auto order = sorted_order(raw_values);
  const auto n = m.rows();
  values.resize(n);
  vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index src = order[static_cast<std::size_t>(i)];
    values(i) = raw_values(src);
    vectors.col(i) = raw_vectors.col(src);
    fix_phase(vectors.col(i));
  }
}

}  // namespace

ComplexVector sorted_eigenvalues(const Matrix& m) {
  check_input(m);
  const auto solver = solve(m, /*vectors=*/false);
  const ComplexVector raw = solver.eigenvalues();
  const auto order = sorted_order(raw);
  ComplexVector out(raw.size());
  for (std::size_t i = 0; i < order.size(); ++i) out(static_cast<Eigen::Index>(i)) = raw(order[i]);
  return out;
}

double magnitude_gap(const ComplexVector& sorted) {
  if (sorted.size() < 2) return std::clamp(std::abs(sorted(0)), 0.0, 1.0);
  return std::clamp(std::abs(sorted(0)) - std::abs(sorted(1)), 0.0, 1.0);
}

SpectralSummary eigendecompose(const Matrix& m, int k) {
  check_input(m);
  const auto n = m.rows();
  if (k < 1 || k > n) throw Error(ErrorCode::InvalidArgument, "requested eigenpair count out of range");

  SpectralSummary out;
  ComplexMatrix u;
  sorted_pairs(m, out.eigenvalues, u);
  ComplexVector t_values;
  ComplexMatrix w;
  sorted_pairs(m.transpose(), t_values, w);

  // Left vectors are eigenvectors of M^T. Equal eigenvalues share an
  // eigenspace, so they are paired with their right vectors cluster by
  // cluster: V_C = (W_C^T U_C)^{-1} W_C^T gives V_C U_C = I.
  out.right = u.leftCols(k);
  out.left.resize(k, n);
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  double worst = 1.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (done[static_cast<std::size_t>(i)]) continue;
    const Complex rep = out.eigenvalues(i);
    const double tol = kCluster * std::max(1.0, std::abs(rep));
    std::vector<Eigen::Index> cluster;
    for (Eigen::Index j = i; j < n; ++j)
      if (!done[static_cast<std::size_t>(j)] && std::abs(out.eigenvalues(j) - rep) <= tol) cluster.push_back(j);
    const auto size = static_cast<Eigen::Index>(cluster.size());

    // The same number of transpose eigenvalues, nearest first.
    std::vector<Eigen::Index> partners;
    for (Eigen::Index c = 0; c < size; ++c) {
      Eigen::Index best = -1;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (taken[static_cast<std::size_t>(j)]) continue;
        if (best < 0 || std::abs(t_values(j) - rep) < std::abs(t_values(best) - rep)) best = j;
      }
      taken[static_cast<std::size_t>(best)] = true;
      partners.push_back(best);
    }

    ComplexMatrix uc(n, size), wc(n, size);
    for (Eigen::Index c = 0; c < size; ++c) {
      uc.col(c) = u.col(cluster[static_cast<std::size_t>(c)]);
      wc.col(c) = w.col(partners[static_cast<std::size_t>(c)]);
    }
    const ComplexMatrix gram = wc.transpose() * uc;
    Eigen::JacobiSVD<ComplexMatrix> svd(gram);
    const auto& sv = svd.singularValues();
    if (!(sv(size - 1) > 0.0) || sv(0) / sv(size - 1) > kMaxCondition)
      throw Error(ErrorCode::Degenerate, "left and right eigenvectors are nearly orthogonal (defective matrix)");
    const ComplexMatrix vc = gram.fullPivLu().solve(wc.transpose());
    for (Eigen::Index c = 0; c < size; ++c) {
      const Eigen::Index row = cluster[static_cast<std::size_t>(c)];
      done[static_cast<std::size_t>(row)] = true;
      if (row >= k) continue;
      out.left.row(row) = vc.row(c);
      worst = std::max(worst, vc.row(c).norm());
    }
  }
  if (!(worst <= kMaxCondition))
    throw Error(ErrorCode::Degenerate, "eigenvalue condition number " + format_double(worst) + " too large");
  out.eigenvector_condition = worst;
  out.gap = magnitude_gap(out.eigenvalues);
  return out;
}

double spectral_gap(const Matrix& m) {
  const ComplexVector values = sorted_eigenvalues(m);
  const double lead = std::abs(values(0));
  if (std::abs(lead - 1.0) > kPropagatorTolerance)
    throw Error(ErrorCode::Numeric,
                "largest eigenvalue magnitude " + format_double(lead) + " is not 1; not a propagator");
  if (values.size() < 2) return 1.0;
  return std::clamp(1.0 - std::abs(values(1)), 0.0, 1.0);
}

FiedlerPair fiedler_left(const Matrix& m) {
  check_input(m);
  if (m.rows() < 2) throw Error(ErrorCode::Degenerate, "a single node has no Fiedler vector");
  const ComplexVector values = sorted_eigenvalues(m);
  const double m1 = std::abs(values(0));
  const double m2 = std::abs(values(1));
  if (m1 - m2 < kSeparation)
    throw Error(ErrorCode::Degenerate, "second eigenvalue magnitude coincides with the first");
  if (values.size() > 2 && m2 - std::abs(values(2)) < kSeparation)
    throw Error(ErrorCode::Degenerate, "second eigenvalue magnitude is not separated from the third");

  const SpectralSummary summary = eigendecompose(m, 2);
  return {summary.eigenvalues(1), summary.left.row(1), summary.right.col(1)};
}

ShrinkageReport shrinkage_of(const ComplexRowVector& v2, const Matrix& y_next) {
  if (v2.size() != y_next.rows() || y_next.rows() != y_next.cols())
    throw Error(ErrorCode::InvalidArgument, "factor dimension does not match the Fiedler vector");
  const ComplexRowVector w2 = v2 * y_next.cast<Complex>();
  const double nv = v2.norm();
  const double nw = w2.norm();
  if (nv == 0.0) throw Error(ErrorCode::Degenerate, "Fiedler vector is zero");
  ShrinkageReport out;
  out.ratio = nw / nv;
  out.cosine = nw == 0.0 ? 0.0 : (w2 * v2.adjoint())(0, 0).real() / (nw * nv);
  return out;
}

ShrinkageReport shrinkage_ratio(const Matrix& m_before, const Matrix& y_next) {
  return shrinkage_of(fiedler_left(m_before).left, y_next);
}

}  // namespace tiedecay
