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

#include <complex>

#include "tiedecay/linalg.hpp"

namespace tiedecay {

/// Eigenvalues of a propagator ordered by magnitude (descending), ties broken
/// by real part and then imaginary part (both descending).
///
/// `right` holds u_1..u_k as columns with unit 2-norm and the largest-modulus
/// component real positive; `left` holds v_1..v_k as rows, eigenvectors of
/// M^T scaled so that v_i u_j = delta_ij. Within a repeated eigenvalue the
/// left rows are the dual basis of the right columns.
struct SpectralSummary {
  ComplexVector eigenvalues;
  double gap = 0.0;
  ComplexMatrix right;
  ComplexMatrix left;
  /// Largest |v_i| |u_i| over the returned pairs: 1 for normal matrices,
  /// large when the matrix is close to defective.
  double eigenvector_condition = 1.0;
};

/// Full spectrum only, sorted as above.
ComplexVector sorted_eigenvalues(const Matrix& m);

/// Throws Degenerate when a returned pair has condition number above 1e12
/// (defective or nearly defective input).
SpectralSummary eigendecompose(const Matrix& m, int k);

/// 1 - |lambda_2|, clamped to [0, 1]. Throws Numeric if |lambda_1| is not 1
/// within 1e-6, i.e. `m` is not a propagator.
double spectral_gap(const Matrix& m);

/// |lambda_1| - |lambda_2| clamped to [0, 1] without the propagator check.
double magnitude_gap(const ComplexVector& sorted);

struct FiedlerPair {
  std::complex<double> eigenvalue;
  ComplexRowVector left;
  ComplexVector right;
};

/// Left/right eigenvectors of the second-largest-magnitude eigenvalue. Throws
/// Degenerate when |lambda_2| is within 1e-10 of |lambda_1| or |lambda_3|.
FiedlerPair fiedler_left(const Matrix& m);

struct ShrinkageReport {
  double ratio = 0.0;
  double cosine = 0.0;
};

/// w2 = v2 Y; ratio = |w2| / |v2| and cosine = Re(w2 v2^H) / (|w2| |v2|).
ShrinkageReport shrinkage_ratio(const Matrix& m_before, const Matrix& y_next);
ShrinkageReport shrinkage_of(const ComplexRowVector& v2, const Matrix& y_next);

}  // namespace tiedecay
