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

#include "tiedecay/matrix_exp.hpp"

#include <array>
#include <cmath>

#include "tiedecay/error.hpp"

namespace tiedecay {

namespace {

// Largest 1-norms for which the degree-m approximant is accurate to unit
// roundoff in double precision (Higham 2005, Table 2.3).
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

double norm1(const Matrix& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

// Builds U (odd part) and V (even part) so that r(A) = (V - U)^{-1} (V + U).
template <std::size_t K>
void pade_low(const Matrix& a, const std::array<double, K>& b, Matrix& u, Matrix& v) {
  const auto n = a.rows();
  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  Matrix power = ident;
  Matrix odd = b[1] * ident;
  Matrix even = b[0] * ident;
  for (std::size_t k = 2; k < K; k += 2) {
    power = power * a2;
    even += b[k] * power;
    if (k + 1 < K) odd += b[k + 1] * power;
  }
  u = a * odd;
  v = even;
}

void pade13(const Matrix& a, Matrix& u, Matrix& v) {
  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
      129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
      1323241920.0,        40840800.0,          960960.0,           16380.0,
      182.0,               1.0};
  const auto n = a.rows();
  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix inner_u = b[13] * a6 + b[11] * a4 + b[9] * a2;
  u = a * (a6 * inner_u + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
  const Matrix inner_v = b[12] * a6 + b[10] * a4 + b[8] * a2;
  v = a6 * inner_v + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
}

}  // namespace

Matrix expm(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::InvalidArgument, "expm needs a square matrix");
  if (!a.allFinite()) throw Error(ErrorCode::Numeric, "expm input has nonfinite entries");
  const auto n = a.rows();
  if (n == 0) return a;

  const double norm = norm1(a);
  Matrix u;
  Matrix v;
  int squarings = 0;
  if (norm <= kTheta3) {
    pade_low(a, std::array<double, 4>{120.0, 60.0, 12.0, 1.0}, u, v);
  } else if (norm <= kTheta5) {
    pade_low(a, std::array<double, 6>{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0}, u, v);
  } else if (norm <= kTheta7) {
    pade_low(a,
             std::array<double, 8>{17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0,
                                   56.0, 1.0},
             u, v);
  } else if (norm <= kTheta9) {
    pade_low(a,
             std::array<double, 10>{17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                                    30270240.0, 2162160.0, 110880.0, 3960.0, 90.0, 1.0},
             u, v);
  } else {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta13))));
    const Matrix scaled = a / std::ldexp(1.0, squarings);
    pade13(scaled, u, v);
  }

  Matrix result = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) result = result * result;
  if (!result.allFinite()) throw Error(ErrorCode::Numeric, "expm produced nonfinite entries");
  return result;
}

Matrix expm_symmetric(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::InvalidArgument, "expm needs a square matrix");
  if (!a.allFinite()) throw Error(ErrorCode::Numeric, "expm input has nonfinite entries");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
  if (eig.info() != Eigen::Success) throw Error(ErrorCode::Numeric, "symmetric eigensolver failed");
  const Matrix& q = eig.eigenvectors();
  return q * eig.eigenvalues().array().exp().matrix().asDiagonal() * q.transpose();
}

}  // namespace tiedecay
