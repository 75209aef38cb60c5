// Copyright 2026 The twirlkit developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "twirlkit/random.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/QR>

namespace twirlkit {

ComplexMatrix haar_unitary(int d, std::mt19937_64& engine) {
  if (d < 1) throw std::invalid_argument("haar_unitary: dimension must be >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix ginibre(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) ginibre(i, j) = Complex(gauss(engine), gauss(engine));
  Eigen::HouseholderQR<ComplexMatrix> qr(ginibre);
  ComplexMatrix q = qr.householderQ();
  // Fix the phase gauge: multiplying column j by R_jj/|R_jj| removes the
  // sign ambiguity of QR and makes the distribution exactly Haar.
  ComplexMatrix r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Complex diag = r(j, j);
    const double mag = std::abs(diag);
    if (mag > 0) q.col(j) *= diag / mag;
  }
  return q;
}

}  // namespace twirlkit
