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

#include "twirlkit/attractors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "twirlkit/tolerances.hpp"

namespace twirlkit {

namespace {

// Eigenvalues only; the Schur form is cheaper than the full eigensolver.
ComplexVector schur_eigenvalues(const ComplexMatrix& m) {
  Eigen::ComplexSchur<ComplexMatrix> schur(m, false);
  if (schur.info() != Eigen::Success)
    throw std::runtime_error("asymptotic_spectrum: Schur iteration failed");
  return schur.matrixT().diagonal();
}

// Greedy clustering of unit-circle values; representatives are re-clamped
// cluster means, sorted by argument for determinism.
std::vector<Complex> cluster_on_circle(std::vector<Complex> values) {
  const double dedup = tolerances().eigen_dedup;
  std::vector<Complex> sums;
  std::vector<int> counts;
  for (const Complex& v : values) {
    bool merged = false;
    for (std::size_t c = 0; c < sums.size(); ++c) {
      if (std::abs(v - sums[c] / static_cast<double>(counts[c])) <= dedup) {
        sums[c] += v;
        ++counts[c];
        merged = true;
        break;
      }
    }
    if (!merged) {
      sums.push_back(v);
      counts.push_back(1);
    }
  }
  std::vector<Complex> reps;
  for (std::size_t c = 0; c < sums.size(); ++c) {
    Complex mean = sums[c] / static_cast<double>(counts[c]);
    reps.push_back(mean / std::abs(mean));
  }
  std::sort(reps.begin(), reps.end(), [](const Complex& a, const Complex& b) {
    return std::arg(a) < std::arg(b);
  });
  return reps;
}

std::vector<Complex> peripheral_values(const ComplexVector& eigenvalues) {
  const Tolerances& tol = tolerances();
  std::vector<Complex> values;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const Complex v = eigenvalues(i);
    const double mod = std::abs(v);
    if (mod >= 1.0 - tol.unit_circle) values.push_back(v / mod);
  }
  return values;
}

// Eigenvalue-ratio set {lambda_a conj(lambda_b)} of one unitary, deduplicated.
std::vector<Complex> ratio_set(const ComplexMatrix& u) {
  ComplexVector lam = schur_eigenvalues(u);
  std::vector<Complex> products;
  for (Eigen::Index a = 0; a < lam.size(); ++a)
    for (Eigen::Index b = 0; b < lam.size(); ++b) {
      Complex v = lam(a) * std::conj(lam(b));
      v /= std::abs(v);
      products.push_back(v);
    }
  return cluster_on_circle(std::move(products));
}

std::vector<Complex> intersect_on_circle(const std::vector<Complex>& a,
                                         const std::vector<Complex>& b) {
  const double dedup = tolerances().eigen_dedup;
  std::vector<Complex> out;
  for (const Complex& x : a)
    for (const Complex& y : b)
      if (std::abs(x - y) <= 2.0 * dedup) {
        out.push_back(x);
        break;
      }
  return out;
}

// HS-orthonormal basis of span{P_sym, P_asym}, vectorized as columns.
ComplexMatrix twirl_range_basis(int d) {
  auto [p_sym, p_asym] = sym_asym_projectors(d);
  std::vector<ComplexMatrix> basis = gram_schmidt_hs({p_sym, p_asym});
  ComplexMatrix cols(p_sym.rows() * p_sym.cols(),
                     static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i)
    cols.col(static_cast<Eigen::Index>(i)) = vec_col(basis[i]);
  return cols;
}

}  // namespace

std::vector<Complex> asymptotic_spectrum(const Superoperator& s) {
  return cluster_on_circle(peripheral_values(schur_eigenvalues(s.mat)));
}

AttractorReport attractor_space_eig(const Superoperator& s) {
  const Tolerances& tol = tolerances();
  AttractorReport report;
  report.asymptotic_spectrum =
      cluster_on_circle(peripheral_values(schur_eigenvalues(s.mat)));

  const Eigen::Index n = s.mat.rows();
  ComplexMatrix fixed_cols(n, 0);
  for (const Complex& lambda : report.asymptotic_spectrum) {
    ComplexMatrix shifted = s.mat - lambda * ComplexMatrix::Identity(n, n);
    // The cluster representative may sit up to eigen_dedup away from each
    // member, so the null-space cutoff must dominate that spread.
    const double rel = std::max(tol.nullspace_rel, 2.0 * tol.eigen_dedup);
    ComplexMatrix basis_cols = nullspace(shifted, rel);
    AttractorBlock block;
    block.lambda = lambda;
    for (Eigen::Index j = 0; j < basis_cols.cols(); ++j)
      block.basis.push_back(unvec_col(basis_cols.col(j), s.hdim));
    if (std::abs(lambda - Complex(1.0, 0.0)) <= tol.eigen_dedup) {
      report.fixed_point_dim = static_cast<int>(basis_cols.cols());
      fixed_cols = basis_cols;
    }
    report.attractor_bases.push_back(std::move(block));
  }

  report.stationary =
      report.asymptotic_spectrum.size() == 1 &&
      std::abs(report.asymptotic_spectrum.front() - Complex(1.0, 0.0)) <=
          tol.eigen_dedup;

  report.converges_to_twirl = false;
  const std::optional<int> d = bipartite_side(s.hdim);
  if (d && report.stationary && report.fixed_point_dim == 2) {
    const double dist =
        subspace_projector_distance(fixed_cols, twirl_range_basis(*d));
    report.converges_to_twirl = dist < tol.subspace;
  }
  return report;
}

std::vector<ComplexMatrix> attractor_space_linear(const UnitaryEnsemble& e,
                                                  Complex lambda) {
  const Eigen::Index hd = e.dim();
  const Eigen::Index n = hd * hd;
  const auto m = static_cast<Eigen::Index>(e.size());
  ComplexMatrix id = ComplexMatrix::Identity(hd, hd);
  ComplexMatrix stacked(m * n, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const ComplexMatrix& u = e.items()[static_cast<std::size_t>(i)].u;
    stacked.middleRows(i * n, n) =
        kron(id, u) - lambda * kron(u.transpose().eval(), id);
  }
  ComplexMatrix basis_cols = nullspace(stacked, tolerances().nullspace_rel);
  std::vector<ComplexMatrix> basis;
  for (Eigen::Index j = 0; j < basis_cols.cols(); ++j)
    basis.push_back(unvec_col(basis_cols.col(j), hd));
  return basis;
}

std::vector<Complex> candidate_lambdas(const UnitaryEnsemble& e) {
  std::vector<Complex> common = ratio_set(e.items().front().u);
  for (std::size_t i = 1; i < e.size(); ++i)
    common = intersect_on_circle(common, ratio_set(e.items()[i].u));
  return cluster_on_circle(std::move(common));
}

AsymptoticState asymptotic_state(const AttractorReport& report,
                                 const DensityMatrix& rho) {
  AsymptoticState state;
  for (const AttractorBlock& block : report.attractor_bases) {
    AsymptoticTerm term;
    term.lambda = block.lambda;
    term.basis = block.basis;
    for (const ComplexMatrix& x : block.basis) {
      if (x.rows() != rho.dim())
        throw std::invalid_argument("asymptotic_state: dimension mismatch");
      term.coeffs.push_back(hs_inner(x, rho.mat()));
    }
    state.terms.push_back(std::move(term));
  }
  return state;
}

ComplexMatrix evaluate(const AsymptoticState& state, long n) {
  if (state.terms.empty())
    throw std::invalid_argument("evaluate: empty asymptotic state");
  const Eigen::Index dim = state.terms.front().basis.empty()
                               ? 0
                               : state.terms.front().basis.front().rows();
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (const AsymptoticTerm& term : state.terms) {
    // lambda^n on the unit circle: rotate the argument to keep |.| exact.
    const Complex phase = std::polar(1.0, std::arg(term.lambda) * n);
    for (std::size_t i = 0; i < term.basis.size(); ++i)
      out += phase * term.coeffs[i] * term.basis[i];
  }
  return out;
}

AttractorReport check_convergence_to_twirl(const UnitaryEnsemble& e) {
  if (!bipartite_side(e.dim())) throw std::invalid_argument("not bipartite");
  for (const EnsembleItem& item : e.items())
    if (!collective_factor(item.u))
      throw std::invalid_argument("not a collective ensemble");
  return attractor_space_eig(build_superoperator(e));
}

bool stationarity_sufficient(const UnitaryEnsemble& e) {
  const double dedup = tolerances().eigen_dedup;
  std::vector<Complex> common = ratio_set(e.items().front().u);
  for (std::size_t i = 1; i < e.size() && !common.empty(); ++i)
    common = intersect_on_circle(common, ratio_set(e.items()[i].u));
  for (const Complex& v : common)
    if (std::abs(v - Complex(1.0, 0.0)) > dedup) return false;
  return true;
}

}  // namespace twirlkit
