// Copyright 2026 The fconn authors
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
//
// Row centering, covariance, correlation and row standardization shared by
// the spatial and functional pipelines. Covariance uses the population
// denominator 1/n_cols throughout (no Bessel correction). Zero-variance rows
// are masked, never an error; masked rows standardize to all-zero and read 0
// in correlation matrices.

#pragma once

#include <string>
#include <vector>

#include "fconn/data_model.hpp"
#include "fconn/errors.hpp"
#include "fconn/types.hpp"

namespace fconn {

template <typename Scalar>
struct CovarianceMatrixT {
  Mat<Scalar> values;   // symmetric, n_rows x n_rows of the source matrix
  Index denominator{0};
};

template <typename Scalar>
struct CorrelationMatrixT {
  Mat<Scalar> values;
  BoolArray valid;  // false marks zero-variance (masked) rows
};

template <typename Scalar>
struct StandardizedRowsT {
  Mat<Scalar> values;  // rows divided by sqrt of their covariance diagonal
  BoolArray valid;
};

using CovarianceMatrix = CovarianceMatrixT<double>;
using CorrelationMatrix = CorrelationMatrixT<double>;
using StandardizedRows = StandardizedRowsT<double>;

/// Subtracts each row's mean: the returned matrix has zero-sum rows.
template <class Derived>
Mat<typename Derived::Scalar> row_center(const Eigen::MatrixBase<Derived>& m) {
  return m.derived().colwise() - m.derived().rowwise().mean();
}

/// Centering check used as the covariance precondition:
/// max |row sum| <= 1e-8 * (1 + max|entry|) * n_cols.
template <class Derived>
bool is_row_centered(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Scalar max_abs = m.derived().size() == 0 ? Scalar(0) : m.derived().cwiseAbs().maxCoeff();
  const Scalar bound = Scalar(1e-8) * (Scalar(1) + max_abs) * Scalar(m.derived().cols());
  return m.derived().rowwise().sum().cwiseAbs().maxCoeff() <= bound;
}

template <class Derived>
void require_row_centered(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (!is_row_centered(m)) {
    throw ValidationError(std::string(what) + ": input rows are not centered");
  }
}

/// Diagonal of (1/n_cols) * m * m^T without forming the full product.
template <class Derived>
Vec<typename Derived::Scalar> covariance_diagonal(const Eigen::MatrixBase<Derived>& m,
                                                  Index n_cols) {
  return m.derived().rowwise().squaredNorm() / typename Derived::Scalar(n_cols);
}

/// Rows whose variance is exactly zero, or negligible next to the largest row
/// variance, are masked. The relative cutoff absorbs the O(eps^2) residual
/// variance that centering leaves on constant rows.
template <typename Scalar>
BoolArray variance_mask(const Vec<Scalar>& diag) {
  const Scalar max_d = diag.size() == 0 ? Scalar(0) : diag.maxCoeff();
  const Scalar cutoff = max_d * Scalar(1e-30);
  BoolArray valid(diag.size());
  for (Index i = 0; i < diag.size(); ++i) valid[i] = diag[i] > cutoff && diag[i] > Scalar(0);
  return valid;
}

/// (1/n_cols) * m * m^T for row-centered m. n_cols must equal m.cols(); it is
/// part of the contract so the denominator is always explicit at call sites.
template <class Derived>
CovarianceMatrixT<typename Derived::Scalar> covariance(const Eigen::MatrixBase<Derived>& m,
                                                       Index n_cols) {
  using Scalar = typename Derived::Scalar;
  if (n_cols != m.derived().cols() || n_cols < 1) {
    throw ValidationError("covariance: n_cols must equal the column count of the input");
  }
  require_row_centered(m, "covariance");
  CovarianceMatrixT<Scalar> cov;
  cov.denominator = n_cols;
  cov.values = Mat<Scalar>::Zero(m.derived().rows(), m.derived().rows());
  cov.values.template selfadjointView<Eigen::Lower>().rankUpdate(m.derived(),
                                                                 Scalar(1) / Scalar(n_cols));
  cov.values.template triangularView<Eigen::StrictlyUpper>() =
      cov.values.transpose().template triangularView<Eigen::StrictlyUpper>();
  return cov;
}

template <class Derived>
CovarianceMatrixT<typename Derived::Scalar> covariance(const Eigen::MatrixBase<Derived>& m) {
  return covariance(m, m.derived().cols());
}

/// R = D^{-1/2} C D^{-1/2} with D = diag(C). Masked rows read 0 everywhere;
/// valid diagonal entries are exactly 1.
template <typename Scalar>
CorrelationMatrixT<Scalar> to_correlation(const CovarianceMatrixT<Scalar>& cov) {
  const Index n = cov.values.rows();
  const Vec<Scalar> diag = cov.values.diagonal();
  for (Index i = 0; i < n; ++i) {
    if (diag[i] < Scalar(0)) {
      throw NumericalError("to_correlation: negative variance on row " + std::to_string(i));
    }
  }
  CorrelationMatrixT<Scalar> corr;
  corr.valid = variance_mask<Scalar>(diag);
  Vec<Scalar> inv_sqrt(n);
  for (Index i = 0; i < n; ++i) {
    inv_sqrt[i] = corr.valid[i] ? Scalar(1) / std::sqrt(diag[i]) : Scalar(0);
  }
  corr.values = inv_sqrt.asDiagonal() * cov.values * inv_sqrt.asDiagonal();
  for (Index i = 0; i < n; ++i) corr.values(i, i) = corr.valid[i] ? Scalar(1) : Scalar(0);
  return corr;
}

/// U = D^{-1/2} m with D the covariance diagonal (1/n_cols denominator).
/// Masked rows come back all-zero with valid=false.
template <class DerivedM, class DerivedV>
StandardizedRowsT<typename DerivedM::Scalar> standardize_rows(
    const Eigen::MatrixBase<DerivedM>& m, const Eigen::MatrixBase<DerivedV>& c_diag) {
  using Scalar = typename DerivedM::Scalar;
  if (c_diag.derived().size() != m.derived().rows()) {
    throw ValidationError("standardize_rows: diagonal length does not match row count");
  }
  require_row_centered(m, "standardize_rows");
  StandardizedRowsT<Scalar> out;
  const Vec<Scalar> diag = c_diag.derived();
  out.valid = variance_mask<Scalar>(diag);
  Vec<Scalar> inv_sqrt(diag.size());
  for (Index i = 0; i < diag.size(); ++i) {
    inv_sqrt[i] = out.valid[i] ? Scalar(1) / std::sqrt(diag[i]) : Scalar(0);
  }
  out.values = inv_sqrt.asDiagonal() * m.derived();
  return out;
}

/// Convenience form; computes the covariance diagonal (1/n_subjects) itself.
StandardizedRows standardize_rows(const FunctionalMatrix& z);

/// FunctionalMatrix with the same metadata and row-centered values.
FunctionalMatrix row_center(const FunctionalMatrix& z);
GroupMatrix row_center(const GroupMatrix& y);

/// One-sided raw periodogram over a uniformly sampled time axis:
/// out[v, k] = |DFT_k(row v)|^2 / n_samples for k = 0 .. n_freqs-1, labeled
/// k / (n_samples * dt) Hz. Requires n_samples >= 2 * n_freqs.
SubjectRecord periodogram(const SubjectRecord& record, Index n_freqs);

}  // namespace fconn
