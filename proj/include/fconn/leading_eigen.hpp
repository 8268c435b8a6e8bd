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
// Largest eigenpair extraction for tall-skinny standardized data. The full
// correlation matrix of a (rows x cols) matrix U with rows >> cols is never
// formed: the cols x cols Gram matrix U^T U shares its nonzero spectrum, so
// the leading left vector is recovered as U w / |U w| from the small
// eigenproblem, at the cost of two tall-skinny products.

#pragma once

#include <cstdint>

#include "fconn/types.hpp"

namespace fconn {

template <typename Scalar>
struct EigenResultT {
  Vec<Scalar> vector;       // unit norm
  Scalar value{0};          // >= 0 for PSD inputs
  int iterations{0};
  bool converged{false};
  bool degenerate{false};   // top two eigenvalues within 1e-9 relative
};

using EigenResult = EigenResultT<double>;

struct PowerOptions {
  double tol = 1e-12;       // relative change in the eigenvalue estimate
  int max_iter = 1000;
  std::uint64_t seed = 0;   // start-vector seed; the converged direction is seed-independent
};

/// G = u^T u, exactly symmetric.
template <class Derived>
Mat<typename Derived::Scalar> gram(const Eigen::MatrixBase<Derived>& u) {
  using Scalar = typename Derived::Scalar;
  Mat<Scalar> g = Mat<Scalar>::Zero(u.derived().cols(), u.derived().cols());
  g.template selfadjointView<Eigen::Lower>().rankUpdate(u.derived().transpose());
  g.template triangularView<Eigen::StrictlyUpper>() =
      g.transpose().template triangularView<Eigen::StrictlyUpper>();
  return g;
}

/// Power iteration for the largest eigenpair of a symmetric PSD matrix.
///
/// Stops when the Rayleigh quotient changes by less than tol (relative)
/// between iterations and the residual |s v - lambda v| is below 1e-6 lambda.
/// A second, deflated run estimates the next eigenvalue; if the top two agree
/// within 1e-9 relative the result is flagged degenerate and not converged,
/// since a near-tied spectrum has no well-defined leading direction.
/// The returned vector has its largest-|entry| coordinate positive (ties
/// broken by lowest index).
EigenResult power_leading_eigenpair(const Matrix& s, const PowerOptions& opts = {});

/// Leading left singular direction of a standardized tall-skinny matrix via
/// the Gram path. The reported value is lambda(G)/cols, i.e. the matching
/// eigenvalue of the (1/cols) U U^T correlation matrix. All-zero input is
/// rejected. All-zero (masked) rows of u yield exactly-zero entries.
EigenResult leading_left_vector(const Matrix& u, const PowerOptions& opts = {});

/// Flips v so its largest-|entry| coordinate is positive; ties break to the
/// lowest index. Returns true when the vector was negated.
bool fix_sign(Vector& v);

}  // namespace fconn
