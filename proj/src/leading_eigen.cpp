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

#include "fconn/leading_eigen.hpp"

#include <cmath>
#include <string>

#include "fconn/errors.hpp"
#include "fconn/rng.hpp"

namespace fconn {

namespace {

constexpr double kDegeneracyRelGap = 1e-9;
constexpr double kResidualRelTol = 1e-6;

Vector seeded_unit_vector(Index n, std::uint64_t seed) {
  Rng rng(seed);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = rng.uniform(-0.5, 0.5);
  const double norm = v.norm();
  if (norm == 0.0) {
    v.setZero();
    v[0] = 1.0;
    return v;
  }
  return v / norm;
}

// Core loop shared by the plain and deflated runs. apply must compute s*x
// (minus any deflation term). Returns the Rayleigh-quotient estimate.
template <class Apply>
double iterate(const Apply& apply, Vector& v, double tol, int max_iter, int& iterations,
               bool& converged) {
  double lambda = 0.0;
  converged = false;
  for (iterations = 0; iterations < max_iter; ++iterations) {
    const Vector w = apply(v);
    const double lambda_new = v.dot(w);
    const double norm = w.norm();
    if (norm == 0.0) {
      // v landed in the null space; the Rayleigh quotient is exactly 0.
      lambda = 0.0;
      converged = true;
      ++iterations;
      return lambda;
    }
    v = w / norm;
    if (iterations > 0 &&
        std::abs(lambda_new - lambda) <= tol * std::max(std::abs(lambda_new), 1e-300)) {
      lambda = lambda_new;
      converged = true;
      ++iterations;
      return lambda;
    }
    lambda = lambda_new;
  }
  return lambda;
}

}  // namespace

bool fix_sign(Vector& v) {
  Index top = 0;
  double best = -1.0;
  for (Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > best) {
      best = a;
      top = i;
    }
  }
  if (v.size() > 0 && v[top] < 0.0) {
    v = -v;
    return true;
  }
  return false;
}

EigenResult power_leading_eigenpair(const Matrix& s, const PowerOptions& opts) {
  const Index n = s.rows();
  if (n < 1 || s.cols() != n) {
    throw ValidationError("power_leading_eigenpair: matrix must be square and non-empty");
  }
  const double max_abs = s.cwiseAbs().maxCoeff();
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + max_abs)) {
    throw ValidationError("power_leading_eigenpair: matrix is not symmetric");
  }

  EigenResult result;
  if (max_abs == 0.0) {
    result.vector = Vector::Zero(n);
    result.vector[0] = 1.0;
    result.value = 0.0;
    result.converged = true;
    return result;
  }

  Vector v = seeded_unit_vector(n, opts.seed);
  bool converged = false;
  int iterations = 0;
  const double lambda =
      iterate([&](const Vector& x) { return Vector(s.selfadjointView<Eigen::Lower>() * x); }, v,
              opts.tol, opts.max_iter, iterations, converged);
  if (lambda < 0.0) {
    throw NumericalError("power_leading_eigenpair: negative Rayleigh quotient; input is not PSD");
  }

  result.vector = v;
  result.value = lambda;
  result.iterations = iterations;
  result.converged = converged;
  if (converged && lambda > 0.0) {
    const double residual = (s.selfadjointView<Eigen::Lower>() * v - lambda * v).norm();
    if (residual > kResidualRelTol * lambda) result.converged = false;
  }

  // Near-tied top eigenvalues leave the converged direction arbitrary within
  // the tied subspace; estimate the runner-up from a deflated run and flag.
  if (n > 1 && lambda > 0.0) {
    Vector v2 = seeded_unit_vector(n, opts.seed + 0x9e3779b97f4a7c15ULL);
    v2 -= v * v.dot(v2);
    if (v2.norm() > 0.0) {
      v2.normalize();
      bool converged2 = false;
      int iterations2 = 0;
      const double lambda2 = iterate(
          [&](const Vector& x) {
            Vector y = s.selfadjointView<Eigen::Lower>() * x;
            y -= v * (lambda * v.dot(x));
            return y;
          },
          v2, opts.tol, opts.max_iter, iterations2, converged2);
      if (lambda - lambda2 < kDegeneracyRelGap * lambda) {
        result.degenerate = true;
        result.converged = false;
      }
    }
  }

  fix_sign(result.vector);
  return result;
}

EigenResult leading_left_vector(const Matrix& u, const PowerOptions& opts) {
  if (u.size() == 0) throw ValidationError("leading_left_vector: empty input");
  if (u.cwiseAbs().maxCoeff() == 0.0) {
    throw ValidationError("leading_left_vector: input is all zero (no signal)");
  }
  const Matrix g = gram(u);
  EigenResult small = power_leading_eigenpair(g, opts);

  EigenResult result;
  Vector gamma = u * small.vector;
  const double norm = gamma.norm();
  if (norm == 0.0) {
    throw NumericalError("leading_left_vector: left vector collapsed to zero");
  }
  gamma /= norm;
  fix_sign(gamma);
  result.vector = std::move(gamma);
  result.value = small.value / static_cast<double>(u.cols());
  result.iterations = small.iterations;
  result.converged = small.converged;
  result.degenerate = small.degenerate;
  return result;
}

}  // namespace fconn
