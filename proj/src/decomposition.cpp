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

#include "fconn/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fconn/errors.hpp"
#include "fconn/rng.hpp"

namespace fconn {

std::string method_name(Method method) {
  switch (method) {
    case Method::Fsvd: return "fsvd";
    case Method::Ssvd: return "ssvd";
    case Method::Fica: return "fica";
  }
  return "fsvd";
}

Method parse_method(const std::string& name) {
  if (name == "fsvd") return Method::Fsvd;
  if (name == "ssvd") return Method::Ssvd;
  if (name == "fica") return Method::Fica;
  throw ValidationError("unknown method '" + name + "'");
}

namespace {

Index count_valid(const BoolArray& valid) {
  Index n = 0;
  for (Index i = 0; i < valid.size(); ++i) n += valid[i] ? 1 : 0;
  return n;
}

void require_converged(const EigenResult& result, const char* what) {
  if (result.degenerate) {
    throw NumericalError(std::string(what) +
                         ": top two eigenvalues are degenerate; the leading direction is not "
                         "well defined");
  }
  if (!result.converged) {
    throw NumericalError(std::string(what) + ": power iteration did not converge within " +
                         std::to_string(result.iterations) + " iterations");
  }
}

}  // namespace

Component spatial_svd(const GroupMatrix& y) {
  if (y.values.size() == 0) throw ValidationError("spatial_svd: empty input");
  if (y.values.cwiseAbs().maxCoeff() == 0.0) {
    throw ValidationError("spatial_svd: input is all zero");
  }
  require_row_centered(y.values, "spatial_svd");

  const Index n_cols = y.values.cols();
  const StandardizedRows standardized =
      standardize_rows(y.values, covariance_diagonal(y.values, n_cols));
  const Index n_valid = count_valid(standardized.valid);
  if (n_valid == 0) throw ValidationError("spatial_svd: all rows are zero-variance");

  EigenResult leading;
  if (y.values.rows() <= n_cols) {
    // The correlation matrix itself is the smaller Gram side here.
    Matrix corr = Matrix::Zero(y.values.rows(), y.values.rows());
    corr.selfadjointView<Eigen::Lower>().rankUpdate(standardized.values,
                                                    1.0 / static_cast<double>(n_cols));
    corr.triangularView<Eigen::StrictlyUpper>() =
        corr.transpose().triangularView<Eigen::StrictlyUpper>();
    leading = power_leading_eigenpair(corr, pipeline_power_options());
  } else {
    leading = leading_left_vector(standardized.values, pipeline_power_options());
  }
  require_converged(leading, "spatial_svd");

  Component component;
  component.loading = leading.vector;
  component.strength = leading.value / static_cast<double>(n_valid);
  component.method = Method::Ssvd;
  component.index = 0;
  return component;
}

Component fsvd(const FunctionalMatrix& z) {
  if (z.values.size() == 0) throw ValidationError("fsvd: empty input");
  if (z.n_subjects() < 2) throw ValidationError("fsvd: at least 2 subjects required");
  require_row_centered(z.values, "fsvd");

  const StandardizedRows standardized = standardize_rows(z);
  const Index n_valid = count_valid(standardized.valid);
  if (n_valid == 0) throw ValidationError("fsvd: all rows are zero-variance");

  const EigenResult leading =
      leading_left_vector(standardized.values, pipeline_power_options());
  require_converged(leading, "fsvd");

  Component component;
  component.loading = leading.vector;
  // Trace of the correlation matrix equals the number of unmasked rows.
  component.strength = leading.value / static_cast<double>(n_valid);
  component.method = Method::Fsvd;
  component.index = 0;
  return component;
}

Matrix component_to_map(const Component& component, Index n_voxels, Index n_times) {
  if (component.loading.size() != n_voxels * n_times) {
    throw ValidationError("component_to_map: loading length " +
                          std::to_string(component.loading.size()) + " does not match " +
                          std::to_string(n_voxels) + " x " + std::to_string(n_times));
  }
  return Eigen::Map<const Matrix>(component.loading.data(), n_voxels, n_times);
}

Whitening whiten(const Matrix& z, Index k) {
  const Index n_subjects = z.cols();
  const Index n_rows = z.rows();
  const Index k_max = std::min<Index>(n_subjects - 1, n_rows);
  if (k < 1 || k > k_max) {
    throw ValidationError("whiten: k must be in [1, " + std::to_string(k_max) + "], got " +
                          std::to_string(k));
  }

  const Matrix g = gram(z);  // n_subjects x n_subjects
  Eigen::SelfAdjointEigenSolver<Matrix> solver(g);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("whiten: eigensolver failed on the subject Gram matrix");
  }

  // Eigen returns ascending order; take the top k.
  Vector sigma(k);
  Matrix right(n_subjects, k);
  for (Index i = 0; i < k; ++i) {
    const Index src = n_subjects - 1 - i;
    sigma[i] = std::sqrt(std::max(0.0, solver.eigenvalues()[src]));
    right.col(i) = solver.eigenvectors().col(src);
  }
  const double sigma_max = sigma[0];
  if (sigma_max == 0.0 || sigma[k - 1] < 1e-10 * sigma_max) {
    Index attained = 0;
    for (Index i = 0; i < k; ++i) {
      if (sigma[i] >= 1e-10 * sigma_max && sigma[i] > 0.0) ++attained;
    }
    throw ValidationError("whiten: k=" + std::to_string(k) +
                          " exceeds the numerical rank (attained rank " +
                          std::to_string(attained) + ")");
  }

  Whitening w;
  const double scale = std::sqrt(static_cast<double>(n_subjects));
  // Unit variance under the 1/n_subjects denominator: rows are sqrt(n) * v_i^T.
  w.whitened = scale * right.transpose();
  w.dewhiten = (z * right) / scale;
  w.singular_values = sigma;
  w.attained_rank = k;
  return w;
}

Whitening whiten(const FunctionalMatrix& z, Index k) { return whiten(z.values, k); }

namespace {

// E[log cosh(X)] for standard normal X, the reference point of the tanh
// negentropy contrast. Computed once by Simpson's rule on [-12, 12]; the
// integrand decays like exp(-x^2/2) so truncation error is far below 1e-12.
double normal_logcosh_moment() {
  static const double value = [] {
    const int n = 4800;  // even
    const double lo = -12.0, hi = 12.0;
    const double h = (hi - lo) / n;
    const double inv_sqrt_2pi = 0.3989422804014326779;
    auto f = [&](double x) {
      return std::log(std::cosh(x)) * inv_sqrt_2pi * std::exp(-0.5 * x * x);
    };
    double sum = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) sum += f(lo + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
  }();
  return value;
}

// Negentropy proxy summed over rows of s: sum_i (mean(logcosh(s_i)) - c0)^2.
double tanh_contrast(const Matrix& s) {
  const double c0 = normal_logcosh_moment();
  double total = 0.0;
  for (Index i = 0; i < s.rows(); ++i) {
    const double m = s.row(i).array().cosh().log().mean();
    total += (m - c0) * (m - c0);
  }
  return total;
}

// Random rotation with a canonical Householder-QR sign fix.
Matrix random_orthonormal(Index k, std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(k, k);
  for (Index c = 0; c < k; ++c) {
    for (Index r = 0; r < k; ++r) m(r, c) = rng.normal();
  }
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ() * Matrix::Identity(k, k);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index c = 0; c < k; ++c) {
    if (r(c, c) < 0.0) q.col(c) = -q.col(c);
  }
  return q;
}

// W <- (W W^T)^{-1/2} W, making the rows an orthonormal set.
Matrix symmetric_decorrelation(const Matrix& w) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(w * w.transpose());
  if (solver.info() != Eigen::Success || solver.eigenvalues().minCoeff() <= 0.0) {
    throw NumericalError("fica: symmetric decorrelation hit a singular iterate");
  }
  const Vector inv_sqrt = solver.eigenvalues().cwiseSqrt().cwiseInverse();
  return solver.eigenvectors() * inv_sqrt.asDiagonal() * solver.eigenvectors().transpose() * w;
}

struct FixedPointRun {
  Matrix unmixing;  // k x k orthonormal rows
  bool converged = false;
  int iterations = 0;
  double contrast = 0.0;
};

// One symmetric fixed-point run on whitened data (k x n, unit-variance
// uncorrelated rows). Update rule per row:
//   w <- E[x g(w.x)] - E[g'(w.x)] w,  g = tanh,
// followed by symmetric decorrelation of all rows at once.
FixedPointRun fixed_point_ica(const Matrix& whitened, std::uint64_t seed, int max_iter,
                              double tol) {
  const Index k = whitened.rows();
  const double n = static_cast<double>(whitened.cols());

  FixedPointRun run;
  Matrix w = symmetric_decorrelation(random_orthonormal(k, seed));
  for (run.iterations = 1; run.iterations <= max_iter; ++run.iterations) {
    const Matrix projected = w * whitened;              // k x n
    const Matrix g = projected.array().tanh().matrix();
    const Vector g_prime_mean = (1.0 - g.array().square()).rowwise().mean();
    Matrix w_new = (g * whitened.transpose()) / n - g_prime_mean.asDiagonal() * w;
    w_new = symmetric_decorrelation(w_new);

    const double alignment = (w_new * w.transpose()).diagonal().cwiseAbs().minCoeff();
    w = std::move(w_new);
    if (1.0 - alignment <= tol) {
      run.converged = true;
      break;
    }
  }
  run.unmixing = w;
  run.contrast = tanh_contrast(w * whitened);
  return run;
}

}  // namespace

IcaResult fica(const FunctionalMatrix& z, Index k, std::uint64_t seed, const FicaOptions& opts) {
  if (z.values.size() == 0) throw ValidationError("fica: empty input");
  require_row_centered(z.values, "fica");

  IcaResult result;
  result.k = k;
  result.seed = seed;
  if (z.n_subjects() < 5 * k) {
    result.warnings.push_back(
        "fica: only " + std::to_string(z.n_subjects()) + " subjects for k=" + std::to_string(k) +
        " components; estimates are sample-starved below " + std::to_string(5 * k) + " subjects");
  }

  Vector c_diag = covariance_diagonal(z.values, z.n_subjects());
  Matrix data;
  BoolArray valid;
  if (opts.standardize) {
    StandardizedRows standardized = standardize_rows(z.values, c_diag);
    data = std::move(standardized.values);
    valid = std::move(standardized.valid);
  } else {
    data = z.values;
    valid = BoolArray::Constant(z.values.rows(), true);
  }

  const Whitening wh = whiten(data, k);

  FixedPointRun best;
  bool have_best = false;
  for (int r = 0; r < std::max(1, opts.restarts); ++r) {
    const FixedPointRun run = fixed_point_ica(wh.whitened, seed + static_cast<std::uint64_t>(r),
                                              opts.max_iter, opts.tol);
    if (!have_best || run.contrast > best.contrast) {
      best = run;
      have_best = true;
    }
  }

  result.converged = best.converged;
  result.sources = best.unmixing * wh.whitened;        // k x n_subjects
  result.mixing = wh.dewhiten * best.unmixing.transpose();
  if (opts.standardize) {
    // Undo the row standardization so mixing lives on the original scale.
    for (Index j = 0; j < result.mixing.rows(); ++j) {
      result.mixing.row(j) *= valid[j] ? std::sqrt(c_diag[j]) : 0.0;
    }
  }

  // Deterministic presentation: order by descending mixing-column norm, then
  // make each column's largest-|entry| coordinate positive.
  std::vector<Index> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), Index{0});
  Vector norms(k);
  for (Index i = 0; i < k; ++i) norms[i] = result.mixing.col(i).norm();
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return norms[a] > norms[b]; });
  Matrix mixing_sorted(result.mixing.rows(), k);
  Matrix sources_sorted(k, result.sources.cols());
  for (Index i = 0; i < k; ++i) {
    Vector col = result.mixing.col(order[static_cast<std::size_t>(i)]);
    Vector row = result.sources.row(order[static_cast<std::size_t>(i)]);
    if (fix_sign(col)) row = -row;
    mixing_sorted.col(i) = col;
    sources_sorted.row(i) = row.transpose();
  }
  result.mixing = std::move(mixing_sorted);
  result.sources = std::move(sources_sorted);
  return result;
}

std::vector<Component> ica_components(const IcaResult& result) {
  std::vector<Component> components;
  components.reserve(static_cast<std::size_t>(result.k));
  for (Index i = 0; i < result.k; ++i) {
    Component c;
    c.strength = result.mixing.col(i).norm();
    if (c.strength == 0.0) {
      throw NumericalError("ica_components: mixing column " + std::to_string(i) + " is zero");
    }
    c.loading = result.mixing.col(i) / c.strength;
    c.method = Method::Fica;
    c.index = static_cast<int>(i);
    components.push_back(std::move(c));
  }
  return components;
}

}  // namespace fconn
