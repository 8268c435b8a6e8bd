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
// The analysis pipelines. ssvd extracts the leading eigenvector of the
// voxel x voxel correlation of the temporal concatenation; fsvd does the
// same on the (voxel, time) x (voxel, time) correlation of the vectorized
// layout, where the leading vector is a whole spatio-temporal map; fica
// factorizes the vectorized layout into independent subject-score rows with
// one spatio-temporal map per component.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fconn/data_model.hpp"
#include "fconn/leading_eigen.hpp"
#include "fconn/stats.hpp"
#include "fconn/types.hpp"

namespace fconn {

enum class Method { Fsvd, Ssvd, Fica };

std::string method_name(Method method);
Method parse_method(const std::string& name);

/// A unit-norm loading vector: length n_voxels for ssvd, n_voxels * n_times
/// for fsvd/fica. strength is the eigenvalue share of the correlation trace
/// for the SVD methods and the pre-normalization mixing-column norm for ICA.
struct Component {
  Vector loading;
  double strength = 0.0;
  Method method = Method::Fsvd;
  int index = 0;
};

/// Iteration budget used by the pipelines; roomier than the PowerOptions
/// default so slowly separating spectra still converge. Gram matrices here
/// are at most n_subjects^2 (or n_voxels^2 for ssvd), so iterations are cheap.
inline PowerOptions pipeline_power_options() { return PowerOptions{1e-12, 50000, 0}; }

/// Leading correlation eigenvector of the temporal concatenation, computed
/// through whichever Gram side is smaller. Requires row-centered input.
/// Throws NumericalError on non-convergence or a degenerate spectrum.
Component spatial_svd(const GroupMatrix& y);

/// Leading correlation eigenvector of the vectorized layout via the
/// standardize + Gram path; never forms the full correlation matrix.
/// Requires row-centered input and at least 2 subjects.
Component fsvd(const FunctionalMatrix& z);

/// Undoes the column stacking: map(v, t) = loading[t * n_voxels + v].
Matrix component_to_map(const Component& component, Index n_voxels, Index n_times);

struct Whitening {
  Matrix whitened;         // k x n_subjects, uncorrelated unit-variance rows
  Matrix dewhiten;         // (n_voxels*n_times) x k; dewhiten * whitened = rank-k projection
  Vector singular_values;  // top k singular values of the input
  Index attained_rank = 0;
};

/// Rank-k whitening through the subject-side Gram matrix. Rejects k beyond
/// the numerical rank (singular value below 1e-10 of the largest).
Whitening whiten(const Matrix& z, Index k);
Whitening whiten(const FunctionalMatrix& z, Index k);

struct FicaOptions {
  int max_iter = 1000;
  double tol = 1e-10;    // on 1 - min_i |<w_i', w_i>| between sweeps
  int restarts = 5;      // seeds derived as seed + restart index; best contrast wins
  bool standardize = true;  // correlation-standardize rows first (same as fsvd)
};

struct IcaResult {
  Matrix mixing;   // (n_voxels*n_times) x k, columns ordered by descending norm
  Matrix sources;  // k x n_subjects, zero-mean unit-variance rows
  Index k = 0;
  std::uint64_t seed = 0;
  bool converged = false;
  std::vector<std::string> warnings;
};

/// Fixed-point ICA (tanh contrast, symmetric decorrelation) on the whitened
/// vectorized layout. mixing * sources reconstructs the rank-k projection of
/// the (standardized, then de-standardized) input. Identifiability is up to
/// source permutation and sign only.
IcaResult fica(const FunctionalMatrix& z, Index k, std::uint64_t seed,
               const FicaOptions& opts = {});

/// One Component per mixing column: unit-norm loading, strength = the norm
/// the column had before normalization.
std::vector<Component> ica_components(const IcaResult& result);

}  // namespace fconn
