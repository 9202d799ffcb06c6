// Copyright 2026 The jrsp4 Authors
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

#pragma once

// Dense state-vector algebra for small registers of four-level particles.
//
// Index convention: for a register with labels (l_0, ..., l_{n-1}) the
// amplitude of the basis ket |d_0 d_1 ... d_{n-1}> lives at
//
//     index = d_0 * 4^(n-1) + d_1 * 4^(n-2) + ... + d_{n-1}
//
// i.e. the leftmost label is the most significant base-4 digit. Every
// routine in this header preserves that convention for its outputs.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace jrsp {

using Amplitude = std::complex<double>;

inline constexpr int kQuditDim = 4;

/// Tolerance for construction-time checks (normalization, unitarity, hermiticity).
inline constexpr double kConstructionTolerance = 1e-12;
/// Tolerance for end-to-end fidelity and probability checks.
inline constexpr double kFidelityTolerance = 1e-10;

/// Contract violation raised by every module of the library.
class Error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ordered list of distinct particle labels.
class RegisterLayout {
 public:
  RegisterLayout() = default;
  explicit RegisterLayout(std::vector<int> labels);

  const std::vector<int>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  /// 4^size().
  std::size_t dimension() const noexcept;
  int dim_per_particle() const noexcept { return kQuditDim; }

  bool contains(int label) const noexcept;
  /// Position of `label` in the layout; throws Error for unknown labels.
  std::size_t position(int label) const;
  /// Index stride of the digit at `position`.
  std::size_t stride(std::size_t position) const noexcept;

  /// Labels followed by `other`'s labels; throws "label collision" on overlap.
  RegisterLayout concat(const RegisterLayout& other) const;

  bool operator==(const RegisterLayout&) const = default;

 private:
  std::vector<int> labels_;
};

/// Base-4 digits of `index` for a register of `particles` particles, most significant first.
std::vector<int> index_digits(std::size_t index, std::size_t particles);
std::size_t digits_index(std::span<const int> digits);

class PureState {
 public:
  /// Throws Error if the amplitude count is not 4^n or any amplitude is non-finite.
  PureState(RegisterLayout layout, std::vector<Amplitude> amplitudes);

  static PureState zero(RegisterLayout layout);
  static PureState basis(RegisterLayout layout, std::span<const int> digits);

  const RegisterLayout& layout() const noexcept { return layout_; }
  std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }
  Amplitude operator[](std::size_t index) const { return amplitudes_.at(index); }
  Amplitude amplitude(std::span<const int> digits) const;

  double norm_squared() const noexcept;
  double norm() const noexcept;
  bool is_normalized(double tolerance = kConstructionTolerance) const noexcept;
  bool is_real(double tolerance = 0.0) const noexcept;
  std::size_t nonzero_count(double tolerance = 0.0) const noexcept;

  /// Throws Error for a zero vector.
  PureState normalized() const;
  PureState scaled(Amplitude factor) const;
  /// Same amplitudes, new labels (positional). Throws on a size mismatch.
  PureState relabeled(std::vector<int> labels) const;

 private:
  RegisterLayout layout_;
  std::vector<Amplitude> amplitudes_;
};

/// Row-major dense complex matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Amplitude& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Amplitude operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix adjoint() const;
  Matrix operator*(const Matrix& rhs) const;
  Amplitude trace() const;
  double max_abs_diff(const Matrix& other) const;
  bool approx_equal(const Matrix& other, double tolerance) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Amplitude> data_;
};

/// 4x4 operator acting on a single particle. Column t is the image of |t>.
class LocalOperator {
 public:
  explicit LocalOperator(Matrix matrix);

  const Matrix& matrix() const noexcept { return matrix_; }
  bool is_unitary(double tolerance = kConstructionTolerance) const;

 private:
  Matrix matrix_;
};

class DensityMatrix {
 public:
  DensityMatrix(RegisterLayout layout, Matrix entries);

  const RegisterLayout& layout() const noexcept { return layout_; }
  const Matrix& entries() const noexcept { return entries_; }

  double trace() const { return entries_.trace().real(); }
  bool is_hermitian(double tolerance = kConstructionTolerance) const;
  bool is_diagonal(double tolerance = kConstructionTolerance) const;
  /// Ascending eigenvalues (Hermitian part).
  std::vector<double> eigenvalues() const;
  bool is_positive_semidefinite(double tolerance = 1e-10) const;

 private:
  RegisterLayout layout_;
  Matrix entries_;
};

/// Product state; layouts must have pairwise-disjoint labels.
PureState tensor_product(std::span<const PureState> states);
PureState tensor_product(const PureState& a, const PureState& b);

PureState apply_local(const LocalOperator& op, int target_label, const PureState& state);

struct Projection {
  PureState residual;  ///< unnormalized state on the unmeasured labels
  double probability;  ///< residual.norm_squared()
};

/// Partial inner product <basis_vector| applied to the measured labels.
/// `basis_vector`'s layout must list exactly `measured_labels`, in that order.
Projection project(const PureState& state, std::span<const int> measured_labels,
                   const PureState& basis_vector);

/// <a|b>, conjugate-linear in `a`.
Amplitude inner(const PureState& a, const PureState& b);

/// |<a|b>|^2 for normalized states.
double fidelity(const PureState& a, const PureState& b);

/// Partial trace onto `keep_labels` (result layout follows that order).
DensityMatrix reduced_density(const PureState& state, std::span<const int> keep_labels);

}  // namespace jrsp
