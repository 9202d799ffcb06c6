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

#include "jrsp/qudit_linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace jrsp {

namespace {

std::size_t pow4(std::size_t n) {
  std::size_t d = 1;
  for (std::size_t i = 0; i < n; ++i) d *= kQuditDim;
  return d;
}

bool finite(Amplitude a) { return std::isfinite(a.real()) && std::isfinite(a.imag()); }

// Offsets into a register for every digit string over `labels`, in the
// local ordering of `labels` (first label most significant).
std::vector<std::size_t> sub_offsets(const RegisterLayout& layout, std::span<const int> labels) {
  std::vector<std::size_t> strides;
  strides.reserve(labels.size());
  for (int label : labels) strides.push_back(layout.stride(layout.position(label)));

  std::vector<std::size_t> offsets(pow4(labels.size()), 0);
  for (std::size_t m = 0; m < offsets.size(); ++m) {
    std::size_t rest = m;
    std::size_t off = 0;
    for (std::size_t k = labels.size(); k-- > 0;) {
      off += (rest % kQuditDim) * strides[k];
      rest /= kQuditDim;
    }
    offsets[m] = off;
  }
  return offsets;
}

std::vector<int> complement(const RegisterLayout& layout, std::span<const int> removed) {
  std::vector<int> rest;
  for (int label : layout.labels()) {
    if (std::find(removed.begin(), removed.end(), label) == removed.end()) rest.push_back(label);
  }
  return rest;
}

}  // namespace

// ---- RegisterLayout ---------------------------------------------------------

RegisterLayout::RegisterLayout(std::vector<int> labels) : labels_(std::move(labels)) {
  std::set<int> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) throw Error("label collision");
}

std::size_t RegisterLayout::dimension() const noexcept { return pow4(labels_.size()); }

bool RegisterLayout::contains(int label) const noexcept {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t RegisterLayout::position(int label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw Error("unknown particle label " + std::to_string(label));
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t RegisterLayout::stride(std::size_t position) const noexcept {
  return pow4(labels_.size() - 1 - position);
}

RegisterLayout RegisterLayout::concat(const RegisterLayout& other) const {
  std::vector<int> joined = labels_;
  joined.insert(joined.end(), other.labels_.begin(), other.labels_.end());
  return RegisterLayout(std::move(joined));
}

std::vector<int> index_digits(std::size_t index, std::size_t particles) {
  std::vector<int> digits(particles, 0);
  for (std::size_t k = particles; k-- > 0;) {
    digits[k] = static_cast<int>(index % kQuditDim);
    index /= kQuditDim;
  }
  return digits;
}

std::size_t digits_index(std::span<const int> digits) {
  std::size_t index = 0;
  for (int d : digits) {
    if (d < 0 || d >= kQuditDim) throw Error("basis digit out of range");
    index = index * kQuditDim + static_cast<std::size_t>(d);
  }
  return index;
}

// ---- PureState --------------------------------------------------------------

PureState::PureState(RegisterLayout layout, std::vector<Amplitude> amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != layout_.dimension()) {
    throw Error("amplitude count " + std::to_string(amplitudes_.size()) + " does not match 4^" +
                std::to_string(layout_.size()));
  }
  if (!std::all_of(amplitudes_.begin(), amplitudes_.end(), finite)) {
    throw Error("non-finite amplitude");
  }
}

PureState PureState::zero(RegisterLayout layout) {
  std::vector<Amplitude> amps(layout.dimension(), Amplitude{});
  return PureState(std::move(layout), std::move(amps));
}

PureState PureState::basis(RegisterLayout layout, std::span<const int> digits) {
  if (digits.size() != layout.size()) throw Error("basis digit count does not match layout");
  std::vector<Amplitude> amps(layout.dimension(), Amplitude{});
  amps[digits_index(digits)] = 1.0;
  return PureState(std::move(layout), std::move(amps));
}

Amplitude PureState::amplitude(std::span<const int> digits) const {
  if (digits.size() != layout_.size()) throw Error("digit count does not match layout");
  return amplitudes_[digits_index(digits)];
}

double PureState::norm_squared() const noexcept {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return s;
}

double PureState::norm() const noexcept { return std::sqrt(norm_squared()); }

bool PureState::is_normalized(double tolerance) const noexcept {
  return std::abs(norm_squared() - 1.0) <= tolerance;
}

bool PureState::is_real(double tolerance) const noexcept {
  return std::all_of(amplitudes_.begin(), amplitudes_.end(),
                     [&](Amplitude a) { return std::abs(a.imag()) <= tolerance; });
}

std::size_t PureState::nonzero_count(double tolerance) const noexcept {
  return static_cast<std::size_t>(std::count_if(
      amplitudes_.begin(), amplitudes_.end(), [&](Amplitude a) { return std::abs(a) > tolerance; }));
}

PureState PureState::normalized() const {
  const double n = norm();
  if (n == 0.0) throw Error("cannot normalize a zero state");
  return scaled(1.0 / n);
}

PureState PureState::scaled(Amplitude factor) const {
  std::vector<Amplitude> amps(amplitudes_);
  for (auto& a : amps) a *= factor;
  return PureState(layout_, std::move(amps));
}

PureState PureState::relabeled(std::vector<int> labels) const {
  if (labels.size() != layout_.size()) throw Error("relabel: particle count mismatch");
  return PureState(RegisterLayout(std::move(labels)), amplitudes_);
}

// ---- Matrix -----------------------------------------------------------------

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Amplitude{}) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error("matrix shape mismatch");
  Matrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Amplitude a = (*this)(r, k);
      if (a == Amplitude{}) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
    }
  return out;
}

Amplitude Matrix::trace() const {
  Amplitude t{};
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double Matrix::max_abs_diff(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw Error("matrix shape mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
  return worst;
}

bool Matrix::approx_equal(const Matrix& other, double tolerance) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && max_abs_diff(other) <= tolerance;
}

// ---- LocalOperator / DensityMatrix -------------------------------------------

LocalOperator::LocalOperator(Matrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != kQuditDim || matrix_.cols() != kQuditDim) {
    throw Error("local operator must be 4x4");
  }
}

bool LocalOperator::is_unitary(double tolerance) const {
  return (matrix_ * matrix_.adjoint()).approx_equal(Matrix::identity(kQuditDim), tolerance);
}

DensityMatrix::DensityMatrix(RegisterLayout layout, Matrix entries)
    : layout_(std::move(layout)), entries_(std::move(entries)) {
  if (entries_.rows() != layout_.dimension() || entries_.cols() != layout_.dimension()) {
    throw Error("density matrix shape does not match layout");
  }
}

bool DensityMatrix::is_hermitian(double tolerance) const {
  return entries_.approx_equal(entries_.adjoint(), tolerance);
}

bool DensityMatrix::is_diagonal(double tolerance) const {
  for (std::size_t r = 0; r < entries_.rows(); ++r)
    for (std::size_t c = 0; c < entries_.cols(); ++c)
      if (r != c && std::abs(entries_(r, c)) > tolerance) return false;
  return true;
}

std::vector<double> DensityMatrix::eigenvalues() const {
  const auto n = static_cast<Eigen::Index>(entries_.rows());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      m(r, c) = 0.5 * (entries_(r, c) + std::conj(entries_(c, r)));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

bool DensityMatrix::is_positive_semidefinite(double tolerance) const {
  const auto ev = eigenvalues();
  return ev.empty() || ev.front() >= -tolerance;
}

// ---- operations -------------------------------------------------------------

PureState tensor_product(const PureState& a, const PureState& b) {
  RegisterLayout layout = a.layout().concat(b.layout());
  std::vector<Amplitude> amps(a.dimension() * b.dimension());
  for (std::size_t i = 0; i < a.dimension(); ++i)
    for (std::size_t j = 0; j < b.dimension(); ++j) amps[i * b.dimension() + j] = a[i] * b[j];
  return PureState(std::move(layout), std::move(amps));
}

PureState tensor_product(std::span<const PureState> states) {
  PureState acc(RegisterLayout{}, {Amplitude{1.0}});
  for (const auto& s : states) acc = tensor_product(acc, s);
  return acc;
}

PureState apply_local(const LocalOperator& op, int target_label, const PureState& state) {
  const RegisterLayout& layout = state.layout();
  const std::size_t stride = layout.stride(layout.position(target_label));
  const Matrix& m = op.matrix();
  std::vector<Amplitude> out(state.amplitudes().begin(), state.amplitudes().end());
  const std::size_t block = stride * kQuditDim;
  for (std::size_t base = 0; base < out.size(); base += block) {
    for (std::size_t low = 0; low < stride; ++low) {
      Amplitude in[kQuditDim];
      for (int t = 0; t < kQuditDim; ++t) in[t] = state[base + low + t * stride];
      for (int r = 0; r < kQuditDim; ++r) {
        Amplitude acc{};
        for (int t = 0; t < kQuditDim; ++t) acc += m(r, t) * in[t];
        out[base + low + r * stride] = acc;
      }
    }
  }
  return PureState(layout, std::move(out));
}

Projection project(const PureState& state, std::span<const int> measured_labels,
                   const PureState& basis_vector) {
  const auto& bv_labels = basis_vector.layout().labels();
  if (!std::equal(bv_labels.begin(), bv_labels.end(), measured_labels.begin(), measured_labels.end())) {
    throw Error("label mismatch: basis vector layout must equal the measured labels");
  }
  for (int label : measured_labels) {
    if (!state.layout().contains(label)) throw Error("label mismatch: particle " + std::to_string(label) + " not in state");
  }
  const std::vector<int> rest = complement(state.layout(), measured_labels);
  const auto measured_off = sub_offsets(state.layout(), measured_labels);
  const auto rest_off = sub_offsets(state.layout(), rest);

  std::vector<Amplitude> residual(rest_off.size(), Amplitude{});
  for (std::size_t m = 0; m < measured_off.size(); ++m) {
    const Amplitude coeff = std::conj(basis_vector[m]);
    if (coeff == Amplitude{}) continue;
    for (std::size_t r = 0; r < rest_off.size(); ++r) residual[r] += coeff * state[measured_off[m] + rest_off[r]];
  }
  PureState res(RegisterLayout(rest), std::move(residual));
  const double p = res.norm_squared();
  return {std::move(res), p};
}

Amplitude inner(const PureState& a, const PureState& b) {
  if (a.layout() != b.layout()) throw Error("layout mismatch");
  Amplitude acc{};
  for (std::size_t i = 0; i < a.dimension(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double fidelity(const PureState& a, const PureState& b) {
  if (!a.is_normalized(kFidelityTolerance) || !b.is_normalized(kFidelityTolerance)) {
    throw Error("fidelity requires normalized states");
  }
  return std::norm(inner(a, b));
}

DensityMatrix reduced_density(const PureState& state, std::span<const int> keep_labels) {
  RegisterLayout kept{std::vector<int>(keep_labels.begin(), keep_labels.end())};
  for (int label : keep_labels) {
    if (!state.layout().contains(label)) throw Error("unknown particle label " + std::to_string(label));
  }
  const std::vector<int> traced = complement(state.layout(), keep_labels);
  const auto keep_off = sub_offsets(state.layout(), keep_labels);
  const auto trace_off = sub_offsets(state.layout(), traced);

  Matrix rho(keep_off.size(), keep_off.size());
  for (std::size_t t = 0; t < trace_off.size(); ++t)
    for (std::size_t i = 0; i < keep_off.size(); ++i) {
      const Amplitude ai = state[keep_off[i] + trace_off[t]];
      if (ai == Amplitude{}) continue;
      for (std::size_t j = 0; j < keep_off.size(); ++j) rho(i, j) += ai * std::conj(state[keep_off[j] + trace_off[t]]);
    }
  return DensityMatrix(std::move(kept), std::move(rho));
}

}  // namespace jrsp
