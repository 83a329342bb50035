// Copyright 2026 The convcs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "convcs/sequences.hpp"
#include "convcs/types.hpp"

namespace convcs {

using Matrix = Eigen::MatrixXcd;

/// Largest N for which dense materialization is allowed.
inline constexpr std::size_t kDenseGuard = 4096;

/// N-point circulant A = (1/sqrt(N)) F^* diag(sigma) F, stored as its spectrum
/// sigma and filter a = (1/sqrt(N)) F^* sigma. A(p, q) = a_{(p - q) mod N}.
class CirculantOperator {
 public:
  enum class Origin { Spectrum, Filter };

  /// Frequency-domain construction. sigma must be unimodular within 1e-12.
  static CirculantOperator from_spectrum(const Sequence& sigma);
  static CirculantOperator from_spectrum(CSpan sigma);
  /// Time-domain construction from the filter a; sigma = (1/sqrt(N)) F a.
  /// No unimodularity requirement, so A^*A = N I need not hold.
  static CirculantOperator from_filter(const Sequence& a);
  static CirculantOperator from_filter(CSpan a);

  std::size_t size() const { return sigma_.size(); }
  CSpan spectrum() const { return sigma_; }
  CSpan filter() const { return a_; }
  Origin origin() const { return origin_; }
  /// max |imag(a_k)| <= 1e-10.
  bool real_flag() const { return real_; }
  /// Every |sigma_k| = 1 within 1e-12, hence A^*A = N I.
  bool unitary() const { return unitary_; }
  std::optional<SequenceKind> source_kind() const { return kind_; }
  const SequenceParams& source_params() const { return params_; }

  /// y = A x via two length-N transforms.
  CVec apply(CSpan x) const;
  /// y = A^* x.
  CVec adjoint(CSpan x) const;
  /// apply() for a real-filter operator on real input, imaginary parts
  /// checked against 1e-10 (relative to the peak output) and dropped.
  std::vector<double> apply_real(std::span<const double> x) const;

 private:
  CirculantOperator(CVec sigma, CVec a, Origin origin);
  CVec sigma_;
  CVec a_;
  Origin origin_;
  bool real_ = false;
  bool unitary_ = false;
  std::optional<SequenceKind> kind_;
  SequenceParams params_;
};

enum class SamplingMode { RandomUniform, Deterministic };
std::string_view to_string(SamplingMode mode);

/// Sorted distinct row indices Omega in [0, N).
class SamplingSet {
 public:
  /// M distinct indices drawn by a partial Fisher-Yates shuffle of 0..N-1
  /// with Rng(seed).uniform_below, then sorted.
  static SamplingSet random(std::size_t n, std::size_t m, std::uint64_t seed);
  /// Caller-supplied indices; sorted on construction, duplicates rejected.
  static SamplingSet deterministic(std::size_t n, std::vector<std::size_t> indices);
  /// Uniform stride: index i -> floor(i N / M).
  static SamplingSet stride(std::size_t n, std::size_t m);

  std::size_t n() const { return n_; }
  std::size_t m() const { return idx_.size(); }
  const std::vector<std::size_t>& indices() const { return idx_; }
  SamplingMode mode() const { return mode_; }
  std::optional<std::uint64_t> seed() const { return seed_; }

 private:
  SamplingSet(std::size_t n, std::vector<std::size_t> idx, SamplingMode mode,
              std::optional<std::uint64_t> seed);
  std::size_t n_;
  std::vector<std::size_t> idx_;
  SamplingMode mode_;
  std::optional<std::uint64_t> seed_;
};

/// Sparsifying basis Psi (unitary).
///   Identity        Psi = I
///   InverseFourier  Psi = (1/sqrt(N)) F^*
///   InverseDCT2     Psi(p, q) = w_q cos(pi (p + 1/2) q / N), w_0 = 1/sqrt(N), w_q = sqrt(2/N)
enum class BasisKind { Identity, InverseFourier, InverseDCT2 };
std::string_view to_string(BasisKind kind);
BasisKind basis_kind_from_string(std::string_view name);

/// x = Psi f, O(N log N).
CVec basis_apply(BasisKind kind, CSpan f);
/// f = Psi^* x, O(N log N).
CVec basis_adjoint(BasisKind kind, CSpan x);
/// Psi built entry by entry from its defining formula.
Matrix basis_dense(BasisKind kind, std::size_t n);

/// Abstract M x N linear map with an adjoint.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual std::size_t rows() const = 0;
  virtual std::size_t cols() const = 0;
  virtual CVec forward(CSpan f) const = 0;
  virtual CVec adjoint(CSpan y) const = 0;
  /// Column j; defaults to forward(e_j).
  virtual CVec column(std::size_t j) const;
};

/// Theta = (1/sqrt(M)) R_Omega A Psi.
class SensingOperator final : public LinearOperator {
 public:
  SensingOperator(CirculantOperator a, SamplingSet omega, BasisKind basis);

  std::size_t rows() const override { return omega_.m(); }
  std::size_t cols() const override { return a_.size(); }
  CVec forward(CSpan f) const override;
  CVec adjoint(CSpan y) const override;
  CVec column(std::size_t j) const override;

  const CirculantOperator& circulant() const { return a_; }
  const SamplingSet& sampling() const { return omega_; }
  BasisKind basis() const { return basis_; }

 private:
  CirculantOperator a_;
  SamplingSet omega_;
  BasisKind basis_;
  double scale_;
};

/// Explicit matrix wrapped as a LinearOperator.
class DenseOperator final : public LinearOperator {
 public:
  explicit DenseOperator(Matrix m) : m_(std::move(m)) {}
  std::size_t rows() const override { return static_cast<std::size_t>(m_.rows()); }
  std::size_t cols() const override { return static_cast<std::size_t>(m_.cols()); }
  CVec forward(CSpan f) const override;
  CVec adjoint(CSpan y) const override;
  CVec column(std::size_t j) const override;
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

/// N x N matrix of A, column j = A e_j. Throws past kDenseGuard.
Matrix materialize_dense(const CirculantOperator& a);
/// rows x cols matrix, column j = op.forward(e_j). Throws when cols > kDenseGuard.
Matrix materialize_dense(const LinearOperator& op);

}  // namespace convcs
