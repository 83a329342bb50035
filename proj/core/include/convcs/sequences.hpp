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
#include <string>
#include <string_view>
#include <vector>

#include "convcs/types.hpp"

namespace convcs {

enum class SequenceKind {
  FZC,
  ExtendedPolyphase,
  MSequence,
  PerfectBinaryFromM,
  Golay,
  ExtendedGolay,
  Legendre,
  RandomPhase,
  RandomBinary,
};

std::string_view to_string(SequenceKind kind);
/// Accepts the canonical names ("FZC", "MSequence", ...) and the CLI
/// spellings ("fzc", "m-sequence", "ext-golay", ...). Throws on anything else.
SequenceKind sequence_kind_from_string(std::string_view name);

/// Generation parameters. Only the fields relevant to the kind are set.
struct SequenceParams {
  std::optional<std::int64_t> gamma;         // FZC root
  std::optional<int> degree;                 // MSequence
  std::optional<std::uint32_t> taps;         // MSequence polynomial incl. x^degree and 1
  std::optional<std::uint32_t> init;         // MSequence initial state
  std::optional<std::uint64_t> seed;         // random kinds
  std::optional<std::size_t> base_length;    // N0 of the Golay kernel behind Golay kinds

  bool operator==(const SequenceParams&) const = default;
};

/// A length-N complex sequence tagged with how it was generated.
///
/// Immutable once constructed. The constructor enforces the per-kind
/// invariants: unimodular entries for FZC/ExtendedPolyphase/RandomPhase,
/// exact +-1 entries for MSequence/Golay/ExtendedGolay/Legendre/RandomBinary,
/// and conjugate symmetry s_k = conj(s_{N-k}) for the two extended kinds.
class Sequence {
 public:
  Sequence(SequenceKind kind, CVec values, SequenceParams params = {},
           std::optional<double> epsilon_claim = std::nullopt);

  SequenceKind kind() const { return kind_; }
  std::size_t size() const { return values_.size(); }
  CSpan values() const { return values_; }
  const cplx& operator[](std::size_t k) const { return values_[k]; }
  const SequenceParams& params() const { return params_; }
  /// The off-peak autocorrelation level the construction promises, if any.
  std::optional<double> epsilon_claim() const { return epsilon_claim_; }

 private:
  SequenceKind kind_;
  CVec values_;
  SequenceParams params_;
  std::optional<double> epsilon_claim_;
};

struct GolayPair {
  std::vector<int> a;
  std::vector<int> b;
};

/// Frank-Zadoff-Chu sequence: exp(-j pi gamma k^2 / N) for even N and
/// exp(-j pi gamma k (k+1) / N) for odd N. Requires gcd(gamma, N) = 1.
Sequence fzc(std::size_t n, std::int64_t gamma);

/// Conjugate-symmetric quadratic-phase sequence, defined for every N >= 2.
Sequence extended_polyphase(std::size_t n);

/// Maximum-length sequence from a Fibonacci LFSR.
///
/// `taps` holds the feedback polynomial p(x) = x^d + c_{d-1} x^{d-1} + ... + c_0
/// as a bitmask (bit i = c_i, bit d set). The binary stream satisfies
/// u_{n+d} = sum_i c_i u_{n+i} (mod 2) with u_i = bit i of `init` for i < d, and
/// the output is s_n = (-1)^{u_n}. The result is rejected unless its periodic
/// autocorrelation is exactly -1 off-peak, which catches non-primitive taps.
Sequence m_sequence(int degree, std::uint32_t taps, std::uint32_t init);
/// Same, with the built-in primitive polynomial for `degree` and init = 1.
Sequence m_sequence(int degree);
/// Built-in primitive polynomial (as a mask including x^degree) for degree in [2, 20].
std::uint32_t primitive_taps(int degree);

/// Real two-valued perfect sequence sqrt(N/(N+1)) a + c 1 built from an
/// m-sequence a, with c = +-(1 - 1/sqrt(N+1)) / sqrt(N) signed like sum(a).
Sequence perfect_binary_from_m(const Sequence& m);

/// True when n0 = 2^a 10^b 26^c.
bool golay_admissible(std::size_t n0);
/// Complementary pair of length n0. Kernels of length 10 and 26 are combined
/// with Turyn's product and extended by (a, b) -> (a|b, a|-b); the result is
/// checked exactly against the complementarity condition before returning.
GolayPair golay_pair(std::size_t n0);
/// The `a` member of golay_pair(n0).
Sequence golay(std::size_t n0);

/// Real, conjugate-symmetric bipolar sequence built from a Golay sequence s of
/// length N0. Even N = 2 N0: s_k on the lower half, s_0 at N/2, mirrored above.
/// Odd N = 2 N0 - 1: s_k for k <= (N-1)/2 and s_{N-k} above.
Sequence extended_golay(std::size_t n);

/// Legendre sequence for an odd prime p with s_0 = 1.
Sequence legendre(std::size_t p);

/// Unimodular sequence exp(2 pi j u_k), u_k = Rng(seed).uniform01() in index order.
Sequence random_phase(std::size_t n, std::uint64_t seed);
/// +-1 sequence, s_k = (-1)^{Rng(seed).coin()} in index order.
Sequence random_binary(std::size_t n, std::uint64_t seed);

/// R_s(l) = sum_k s_k conj(s_{(k+l) mod N}). Requires l < N.
cplx autocorr_periodic(CSpan s, std::size_t lag);
/// r_s(l) = sum_{k < N-l} s_k conj(s_{k+l}). Requires l < N.
cplx autocorr_aperiodic(CSpan s, std::size_t lag);
/// All N periodic lags. Direct summation up to N = 4096, Wiener-Khinchin above.
CVec autocorr_periodic_all(CSpan s);

enum class AutocorrelationClass { Perfect, NearlyPerfect, Neither };
std::string_view to_string(AutocorrelationClass c);

struct Classification {
  AutocorrelationClass category;
  double epsilon_observed;            // max_{l != 0} |R_s(l)|
  std::optional<bool> claim_holds;    // epsilon_observed <= epsilon_claim (+1e-9)
};

/// Perfect iff epsilon_observed <= 1e-9; nearly perfect iff it is at most
/// max(4, epsilon_claim); otherwise neither.
Classification classify(const Sequence& s);

}  // namespace convcs
