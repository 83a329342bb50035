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

#include "convcs/sequences.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "convcs/fft.hpp"
#include "convcs/rng.hpp"

namespace convcs {
namespace {

constexpr double kUnimodularTol = 1e-12;
constexpr double kSymmetryTol = 1e-12;

// Length-10 and length-26 complementary kernels. Both are re-verified by
// golay_pair() before use.
constexpr std::array<int, 10> kGolay10A{1, 1, -1, 1, -1, 1, -1, -1, 1, 1};
constexpr std::array<int, 10> kGolay10B{1, 1, -1, 1, 1, 1, 1, 1, -1, -1};
constexpr std::array<int, 26> kGolay26A{1, 1, 1,  1,  -1, 1, 1, -1, -1, 1,  -1, 1,  -1,
                                        1, -1, -1, 1, -1, 1, 1, 1,  -1, -1, 1,  1,  1};
constexpr std::array<int, 26> kGolay26B{1, 1, 1, 1, -1, 1, 1, -1, -1, 1, -1, 1,  1,
                                        1, 1, 1, -1, 1, -1, -1, -1, 1, 1, -1, -1, -1};

// Primitive polynomials over GF(2), degree 2..20, as masks including x^d and 1.
constexpr std::array<std::uint32_t, 21> kPrimitiveTaps{
    0,        0,        0x7,      0xB,      0x13,     0x25,     0x43,
    0x83,     0x11D,    0x211,    0x409,    0x805,    0x1053,   0x201B,
    0x402B,   0x8003,   0x1002D,  0x20009,  0x40081,  0x80027,  0x100009};

bool is_bipolar(const cplx& v) { return v.imag() == 0.0 && (v.real() == 1.0 || v.real() == -1.0); }

bool requires_unimodular(SequenceKind k) {
  return k == SequenceKind::FZC || k == SequenceKind::ExtendedPolyphase ||
         k == SequenceKind::RandomPhase;
}

bool requires_bipolar(SequenceKind k) {
  return k == SequenceKind::MSequence || k == SequenceKind::Golay ||
         k == SequenceKind::ExtendedGolay || k == SequenceKind::Legendre ||
         k == SequenceKind::RandomBinary;
}

bool requires_symmetry(SequenceKind k) {
  return k == SequenceKind::ExtendedPolyphase || k == SequenceKind::ExtendedGolay;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

CVec to_complex(const std::vector<int>& v) {
  CVec out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [](int x) { return cplx(x, 0.0); });
  return out;
}

std::vector<long long> aperiodic_int(const std::vector<int>& s) {
  const std::size_t n = s.size();
  std::vector<long long> r(n, 0);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t k = 0; k + l < n; ++k) r[l] += static_cast<long long>(s[k]) * s[k + l];
  return r;
}

bool is_complementary(const GolayPair& p) {
  if (p.a.size() != p.b.size() || p.a.empty()) return false;
  const auto ra = aperiodic_int(p.a);
  const auto rb = aperiodic_int(p.b);
  const auto n = static_cast<long long>(p.a.size());
  if (ra[0] + rb[0] != 2 * n) return false;
  for (std::size_t l = 1; l < ra.size(); ++l)
    if (ra[l] + rb[l] != 0) return false;
  return true;
}

// Turyn's product: pairs of lengths m and n give a pair of length m n.
GolayPair turyn(const GolayPair& ab, const GolayPair& cd) {
  const std::size_t m = ab.a.size();
  const std::size_t n = cd.a.size();
  std::vector<int> p(m), q(m);
  for (std::size_t j = 0; j < m; ++j) {
    p[j] = (ab.a[j] + ab.b[j]) / 2;
    q[j] = (ab.a[j] - ab.b[j]) / 2;
  }
  GolayPair out{std::vector<int>(m * n), std::vector<int>(m * n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      out.a[i * m + j] = cd.a[i] * p[j] + cd.b[n - 1 - i] * q[j];
      out.b[i * m + j] = cd.b[i] * p[j] - cd.a[n - 1 - i] * q[j];
    }
  }
  return out;
}

template <std::size_t L>
GolayPair kernel(const std::array<int, L>& a, const std::array<int, L>& b) {
  GolayPair k{std::vector<int>(a.begin(), a.end()), std::vector<int>(b.begin(), b.end())};
  if (!is_complementary(k))
    throw std::logic_error("embedded Golay kernel of length " + std::to_string(L) +
                           " is not complementary");
  return k;
}

struct GolayFactors {
  int twos = 0, tens = 0, twenty_sixes = 0;
};

std::optional<GolayFactors> golay_factors(std::size_t n0) {
  if (n0 == 0) return std::nullopt;
  GolayFactors f;
  while (n0 % 26 == 0) n0 /= 26, ++f.twenty_sixes;
  while (n0 % 10 == 0) n0 /= 10, ++f.tens;
  while (n0 % 2 == 0) n0 /= 2, ++f.twos;
  if (n0 != 1) return std::nullopt;
  return f;
}

}  // namespace

std::string_view to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::FZC: return "FZC";
    case SequenceKind::ExtendedPolyphase: return "ExtendedPolyphase";
    case SequenceKind::MSequence: return "MSequence";
    case SequenceKind::PerfectBinaryFromM: return "PerfectBinaryFromM";
    case SequenceKind::Golay: return "Golay";
    case SequenceKind::ExtendedGolay: return "ExtendedGolay";
    case SequenceKind::Legendre: return "Legendre";
    case SequenceKind::RandomPhase: return "RandomPhase";
    case SequenceKind::RandomBinary: return "RandomBinary";
  }
  return "?";
}

SequenceKind sequence_kind_from_string(std::string_view name) {
  std::string key;
  for (char c : name)
    if (c != '-' && c != '_') key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (key == "fzc" || key == "zadoffchu") return SequenceKind::FZC;
  if (key == "extendedpolyphase" || key == "extpoly") return SequenceKind::ExtendedPolyphase;
  if (key == "msequence" || key == "mseq") return SequenceKind::MSequence;
  if (key == "perfectbinaryfromm" || key == "perfectbinary") return SequenceKind::PerfectBinaryFromM;
  if (key == "golay") return SequenceKind::Golay;
  if (key == "extendedgolay" || key == "extgolay") return SequenceKind::ExtendedGolay;
  if (key == "legendre") return SequenceKind::Legendre;
  if (key == "randomphase") return SequenceKind::RandomPhase;
  if (key == "randombinary") return SequenceKind::RandomBinary;
  throw std::invalid_argument("unknown sequence kind: " + std::string(name));
}

Sequence::Sequence(SequenceKind kind, CVec values, SequenceParams params,
                   std::optional<double> epsilon_claim)
    : kind_(kind), values_(std::move(values)), params_(params), epsilon_claim_(epsilon_claim) {
  const std::size_t n = values_.size();
  if (n == 0) throw std::invalid_argument("Sequence: empty");
  for (const auto& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument("Sequence: non-finite entry");
  if (requires_unimodular(kind_))
    for (const auto& v : values_)
      if (std::abs(std::abs(v) - 1.0) > kUnimodularTol)
        throw std::invalid_argument("Sequence: entry not unimodular");
  if (requires_bipolar(kind_))
    for (const auto& v : values_)
      if (!is_bipolar(v)) throw std::invalid_argument("Sequence: entry not +-1");
  if (requires_symmetry(kind_))
    for (std::size_t k = 1; k < n; ++k)
      if (std::abs(values_[k] - std::conj(values_[n - k])) > kSymmetryTol)
        throw std::invalid_argument("Sequence: conjugate symmetry violated");
  if (epsilon_claim_ && !(*epsilon_claim_ >= 0.0))
    throw std::invalid_argument("Sequence: negative epsilon claim");
}

Sequence fzc(std::size_t n, std::int64_t gamma) {
  if (n == 0) throw std::invalid_argument("fzc: N must be positive");
  const auto nn = static_cast<std::int64_t>(n);
  if (std::gcd(gamma, nn) != 1)
    throw std::invalid_argument("fzc: gamma must be coprime with N");
  const std::int64_t period = 2 * nn;
  const std::int64_t g = mod(gamma, period);
  CVec v(n);
  for (std::int64_t k = 0; k < nn; ++k) {
    const std::int64_t quad = (nn % 2 == 0) ? mod(k * k, period) : mod(k * (k + 1), period);
    v[k] = unit_phase(-mod(g * quad, period), nn);
  }
  SequenceParams p;
  p.gamma = gamma;
  return Sequence(SequenceKind::FZC, std::move(v), p, 0.0);
}

Sequence extended_polyphase(std::size_t n) {
  if (n < 2) throw std::invalid_argument("extended_polyphase: N must be >= 2");
  const auto nn = static_cast<std::int64_t>(n);
  const std::int64_t period = 2 * nn;
  CVec v(n);
  v[0] = 1.0;
  for (std::int64_t k = 1; k < nn; ++k) {
    const std::int64_t sq = mod(k * k, period);
    if (nn % 2 == 0) {
      if (k < nn / 2) v[k] = unit_phase(-sq, nn);
      else if (k == nn / 2) v[k] = 1.0;
      else v[k] = unit_phase(sq, nn);
    } else {
      if (k <= (nn - 1) / 2) v[k] = unit_phase(-sq, nn);
      else v[k] = unit_phase(sq + nn, nn);  // -exp(j pi k^2 / N)
    }
  }
  return Sequence(SequenceKind::ExtendedPolyphase, std::move(v));
}

std::uint32_t primitive_taps(int degree) {
  if (degree < 2 || degree > 20) throw std::invalid_argument("primitive_taps: degree must be in [2, 20]");
  return kPrimitiveTaps[static_cast<std::size_t>(degree)];
}

Sequence m_sequence(int degree, std::uint32_t taps, std::uint32_t init) {
  if (degree < 2 || degree > 20) throw std::invalid_argument("m_sequence: degree must be in [2, 20]");
  const std::uint32_t state_mask = (1u << degree) - 1u;
  if ((init & state_mask) == 0 || (init & ~state_mask) != 0)
    throw std::invalid_argument("m_sequence: init must be a nonzero state of `degree` bits");
  if ((taps >> degree) != 1u)
    throw std::invalid_argument("m_sequence: taps must have x^degree as leading term");
  const std::size_t n = (std::size_t{1} << degree) - 1;
  const std::uint32_t feedback = taps & state_mask;

  // Bit i of `state` holds u_{t+i}.
  std::uint32_t state = init;
  std::vector<int> bits(n);
  for (std::size_t t = 0; t < n; ++t) {
    bits[t] = static_cast<int>(state & 1u);
    const auto next = static_cast<std::uint32_t>(std::popcount(state & feedback) & 1);
    state = (state >> 1) | (next << (degree - 1));
  }

  CVec v(n);
  for (std::size_t t = 0; t < n; ++t) v[t] = bits[t] ? -1.0 : 1.0;
  const CVec r = autocorr_periodic_all(v);
  for (std::size_t l = 1; l < n; ++l)
    if (std::abs(r[l] - cplx(-1.0, 0.0)) > 0.5)
      throw std::invalid_argument("m_sequence: taps are not primitive (off-peak autocorrelation != -1)");

  SequenceParams p;
  p.degree = degree;
  p.taps = taps;
  p.init = init;
  return Sequence(SequenceKind::MSequence, std::move(v), p, 1.0);
}

Sequence m_sequence(int degree) { return m_sequence(degree, primitive_taps(degree), 1u); }

Sequence perfect_binary_from_m(const Sequence& m) {
  if (m.kind() != SequenceKind::MSequence)
    throw std::invalid_argument("perfect_binary_from_m: input must be an m-sequence");
  const double n = static_cast<double>(m.size());
  const double scale = std::sqrt(n / (n + 1.0));
  // The DC term of sqrt(N/(N+1)) a is +-1/sqrt(N+1) after unitary scaling;
  // the offset lifts it to unit modulus, so its sign follows sum(a).
  double sum = 0.0;
  for (const auto& x : m.values()) sum += x.real();
  const double offset = std::copysign((1.0 - 1.0 / std::sqrt(n + 1.0)) / std::sqrt(n), sum);
  CVec v(m.size());
  for (std::size_t k = 0; k < m.size(); ++k) v[k] = scale * m[k] + offset;
  return Sequence(SequenceKind::PerfectBinaryFromM, std::move(v), m.params(), 0.0);
}

bool golay_admissible(std::size_t n0) { return golay_factors(n0).has_value(); }

GolayPair golay_pair(std::size_t n0) {
  const auto f = golay_factors(n0);
  if (!f) throw std::invalid_argument("golay_pair: length must be 2^a 10^b 26^c");
  GolayPair pair{{1}, {1}};
  if (f->tens > 0 || f->twenty_sixes > 0) {
    const GolayPair k10 = kernel(kGolay10A, kGolay10B);
    const GolayPair k26 = kernel(kGolay26A, kGolay26B);
    for (int i = 0; i < f->tens; ++i) pair = turyn(pair, k10);
    for (int i = 0; i < f->twenty_sixes; ++i) pair = turyn(pair, k26);
  }
  for (int i = 0; i < f->twos; ++i) {
    GolayPair next;
    next.a = pair.a;
    next.a.insert(next.a.end(), pair.b.begin(), pair.b.end());
    next.b = pair.a;
    for (int x : pair.b) next.b.push_back(-x);
    pair = std::move(next);
  }
  if (n0 > 1 && !is_complementary(pair))
    throw std::logic_error("golay_pair: construction failed the complementarity check");
  return pair;
}

Sequence golay(std::size_t n0) {
  SequenceParams p;
  p.base_length = n0;
  return Sequence(SequenceKind::Golay, to_complex(golay_pair(n0).a), p);
}

Sequence extended_golay(std::size_t n) {
  if (n < 2) throw std::invalid_argument("extended_golay: N must be >= 2");
  const bool even = n % 2 == 0;
  const std::size_t n0 = even ? n / 2 : (n + 1) / 2;
  if (!golay_admissible(n0))
    throw std::invalid_argument(even ? "extended_golay: N/2 is not a Golay length"
                                     : "extended_golay: (N+1)/2 is not a Golay length");
  const std::vector<int> s = golay_pair(n0).a;
  CVec v(n);
  if (even) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k < n / 2) v[k] = s[k];
      else if (k == n / 2) v[k] = s[0];
      else v[k] = s[n - k];
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) v[k] = (k <= (n - 1) / 2) ? s[k] : s[n - k];
  }
  SequenceParams p;
  p.base_length = n0;
  return Sequence(SequenceKind::ExtendedGolay, std::move(v), p);
}

Sequence legendre(std::size_t p) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("legendre: N must be an odd prime");
  std::vector<bool> residue(p, false);
  for (std::size_t k = 1; k <= (p - 1) / 2; ++k) residue[(k * k) % p] = true;
  CVec v(p);
  v[0] = 1.0;
  for (std::size_t k = 1; k < p; ++k) v[k] = residue[k] ? 1.0 : -1.0;
  return Sequence(SequenceKind::Legendre, std::move(v), {}, p % 4 == 3 ? 1.0 : 3.0);
}

Sequence random_phase(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("random_phase: N must be positive");
  Rng rng(seed);
  CVec v(n);
  for (auto& x : v) x = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform01());
  SequenceParams p;
  p.seed = seed;
  return Sequence(SequenceKind::RandomPhase, std::move(v), p);
}

Sequence random_binary(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("random_binary: N must be positive");
  Rng rng(seed);
  CVec v(n);
  for (auto& x : v) x = rng.coin() ? -1.0 : 1.0;
  SequenceParams p;
  p.seed = seed;
  return Sequence(SequenceKind::RandomBinary, std::move(v), p);
}

cplx autocorr_periodic(CSpan s, std::size_t lag) {
  const std::size_t n = s.size();
  if (lag >= n) throw std::out_of_range("autocorr_periodic: lag must be < N");
  cplx acc{0.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) acc += s[k] * std::conj(s[(k + lag) % n]);
  return acc;
}

cplx autocorr_aperiodic(CSpan s, std::size_t lag) {
  const std::size_t n = s.size();
  if (lag >= n) throw std::out_of_range("autocorr_aperiodic: lag must be < N");
  cplx acc{0.0, 0.0};
  for (std::size_t k = 0; k + lag < n; ++k) acc += s[k] * std::conj(s[k + lag]);
  return acc;
}

CVec autocorr_periodic_all(CSpan s) {
  const std::size_t n = s.size();
  CVec r(n);
  if (n <= 4096) {
    for (std::size_t l = 0; l < n; ++l) r[l] = autocorr_periodic(s, l);
    return r;
  }
  // R = F |F s|^2 / N.
  CVec power = fft(s);
  for (auto& v : power) v = std::norm(v);
  r = fft(power);
  for (auto& v : r) v /= static_cast<double>(n);
  return r;
}

std::string_view to_string(AutocorrelationClass c) {
  switch (c) {
    case AutocorrelationClass::Perfect: return "perfect";
    case AutocorrelationClass::NearlyPerfect: return "nearly_perfect";
    case AutocorrelationClass::Neither: return "neither";
  }
  return "?";
}

Classification classify(const Sequence& s) {
  const CVec r = autocorr_periodic_all(s.values());
  double eps = 0.0;
  for (std::size_t l = 1; l < r.size(); ++l) eps = std::max(eps, std::abs(r[l]));
  Classification out{AutocorrelationClass::Neither, eps, std::nullopt};
  const double nearly_limit = std::max(4.0, s.epsilon_claim().value_or(0.0)) + 1e-9;
  if (eps <= 1e-9) out.category = AutocorrelationClass::Perfect;
  else if (eps <= nearly_limit) out.category = AutocorrelationClass::NearlyPerfect;
  if (s.epsilon_claim()) out.claim_holds = eps <= *s.epsilon_claim() + 1e-9;
  return out;
}

}  // namespace convcs
