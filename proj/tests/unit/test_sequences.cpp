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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "convcs/fft.hpp"
#include "convcs/sequences.hpp"
#include "oracles.hpp"

using namespace convcs;

namespace {

oracle::CVec vec(const Sequence& s) { return oracle::CVec(s.values().begin(), s.values().end()); }

cplx ej(double theta) { return std::polar(1.0, theta); }

void expect_near(const oracle::CVec& got, const oracle::CVec& want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_LT(std::abs(got[i] - want[i]), tol) << "index " << i;
}

std::vector<int> ints(const Sequence& s) {
  std::vector<int> v;
  for (const auto& x : s.values()) v.push_back(static_cast<int>(x.real()));
  return v;
}

}  // namespace

TEST(Fzc, LengthFourRootOne) {
  const double pi = std::numbers::pi;
  expect_near(vec(fzc(4, 1)), {1.0, ej(-pi / 4), -1.0, ej(-pi / 4)}, 1e-15);
}

TEST(Fzc, LengthFourIsPerfect) {
  const auto s = vec(fzc(4, 1));
  for (std::size_t l = 1; l < 4; ++l) EXPECT_LT(std::abs(oracle::periodic_autocorr(s, l)), 1e-12);
}

TEST(Fzc, SingleElement) {
  const Sequence s = fzc(1, 1);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0], cplx(1.0, 0.0));
}

TEST(Fzc, RejectsNonCoprimeRoot) {
  EXPECT_THROW(fzc(8, 2), std::invalid_argument);
  EXPECT_THROW(fzc(9, 3), std::invalid_argument);
}

TEST(Fzc, OddLengthFormula) {
  const std::size_t n = 7;
  const std::int64_t g = 3;
  const Sequence s = fzc(n, g);
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = -std::numbers::pi * g * static_cast<double>(k * (k + 1)) / n;
    EXPECT_LT(std::abs(s[k] - ej(theta)), 1e-12);
  }
}

TEST(Fzc, PerfectAcrossGrid) {
  for (std::size_t n : {2u, 3u, 5u, 8u, 15u, 16u, 31u, 64u, 100u, 255u})
    for (std::int64_t g : {1, 3, 5, 7, -1})
      if (std::gcd(g, static_cast<std::int64_t>(n)) == 1) {
        const Sequence s = fzc(n, g);
        EXPECT_EQ(classify(s).category, AutocorrelationClass::Perfect) << n << " " << g;
      }
}

TEST(Fzc, FourierDualIsUnimodular) {
  for (std::size_t n : {16u, 63u, 256u}) {
    const CVec f = fft(fzc(n, 1).values());
    for (const auto& v : f) EXPECT_NEAR(std::abs(v) / std::sqrt(static_cast<double>(n)), 1.0, 1e-10);
  }
}

TEST(ExtendedPolyphase, LengthFour) {
  const double pi = std::numbers::pi;
  expect_near(vec(extended_polyphase(4)), {1.0, ej(-pi / 4), 1.0, ej(pi / 4)}, 1e-15);
}

TEST(ExtendedPolyphase, LengthThree) {
  const Sequence s = extended_polyphase(3);
  EXPECT_LT(std::abs(s[2] - (-ej(std::numbers::pi * 4.0 / 3.0))), 1e-15);
  EXPECT_LT(std::abs(s[2] - std::conj(s[1])), 1e-15);
}

TEST(ExtendedPolyphase, FilterIsReal) {
  for (std::size_t n = 2; n <= 70; ++n) {
    const auto a = oracle::idft(vec(extended_polyphase(n)));
    for (const auto& v : a) EXPECT_LT(std::abs(v.imag()) / std::sqrt(double(n)), 1e-10) << n;
  }
}

TEST(ExtendedPolyphase, RejectsTiny) { EXPECT_THROW(extended_polyphase(1), std::invalid_argument); }

TEST(MSequence, DegreeThreeFromStateFour) {
  const Sequence s = m_sequence(3, 0b1011, 0b100);
  EXPECT_EQ(ints(s), (std::vector<int>{1, 1, -1, 1, -1, -1, -1}));
  for (std::size_t l = 1; l < 7; ++l) EXPECT_EQ(oracle::periodic_autocorr(vec(s), l), cplx(-1.0, 0.0));
  EXPECT_EQ(s.epsilon_claim(), 1.0);
}

TEST(MSequence, DegreeFour) {
  const Sequence s = m_sequence(4);
  EXPECT_EQ(s.size(), 15u);
  EXPECT_EQ(autocorr_periodic(s.values(), 0), cplx(15.0, 0.0));
}

TEST(MSequence, ReduciblePolynomialRejected) {
  EXPECT_THROW(m_sequence(3, 0b1111, 0b100), std::invalid_argument);
}

TEST(MSequence, BadInitRejected) {
  EXPECT_THROW(m_sequence(3, 0b1011, 0), std::invalid_argument);
  EXPECT_THROW(m_sequence(3, 0b1011, 0b1000), std::invalid_argument);
}

TEST(MSequence, MatchesBitLevelLfsr) {
  for (int d : {5, 9, 12}) {
    const std::size_t n = (std::size_t{1} << d) - 1;
    const auto bits = oracle::lfsr_bits(d, primitive_taps(d), 1, n);
    const Sequence s = m_sequence(d);
    for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(s[i].real(), bits[i] ? -1.0 : 1.0) << d << " " << i;
  }
}

TEST(MSequence, EveryTabulatedDegreeIsPrimitive) {
  // Construction fails unless the off-peak autocorrelation is -1.
  for (int d = 2; d <= 20; ++d) EXPECT_NO_THROW(m_sequence(d)) << d;
}

TEST(PerfectBinary, FromLengthSeven) {
  const Sequence t = perfect_binary_from_m(m_sequence(3));
  const auto v = vec(t);
  for (std::size_t l = 1; l < 7; ++l) EXPECT_LT(std::abs(oracle::periodic_autocorr(v, l)), 1e-9);
  std::set<double> distinct;
  for (const auto& x : v) distinct.insert(x.real());
  EXPECT_EQ(distinct.size(), 2u);
  for (const auto& x : oracle::dft(v)) EXPECT_NEAR(std::abs(x) / std::sqrt(7.0), 1.0, 1e-9);
}

TEST(PerfectBinary, RejectsOtherKinds) {
  EXPECT_THROW(perfect_binary_from_m(golay(4)), std::invalid_argument);
}

TEST(Golay, LengthTwo) {
  const GolayPair p = golay_pair(2);
  EXPECT_EQ(p.a, (std::vector<int>{1, 1}));
  EXPECT_EQ(p.b, (std::vector<int>{1, -1}));
  EXPECT_EQ(oracle::aperiodic_int(p.a, 1) + oracle::aperiodic_int(p.b, 1), 0);
}

TEST(Golay, LengthFour) {
  const GolayPair p = golay_pair(4);
  EXPECT_EQ(p.a, (std::vector<int>{1, 1, 1, -1}));
  EXPECT_EQ(p.b, (std::vector<int>{1, 1, -1, 1}));
  for (std::size_t l = 1; l < 4; ++l) EXPECT_EQ(oracle::aperiodic_int(p.a, l) + oracle::aperiodic_int(p.b, l), 0);
}

TEST(Golay, ComplementaryForAdmissibleLengths) {
  for (std::size_t n0 : {1u, 2u, 8u, 10u, 20u, 26u, 40u, 52u, 80u, 100u, 104u, 260u, 520u, 676u, 1000u, 1024u}) {
    const GolayPair p = golay_pair(n0);
    ASSERT_EQ(p.a.size(), n0);
    EXPECT_EQ(oracle::aperiodic_int(p.a, 0) + oracle::aperiodic_int(p.b, 0), 2 * static_cast<long long>(n0));
    for (std::size_t l = 1; l < n0; ++l)
      ASSERT_EQ(oracle::aperiodic_int(p.a, l) + oracle::aperiodic_int(p.b, l), 0) << n0 << " lag " << l;
  }
}

TEST(Golay, Admissibility) {
  EXPECT_TRUE(golay_admissible(1));
  EXPECT_TRUE(golay_admissible(2600));
  EXPECT_FALSE(golay_admissible(3));
  EXPECT_FALSE(golay_admissible(12));
  EXPECT_FALSE(golay_admissible(0));
  EXPECT_THROW(golay_pair(6), std::invalid_argument);
}

TEST(Golay, SpectralIdentity) {
  for (std::size_t n0 : {10u, 16u, 26u}) {
    const GolayPair p = golay_pair(n0);
    for (std::size_t n : {n0, n0 + 3, 4 * n0}) {
      CVec a(n, 0.0), b(n, 0.0);
      for (std::size_t i = 0; i < n0; ++i) {
        a[i] = p.a[i];
        b[i] = p.b[i];
      }
      const CVec fa = fft(a), fb = fft(b);
      for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(std::norm(fa[k]) + std::norm(fb[k]), 2.0 * n0, 1e-9);
    }
  }
}

TEST(ExtendedGolay, LengthFour) {
  EXPECT_EQ(ints(extended_golay(4)), (std::vector<int>{1, 1, 1, 1}));
}

TEST(ExtendedGolay, OddLengthUsesNPlusOneOverTwo) {
  // 2 * 10 - 1 = 19: s_k on 0..9, mirrored s_{19-k} above.
  const auto s = golay_pair(10).a;
  const Sequence e = extended_golay(19);
  for (std::size_t k = 0; k < 19; ++k) EXPECT_EQ(e[k].real(), k <= 9 ? s[k] : s[19 - k]) << k;
  // 5 = 2 * 3 - 1 and 3 is not a Golay length.
  EXPECT_THROW(extended_golay(5), std::invalid_argument);
}

TEST(ExtendedGolay, FilterIsReal) {
  for (std::size_t n : {4u, 7u, 19u, 20u, 31u, 32u, 51u, 52u}) {
    const auto a = oracle::idft(vec(extended_golay(n)));
    for (const auto& v : a) EXPECT_LT(std::abs(v.imag()), 1e-10) << n;
  }
}

TEST(Legendre, LengthSeven) {
  const Sequence s = legendre(7);
  EXPECT_EQ(ints(s), (std::vector<int>{1, 1, 1, -1, 1, -1, -1}));
  EXPECT_EQ(autocorr_periodic(s.values(), 0), cplx(7.0, 0.0));
}

TEST(Legendre, ElevenIsNearlyPerfect) {
  const Classification c = classify(legendre(11));
  EXPECT_EQ(c.category, AutocorrelationClass::NearlyPerfect);
  EXPECT_LE(c.epsilon_observed, 1.0 + 1e-9);
  EXPECT_EQ(c.claim_holds, true);
}

TEST(Legendre, ClaimHoldsForSmallPrimes) {
  for (std::size_t p : {3u, 5u, 13u, 17u, 19u, 101u, 103u}) EXPECT_EQ(classify(legendre(p)).claim_holds, true) << p;
}

TEST(Legendre, RejectsComposite) {
  EXPECT_THROW(legendre(9), std::invalid_argument);
  EXPECT_THROW(legendre(2), std::invalid_argument);
}

TEST(RandomSequences, Deterministic) {
  EXPECT_EQ(vec(random_phase(8, 42)), vec(random_phase(8, 42)));
  EXPECT_EQ(vec(random_binary(8, 42)), vec(random_binary(8, 42)));
  EXPECT_NE(vec(random_phase(8, 42)), vec(random_phase(8, 43)));
}

TEST(RandomSequences, Unimodular) {
  const Sequence s = random_phase(8, 7);
  for (const auto& v : s.values()) EXPECT_NEAR(std::abs(v), 1.0, 1e-12);
}

TEST(RandomSequences, CoherenceAboveFzc) {
  const std::size_t n = 4096;
  const CVec a = ifft(random_phase(n, 5).values());
  double mu = 0.0;
  for (const auto& v : a) mu = std::max(mu, std::abs(v) / std::sqrt(double(n)));
  EXPECT_GT(mu, 1.5);
  EXPECT_LT(mu, 2.0 * std::sqrt(std::log(double(n))));
}

TEST(Autocorrelation, Examples) {
  const Sequence f = fzc(8, 1);
  EXPECT_NEAR(autocorr_periodic(f.values(), 0).real(), 8.0, 1e-12);
  EXPECT_LT(std::abs(autocorr_periodic(f.values(), 3)), 1e-12);
  const CVec a{1.0, 1.0, 1.0, -1.0};
  EXPECT_EQ(autocorr_aperiodic(a, 1), cplx(1.0, 0.0));
  EXPECT_THROW(autocorr_periodic(a, 4), std::out_of_range);
  EXPECT_THROW(autocorr_aperiodic(a, 4), std::out_of_range);
}

TEST(Autocorrelation, FoldingIdentityWithConjugate) {
  for (const Sequence& s : {random_phase(37, 3), fzc(16, 3), random_binary(20, 1), extended_polyphase(9)}) {
    const std::size_t n = s.size();
    for (std::size_t l = 1; l < n; ++l) {
      const cplx lhs = autocorr_periodic(s.values(), l);
      const cplx rhs = autocorr_aperiodic(s.values(), l) + std::conj(autocorr_aperiodic(s.values(), n - l));
      EXPECT_LT(std::abs(lhs - rhs), 1e-10);
    }
  }
}

TEST(Autocorrelation, MatchesOracleBothPaths) {
  for (std::size_t n : {100u, 5000u}) {
    const Sequence s = random_phase(n, 9);
    const CVec r = autocorr_periodic_all(s.values());
    const auto v = vec(s);
    for (std::size_t l : {std::size_t{0}, std::size_t{1}, n / 3, n - 1})
      EXPECT_LT(std::abs(r[l] - oracle::periodic_autocorr(v, l)), 1e-8 * n) << n << " " << l;
  }
}

TEST(Autocorrelation, WienerKhinchin) {
  // With the conjugate on the lagged term the power spectrum is the inverse
  // transform of R, equivalently the forward transform read at -k.
  for (const Sequence& s : {random_phase(64, 1), random_binary(45, 2)}) {
    const std::size_t n = s.size();
    const CVec r = autocorr_periodic_all(s.values());
    const CVec spec = fft(s.values());
    const CVec fr = fft(r), ir = ifft(r);
    for (std::size_t k = 0; k < n; ++k) {
      const double p = std::norm(spec[k]);
      EXPECT_LT(std::abs(ir[k] - p), 1e-8 * std::max(1.0, p));
      EXPECT_LT(std::abs(fr[(n - k) % n] - p), 1e-8 * std::max(1.0, p));
    }
  }
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(fzc(16, 3)).category, AutocorrelationClass::Perfect);
  const Classification m = classify(m_sequence(3));
  EXPECT_EQ(m.category, AutocorrelationClass::NearlyPerfect);
  EXPECT_NEAR(m.epsilon_observed, 1.0, 1e-12);
  EXPECT_EQ(m.claim_holds, true);
  const Classification r = classify(random_binary(64, 1));
  EXPECT_GT(r.epsilon_observed, 4.0);
  EXPECT_EQ(r.category, AutocorrelationClass::Neither);
}

TEST(SequenceInvariants, Rejections) {
  EXPECT_THROW(Sequence(SequenceKind::FZC, CVec{1.0, 0.5}), std::invalid_argument);
  EXPECT_THROW(Sequence(SequenceKind::Golay, CVec{1.0, cplx(0.0, 1.0)}), std::invalid_argument);
  EXPECT_THROW(Sequence(SequenceKind::ExtendedGolay, CVec{1.0, 1.0, -1.0}), std::invalid_argument);
  EXPECT_THROW(Sequence(SequenceKind::RandomPhase, CVec{}), std::invalid_argument);
  EXPECT_THROW(Sequence(SequenceKind::RandomPhase, CVec{cplx(NAN, 0.0)}), std::invalid_argument);
  EXPECT_NO_THROW(Sequence(SequenceKind::ExtendedGolay, CVec{1.0, -1.0, -1.0}));
}

TEST(SequenceKinds, NameRoundTrip) {
  for (auto k : {SequenceKind::FZC, SequenceKind::ExtendedPolyphase, SequenceKind::MSequence,
                 SequenceKind::PerfectBinaryFromM, SequenceKind::Golay, SequenceKind::ExtendedGolay,
                 SequenceKind::Legendre, SequenceKind::RandomPhase, SequenceKind::RandomBinary})
    EXPECT_EQ(sequence_kind_from_string(to_string(k)), k);
  EXPECT_EQ(sequence_kind_from_string("ext-golay"), SequenceKind::ExtendedGolay);
  EXPECT_EQ(sequence_kind_from_string("m-seq"), SequenceKind::MSequence);
  EXPECT_THROW(sequence_kind_from_string("chirp"), std::invalid_argument);
}
