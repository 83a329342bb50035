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
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "convcs/coherence.hpp"
#include "convcs/gauss_sums.hpp"
#include "convcs/operators.hpp"
#include "convcs/recovery.hpp"
#include "convcs/rng.hpp"
#include "convcs/sequences.hpp"

namespace convcs {

/// Output SNR reported when the estimate is exact.
inline constexpr double kSnrCapDb = 300.0;

// ---- building blocks ----

/// max_t |(1/sqrt(N)) sum_n sigma_n exp(j 2 pi n t / T)|^2 divided by the mean
/// power, sampled on oversample * N points of [0, T). Rejects oversample < 4.
double papr(CSpan sigma, int oversample = 16);
double papr(const Sequence& sigma, int oversample = 16);

struct ChannelTap {
  std::size_t delay = 0;
  double amplitude = 0.0;
};

struct ChannelModel {
  std::size_t n = 0;
  std::vector<ChannelTap> taps;
  CVec impulse_response() const;
  std::size_t sparsity() const { return taps.size(); }
  double energy() const;
};

/// Six-tap static multipath profile (delays 0, 2, 17, 36, 75, 137). Requires N > 137.
ChannelModel attc_channel(std::size_t n);

/// Sequence of the given kind and length. gamma applies to FZC, seed to the
/// random kinds. MSequence and PerfectBinaryFromM need N = 2^d - 1,
/// Golay needs an admissible N.
Sequence make_sequence(SequenceKind kind, std::size_t n, std::int64_t gamma = 1,
                       std::uint64_t seed = 0);

/// Spectrum construction, or the time-domain (filter) one when `filter` is set.
CirculantOperator make_circulant(const Sequence& s, bool filter);

/// clean + e with e complex circular Gaussian scaled so that
/// 10 log10(||clean||^2 / ||e||^2) = snr_db exactly. Infinite SNR returns clean.
CVec add_noise(CSpan clean, double snr_db, Rng& rng);

/// 10 log10(||x||^2 / ||x - x_hat||^2), capped at kSnrCapDb.
double output_snr_db(CSpan x, CSpan x_hat);

/// ||x - x_hat|| / ||x||.
double relative_error(CSpan x, CSpan x_hat);

/// One-sided sign test: P(X >= wins) for X ~ Binomial(wins + losses, 1/2).
double sign_test_p(std::size_t wins, std::size_t losses);

/// FNV-1a 64-bit hash of a canonical config string.
std::uint64_t config_hash(const std::string& canonical);

/// K distinct positions uniform over [lo, n) with complex Gaussian values.
CVec random_sparse(std::size_t n, std::size_t k, Rng& rng, std::size_t lo = 0);

struct SolverSettings {
  SolverKind kind = SolverKind::SubspacePursuit;
  /// FISTA only: lambda = lambda_scale * ||Theta^* y||_inf.
  double lambda_scale = 1e-3;
  /// FISTA only: refit by least squares on the detected support when it has
  /// at most M entries, removing the shrinkage bias.
  bool debias = true;
};

RecoveryResult run_solver(const LinearOperator& op, CSpan y, std::size_t k, const SolverSettings& s);

// ---- OFDM channel estimation ----

struct TrialRecord {
  std::string config;            // "proposed" or "baseline"
  std::uint64_t config_hash = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double snr_in_db = 0.0;
  double snr_out_db = 0.0;
  bool support_exact = false;
  int iterations = 0;
  double wall_ms = 0.0;          // not written to CSV/JSON
};

struct SummaryRow {
  std::string config;
  double snr_in_db = 0.0;
  std::size_t trials = 0;
  double mean_snr_out_db = 0.0;
  double se_db = 0.0;
  double support_exact_rate = 0.0;
  std::optional<double> target_db;
  /// |mean - target| <= 3 dB + 2 SE.
  std::optional<bool> within_band;
};

struct OfdmConfig {
  std::size_t n = 1024;
  std::size_t m = 64;
  std::size_t k = 6;
  std::vector<double> snr_db{0.0, 10.0, 20.0, 30.0};
  std::size_t trials = 500;
  std::uint64_t seed = 1;
  SolverSettings solver;
  SequenceKind sequence = SequenceKind::Golay;
  std::int64_t gamma = 1;
  bool run_baseline = true;
  std::string canonical() const;
};

struct OfdmReport {
  std::vector<TrialRecord> trials;
  std::vector<SummaryRow> summary;
  std::uint64_t config_hash = 0;
  std::string noise_convention;
};

/// Proposed scheme: deterministic sigma (default Golay) with random Omega.
/// Baseline: random-phase sigma with stride Omega. Trial i draws its seed
/// as derive_seed(seed, i) and both schemes see the same noise stream.
OfdmReport run_ofdm_experiment(const OfdmConfig& cfg);

/// Reference output SNRs for the four standard input levels, if listed.
std::optional<double> ofdm_target_db(const std::string& config, double snr_in_db);

// ---- phase transition ----

struct PhaseConfig {
  std::size_t n = 256;
  SequenceKind sequence = SequenceKind::FZC;
  std::int64_t gamma = 1;
  bool time_domain = false;  // build A from the sequence as a filter
  bool zero_mean = false;    // signals with sum(x) = 0
  std::vector<std::size_t> k_list{5};
  std::vector<std::size_t> m_list{64};
  std::vector<BasisKind> bases{BasisKind::Identity, BasisKind::InverseFourier};
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  SolverSettings solver;
  double success_tol = 1e-4;
  std::string canonical() const;
};

struct PhaseCell {
  std::string sequence;
  BasisKind basis = BasisKind::Identity;
  std::size_t k = 0;
  std::size_t m = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double rate() const { return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0; }
};

struct PhaseReport {
  std::vector<PhaseCell> cells;
  std::uint64_t config_hash = 0;
};

/// Success rate (relative error <= success_tol) per (K, M, basis). Cells with
/// the same (K, M) share Omega and coefficient draws across bases.
PhaseReport run_phase_transition(const PhaseConfig& cfg);

// ---- DCT-domain recovery ----

struct DctConfig {
  std::size_t n = 512;
  std::size_t m = 128;
  std::size_t k = 8;
  std::int64_t gamma = 1;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  SolverSettings solver;
  double success_tol = 1e-4;
  std::optional<std::string> image_path;  // 8-bit PGM, vectorized row-major
  std::string canonical() const;
};

struct DctTrial {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double proposed_rel_err = 0.0;
  double baseline_rel_err = 0.0;
  bool proposed_success = false;
  bool baseline_success = false;
};

struct ImageRow {
  std::string scheme;
  std::size_t n = 0, m = 0, k = 0;
  double snr_out_db = 0.0;
};

struct DctReport {
  std::vector<DctTrial> trials;
  std::size_t proposed_successes = 0;
  std::size_t baseline_successes = 0;
  std::size_t only_proposed = 0;
  std::size_t only_baseline = 0;
  double sign_test_p = 1.0;
  std::vector<ImageRow> image;
  std::uint64_t config_hash = 0;
};

/// FZC(gamma) with random Omega and Psi = InverseDCT2, paired per trial with
/// a random-phase sigma and stride Omega on the same signal.
DctReport run_dct_experiment(const DctConfig& cfg);

// ---- audits ----

struct AuditCheck {
  std::string name;
  std::size_t evaluated = 0;
  std::size_t failures = 0;
  double worst = 0.0;
  double limit = 0.0;
  bool pass() const { return failures == 0; }
};

struct GaussAuditConfig {
  std::int64_t closed_form_max = 4096;
  std::int64_t identity_max = 256;
  std::int64_t bound_lo = 2;
  std::int64_t bound_hi = 256;
};

struct GaussAudit {
  std::vector<AuditCheck> checks;     // identities and one check per bound case
  std::vector<BoundRow> bound_rows;
  std::optional<double> fitted_c;
  bool pass() const;
};

GaussAudit run_gauss_audit(const GaussAuditConfig& cfg = {});

struct PaprRow {
  std::string kind;
  std::size_t n = 0;
  std::size_t samples = 0;
  double min = 0.0, max = 0.0, mean = 0.0;
};

struct PaprAuditConfig {
  std::size_t n = 1024;
  std::size_t seeds = 100;
  std::uint64_t seed = 1;
  int oversample = 16;
};

struct PaprAudit {
  std::vector<PaprRow> rows;
  /// Golay within 2 +- 0.01 and every random-phase value above the Golay value.
  bool pass() const;
};

PaprAudit run_papr_audit(const PaprAuditConfig& cfg = {});

// ---- CSV writers (columns frozen in docs/formats.md) ----

void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& rows);
void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows);
void write_phase_csv(std::ostream& os, const std::vector<PhaseCell>& cells);
void write_dct_trials_csv(std::ostream& os, const std::vector<DctTrial>& rows);
void write_dct_summary_csv(std::ostream& os, const DctReport& r);
void write_image_csv(std::ostream& os, const std::vector<ImageRow>& rows);
void write_audit_csv(std::ostream& os, const std::vector<AuditCheck>& rows);
void write_papr_csv(std::ostream& os, const std::vector<PaprRow>& rows);

}  // namespace convcs
