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

#include "convcs/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "convcs/csv.hpp"
#include "convcs/fft.hpp"
#include "convcs/parallel.hpp"
#include "convcs/pgm.hpp"

namespace convcs {
namespace {

double energy(CSpan x) {
  double s = 0.0;
  for (const auto& v : x) s += std::norm(v);
  return s;
}

int mersenne_degree(std::size_t n) {
  for (int d = 2; d <= 20; ++d)
    if (n == (std::size_t{1} << d) - 1) return d;
  throw std::invalid_argument("N = " + std::to_string(n) + " is not 2^d - 1 with d in [2, 20]");
}

std::string snr_text(double v) { return format_double(v, 6); }

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& v) {
  MeanSe r;
  if (v.empty()) return r;
  r.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - r.mean) * (x - r.mean);
    r.se = std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
  }
  return r;
}

std::vector<std::size_t> nonzero_support(CSpan x) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != cplx{0.0, 0.0}) s.push_back(i);
  return s;
}

}  // namespace

// ---- building blocks ----

double papr(CSpan sigma, int oversample) {
  if (oversample < 4) throw std::invalid_argument("papr: oversample must be at least 4");
  if (sigma.empty()) throw std::invalid_argument("papr: empty sequence");
  const std::size_t n = sigma.size();
  CVec padded(n * static_cast<std::size_t>(oversample), cplx{0.0, 0.0});
  std::copy(sigma.begin(), sigma.end(), padded.begin());
  const CVec x = ifft(padded);  // x_i = sum_n sigma_n exp(j 2 pi n i / (o N))
  double peak = 0.0;
  for (const auto& v : x) peak = std::max(peak, std::norm(v));
  const double mean_power = energy(sigma) / static_cast<double>(n);
  return peak / static_cast<double>(n) / mean_power;
}

double papr(const Sequence& sigma, int oversample) { return papr(sigma.values(), oversample); }

CVec ChannelModel::impulse_response() const {
  CVec x(n, cplx{0.0, 0.0});
  for (const auto& t : taps) x[t.delay] = t.amplitude;
  return x;
}

double ChannelModel::energy() const {
  double s = 0.0;
  for (const auto& t : taps) s += t.amplitude * t.amplitude;
  return s;
}

ChannelModel attc_channel(std::size_t n) {
  if (n <= 137) throw std::invalid_argument("attc_channel: N must exceed 137");
  return ChannelModel{n, {{0, 1.0}, {2, 0.3162}, {17, 0.1995}, {36, 0.1296}, {75, 0.1}, {137, 0.1}}};
}

Sequence make_sequence(SequenceKind kind, std::size_t n, std::int64_t gamma, std::uint64_t seed) {
  switch (kind) {
    case SequenceKind::FZC: return fzc(n, gamma);
    case SequenceKind::ExtendedPolyphase: return extended_polyphase(n);
    case SequenceKind::MSequence: return m_sequence(mersenne_degree(n));
    case SequenceKind::PerfectBinaryFromM: return perfect_binary_from_m(m_sequence(mersenne_degree(n)));
    case SequenceKind::Golay: return golay(n);
    case SequenceKind::ExtendedGolay: return extended_golay(n);
    case SequenceKind::Legendre: return legendre(n);
    case SequenceKind::RandomPhase: return random_phase(n, seed);
    case SequenceKind::RandomBinary: return random_binary(n, seed);
  }
  throw std::invalid_argument("make_sequence: unknown kind");
}

CirculantOperator make_circulant(const Sequence& s, bool filter) {
  return filter ? CirculantOperator::from_filter(s) : CirculantOperator::from_spectrum(s);
}

CVec add_noise(CSpan clean, double snr_db, Rng& rng) {
  CVec y(clean.begin(), clean.end());
  if (std::isinf(snr_db) && snr_db > 0) return y;
  CVec e(clean.size());
  for (auto& v : e) v = rng.complex_normal();
  const double target = energy(clean) / std::pow(10.0, snr_db / 10.0);
  const double scale = std::sqrt(target / energy(e));
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += scale * e[i];
  return y;
}

double output_snr_db(CSpan x, CSpan x_hat) {
  double err = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) err += std::norm(x[i] - x_hat[i]);
  if (err == 0.0) return kSnrCapDb;
  return std::min(kSnrCapDb, 10.0 * std::log10(energy(x) / err));
}

double relative_error(CSpan x, CSpan x_hat) {
  double err = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) err += std::norm(x[i] - x_hat[i]);
  const double e = energy(x);
  return e == 0.0 ? std::sqrt(err) : std::sqrt(err / e);
}

double sign_test_p(std::size_t wins, std::size_t losses) {
  const std::size_t n = wins + losses;
  if (n == 0) return 1.0;
  // Sum of C(n, i) 2^-n over i >= wins, in log space.
  const double ln2 = std::log(2.0);
  double p = 0.0;
  for (std::size_t i = wins; i <= n; ++i) {
    const double lc = std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(i) + 1.0) -
                      std::lgamma(static_cast<double>(n - i) + 1.0);
    p += std::exp(lc - static_cast<double>(n) * ln2);
  }
  return std::min(1.0, p);
}

std::uint64_t config_hash(const std::string& canonical) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

CVec random_sparse(std::size_t n, std::size_t k, Rng& rng, std::size_t lo) {
  if (lo >= n || k > n - lo) throw std::invalid_argument("random_sparse: K too large");
  std::vector<std::size_t> pool(n - lo);
  std::iota(pool.begin(), pool.end(), lo);
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.uniform_below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  CVec f(n, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < k; ++i) f[pool[i]] = rng.complex_normal();
  return f;
}

RecoveryResult run_solver(const LinearOperator& op, CSpan y, std::size_t k, const SolverSettings& s) {
  if (s.kind == SolverKind::FISTA) {
    const CVec c = op.adjoint(y);
    double peak = 0.0;
    for (const auto& v : c) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) {
      RecoveryResult r;
      r.f_hat.assign(op.cols(), cplx{0.0, 0.0});
      r.converged = true;
      return r;
    }
    RecoveryResult r = fista_lasso(op, y, s.lambda_scale * peak);
    if (s.debias && !r.support.empty() && r.support.size() <= op.rows()) {
      const CVec coef = least_squares_on_support(op, y, r.support);
      std::fill(r.f_hat.begin(), r.f_hat.end(), cplx{0.0, 0.0});
      for (std::size_t i = 0; i < r.support.size(); ++i) r.f_hat[r.support[i]] = coef[i];
      const CVec fit = op.forward(r.f_hat);
      double res = 0.0;
      for (std::size_t i = 0; i < fit.size(); ++i) res += std::norm(y[i] - fit[i]);
      r.residual_norm = std::sqrt(res);
    }
    return r;
  }
  if (s.kind == SolverKind::OMP) return omp(op, y, k);
  return subspace_pursuit(op, y, k);
}

// ---- OFDM ----

std::string OfdmConfig::canonical() const {
  std::string s = "ofdm;n=" + std::to_string(n) + ";m=" + std::to_string(m) + ";k=" + std::to_string(k) +
                  ";seq=" + std::string(to_string(sequence)) + ";gamma=" + std::to_string(gamma) +
                  ";solver=" + std::string(to_string(solver.kind)) +
                  ";lambda_scale=" + format_double(solver.lambda_scale) + ";debias=" + (solver.debias ? "1" : "0") + ";trials=" + std::to_string(trials) +
                  ";seed=" + std::to_string(seed) + ";baseline=" + (run_baseline ? "1" : "0") + ";snr=";
  for (double v : snr_db) s += snr_text(v) + ",";
  return s;
}

std::optional<double> ofdm_target_db(const std::string& config, double snr_in_db) {
  static const std::map<double, double> proposed{{0.0, 5.44}, {10.0, 14.34}, {20.0, 37.48}, {30.0, 45.61}};
  static const std::map<double, double> baseline{{0.0, 5.32}, {10.0, 13.98}, {20.0, 37.53}, {30.0, 45.22}};
  const auto& table = config == "proposed" ? proposed : baseline;
  const auto it = table.find(snr_in_db);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

OfdmReport run_ofdm_experiment(const OfdmConfig& cfg) {
  const ChannelModel ch = attc_channel(cfg.n);
  if (cfg.m > cfg.n) throw std::invalid_argument("exp-ofdm: M exceeds N");
  const CVec x = ch.impulse_response();
  const std::vector<std::size_t> truth = nonzero_support(x);
  const auto proposed_a = make_circulant(make_sequence(cfg.sequence, cfg.n, cfg.gamma, cfg.seed), false);
  const SamplingSet stride = SamplingSet::stride(cfg.n, cfg.m);

  const std::size_t schemes = cfg.run_baseline ? 2 : 1;
  const std::size_t per_scheme = cfg.snr_db.size() * cfg.trials;
  std::vector<TrialRecord> records(schemes * per_scheme);

  OfdmReport rep;
  rep.config_hash = config_hash(cfg.canonical());
  rep.noise_convention =
      "complex circular Gaussian noise on y scaled per trial so that ||Theta x||^2/||e||^2 equals the input SNR; "
      "output SNR = 10 log10(||x||^2/||x - x_hat||^2) on the channel estimate";

  parallel_for(cfg.trials, [&](std::size_t t) {
    const std::uint64_t ts = derive_seed(cfg.seed, t);
    const SensingOperator proposed(proposed_a, SamplingSet::random(cfg.n, cfg.m, derive_seed(ts, 0)),
                                   BasisKind::Identity);
    std::optional<SensingOperator> baseline;
    if (cfg.run_baseline)
      baseline.emplace(CirculantOperator::from_spectrum(random_phase(cfg.n, derive_seed(ts, 2))), stride,
                       BasisKind::Identity);
    for (std::size_t si = 0; si < cfg.snr_db.size(); ++si) {
      for (std::size_t sc = 0; sc < schemes; ++sc) {
        const SensingOperator& op = sc == 0 ? proposed : *baseline;
        const auto start = std::chrono::steady_clock::now();
        Rng noise(derive_seed(ts, 100 + si));
        const CVec y = add_noise(op.forward(x), cfg.snr_db[si], noise);
        const RecoveryResult r = run_solver(op, y, cfg.k, cfg.solver);
        TrialRecord& rec = records[sc * per_scheme + si * cfg.trials + t];
        rec.config = sc == 0 ? "proposed" : "baseline";
        rec.config_hash = rep.config_hash;
        rec.trial = t;
        rec.seed = ts;
        rec.snr_in_db = cfg.snr_db[si];
        rec.snr_out_db = output_snr_db(x, r.f_hat);
        rec.support_exact = r.support == truth;
        rec.iterations = r.iterations;
        rec.wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      }
    }
  });

  for (std::size_t sc = 0; sc < schemes; ++sc) {
    for (std::size_t si = 0; si < cfg.snr_db.size(); ++si) {
      std::vector<double> out;
      std::size_t exact = 0;
      for (std::size_t t = 0; t < cfg.trials; ++t) {
        const auto& rec = records[sc * per_scheme + si * cfg.trials + t];
        out.push_back(rec.snr_out_db);
        exact += rec.support_exact ? 1 : 0;
      }
      SummaryRow row;
      row.config = sc == 0 ? "proposed" : "baseline";
      row.snr_in_db = cfg.snr_db[si];
      row.trials = cfg.trials;
      const MeanSe ms = mean_se(out);
      row.mean_snr_out_db = ms.mean;
      row.se_db = ms.se;
      row.support_exact_rate = cfg.trials ? static_cast<double>(exact) / static_cast<double>(cfg.trials) : 0.0;
      const bool reference_geometry = cfg.n == 1024 && cfg.m == 64 && cfg.k == 6 &&
                                      (sc == 1 || cfg.sequence == SequenceKind::Golay);
      if (reference_geometry) row.target_db = ofdm_target_db(row.config, row.snr_in_db);
      if (row.target_db) row.within_band = std::abs(row.mean_snr_out_db - *row.target_db) <= 3.0 + 2.0 * row.se_db;
      rep.summary.push_back(row);
    }
  }
  rep.trials = std::move(records);
  return rep;
}

// ---- phase transition ----

std::string PhaseConfig::canonical() const {
  std::string s = "phase;n=" + std::to_string(n) + ";seq=" + std::string(to_string(sequence)) +
                  ";gamma=" + std::to_string(gamma) + ";time_domain=" + (time_domain ? "1" : "0") +
                  ";zero_mean=" + (zero_mean ? "1" : "0") + ";solver=" + std::string(to_string(solver.kind)) +
                  ";lambda_scale=" + format_double(solver.lambda_scale) + ";debias=" + (solver.debias ? "1" : "0") + ";trials=" + std::to_string(trials) +
                  ";seed=" + std::to_string(seed) + ";tol=" + format_double(success_tol) + ";k=";
  for (auto v : k_list) s += std::to_string(v) + ",";
  s += ";m=";
  for (auto v : m_list) s += std::to_string(v) + ",";
  s += ";basis=";
  for (auto b : bases) s += std::string(to_string(b)) + ",";
  return s;
}

PhaseReport run_phase_transition(const PhaseConfig& cfg) {
  const bool random_kind = cfg.sequence == SequenceKind::RandomPhase || cfg.sequence == SequenceKind::RandomBinary;
  std::optional<CirculantOperator> fixed;
  if (!random_kind) fixed = make_circulant(make_sequence(cfg.sequence, cfg.n, cfg.gamma, cfg.seed), cfg.time_domain);
  std::string label(to_string(cfg.sequence));
  if (cfg.time_domain) label += "(filter)";

  struct Geometry {
    std::size_t k, m, cell;
  };
  std::vector<Geometry> geo;
  for (std::size_t ki = 0; ki < cfg.k_list.size(); ++ki)
    for (std::size_t mi = 0; mi < cfg.m_list.size(); ++mi)
      geo.push_back({cfg.k_list[ki], cfg.m_list[mi], ki * cfg.m_list.size() + mi});

  for (const auto& g : geo) {
    if (g.m > cfg.n || g.m == 0) throw std::invalid_argument("exp-phase: need 1 <= M <= N");
    if (g.k == 0 || g.k > g.m) throw std::invalid_argument("exp-phase: need 1 <= K <= M");
    if (cfg.solver.kind == SolverKind::SubspacePursuit && 2 * g.k > g.m)
      throw std::invalid_argument("exp-phase: subspace pursuit needs 2K <= M");
  }

  const std::size_t nb = cfg.bases.size();
  const std::size_t jobs = geo.size() * cfg.trials;
  std::vector<unsigned char> ok(jobs * nb, 0);

  parallel_for(jobs, [&](std::size_t job) {
    const Geometry& g = geo[job / cfg.trials];
    const std::size_t t = job % cfg.trials;
    const std::uint64_t ts = derive_seed(derive_seed(cfg.seed, g.cell), t);
    const SamplingSet omega = SamplingSet::random(cfg.n, g.m, derive_seed(ts, 0));
    const CirculantOperator a =
        fixed ? *fixed
              : make_circulant(make_sequence(cfg.sequence, cfg.n, cfg.gamma, derive_seed(ts, 2)), cfg.time_domain);
    for (std::size_t b = 0; b < nb; ++b) {
      const BasisKind basis = cfg.bases[b];
      Rng rng(derive_seed(ts, 1));
      CVec f;
      if (cfg.zero_mean && basis != BasisKind::Identity) {
        // Zero-mean x means a vanishing DC coefficient.
        f = random_sparse(cfg.n, g.k, rng, 1);
      } else {
        f = random_sparse(cfg.n, g.k, rng);
        if (cfg.zero_mean) {
          const auto s = nonzero_support(f);
          cplx rest{0.0, 0.0};
          for (std::size_t i = 0; i + 1 < s.size(); ++i) rest += f[s[i]];
          f[s.back()] = -rest;
        }
      }
      const SensingOperator op(a, omega, basis);
      const CVec y = op.forward(f);
      const RecoveryResult r = run_solver(op, y, g.k, cfg.solver);
      ok[job * nb + b] = relative_error(f, r.f_hat) <= cfg.success_tol ? 1 : 0;
    }
  });

  PhaseReport rep;
  rep.config_hash = config_hash(cfg.canonical());
  for (std::size_t gi = 0; gi < geo.size(); ++gi) {
    for (std::size_t b = 0; b < nb; ++b) {
      PhaseCell c;
      c.sequence = label;
      c.basis = cfg.bases[b];
      c.k = geo[gi].k;
      c.m = geo[gi].m;
      c.trials = cfg.trials;
      for (std::size_t t = 0; t < cfg.trials; ++t) c.successes += ok[(gi * cfg.trials + t) * nb + b];
      rep.cells.push_back(c);
    }
  }
  return rep;
}

// ---- DCT ----

std::string DctConfig::canonical() const {
  return "dct;n=" + std::to_string(n) + ";m=" + std::to_string(m) + ";k=" + std::to_string(k) +
         ";gamma=" + std::to_string(gamma) + ";trials=" + std::to_string(trials) + ";seed=" + std::to_string(seed) +
         ";solver=" + std::string(to_string(solver.kind)) + ";lambda_scale=" + format_double(solver.lambda_scale) + ";debias=" + (solver.debias ? "1" : "0") +
         ";tol=" + format_double(success_tol) + ";image=" + image_path.value_or("");
}

namespace {

std::vector<ImageRow> run_image(const DctConfig& cfg) {
  const GrayImage img = read_pgm(*cfg.image_path);
  const std::size_t n = img.width * img.height;
  if (n > kDenseGuard) throw std::invalid_argument("exp-dct: image has more than 4096 pixels");
  if (cfg.m == 0 || cfg.m > n) throw std::invalid_argument("exp-dct: need 1 <= M <= pixel count");
  const CVec x(img.pixels.begin(), img.pixels.end());

  struct Scheme {
    std::string name;
    CirculantOperator a;
    SamplingSet omega;
  };
  std::vector<Scheme> schemes;
  schemes.push_back({"FZC+RS", CirculantOperator::from_spectrum(fzc(n, cfg.gamma)),
                     SamplingSet::random(n, cfg.m, derive_seed(cfg.seed, 0))});
  schemes.push_back({"RP+DS", CirculantOperator::from_spectrum(random_phase(n, derive_seed(cfg.seed, 2))),
                     SamplingSet::stride(n, cfg.m)});
  schemes.push_back({"RP+RS", CirculantOperator::from_spectrum(random_phase(n, derive_seed(cfg.seed, 2))),
                     SamplingSet::random(n, cfg.m, derive_seed(cfg.seed, 0))});

  std::vector<ImageRow> rows;
  for (const auto& s : schemes) {
    const SensingOperator op(s.a, s.omega, BasisKind::InverseDCT2);
    // Measure the image itself; Theta acts on DCT coefficients.
    const CVec y = op.forward(basis_adjoint(BasisKind::InverseDCT2, x));
    const RecoveryResult r = run_solver(op, y, cfg.k, cfg.solver);
    CVec xh = basis_apply(BasisKind::InverseDCT2, r.f_hat);
    for (auto& v : xh) v = v.real();
    rows.push_back({s.name, n, cfg.m, cfg.k, output_snr_db(x, xh)});
  }
  return rows;
}

}  // namespace

DctReport run_dct_experiment(const DctConfig& cfg) {
  DctReport rep;
  rep.config_hash = config_hash(cfg.canonical());
  if (cfg.image_path) {
    rep.image = run_image(cfg);
    return rep;
  }
  if (cfg.n > kDenseGuard) throw std::invalid_argument("exp-dct: N must be at most 4096");
  if (cfg.m == 0 || cfg.m > cfg.n) throw std::invalid_argument("exp-dct: need 1 <= M <= N");
  if (cfg.k == 0 || cfg.k > cfg.m) throw std::invalid_argument("exp-dct: need 1 <= K <= M");
  const CirculantOperator proposed_a = CirculantOperator::from_spectrum(fzc(cfg.n, cfg.gamma));
  const SamplingSet stride = SamplingSet::stride(cfg.n, cfg.m);
  rep.trials.resize(cfg.trials);

  parallel_for(cfg.trials, [&](std::size_t t) {
    const std::uint64_t ts = derive_seed(cfg.seed, t);
    Rng rng(derive_seed(ts, 1));
    const CVec f = random_sparse(cfg.n, cfg.k, rng);
    const SensingOperator proposed(proposed_a, SamplingSet::random(cfg.n, cfg.m, derive_seed(ts, 0)),
                                   BasisKind::InverseDCT2);
    const SensingOperator baseline(CirculantOperator::from_spectrum(random_phase(cfg.n, derive_seed(ts, 2))), stride,
                                   BasisKind::InverseDCT2);
    DctTrial& d = rep.trials[t];
    d.trial = t;
    d.seed = ts;
    d.proposed_rel_err = relative_error(f, run_solver(proposed, proposed.forward(f), cfg.k, cfg.solver).f_hat);
    d.baseline_rel_err = relative_error(f, run_solver(baseline, baseline.forward(f), cfg.k, cfg.solver).f_hat);
    d.proposed_success = d.proposed_rel_err <= cfg.success_tol;
    d.baseline_success = d.baseline_rel_err <= cfg.success_tol;
  });

  for (const auto& d : rep.trials) {
    rep.proposed_successes += d.proposed_success;
    rep.baseline_successes += d.baseline_success;
    rep.only_proposed += d.proposed_success && !d.baseline_success;
    rep.only_baseline += !d.proposed_success && d.baseline_success;
  }
  rep.sign_test_p = sign_test_p(rep.only_proposed, rep.only_baseline);
  return rep;
}

// ---- audits ----

bool GaussAudit::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const AuditCheck& c) { return c.pass(); });
}

GaussAudit run_gauss_audit(const GaussAuditConfig& cfg) {
  GaussAudit out;

  {
    AuditCheck c{"closed_form", 0, 0, 0.0, 1e-8};
    std::vector<double> resid(static_cast<std::size_t>(cfg.closed_form_max));
    parallel_for(resid.size(), [&](std::size_t i) {
      const auto n = static_cast<std::int64_t>(i) + 1;
      resid[i] = std::abs(gauss_sum(GaussKind::G_N, n, n) - complete_gauss_closed_form(n)) /
                 std::sqrt(static_cast<double>(n));
    });
    for (double r : resid) {
      ++c.evaluated;
      c.worst = std::max(c.worst, r);
      if (r > c.limit) ++c.failures;
    }
    out.checks.push_back(c);
  }

  {
    AuditCheck refl{"reflection_identity", 0, 0, 0.0, 1e-8};
    AuditCheck qid{"q_identity", 0, 0, 0.0, 1e-8};
    for (std::int64_t n = 1; n <= cfg.identity_max; ++n) {
      const double rn = std::sqrt(static_cast<double>(n));
      const CVec g = gauss_prefix_sums(GaussKind::G_N, n, n);
      for (std::int64_t m = 1; 2 * m <= n + 1; ++m) {
        const double r = std::abs(g[m] + g[n - m + 1] - 1.0 - g[n]) / rn;
        ++refl.evaluated;
        refl.worst = std::max(refl.worst, r);
        if (r > refl.limit) ++refl.failures;
      }
      const CVec q = gauss_prefix_sums(GaussKind::Q_N, n, n);
      const CVec g8 = gauss_prefix_sums(GaussKind::G_8N, n, 2 * n);
      const CVec g2 = gauss_prefix_sums(GaussKind::G_2N, n, n);
      for (std::int64_t m = 0; m <= n; ++m) {
        const double r = std::abs(q[m] - (g8[2 * m] - g2[m])) / rn;
        ++qid.evaluated;
        qid.worst = std::max(qid.worst, r);
        if (r > qid.limit) ++qid.failures;
      }
    }
    out.checks.push_back(refl);
    out.checks.push_back(qid);
  }

  for (BoundFamily fam : {BoundFamily::NormalizedGN, BoundFamily::G2N, BoundFamily::QN}) {
    const BoundReport rep = bound_check(fam, cfg.bound_lo, cfg.bound_hi);
    if (rep.fitted_c) out.fitted_c = rep.fitted_c;
    std::map<std::string, AuditCheck> by_kind;
    std::vector<std::string> order;
    for (const auto& r : rep.rows) {
      if (!by_kind.count(r.kind)) {
        order.push_back(r.kind);
        by_kind[r.kind] = AuditCheck{"bound:" + r.kind, 0, 0, -1e300, 0.0};
      }
      AuditCheck& c = by_kind[r.kind];
      ++c.evaluated;
      // worst = largest observed/bound ratio; limit 1
      c.limit = 1.0;
      c.worst = std::max(c.worst, r.observed / r.bound);
      if (!r.pass()) ++c.failures;
      out.bound_rows.push_back(r);
    }
    for (const auto& k : order) out.checks.push_back(by_kind[k]);
  }
  return out;
}

bool PaprAudit::pass() const {
  const PaprRow* g = nullptr;
  const PaprRow* rp = nullptr;
  for (const auto& r : rows) {
    if (r.kind == "Golay") g = &r;
    if (r.kind == "RandomPhase") rp = &r;
  }
  if (!g || !rp) return false;
  return std::abs(g->max - 2.0) <= 0.01 && rp->min > g->max;
}

PaprAudit run_papr_audit(const PaprAuditConfig& cfg) {
  PaprAudit out;
  const auto single = [&](const std::string& kind, const Sequence& s) {
    const double v = papr(s, cfg.oversample);
    out.rows.push_back({kind, s.size(), 1, v, v, v});
  };
  const std::size_t n = cfg.n;
  if (golay_admissible(n)) single("Golay", golay(n));
  single("FZC", fzc(n, 1));
  if (n >= 2) single("ExtendedPolyphase", extended_polyphase(n));
  if (n % 2 == 0 && golay_admissible(n / 2)) single("ExtendedGolay", extended_golay(n));
  int d = 2;
  while (d < 20 && (std::size_t{1} << (d + 1)) - 1 <= n) ++d;
  single("MSequence", m_sequence(d));

  for (SequenceKind kind : {SequenceKind::RandomPhase, SequenceKind::RandomBinary}) {
    std::vector<double> v(cfg.seeds);
    parallel_for(cfg.seeds, [&](std::size_t i) {
      v[i] = papr(make_sequence(kind, n, 1, derive_seed(cfg.seed, i)), cfg.oversample);
    });
    if (v.empty()) continue;
    PaprRow r{std::string(to_string(kind)), n, v.size(), *std::min_element(v.begin(), v.end()),
              *std::max_element(v.begin(), v.end()), std::accumulate(v.begin(), v.end(), 0.0) / v.size()};
    out.rows.push_back(r);
  }
  return out;
}

// ---- writers ----

void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& rows) {
  os << "config,config_hash,trial,seed,snr_in_db,snr_out_db,support_exact,iterations\n";
  for (const auto& r : rows)
    os << r.config << ',' << r.config_hash << ',' << r.trial << ',' << r.seed << ',' << snr_text(r.snr_in_db) << ','
       << format_double(r.snr_out_db) << ',' << (r.support_exact ? 1 : 0) << ',' << r.iterations << '\n';
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
  os << "config,snr_in_db,trials,mean_snr_out_db,se_db,support_exact_rate,target_db,within_band\n";
  for (const auto& r : rows)
    os << r.config << ',' << snr_text(r.snr_in_db) << ',' << r.trials << ',' << format_double(r.mean_snr_out_db)
       << ',' << format_double(r.se_db) << ',' << format_double(r.support_exact_rate) << ','
       << (r.target_db ? format_double(*r.target_db) : "") << ','
       << (r.within_band ? (*r.within_band ? "1" : "0") : "") << '\n';
}

void write_phase_csv(std::ostream& os, const std::vector<PhaseCell>& cells) {
  os << "sequence,basis,K,M,trials,successes,success_rate\n";
  for (const auto& c : cells)
    os << c.sequence << ',' << to_string(c.basis) << ',' << c.k << ',' << c.m << ',' << c.trials << ','
       << c.successes << ',' << format_double(c.rate()) << '\n';
}

void write_dct_trials_csv(std::ostream& os, const std::vector<DctTrial>& rows) {
  os << "trial,seed,proposed_rel_err,baseline_rel_err,proposed_success,baseline_success\n";
  for (const auto& r : rows)
    os << r.trial << ',' << r.seed << ',' << format_double(r.proposed_rel_err) << ','
       << format_double(r.baseline_rel_err) << ',' << (r.proposed_success ? 1 : 0) << ','
       << (r.baseline_success ? 1 : 0) << '\n';
}

void write_dct_summary_csv(std::ostream& os, const DctReport& r) {
  const double n = static_cast<double>(r.trials.size());
  os << "config,trials,successes,success_rate,only_this,sign_test_p\n";
  os << "proposed," << r.trials.size() << ',' << r.proposed_successes << ','
     << format_double(n ? r.proposed_successes / n : 0.0) << ',' << r.only_proposed << ','
     << format_double(r.sign_test_p) << '\n';
  os << "baseline," << r.trials.size() << ',' << r.baseline_successes << ','
     << format_double(n ? r.baseline_successes / n : 0.0) << ',' << r.only_baseline << ",\n";
}

void write_image_csv(std::ostream& os, const std::vector<ImageRow>& rows) {
  os << "scheme,N,M,K,snr_out_db\n";
  for (const auto& r : rows)
    os << r.scheme << ',' << r.n << ',' << r.m << ',' << r.k << ',' << format_double(r.snr_out_db) << '\n';
}

void write_audit_csv(std::ostream& os, const std::vector<AuditCheck>& rows) {
  os << "check,evaluated,failures,worst,limit,pass\n";
  for (const auto& c : rows)
    os << c.name << ',' << c.evaluated << ',' << c.failures << ',' << format_double(c.worst) << ','
       << format_double(c.limit) << ',' << (c.pass() ? "1" : "0") << '\n';
}

void write_papr_csv(std::ostream& os, const std::vector<PaprRow>& rows) {
  os << "kind,N,samples,papr_min,papr_max,papr_mean\n";
  for (const auto& r : rows)
    os << r.kind << ',' << r.n << ',' << r.samples << ',' << format_double(r.min) << ',' << format_double(r.max)
       << ',' << format_double(r.mean) << '\n';
}

}  // namespace convcs
