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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "convcs/coherence.hpp"
#include "convcs/csv.hpp"
#include "convcs/experiments.hpp"
#include "convcs/gauss_sums.hpp"
#include "convcs/operators.hpp"
#include "convcs/recovery.hpp"
#include "convcs/sequences.hpp"
#include "convcs/serialize.hpp"

namespace fs = std::filesystem;
using namespace convcs;

namespace {

constexpr int kPass = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
  std::vector<std::size_t> k_list;
  std::vector<std::size_t> m_list;
  std::string seq;
  std::int64_t gamma = 1;
  std::vector<std::string> basis;
  std::string solver = "sp";
  std::string snr_list;
  std::size_t trials = 0;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
  std::string image;
  double lambda_scale = 1e-3;
  int oversample = 16;
  bool time_domain = false;
  bool zero_mean = false;
  bool no_baseline = false;
  bool no_debias = false;
};

std::vector<double> parse_snr_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "inf" || item == "+inf") {
      out.push_back(std::numeric_limits<double>::infinity());
      continue;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("--snr-list: cannot parse '" + item + "'");
    }
    if (used != item.size() || !std::isfinite(v)) throw UsageError("--snr-list: cannot parse '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("--snr-list is empty");
  return out;
}

// Writes `name` under --out, or to stdout (preceded by a "# name" line when
// several tables are printed).
class Sink {
 public:
  explicit Sink(const Options& o) : dir_(o.out) {
    if (!dir_.empty()) fs::create_directories(dir_);
  }
  void emit(const std::string& name, const std::function<void(std::ostream&)>& body) {
    if (dir_.empty()) {
      if (count_++ > 0) std::cout << '\n';
      std::cout << "# " << name << '\n';
      body(std::cout);
      return;
    }
    const fs::path p = fs::path(dir_) / name;
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    body(f);
    std::cerr << "wrote " << p.string() << '\n';
  }

 private:
  std::string dir_;
  int count_ = 0;
};

bool json_format(const Options& o) { return o.format == "json"; }

SequenceKind seq_or(const Options& o, SequenceKind fallback) {
  return o.seq.empty() ? fallback : sequence_kind_from_string(o.seq);
}

BasisKind single_basis(const Options& o, BasisKind fallback) {
  if (o.basis.empty()) return fallback;
  if (o.basis.size() > 1) throw UsageError("--basis takes one value for this subcommand");
  return basis_kind_from_string(o.basis[0]);
}

// ---- subcommands ----

int cmd_gen_seq(const Options& o) {
  if (o.seq.empty() || o.n == 0) throw UsageError("gen-seq needs --seq and --n");
  const Sequence s = make_sequence(sequence_kind_from_string(o.seq), o.n, o.gamma, o.seed);
  const Classification c = classify(s);
  Sink sink(o);
  if (json_format(o))
    sink.emit("sequence.json", [&](std::ostream& os) { os << sequence_to_json(s); });
  else
    sink.emit("sequence.csv", [&](std::ostream& os) { write_sequence_csv(os, s); });
  std::cerr << to_string(s.kind()) << " N=" << s.size() << " class=" << to_string(c.category)
            << " eps_observed=" << format_double(c.epsilon_observed);
  if (c.claim_holds) std::cerr << " claim=" << format_double(*s.epsilon_claim()) << (*c.claim_holds ? " ok" : " VIOLATED");
  std::cerr << '\n';
  return c.claim_holds.value_or(true) ? kPass : kViolation;
}

int cmd_coherence(const Options& o) {
  Sink sink(o);
  if (!o.seq.empty()) {
    if (o.n == 0) throw UsageError("coherence --seq needs --n");
    const Sequence s = make_sequence(sequence_kind_from_string(o.seq), o.n, o.gamma, o.seed);
    const auto a = make_circulant(s, o.time_domain);
    const BasisKind b = single_basis(o, BasisKind::Identity);
    const double mu = b == BasisKind::Identity ? coherence_circulant(a) : mutual_coherence(a, b);
    sink.emit("coherence_single.csv", [&](std::ostream& os) {
      os << "kind,N,basis,construction,mu_observed\n"
         << to_string(s.kind()) << ',' << s.size() << ',' << to_string(b) << ','
         << (o.time_domain ? "filter" : "spectrum") << ',' << format_double(mu) << '\n';
    });
    return kPass;
  }
  const Table1Result r = table1_report();
  if (json_format(o))
    sink.emit("coherence.json", [&](std::ostream& os) { os << to_json(r); });
  else
    sink.emit("coherence.csv", [&](std::ostream& os) { write_coherence_csv(os, r.rows); });
  for (const auto& note : r.notes) std::cerr << "note: " << note << '\n';
  for (const auto& row : r.rows)
    if (!row.pass)
      std::cerr << "VIOLATION " << row.kind << " N=" << row.n << " mu=" << format_double(row.mu_observed)
                << " bound=" << format_double(row.bound) << '\n';
  return r.all_pass() ? kPass : kViolation;
}

int cmd_gauss(const Options& o) {
  GaussAuditConfig cfg;
  if (o.n > 0) {
    cfg.identity_max = static_cast<std::int64_t>(o.n);
    cfg.bound_hi = static_cast<std::int64_t>(o.n);
  }
  const GaussAudit a = run_gauss_audit(cfg);
  Sink sink(o);
  if (json_format(o)) {
    sink.emit("gauss.json", [&](std::ostream& os) { os << to_json(a); });
  } else {
    sink.emit("gauss_checks.csv", [&](std::ostream& os) { write_audit_csv(os, a.checks); });
    sink.emit("gauss_bounds.csv", [&](std::ostream& os) { write_bound_csv(os, a.bound_rows); });
  }
  for (const auto& c : a.checks)
    if (!c.pass()) std::cerr << "VIOLATION " << c.name << ": " << c.failures << " of " << c.evaluated << '\n';
  if (a.fitted_c) std::cerr << "fitted c for g_N:4k+1 = " << format_double(*a.fitted_c) << '\n';
  return a.pass() ? kPass : kViolation;
}

int cmd_papr(const Options& o) {
  Sink sink(o);
  if (!o.seq.empty()) {
    if (o.n == 0) throw UsageError("papr --seq needs --n");
    const Sequence s = make_sequence(sequence_kind_from_string(o.seq), o.n, o.gamma, o.seed);
    const double v = papr(s, o.oversample);
    sink.emit("papr_single.csv", [&](std::ostream& os) {
      os << "kind,N,oversample,papr\n" << to_string(s.kind()) << ',' << s.size() << ',' << o.oversample << ','
         << format_double(v) << '\n';
    });
    return kPass;
  }
  PaprAuditConfig cfg;
  if (o.n > 0) cfg.n = o.n;
  if (o.trials > 0) cfg.seeds = o.trials;
  cfg.seed = o.seed;
  cfg.oversample = o.oversample;
  const PaprAudit a = run_papr_audit(cfg);
  if (json_format(o))
    sink.emit("papr.json", [&](std::ostream& os) { os << to_json(a); });
  else
    sink.emit("papr.csv", [&](std::ostream& os) { write_papr_csv(os, a.rows); });
  return a.pass() ? kPass : kViolation;
}

int cmd_recover(const Options& o) {
  if (o.n == 0 || o.m == 0 || o.k == 0) throw UsageError("recover needs --n, --m and --k");
  const SequenceKind kind = seq_or(o, SequenceKind::FZC);
  const BasisKind basis = single_basis(o, BasisKind::Identity);
  const double snr = o.snr_list.empty() ? std::numeric_limits<double>::infinity() : parse_snr_list(o.snr_list).at(0);

  const Sequence s = make_sequence(kind, o.n, o.gamma, derive_seed(o.seed, 2));
  const SensingOperator op(make_circulant(s, o.time_domain), SamplingSet::random(o.n, o.m, derive_seed(o.seed, 0)),
                           basis);
  Rng rng(derive_seed(o.seed, 1));
  const CVec f = random_sparse(o.n, o.k, rng);
  Rng noise(derive_seed(o.seed, 100));
  const CVec y = add_noise(op.forward(f), snr, noise);
  SolverSettings st{solver_kind_from_string(o.solver), o.lambda_scale, !o.no_debias};
  const RecoveryResult r = run_solver(op, y, o.k, st);
  const double rel = relative_error(f, r.f_hat);
  const bool noiseless = std::isinf(snr);
  const bool success = rel <= 1e-4;

  Sink sink(o);
  sink.emit("operator.json", [&](std::ostream& os) { os << operator_config_json(op); });
  sink.emit("measurements.csv", [&](std::ostream& os) { write_measurement_csv(os, op.sampling(), y); });
  sink.emit("recovery.csv", [&](std::ostream& os) {
    os << "index,true_re,true_im,est_re,est_im\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i] == cplx{} && r.f_hat[i] == cplx{}) continue;
      os << i << ',' << format_exact(f[i].real()) << ',' << format_exact(f[i].imag()) << ','
         << format_exact(r.f_hat[i].real()) << ',' << format_exact(r.f_hat[i].imag()) << '\n';
    }
  });
  std::cerr << "solver=" << to_string(st.kind) << " iterations=" << r.iterations
            << " residual=" << format_double(r.residual_norm) << " rel_error=" << format_double(rel)
            << " snr_out_db=" << format_double(output_snr_db(f, r.f_hat)) << (success ? " success" : " failure")
            << '\n';
  return (noiseless && !success) ? kViolation : kPass;
}

int cmd_exp_ofdm(const Options& o) {
  OfdmConfig cfg;
  if (o.n) cfg.n = o.n;
  if (o.m) cfg.m = o.m;
  if (o.k) cfg.k = o.k;
  if (o.trials) cfg.trials = o.trials;
  if (!o.snr_list.empty()) cfg.snr_db = parse_snr_list(o.snr_list);
  cfg.seed = o.seed;
  cfg.sequence = seq_or(o, SequenceKind::Golay);
  cfg.gamma = o.gamma;
  cfg.solver = {solver_kind_from_string(o.solver), o.lambda_scale, !o.no_debias};
  cfg.run_baseline = !o.no_baseline;
  const OfdmReport r = run_ofdm_experiment(cfg);
  Sink sink(o);
  if (json_format(o)) {
    sink.emit("ofdm.json", [&](std::ostream& os) { os << to_json(r); });
  } else {
    sink.emit("ofdm_summary.csv", [&](std::ostream& os) { write_summary_csv(os, r.summary); });
    if (!o.out.empty()) sink.emit("ofdm_trials.csv", [&](std::ostream& os) { write_trials_csv(os, r.trials); });
  }
  std::cerr << "noise convention: " << r.noise_convention << '\n';
  bool ok = true;
  for (const auto& s : r.summary)
    if (s.within_band && !*s.within_band) {
      ok = false;
      std::cerr << "VIOLATION " << s.config << " input " << format_double(s.snr_in_db) << " dB: mean "
                << format_double(s.mean_snr_out_db, 4) << " dB vs reference " << format_double(*s.target_db, 4)
                << " +- 3 dB\n";
    }
  return ok ? kPass : kViolation;
}

int cmd_exp_phase(const Options& o) {
  PhaseConfig cfg;
  if (o.n) cfg.n = o.n;
  if (!o.k_list.empty()) cfg.k_list = o.k_list;
  if (!o.m_list.empty()) cfg.m_list = o.m_list;
  if (o.trials) cfg.trials = o.trials;
  if (!o.basis.empty()) {
    cfg.bases.clear();
    for (const auto& b : o.basis) cfg.bases.push_back(basis_kind_from_string(b));
  }
  cfg.sequence = seq_or(o, SequenceKind::FZC);
  cfg.gamma = o.gamma;
  cfg.seed = o.seed;
  cfg.time_domain = o.time_domain;
  cfg.zero_mean = o.zero_mean;
  cfg.solver = {solver_kind_from_string(o.solver), o.lambda_scale, !o.no_debias};
  const PhaseReport r = run_phase_transition(cfg);
  Sink sink(o);
  if (json_format(o))
    sink.emit("phase.json", [&](std::ostream& os) { os << to_json(r); });
  else
    sink.emit("phase.csv", [&](std::ostream& os) { write_phase_csv(os, r.cells); });
  return kPass;
}

int cmd_exp_dct(const Options& o) {
  DctConfig cfg;
  if (o.n) cfg.n = o.n;
  if (o.m) cfg.m = o.m;
  if (o.k) cfg.k = o.k;
  if (o.trials) cfg.trials = o.trials;
  cfg.gamma = o.gamma;
  cfg.seed = o.seed;
  cfg.solver = {solver_kind_from_string(o.solver), o.lambda_scale, !o.no_debias};
  if (!o.image.empty()) cfg.image_path = o.image;
  const DctReport r = run_dct_experiment(cfg);
  Sink sink(o);
  if (json_format(o)) {
    sink.emit("dct.json", [&](std::ostream& os) { os << to_json(r); });
  } else if (cfg.image_path) {
    sink.emit("dct_image.csv", [&](std::ostream& os) { write_image_csv(os, r.image); });
  } else {
    sink.emit("dct_summary.csv", [&](std::ostream& os) { write_dct_summary_csv(os, r); });
    if (!o.out.empty()) sink.emit("dct_trials.csv", [&](std::ostream& os) { write_dct_trials_csv(os, r.trials); });
  }
  if (cfg.image_path || r.trials.empty()) return kPass;
  const double rate = static_cast<double>(r.proposed_successes) / static_cast<double>(r.trials.size());
  std::cerr << "proposed success " << format_double(rate, 4) << ", baseline "
            << format_double(static_cast<double>(r.baseline_successes) / r.trials.size(), 4)
            << ", sign test p = " << format_double(r.sign_test_p, 4) << '\n';
  return (rate >= 0.9 && r.sign_test_p < 0.01) ? kPass : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"convcs: deterministic-sequence convolutional compressed sensing"};
  app.require_subcommand(1);
  Options o;

  const auto add_common = [&](CLI::App* sc) {
    sc->add_option("--seed", o.seed, "Master seed");
    sc->add_option("--out", o.out, "Output directory (default: stdout)");
    sc->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };
  const auto add_seq = [&](CLI::App* sc) {
    sc->add_option("--seq", o.seq,
                   "Sequence kind: fzc, ext-poly, m-seq, perfect-binary, golay, ext-golay, legendre, "
                   "random-phase, random-binary");
    sc->add_option("--gamma", o.gamma, "FZC root, coprime with N");
  };
  const auto add_solver = [&](CLI::App* sc) {
    sc->add_option("--solver", o.solver, "omp, sp or fista")->check(CLI::IsMember({"omp", "sp", "fista"}));
    sc->add_option("--lambda-scale", o.lambda_scale, "FISTA lambda as a fraction of ||Theta^* y||_inf");
    sc->add_flag("--no-debias", o.no_debias, "Keep the raw FISTA estimate instead of refitting on its support");
  };

  auto* gen = app.add_subcommand("gen-seq", "Generate a sequence and check its autocorrelation claim");
  gen->add_option("--n", o.n, "Length")->required();
  add_seq(gen);
  add_common(gen);

  auto* coh = app.add_subcommand("coherence", "Coherence table, or one operator with --seq");
  coh->add_option("--n", o.n, "Length for --seq");
  add_seq(coh);
  coh->add_option("--basis", o.basis, "identity, fourier or dct");
  coh->add_flag("--time-domain", o.time_domain, "Use the sequence as the filter");
  add_common(coh);

  auto* gauss = app.add_subcommand("gauss-audit", "Gauss-sum identities and bounds");
  gauss->add_option("--n", o.n, "Largest N for the identity and bound sweeps (default 256)");
  add_common(gauss);

  auto* pap = app.add_subcommand("papr", "PAPR table, or one sequence with --seq");
  pap->add_option("--n", o.n, "Length (default 1024)");
  add_seq(pap);
  pap->add_option("--trials", o.trials, "Random seeds per random kind (default 100)");
  pap->add_option("--oversample", o.oversample, "Time-grid oversampling, at least 4");
  add_common(pap);

  auto* rec = app.add_subcommand("recover", "One seeded recovery instance");
  rec->add_option("--n", o.n, "Signal length")->required();
  rec->add_option("--m", o.m, "Measurements")->required();
  rec->add_option("--k", o.k, "Sparsity")->required();
  add_seq(rec);
  rec->add_option("--basis", o.basis, "identity, fourier or dct");
  add_solver(rec);
  rec->add_option("--snr-list", o.snr_list, "Input SNR in dB (first value used; default noiseless)");
  rec->add_flag("--time-domain", o.time_domain, "Use the sequence as the filter");
  add_common(rec);

  auto* ofdm = app.add_subcommand("exp-ofdm", "OFDM channel estimation experiment");
  ofdm->add_option("--n", o.n, "Carriers (default 1024)");
  ofdm->add_option("--m", o.m, "Measurements (default 64)");
  ofdm->add_option("--k", o.k, "Sparsity passed to the solver (default 6)");
  add_seq(ofdm);
  add_solver(ofdm);
  ofdm->add_option("--snr-list", o.snr_list, "Comma-separated input SNRs in dB, 'inf' for noiseless");
  ofdm->add_option("--trials", o.trials, "Trials per SNR (default 500)");
  ofdm->add_flag("--no-baseline", o.no_baseline, "Skip the random-phase baseline");
  add_common(ofdm);

  auto* phase = app.add_subcommand("exp-phase", "Success-rate grid over K and M");
  phase->add_option("--n", o.n, "Length (default 256)");
  phase->add_option("--k", o.k_list, "Sparsity list (default 5)")->delimiter(',');
  phase->add_option("--m", o.m_list, "Measurement list (default 64)")->delimiter(',');
  add_seq(phase);
  phase->add_option("--basis", o.basis, "Basis list (default identity,fourier)")->delimiter(',');
  add_solver(phase);
  phase->add_option("--trials", o.trials, "Trials per cell (default 200)");
  phase->add_flag("--time-domain", o.time_domain, "Use the sequence as the filter");
  phase->add_flag("--zero-mean", o.zero_mean, "Draw zero-mean signals");
  add_common(phase);

  auto* dct = app.add_subcommand("exp-dct", "DCT-domain recovery, proposed vs baseline");
  dct->add_option("--n", o.n, "Length (default 512)");
  dct->add_option("--m", o.m, "Measurements (default 128)");
  dct->add_option("--k", o.k, "Sparsity (default 8)");
  dct->add_option("--gamma", o.gamma, "FZC root");
  add_solver(dct);
  dct->add_option("--trials", o.trials, "Trials (default 200)");
  dct->add_option("--image", o.image, "8-bit PGM used instead of synthetic signals")->check(CLI::ExistingFile);
  add_common(dct);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*gen) return cmd_gen_seq(o);
    if (*coh) return cmd_coherence(o);
    if (*gauss) return cmd_gauss(o);
    if (*pap) return cmd_papr(o);
    if (*rec) return cmd_recover(o);
    if (*ofdm) return cmd_exp_ofdm(o);
    if (*phase) return cmd_exp_phase(o);
    if (*dct) return cmd_exp_dct(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
