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

#include "convcs/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "convcs/csv.hpp"
#include "convcs/parallel.hpp"

namespace convcs {

double coherence_circulant(const CirculantOperator& a) {
  double mu = 0.0;
  for (const auto& v : a.filter()) mu = std::max(mu, std::abs(v));
  return mu;
}

double coherence_dense(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double mutual_coherence(const CirculantOperator& a, BasisKind basis) {
  const std::size_t n = a.size();
  if (n <= 512) return coherence_dense(materialize_dense(a) * basis_dense(basis, n));
  std::vector<double> col_max(n, 0.0);
  parallel_for(n, [&](std::size_t q) {
    CVec e(n, cplx{0.0, 0.0});
    e[q] = 1.0;
    const CVec c = a.apply(basis_apply(basis, e));
    double m = 0.0;
    for (const auto& v : c) m = std::max(m, std::abs(v));
    col_max[q] = m;
  });
  return *std::max_element(col_max.begin(), col_max.end());
}

CoherenceReport make_report(std::string kind, std::size_t n, double mu, double bound,
                            std::string bound_label) {
  CoherenceReport r;
  r.kind = std::move(kind);
  r.n = n;
  r.mu_observed = mu;
  r.bound = bound;
  r.bound_label = std::move(bound_label);
  r.pass = mu <= bound + 1e-9;
  return r;
}

CoherenceReport lemma1_check(const Sequence& s) {
  const Classification c = classify(s);
  const auto a = CirculantOperator::from_spectrum(s);
  return make_report(std::string(to_string(s.kind())), s.size(), coherence_circulant(a),
                     std::sqrt(1.0 + c.epsilon_observed), "sqrt(1+eps)");
}

bool Table1Result::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const CoherenceReport& r) { return r.pass; });
}

namespace {

bool is_mersenne(std::size_t n, int& degree) {
  for (int d = 2; d <= 20; ++d)
    if (n == (std::size_t{1} << d) - 1) {
      degree = d;
      return true;
    }
  return false;
}

}  // namespace

Table1Result table1_report(const Table1Config& cfg) {
  using Job = std::function<std::optional<CoherenceReport>()>;
  std::vector<Job> jobs;
  std::vector<std::string> notes;
  const auto rt = [](std::size_t n) { return std::sqrt(static_cast<double>(n)); };

  for (std::size_t n : cfg.fzc)
    jobs.push_back([n] {
      const auto a = CirculantOperator::from_spectrum(fzc(n, 1));
      return make_report("FZC", n, coherence_circulant(a), 1.0, "1");
    });

  for (std::size_t n : cfg.m_sequence) {
    int d = 0;
    if (!is_mersenne(n, d)) {
      notes.push_back("MSequence N=" + std::to_string(n) + " skipped: not 2^d-1 with d in [2,20]");
      continue;
    }
    jobs.push_back([n, d] {
      const auto a = CirculantOperator::from_spectrum(m_sequence(d));
      const double nn = static_cast<double>(n);
      return make_report("MSequence", n, coherence_circulant(a), std::sqrt((nn + 1.0) / nn),
                         "sqrt((N+1)/N)");
    });
  }

  for (std::size_t n0 : cfg.golay) {
    if (!golay_admissible(n0)) {
      notes.push_back("Golay N=" + std::to_string(n0) + " skipped: not 2^a 10^b 26^c");
      continue;
    }
    jobs.push_back([n0] {
      const auto a = CirculantOperator::from_spectrum(golay(n0));
      return make_report("Golay", n0, coherence_circulant(a), std::sqrt(2.0), "sqrt(2)");
    });
  }

  for (std::size_t n : cfg.extended_polyphase) {
    if (n < 2) {
      notes.push_back("ExtendedPolyphase N=" + std::to_string(n) + " skipped: N < 2");
      continue;
    }
    jobs.push_back([n, rt] {
      const auto a = CirculantOperator::from_spectrum(extended_polyphase(n));
      const bool even = n % 2 == 0;
      return make_report("ExtendedPolyphase", n, coherence_circulant(a),
                         even ? 4.0 + 4.0 / rt(n) : 2.69 + 8.15 / rt(n),
                         even ? "4+4/sqrt(N)" : "2.69+8.15/sqrt(N)");
    });
  }

  for (std::size_t n : cfg.extended_golay) {
    const std::size_t n0 = n % 2 == 0 ? n / 2 : (n + 1) / 2;
    if (n < 2 || !golay_admissible(n0)) {
      notes.push_back("ExtendedGolay N=" + std::to_string(n) + " skipped: no admissible Golay length");
      continue;
    }
    jobs.push_back([n, rt] {
      const auto a = CirculantOperator::from_spectrum(extended_golay(n));
      const bool even = n % 2 == 0;
      return make_report("ExtendedGolay", n, coherence_circulant(a),
                         even ? 2.0 + 2.0 / rt(n) : 2.0 + 1.0 / rt(n),
                         even ? "2+2/sqrt(N)" : "2+1/sqrt(N)");
    });
  }

  std::vector<std::int64_t> gammas{1};
  gammas.insert(gammas.end(), cfg.fzc_dct_extra_gamma.begin(), cfg.fzc_dct_extra_gamma.end());
  for (std::int64_t g : gammas) {
    for (std::size_t n : cfg.fzc_dct) {
      if (std::gcd(g, static_cast<std::int64_t>(n)) != 1) {
        notes.push_back("FZC*IDCT N=" + std::to_string(n) + " gamma=" + std::to_string(g) +
                        " skipped: gamma not coprime with N");
        continue;
      }
      jobs.push_back([n, g] {
        const auto a = CirculantOperator::from_spectrum(fzc(n, g));
        return make_report("FZC*IDCT(gamma=" + std::to_string(g) + ")", n,
                           mutual_coherence(a, BasisKind::InverseDCT2), 6.0 * std::sqrt(2.0),
                           "6*sqrt(2)");
      });
    }
  }

  std::vector<std::optional<CoherenceReport>> out(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) { out[i] = jobs[i](); });

  Table1Result res;
  res.notes = std::move(notes);
  for (auto& r : out)
    if (r) res.rows.push_back(std::move(*r));
  return res;
}

void write_coherence_csv(std::ostream& os, const std::vector<CoherenceReport>& rows) {
  os << "kind,N,mu_observed,bound,margin,pass\n";
  for (const auto& r : rows)
    os << r.kind << ',' << r.n << ',' << format_double(r.mu_observed) << ','
       << format_double(r.bound) << ',' << format_double(r.margin()) << ','
       << (r.pass ? "1" : "0") << '\n';
}

}  // namespace convcs
