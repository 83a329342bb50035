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
#include <ostream>
#include <string>
#include <vector>

#include "convcs/operators.hpp"
#include "convcs/sequences.hpp"

namespace convcs {

/// max_k |a_k|, the largest entry magnitude of the circulant.
double coherence_circulant(const CirculantOperator& a);

/// Largest entry magnitude of an explicit matrix.
double coherence_dense(const Matrix& m);

/// max |(A Psi)(p, q)|. Dense product for N <= 512; above that each column
/// A (Psi e_q) is formed on its own so memory stays O(N).
double mutual_coherence(const CirculantOperator& a, BasisKind basis);

struct CoherenceReport {
  std::string kind;         // row label, e.g. "Golay" or "FZC*IDCT(gamma=3)"
  std::size_t n = 0;
  double mu_observed = 0.0;
  double bound = 0.0;
  std::string bound_label;  // the bound as a formula, e.g. "2+2/sqrt(N)"
  bool pass = false;        // mu_observed <= bound + 1e-9
  double margin() const { return bound - mu_observed; }
};

CoherenceReport make_report(std::string kind, std::size_t n, double mu, double bound,
                            std::string bound_label);

/// For a unimodular sequence s used as the spectrum: checks
/// mu(A) <= sqrt(1 + eps_observed) with eps_observed from classify(s).
CoherenceReport lemma1_check(const Sequence& s);

/// Sizes per row of the table. Golay sizes are the sequence length N0; all
/// others are the operator size N.
struct Table1Config {
  std::vector<std::size_t> fzc{64, 255, 256, 1024};
  std::vector<std::size_t> m_sequence{7, 31, 127, 511, 1023};
  std::vector<std::size_t> golay{16, 20, 52, 100, 1024};
  std::vector<std::size_t> extended_polyphase{64, 255, 256, 1023, 1024};
  std::vector<std::size_t> extended_golay{19, 20, 31, 32, 127, 128, 2047, 2048};
  std::vector<std::size_t> fzc_dct{64, 256, 1024};
  /// Roots checked for the DCT rows in addition to gamma = 1.
  std::vector<std::int64_t> fzc_dct_extra_gamma{3, 5, 7};
};

struct Table1Result {
  std::vector<CoherenceReport> rows;
  std::vector<std::string> notes;  // skipped sizes
  bool all_pass() const;
};

/// One report per (row kind, N). Inadmissible sizes are skipped with a note.
/// Rows are evaluated in parallel and returned in configuration order.
Table1Result table1_report(const Table1Config& cfg = {});

/// CSV with header kind,N,mu_observed,bound,margin,pass.
void write_coherence_csv(std::ostream& os, const std::vector<CoherenceReport>& rows);

}  // namespace convcs
