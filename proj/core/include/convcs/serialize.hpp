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

#include <istream>
#include <ostream>
#include <string>

#include "convcs/experiments.hpp"
#include "convcs/operators.hpp"
#include "convcs/sequences.hpp"

namespace convcs {

/// {"kind", "N", "params", "epsilon_claim", "values": [[re, im], ...]}.
/// Doubles are printed in shortest round-trip form, so parsing restores
/// every value bit for bit.
std::string sequence_to_json(const Sequence& s);
Sequence sequence_from_json(const std::string& text);

/// Header "re,im", one row per entry, 17 significant digits. The CSV carries
/// no kind, so reading it needs one.
void write_sequence_csv(std::ostream& os, const Sequence& s);
Sequence read_sequence_csv(std::istream& is, SequenceKind kind);

/// {"sequence_kind", "params", "construction", "N", "M",
///  "sampling": {"mode", "seed" | "indices"}, "basis"}.
std::string operator_config_json(const SensingOperator& op);

/// Header "row,omega,re,im": measurement index, sampled position, value.
void write_measurement_csv(std::ostream& os, const SamplingSet& omega, CSpan y);

/// JSON renderings of the experiment reports. Wall times are left out so
/// reruns produce identical bytes.
std::string to_json(const OfdmReport& r);
std::string to_json(const PhaseReport& r);
std::string to_json(const DctReport& r);
std::string to_json(const Table1Result& r);
std::string to_json(const GaussAudit& r);
std::string to_json(const PaprAudit& r);

}  // namespace convcs
