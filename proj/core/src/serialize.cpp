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

#include "convcs/serialize.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "convcs/csv.hpp"

namespace convcs {
namespace {

using nlohmann::json;

json params_json(const SequenceParams& p) {
  json j = json::object();
  if (p.gamma) j["gamma"] = *p.gamma;
  if (p.degree) j["degree"] = *p.degree;
  if (p.taps) j["taps"] = *p.taps;
  if (p.init) j["init"] = *p.init;
  if (p.seed) j["seed"] = *p.seed;
  if (p.base_length) j["base_length"] = *p.base_length;
  return j;
}

SequenceParams params_from(const json& j) {
  SequenceParams p;
  if (j.contains("gamma")) p.gamma = j["gamma"].get<std::int64_t>();
  if (j.contains("degree")) p.degree = j["degree"].get<int>();
  if (j.contains("taps")) p.taps = j["taps"].get<std::uint32_t>();
  if (j.contains("init")) p.init = j["init"].get<std::uint32_t>();
  if (j.contains("seed")) p.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("base_length")) p.base_length = j["base_length"].get<std::size_t>();
  return p;
}

// Numbers that may be non-finite go out as strings.
json num(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string sequence_to_json(const Sequence& s) {
  json j;
  j["kind"] = std::string(to_string(s.kind()));
  j["N"] = s.size();
  j["params"] = params_json(s.params());
  j["epsilon_claim"] = s.epsilon_claim() ? json(*s.epsilon_claim()) : json(nullptr);
  json vals = json::array();
  for (const auto& v : s.values()) vals.push_back({v.real(), v.imag()});
  j["values"] = std::move(vals);
  return dump(j);
}

Sequence sequence_from_json(const std::string& text) {
  const json j = json::parse(text);
  const SequenceKind kind = sequence_kind_from_string(j.at("kind").get<std::string>());
  CVec v;
  for (const auto& e : j.at("values")) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("sequence json: value must be [re, im]");
    v.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  if (j.contains("N") && j["N"].get<std::size_t>() != v.size())
    throw std::invalid_argument("sequence json: N does not match the value count");
  std::optional<double> eps;
  if (j.contains("epsilon_claim") && !j["epsilon_claim"].is_null()) eps = j["epsilon_claim"].get<double>();
  return Sequence(kind, std::move(v), j.contains("params") ? params_from(j["params"]) : SequenceParams{}, eps);
}

void write_sequence_csv(std::ostream& os, const Sequence& s) {
  os << "re,im\n";
  for (const auto& v : s.values()) os << format_exact(v.real()) << ',' << format_exact(v.imag()) << '\n';
}

Sequence read_sequence_csv(std::istream& is, SequenceKind kind) {
  std::string line;
  if (!std::getline(is, line) || line != "re,im") throw std::invalid_argument("sequence csv: missing header");
  CVec v;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("sequence csv: malformed row");
    v.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
  }
  return Sequence(kind, std::move(v));
}

std::string operator_config_json(const SensingOperator& op) {
  const auto& a = op.circulant();
  json j;
  j["sequence_kind"] = a.source_kind() ? json(std::string(to_string(*a.source_kind()))) : json(nullptr);
  j["params"] = params_json(a.source_params());
  j["construction"] = a.origin() == CirculantOperator::Origin::Spectrum ? "spectrum" : "filter";
  j["N"] = op.cols();
  j["M"] = op.rows();
  json s;
  s["mode"] = std::string(to_string(op.sampling().mode()));
  if (op.sampling().seed()) s["seed"] = *op.sampling().seed();
  else s["indices"] = op.sampling().indices();
  j["sampling"] = s;
  j["basis"] = std::string(to_string(op.basis()));
  return dump(j);
}

void write_measurement_csv(std::ostream& os, const SamplingSet& omega, CSpan y) {
  if (y.size() != omega.m()) throw std::invalid_argument("measurement csv: length mismatch");
  os << "row,omega,re,im\n";
  for (std::size_t i = 0; i < y.size(); ++i)
    os << i << ',' << omega.indices()[i] << ',' << format_exact(y[i].real()) << ',' << format_exact(y[i].imag())
       << '\n';
}

std::string to_json(const OfdmReport& r) {
  json j;
  j["experiment"] = "ofdm";
  j["config_hash"] = r.config_hash;
  j["noise_convention"] = r.noise_convention;
  json sum = json::array();
  for (const auto& s : r.summary) {
    json e{{"config", s.config},
           {"snr_in_db", num(s.snr_in_db)},
           {"trials", s.trials},
           {"mean_snr_out_db", num(s.mean_snr_out_db)},
           {"se_db", num(s.se_db)},
           {"support_exact_rate", s.support_exact_rate}};
    e["target_db"] = s.target_db ? json(*s.target_db) : json(nullptr);
    e["within_band"] = s.within_band ? json(*s.within_band) : json(nullptr);
    sum.push_back(e);
  }
  j["summary"] = sum;
  json tr = json::array();
  for (const auto& t : r.trials)
    tr.push_back({{"config", t.config},
                  {"trial", t.trial},
                  {"seed", t.seed},
                  {"snr_in_db", num(t.snr_in_db)},
                  {"snr_out_db", num(t.snr_out_db)},
                  {"support_exact", t.support_exact},
                  {"iterations", t.iterations}});
  j["trials"] = tr;
  return dump(j);
}

std::string to_json(const PhaseReport& r) {
  json j;
  j["experiment"] = "phase";
  j["config_hash"] = r.config_hash;
  json cells = json::array();
  for (const auto& c : r.cells)
    cells.push_back({{"sequence", c.sequence},
                     {"basis", std::string(to_string(c.basis))},
                     {"K", c.k},
                     {"M", c.m},
                     {"trials", c.trials},
                     {"successes", c.successes},
                     {"success_rate", c.rate()}});
  j["cells"] = cells;
  return dump(j);
}

std::string to_json(const DctReport& r) {
  json j;
  j["experiment"] = "dct";
  j["config_hash"] = r.config_hash;
  if (!r.image.empty()) {
    json rows = json::array();
    for (const auto& i : r.image)
      rows.push_back({{"scheme", i.scheme}, {"N", i.n}, {"M", i.m}, {"K", i.k}, {"snr_out_db", num(i.snr_out_db)}});
    j["image"] = rows;
    return dump(j);
  }
  j["trials"] = r.trials.size();
  j["proposed_successes"] = r.proposed_successes;
  j["baseline_successes"] = r.baseline_successes;
  j["only_proposed"] = r.only_proposed;
  j["only_baseline"] = r.only_baseline;
  j["sign_test_p"] = r.sign_test_p;
  json tr = json::array();
  for (const auto& t : r.trials)
    tr.push_back({{"trial", t.trial},
                  {"seed", t.seed},
                  {"proposed_rel_err", t.proposed_rel_err},
                  {"baseline_rel_err", t.baseline_rel_err},
                  {"proposed_success", t.proposed_success},
                  {"baseline_success", t.baseline_success}});
  j["per_trial"] = tr;
  return dump(j);
}

std::string to_json(const Table1Result& r) {
  json j;
  json rows = json::array();
  for (const auto& c : r.rows)
    rows.push_back({{"kind", c.kind},
                    {"N", c.n},
                    {"mu_observed", c.mu_observed},
                    {"bound", c.bound},
                    {"bound_label", c.bound_label},
                    {"margin", c.margin()},
                    {"pass", c.pass}});
  j["rows"] = rows;
  j["notes"] = r.notes;
  j["pass"] = r.all_pass();
  return dump(j);
}

std::string to_json(const GaussAudit& r) {
  json j;
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"check", c.name},
                      {"evaluated", c.evaluated},
                      {"failures", c.failures},
                      {"worst", c.worst},
                      {"limit", c.limit},
                      {"pass", c.pass()}});
  j["checks"] = checks;
  json rows = json::array();
  for (const auto& b : r.bound_rows)
    rows.push_back({{"kind", b.kind},
                    {"N", b.n},
                    {"worst_m", b.worst_m},
                    {"observed", b.observed},
                    {"bound", b.bound},
                    {"margin", b.margin},
                    {"enforced", b.enforced}});
  j["bounds"] = rows;
  j["fitted_c_4k_plus_1"] = r.fitted_c ? json(*r.fitted_c) : json(nullptr);
  j["pass"] = r.pass();
  return dump(j);
}

std::string to_json(const PaprAudit& r) {
  json j;
  json rows = json::array();
  for (const auto& p : r.rows)
    rows.push_back({{"kind", p.kind},
                    {"N", p.n},
                    {"samples", p.samples},
                    {"papr_min", p.min},
                    {"papr_max", p.max},
                    {"papr_mean", p.mean}});
  j["rows"] = rows;
  j["pass"] = r.pass();
  return dump(j);
}

}  // namespace convcs
