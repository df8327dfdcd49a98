#include "conceptlab/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "conceptlab/version.hpp"

namespace conceptlab::report {

namespace {

json number(double value) { return json(quantize(value)); }

json distribution_to_json(const scop::ScopSystem& system, const scop::StateDistribution& dist) {
  json out = json::object();
  for (const auto& [state, weight] : dist.to_map(system)) out[state] = number(weight);
  return out;
}

json interference_to_json(const diagnostics::RecordDiagnosis& d) {
  const core::InterferenceReport& r = d.interference;
  json fit{{"muA", number(r.mu_a)},
           {"muB", number(r.mu_b)},
           {"muObserved", number(r.mu_observed)},
           {"average", number(r.average)},
           {"delta", number(r.delta)},
           {"kappa", number(r.kappa)},
           {"feasible", r.feasible},
           {"fitted", d.fitted}};
  if (d.fitted) {
    fit["phase"] = number(d.phase);
    fit["muReconstructed"] = number(r.mu_reconstructed);
    fit["residuals"] = json{{"muA", number(r.residual_a)},
                            {"muB", number(r.residual_b)},
                            {"muCombined", number(r.residual_combined)}};
  }
  if (!d.note.empty()) fit["note"] = d.note;
  return fit;
}

json verdict_to_json(const diagnostics::ClassicalityVerdict& v) {
  return json{{"classification", diagnostics::to_string(v.classification)},
              {"lowerBound", number(v.lower_bound)},
              {"upperBound", number(v.upper_bound)},
              {"slack", number(v.slack)}};
}

json diagnosis_entry_to_json(const diagnostics::RecordDiagnosis& d) {
  json entry{{"index", d.index}, {"record", record_to_json(d.record)}, {"valid", d.valid}};
  if (!d.valid) {
    entry["error"] = d.error;
    return entry;
  }
  entry["verdict"] = verdict_to_json(d.verdict);
  json joint{{"feasible", d.joint.feasible}};
  if (d.joint.witness) {
    joint["witness"] = json{{"pAB", number(d.joint.witness->p_both)},
                            {"pAb", number(d.joint.witness->p_a_only)},
                            {"paB", number(d.joint.witness->p_b_only)},
                            {"pab", number(d.joint.witness->p_neither)}};
  }
  entry["joint"] = joint;
  entry["fit"] = interference_to_json(d);
  return entry;
}

json summary_to_json(const diagnostics::BatchSummary& s) {
  return json{{"records", s.records},
              {"classical", s.classical},
              {"overextension", s.overextension},
              {"underextension", s.underextension},
              {"errors", s.errors},
              {"fitted", s.fitted},
              {"fitRate", number(s.fit_rate)}};
}

void append_csv_field(std::ostringstream& out, const std::string& value, bool first) {
  if (!first) out << ',';
  if (value.find_first_of(",\"\n") == std::string::npos) {
    out << value;
    return;
  }
  out << '"';
  for (char c : value) {
    if (c == '"') out << "\"\"";
    else out << c;
  }
  out << '"';
}

void append_csv_row(std::ostringstream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) append_csv_field(out, fields[i], i == 0);
  out << '\n';
}

std::string json_scalar_to_csv(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_double(v.get<double>());
  if (v.is_null()) return "";
  return v.dump();
}

std::string records_csv(const json& report) {
  std::ostringstream out;
  append_csv_row(out, {"index", "exemplar", "conceptA", "conceptB", "kind", "muA", "muB",
                       "muCombined", "valid", "classification", "lowerBound", "upperBound",
                       "slack", "delta", "kappa", "feasible", "fitted", "phase",
                       "muReconstructed", "maxResidual", "jointFeasible"});
  for (const json& entry : report.at("perRecord")) {
    std::vector<std::string> row;
    const json& record = entry.at("record");
    row.push_back(json_scalar_to_csv(entry.at("index")));
    row.push_back(record.at("exemplar").get<std::string>());
    row.push_back(record.at("conceptA").get<std::string>());
    row.push_back(record.at("conceptB").get<std::string>());
    row.push_back(record.at("kind").get<std::string>());
    row.push_back(json_scalar_to_csv(record.at("muA")));
    row.push_back(json_scalar_to_csv(record.at("muB")));
    row.push_back(json_scalar_to_csv(record.at("muCombined")));
    const bool valid = entry.at("valid").get<bool>();
    row.push_back(valid ? "true" : "false");
    if (!valid) {
      while (row.size() < 21) row.push_back("");
      append_csv_row(out, row);
      continue;
    }
    if (entry.contains("verdict")) {  // fit-only reports carry no verdict
      const json& verdict = entry.at("verdict");
      row.push_back(verdict.at("classification").get<std::string>());
      row.push_back(json_scalar_to_csv(verdict.at("lowerBound")));
      row.push_back(json_scalar_to_csv(verdict.at("upperBound")));
      row.push_back(json_scalar_to_csv(verdict.at("slack")));
    } else {
      for (int blank = 0; blank < 4; ++blank) row.push_back("");
    }
    const json& fit = entry.at("fit");
    row.push_back(json_scalar_to_csv(fit.at("delta")));
    row.push_back(json_scalar_to_csv(fit.at("kappa")));
    row.push_back(json_scalar_to_csv(fit.at("feasible")));
    const bool fitted = fit.at("fitted").get<bool>();
    row.push_back(fitted ? "true" : "false");
    if (fitted) {
      row.push_back(json_scalar_to_csv(fit.at("phase")));
      row.push_back(json_scalar_to_csv(fit.at("muReconstructed")));
      const json& residuals = fit.at("residuals");
      double max_residual = 0.0;
      for (const char* key : {"muA", "muB", "muCombined"})
        max_residual = std::max(max_residual, residuals.at(key).get<double>());
      row.push_back(format_double(max_residual));
    } else {
      row.push_back("");
      row.push_back("");
      row.push_back("");
    }
    row.push_back(entry.contains("joint")
                      ? (entry.at("joint").at("feasible").get<bool>() ? "true" : "false")
                      : "");
    append_csv_row(out, row);
  }
  return out.str();
}

std::string chsh_csv(const json& report) {
  std::ostringstream out;
  append_csv_row(out, {"pair", "expectation"});
  for (const auto& [pair, value] : report.at("expectations").items())
    append_csv_row(out, {pair, json_scalar_to_csv(value)});
  append_csv_row(out, {"S", json_scalar_to_csv(report.at("sValue"))});
  append_csv_row(out, {"classification", report.at("classification").get<std::string>()});
  return out.str();
}

std::string distribution_csv(const json& dist) {
  std::ostringstream out;
  append_csv_row(out, {"state", "weight"});
  for (const auto& [state, weight] : dist.items())
    append_csv_row(out, {state, json_scalar_to_csv(weight)});
  return out.str();
}

std::string simulate_csv(const json& report) {
  std::ostringstream out;
  append_csv_row(out, {"run", "step", "state"});
  std::size_t run = 0;
  for (const json& trajectory : report.at("trajectories")) {
    std::size_t step = 0;
    for (const json& state : trajectory)
      append_csv_row(out, {std::to_string(run), std::to_string(step++),
                           state.get<std::string>()});
    ++run;
  }
  return out.str();
}

std::string index_csv(const json& report) {
  std::ostringstream out;
  append_csv_row(out, {"term", "documentFrequency"});
  for (const auto& [term, df] : report.at("termDocumentFrequency").items())
    append_csv_row(out, {term, json_scalar_to_csv(df)});
  return out.str();
}

std::string validate_csv(const json& report) {
  std::ostringstream out;
  append_csv_row(out, {"context", "state", "property", "message"});
  for (const json& v : report.at("violations"))
    append_csv_row(out, {v.at("context").get<std::string>(), v.at("state").get<std::string>(),
                         v.at("property").get<std::string>(),
                         v.at("message").get<std::string>()});
  return out.str();
}

}  // namespace

std::string content_digest(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "fnv1a64:%016llx",
                static_cast<unsigned long long>(hash));
  return buffer;
}

double quantize(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return std::strtod(buffer, nullptr);
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

json envelope(const std::string& kind, std::string_view input_bytes) {
  return json{{"kind", kind},
              {"toolVersion", kToolVersion},
              {"inputDigest", content_digest(input_bytes)}};
}

json record_to_json(const MembershipRecord& record) {
  return json{{"exemplar", record.exemplar},
              {"conceptA", record.concept_a},
              {"conceptB", record.concept_b},
              {"kind", to_string(record.kind)},
              {"muA", number(record.mu_a)},
              {"muB", number(record.mu_b)},
              {"muCombined", number(record.mu_combined)}};
}

json fit_report(const ingest::Dataset& dataset, std::string_view input_bytes) {
  json report = envelope("fit", input_bytes);
  json per_record = json::array();
  std::size_t fitted = 0, infeasible = 0, errors = 0;
  for (std::size_t i = 0; i < dataset.records.size(); ++i) {
    const MembershipRecord& record = dataset.records[i];
    json entry{{"index", i}, {"record", record_to_json(record)}, {"valid", true}};
    if (!weights_valid(record)) {
      entry["valid"] = false;
      entry["error"] = "weights out of range";
      ++errors;
      per_record.push_back(std::move(entry));
      continue;
    }
    json fit;
    try {
      const core::QuantumConceptModel model =
          core::fit_interference_model(record.mu_a, record.mu_b, record.mu_combined);
      const core::InterferenceReport r = core::verify_model(model, record);
      json vec_a = json::array(), vec_b = json::array();
      for (int k = 0; k < 3; ++k) {
        vec_a.push_back({number(model.vec_a.entries[k].real()),
                         number(model.vec_a.entries[k].imag())});
        vec_b.push_back({number(model.vec_b.entries[k].real()),
                         number(model.vec_b.entries[k].imag())});
      }
      json projector = json::array();
      for (int k = 0; k < 3; ++k)
        if (model.projector.axes[k]) projector.push_back(k);
      fit = json{{"muA", number(r.mu_a)},
                 {"muB", number(r.mu_b)},
                 {"muObserved", number(r.mu_observed)},
                 {"average", number(r.average)},
                 {"delta", number(r.delta)},
                 {"kappa", number(r.kappa)},
                 {"feasible", true},
                 {"fitted", true},
                 {"phase", number(model.phase)},
                 {"projector", projector},
                 {"vecA", vec_a},
                 {"vecB", vec_b},
                 {"muReconstructed", number(r.mu_reconstructed)},
                 {"residuals", json{{"muA", number(r.residual_a)},
                                    {"muB", number(r.residual_b)},
                                    {"muCombined", number(r.residual_combined)}}}};
      ++fitted;
    } catch (const InfeasibleError& e) {
      fit = json{{"muA", number(record.mu_a)},
                 {"muB", number(record.mu_b)},
                 {"muObserved", number(record.mu_combined)},
                 {"average", number(0.5 * (record.mu_a + record.mu_b))},
                 {"delta", number(e.delta())},
                 {"kappa", number(e.kappa())},
                 {"feasible", false},
                 {"fitted", false},
                 {"error", e.what()}};
      ++infeasible;
    }
    if (record.kind == CombinationKind::kConjunction)
      fit["note"] = "superposition rule applied to the conjunction weight";
    entry["fit"] = std::move(fit);
    per_record.push_back(std::move(entry));
  }
  report["perRecord"] = std::move(per_record);
  const std::size_t usable = dataset.records.size() - errors;
  report["summary"] =
      json{{"records", dataset.records.size()},
           {"fitted", fitted},
           {"infeasible", infeasible},
           {"errors", errors},
           {"fitRate", number(usable > 0 ? static_cast<double>(fitted) /
                                               static_cast<double>(usable)
                                         : 0.0)}};
  return report;
}

json diagnose_report(const ingest::Dataset& dataset, std::string_view input_bytes) {
  const diagnostics::BatchDiagnosis batch = diagnostics::batch_diagnose(dataset.records);
  json report = envelope("diagnose", input_bytes);
  json per_record = json::array();
  for (const diagnostics::RecordDiagnosis& d : batch.per_record)
    per_record.push_back(diagnosis_entry_to_json(d));
  report["perRecord"] = std::move(per_record);
  report["summary"] = summary_to_json(batch.summary);
  return report;
}

json chsh_report(const bell::ChshReport& result, std::string_view input_bytes) {
  json report = envelope("chsh", input_bytes);
  json expectations = json::object();
  for (int i = 0; i < 4; ++i)
    expectations[bell::kPairLabels[i]] = number(result.expectations[i]);
  report["expectations"] = expectations;
  report["sValue"] = number(result.s_value);
  report["classification"] = bell::to_string(result.classification);
  report["bestAbsS"] = number(result.best_abs_s);
  report["bestConvention"] =
      std::string("minus on (") + bell::kPairLabels[result.best_minus_pair] + ")";
  report["warnings"] = result.warnings;
  return report;
}

json scop_validate_report(const scop::ScopSystem& system, const scop::ValidationResult& result,
                          std::string_view input_bytes) {
  json report = envelope("scop.validate", input_bytes);
  report["ok"] = result.ok;
  report["states"] = system.states.size();
  report["contexts"] = system.contexts.size();
  report["properties"] = system.properties.size();
  json violations = json::array();
  for (const scop::Violation& v : result.violations)
    violations.push_back({{"message", v.message},
                          {"context", v.context},
                          {"state", v.state},
                          {"property", v.property}});
  report["violations"] = std::move(violations);
  return report;
}

json scop_evolve_report(const scop::ScopSystem& system, const scop::StateDistribution& initial,
                        const scop::StateDistribution& final_dist,
                        const std::vector<std::string>& contexts,
                        std::string_view input_bytes) {
  json report = envelope("scop.evolve", input_bytes);
  report["contexts"] = contexts;
  report["initial"] = distribution_to_json(system, initial);
  report["final"] = distribution_to_json(system, final_dist);
  json properties = json::object();
  for (const std::string& property : system.properties)
    properties[property] = number(scop::property_weight(system, final_dist, property));
  report["propertyWeights"] = properties;
  return report;
}

json scop_simulate_report(const scop::ScopSystem& system,
                          const std::vector<std::vector<std::string>>& trajectories,
                          const std::string& start, const std::vector<std::string>& contexts,
                          std::uint64_t seed, std::string_view input_bytes) {
  json report = envelope("scop.simulate", input_bytes);
  report["start"] = start;
  report["contexts"] = contexts;
  report["seed"] = seed;
  report["runs"] = trajectories.size();
  report["trajectories"] = trajectories;
  std::map<std::string, std::size_t> final_counts;
  for (const std::string& state : system.states) final_counts[state] = 0;
  for (const auto& trajectory : trajectories)
    if (!trajectory.empty()) ++final_counts[trajectory.back()];
  report["finalStateCounts"] = final_counts;
  return report;
}

json scop_poll_report(double p_for, double p_against, double p_undetermined,
                      double collapse_for) {
  char canonical[128];
  std::snprintf(canonical, sizeof canonical, "poll:%.17g,%.17g,%.17g,%.17g", p_for, p_against,
                p_undetermined, collapse_for);
  const scop::PollModel poll = scop::build_poll_system(p_for, p_against, p_undetermined,
                                                       collapse_for);
  const scop::StateDistribution final_dist = scop::evolve(poll.system, poll.initial, "poll");
  json report = envelope("scop.poll", canonical);
  report["collapseFor"] = number(collapse_for);
  report["initial"] = distribution_to_json(poll.system, poll.initial);
  report["finalShares"] = distribution_to_json(poll.system, final_dist);
  report["decidedWeight"] =
      number(scop::property_weight(poll.system, final_dist, "decided"));
  report["system"] = json::parse(scop::serialize_system(poll.system));
  return report;
}

json corpus_index_report(const ingest::CorpusIndex& index, std::string_view input_bytes) {
  json report = envelope("corpus.index", input_bytes);
  report["documentCount"] = index.document_count;
  report["terms"] = index.term_documents.size();
  json frequencies = json::object();
  for (const auto& [term, docs] : index.term_documents) frequencies[term] = docs.size();
  report["termDocumentFrequency"] = frequencies;
  return report;
}

json corpus_guppy_report(const ingest::CorpusIndex& index, const MembershipRecord& record,
                         std::string_view input_bytes) {
  const diagnostics::BatchDiagnosis batch = diagnostics::batch_diagnose({record});
  json report = envelope("corpus.guppy", input_bytes);
  report["query"] = json{{"exemplar", record.exemplar},
                         {"conceptA", record.concept_a},
                         {"conceptB", record.concept_b}};
  report["documentCount"] = index.document_count;
  json per_record = json::array();
  for (const diagnostics::RecordDiagnosis& d : batch.per_record)
    per_record.push_back(diagnosis_entry_to_json(d));
  report["perRecord"] = std::move(per_record);
  report["summary"] = summary_to_json(batch.summary);
  return report;
}

std::string to_csv(const json& report) {
  const std::string kind = report.at("kind").get<std::string>();
  if (kind == "fit" || kind == "diagnose" || kind == "corpus.guppy") return records_csv(report);
  if (kind == "chsh") return chsh_csv(report);
  if (kind == "scop.evolve") return distribution_csv(report.at("final"));
  if (kind == "scop.poll") return distribution_csv(report.at("finalShares"));
  if (kind == "scop.simulate") return simulate_csv(report);
  if (kind == "corpus.index") return index_csv(report);
  if (kind == "scop.validate") return validate_csv(report);
  throw ValidationError("no CSV view for report kind '" + kind + "'");
}

std::string dump(const json& report) { return report.dump(2) + "\n"; }

}  // namespace conceptlab::report
