#include "conceptlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace conceptlab::diagnostics {

std::string to_string(Classification c) {
  switch (c) {
    case Classification::kClassical: return "classical";
    case Classification::kOverextension: return "overextension";
    case Classification::kUnderextension: return "underextension";
  }
  return "classical";
}

Bounds classical_bounds(double mu_a, double mu_b, CombinationKind kind) {
  auto check = [](double w, const char* name) {
    if (!(w >= 0.0 && w <= 1.0))
      throw ValidationError(std::string(name) + " out of range [0,1]: " + std::to_string(w));
  };
  check(mu_a, "muA");
  check(mu_b, "muB");
  if (kind == CombinationKind::kDisjunction)
    return {std::max(mu_a, mu_b), std::min(1.0, mu_a + mu_b)};
  return {std::max(0.0, mu_a + mu_b - 1.0), std::min(mu_a, mu_b)};
}

ClassicalityVerdict classify(const MembershipRecord& record) {
  validate_weights(record);
  const Bounds bounds = classical_bounds(record.mu_a, record.mu_b, record.kind);
  ClassicalityVerdict verdict;
  verdict.lower_bound = bounds.lower;
  verdict.upper_bound = bounds.upper;
  if (record.mu_combined > bounds.upper + kBoundaryTolerance) {
    verdict.classification = Classification::kOverextension;
    verdict.slack = record.mu_combined - bounds.upper;
  } else if (record.mu_combined < bounds.lower - kBoundaryTolerance) {
    verdict.classification = Classification::kUnderextension;
    verdict.slack = record.mu_combined - bounds.lower;
  }
  return verdict;
}

FeasibilityResult kolmogorov_feasible(const MembershipRecord& record) {
  validate_weights(record);
  const double a = record.mu_a, b = record.mu_b, m = record.mu_combined;
  JointWitness w;
  if (record.kind == CombinationKind::kConjunction) {
    // p(A and B) = m, marginals fix the rest.
    w = {m, a - m, b - m, 1.0 - a - b + m};
  } else {
    // Inclusion-exclusion: p(A and B) = a + b - m.
    w = {a + b - m, m - b, m - a, 1.0 - m};
  }
  const double lowest =
      std::min(std::min(w.p_both, w.p_a_only), std::min(w.p_b_only, w.p_neither));
  if (lowest < -kBoundaryTolerance) return {false, std::nullopt};
  w.p_both = std::max(0.0, w.p_both);
  w.p_a_only = std::max(0.0, w.p_a_only);
  w.p_b_only = std::max(0.0, w.p_b_only);
  w.p_neither = std::max(0.0, w.p_neither);
  return {true, w};
}

BatchDiagnosis batch_diagnose(const std::vector<MembershipRecord>& records) {
  BatchDiagnosis batch;
  batch.per_record.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const MembershipRecord& record = records[i];
    RecordDiagnosis d;
    d.index = i;
    d.record = record;
    if (!weights_valid(record)) {
      d.valid = false;
      try {
        validate_weights(record);
      } catch (const ValidationError& e) {
        d.error = e.what();
      }
      batch.per_record.push_back(std::move(d));
      continue;
    }
    d.verdict = classify(record);
    d.joint = kolmogorov_feasible(record);
    try {
      const core::QuantumConceptModel model =
          core::fit_interference_model(record.mu_a, record.mu_b, record.mu_combined);
      d.interference = core::verify_model(model, record);
      d.fitted = true;
      d.phase = model.phase;
    } catch (const InfeasibleError& e) {
      d.interference.mu_a = record.mu_a;
      d.interference.mu_b = record.mu_b;
      d.interference.mu_observed = record.mu_combined;
      d.interference.average = 0.5 * (record.mu_a + record.mu_b);
      d.interference.delta = e.delta();
      d.interference.kappa = e.kappa();
      d.interference.feasible = false;
    }
    if (record.kind == CombinationKind::kConjunction)
      d.note = "superposition rule applied to the conjunction weight";
    if (d.verdict.classification == Classification::kClassical && !d.fitted)
      d.note += std::string(d.note.empty() ? "" : "; ") +
                "classical record outside the interference band";
    batch.per_record.push_back(std::move(d));
  }

  BatchSummary& s = batch.summary;
  s.records = batch.per_record.size();
  for (const RecordDiagnosis& d : batch.per_record) {
    if (!d.valid) {
      ++s.errors;
      continue;
    }
    switch (d.verdict.classification) {
      case Classification::kClassical: ++s.classical; break;
      case Classification::kOverextension: ++s.overextension; break;
      case Classification::kUnderextension: ++s.underextension; break;
    }
    if (d.fitted) ++s.fitted;
  }
  const std::size_t usable = s.records - s.errors;
  s.fit_rate = usable > 0 ? static_cast<double>(s.fitted) / static_cast<double>(usable) : 0.0;
  return batch;
}

}  // namespace conceptlab::diagnostics
