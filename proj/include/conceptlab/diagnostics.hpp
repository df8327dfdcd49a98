#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "conceptlab/core_model.hpp"
#include "conceptlab/membership.hpp"

namespace conceptlab::diagnostics {

// Boundary values count as classical; data sitting exactly on a bound
// carries no evidence of deviation.
inline constexpr double kBoundaryTolerance = 1e-12;

enum class Classification { kClassical, kOverextension, kUnderextension };

std::string to_string(Classification c);

struct Bounds {
  double lower = 0.0;
  double upper = 1.0;
};

struct ClassicalityVerdict {
  Classification classification = Classification::kClassical;
  double lower_bound = 0.0;
  double upper_bound = 1.0;
  // Signed distance outside [lower, upper]: positive above, negative below,
  // zero inside. Probability units, directly plottable.
  double slack = 0.0;
};

// Atom probabilities of the four-cell joint space (in A and B, A only,
// B only, neither). The three constraints plus normalization pin these
// uniquely whenever a solution exists.
struct JointWitness {
  double p_both = 0.0;
  double p_a_only = 0.0;
  double p_b_only = 0.0;
  double p_neither = 0.0;
};

struct FeasibilityResult {
  bool feasible = false;
  std::optional<JointWitness> witness;
};

// Range of combination weights a single classical event space allows:
// disjunction -> (max(a,b), min(1, a+b)); conjunction -> (max(0, a+b-1), min(a,b)).
Bounds classical_bounds(double mu_a, double mu_b, CombinationKind kind);

ClassicalityVerdict classify(const MembershipRecord& record);

// True iff a distribution over the four atoms matches both marginals and
// the combination weight. Solves the linear system directly; the grid
// enumeration oracle in the tests cross-checks it.
FeasibilityResult kolmogorov_feasible(const MembershipRecord& record);

struct RecordDiagnosis {
  std::size_t index = 0;
  MembershipRecord record;
  bool valid = true;
  std::string error;  // set when the record's weights are out of range
  ClassicalityVerdict verdict;
  FeasibilityResult joint;
  bool fitted = false;
  double phase = 0.0;  // model phase when fitted
  core::InterferenceReport interference;
  std::string note;
};

struct BatchSummary {
  std::size_t records = 0;
  std::size_t classical = 0;
  std::size_t overextension = 0;
  std::size_t underextension = 0;
  std::size_t errors = 0;
  std::size_t fitted = 0;
  double fit_rate = 0.0;  // fitted / (records - errors), 0 when empty
};

struct BatchDiagnosis {
  std::vector<RecordDiagnosis> per_record;  // input order preserved
  BatchSummary summary;
};

// Verdict + interference fit + joint feasibility per record; records with
// invalid weights are flagged and skipped, never abort the batch.
BatchDiagnosis batch_diagnose(const std::vector<MembershipRecord>& records);

}  // namespace conceptlab::diagnostics
