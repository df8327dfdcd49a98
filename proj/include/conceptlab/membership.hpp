#pragma once

#include <string>

#include "conceptlab/errors.hpp"

namespace conceptlab {

enum class CombinationKind { kConjunction, kDisjunction };

std::string to_string(CombinationKind kind);

// Accepts "conjunction" / "disjunction"; anything else throws ValidationError.
CombinationKind combination_kind_from_string(const std::string& text);

// One exemplar's membership weights for two concepts and their combination.
struct MembershipRecord {
  std::string exemplar;
  std::string concept_a;
  std::string concept_b;
  CombinationKind kind = CombinationKind::kDisjunction;
  double mu_a = 0.0;
  double mu_b = 0.0;
  double mu_combined = 0.0;
};

bool weights_valid(const MembershipRecord& record);

// Throws ValidationError naming the offending weight.
void validate_weights(const MembershipRecord& record);

}  // namespace conceptlab
