#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "conceptlab/errors.hpp"

namespace conceptlab::bell {

inline constexpr double kBoundaryTolerance = 1e-9;

// Outcome counts for one measurement-setting pair of a coincidence
// experiment. Settings are spelled "A"/"A'" and "B"/"B'".
struct CoincidenceTable {
  std::string setting_a;
  std::string setting_b;
  std::int64_t n_pp = 0;
  std::int64_t n_pm = 0;
  std::int64_t n_mp = 0;
  std::int64_t n_mm = 0;

  std::int64_t total() const { return n_pp + n_pm + n_mp + n_mm; }
};

// (n_pp + n_mm - n_pm - n_mp) / total, in [-1, 1].
double expectation(const CoincidenceTable& table);

enum class ChshClass { kClassical, kQuantum, kSupraQuantum };

std::string to_string(ChshClass c);

// Setting pairs in the fixed order (A,B), (A,B'), (A',B), (A',B').
inline constexpr std::array<const char*, 4> kPairLabels = {"A,B", "A,B'", "A',B", "A',B'"};

struct ChshReport {
  std::array<double, 4> expectations{};  // keyed by kPairLabels order
  double s_value = 0.0;                  // E(A,B) - E(A,B') + E(A',B) + E(A',B')
  ChshClass classification = ChshClass::kClassical;
  // Max |S| over the four choices of which pair carries the minus sign;
  // removes sensitivity to the sign convention.
  double best_abs_s = 0.0;
  int best_minus_pair = 1;
  std::vector<std::string> warnings;  // small-sample notes (total < 100)
};

// Requires exactly the four setting pairs; throws ValidationError on
// missing, duplicate, or unknown settings.
ChshReport chsh(const std::vector<CoincidenceTable>& tables);

// S of each of the 16 deterministic +-1 assignments to (A, A', B, B').
std::array<int, 16> deterministic_strategy_values();

// Max |S| over those assignments; exactly 2.
int local_strategy_scan();

}  // namespace conceptlab::bell
