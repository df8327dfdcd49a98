#include "conceptlab/bell.hpp"

#include <algorithm>
#include <cmath>

namespace conceptlab::bell {

namespace {

const double kTsirelson = 2.0 * std::sqrt(2.0);

// 0 for the plain setting, 1 for the primed one.
int setting_slot(const std::string& name, char side) {
  const std::string plain(1, side);
  if (name == plain) return 0;
  if (name == plain + "'") return 1;
  throw ValidationError("unknown setting '" + name + "' (expected " + plain + " or " + plain +
                        "')");
}

}  // namespace

double expectation(const CoincidenceTable& table) {
  if (table.n_pp < 0 || table.n_pm < 0 || table.n_mp < 0 || table.n_mm < 0)
    throw ValidationError("negative coincidence count");
  const std::int64_t total = table.total();
  if (total <= 0) throw ValidationError("coincidence table has zero total count");
  return static_cast<double>(table.n_pp + table.n_mm - table.n_pm - table.n_mp) /
         static_cast<double>(total);
}

std::string to_string(ChshClass c) {
  switch (c) {
    case ChshClass::kClassical: return "classical";
    case ChshClass::kQuantum: return "quantum";
    case ChshClass::kSupraQuantum: return "supra-quantum";
  }
  return "classical";
}

ChshReport chsh(const std::vector<CoincidenceTable>& tables) {
  std::array<const CoincidenceTable*, 4> slots{};
  for (const CoincidenceTable& table : tables) {
    const int a = setting_slot(table.setting_a, 'A');
    const int b = setting_slot(table.setting_b, 'B');
    const int slot = a * 2 + b;
    if (slots[slot])
      throw ValidationError(std::string("duplicate setting pair (") + kPairLabels[slot] + ")");
    slots[slot] = &table;
  }
  for (int i = 0; i < 4; ++i)
    if (!slots[i])
      throw ValidationError(std::string("missing setting pair (") + kPairLabels[i] + ")");

  ChshReport report;
  for (int i = 0; i < 4; ++i) {
    report.expectations[i] = expectation(*slots[i]);
    if (slots[i]->total() < 100)
      report.warnings.push_back(std::string("small sample: (") + kPairLabels[i] +
                                ") total = " + std::to_string(slots[i]->total()));
  }
  const auto& e = report.expectations;
  report.s_value = e[0] - e[1] + e[2] + e[3];

  const double abs_s = std::abs(report.s_value);
  if (abs_s <= 2.0 + kBoundaryTolerance)
    report.classification = ChshClass::kClassical;
  else if (abs_s <= kTsirelson + kBoundaryTolerance)
    report.classification = ChshClass::kQuantum;
  else
    report.classification = ChshClass::kSupraQuantum;

  report.best_abs_s = 0.0;
  for (int minus = 0; minus < 4; ++minus) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s += (i == minus ? -e[i] : e[i]);
    if (std::abs(s) > report.best_abs_s) {
      report.best_abs_s = std::abs(s);
      report.best_minus_pair = minus;
    }
  }
  return report;
}

std::array<int, 16> deterministic_strategy_values() {
  std::array<int, 16> values{};
  int idx = 0;
  for (int a : {1, -1})
    for (int ap : {1, -1})
      for (int b : {1, -1})
        for (int bp : {1, -1}) values[idx++] = a * b - a * bp + ap * b + ap * bp;
  return values;
}

int local_strategy_scan() {
  int best = 0;
  for (int s : deterministic_strategy_values()) best = std::max(best, std::abs(s));
  return best;
}

}  // namespace conceptlab::bell
