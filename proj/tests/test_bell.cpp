#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "conceptlab/bell.hpp"
#include "conceptlab/ingest.hpp"

using namespace conceptlab;
using namespace conceptlab::bell;

namespace {

CoincidenceTable table(const char* a, const char* b, std::int64_t pp, std::int64_t pm,
                       std::int64_t mp, std::int64_t mm) {
  return {a, b, pp, pm, mp, mm};
}

// Integer counts whose expectation approximates e to ~2/half while both
// outcome classes stay symmetric. round_up picks the side the rational
// approximation lands on, so a CHSH sum can approach its target from below.
CoincidenceTable counts_for(const char* a, const char* b, double e, std::int64_t half,
                            bool round_up = false) {
  const double exact = half * (1.0 + e) / 2.0;
  const auto agree =
      static_cast<std::int64_t>(round_up ? std::ceil(exact) : std::floor(exact));
  const std::int64_t disagree = half - agree;
  return {a, b, agree, disagree, disagree, agree};
}

std::vector<CoincidenceTable> perfect_correlations() {
  return {table("A", "B", 50, 0, 0, 50), table("A", "B'", 50, 0, 0, 50),
          table("A'", "B", 50, 0, 0, 50), table("A'", "B'", 50, 0, 0, 50)};
}

}  // namespace

TEST_CASE("expectation handles the basic count patterns") {
  CHECK(expectation(table("A", "B", 50, 0, 0, 50)) == 1.0);
  CHECK(expectation(table("A", "B", 0, 50, 50, 0)) == -1.0);
  CHECK(expectation(table("A", "B", 40, 10, 10, 40)) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("expectation rejects empty tables") {
  CHECK_THROWS_AS(expectation(table("A", "B", 0, 0, 0, 0)), ValidationError);
}

TEST_CASE("expectation stays within [-1, 1]") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> count(0, 1000);
  for (int i = 0; i < 2000; ++i) {
    CoincidenceTable t = table("A", "B", count(rng), count(rng), count(rng), count(rng));
    if (t.total() == 0) continue;
    CHECK(std::abs(expectation(t)) <= 1.0);
  }
}

TEST_CASE("all-correlated settings sit on the classical boundary") {
  const ChshReport report = chsh(perfect_correlations());
  CHECK(report.s_value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(report.classification == ChshClass::kClassical);
}

TEST_CASE("the extremal box reaches S = 4") {
  const ChshReport report = chsh({table("A", "B", 50, 0, 0, 50),
                                  table("A", "B'", 0, 50, 50, 0),
                                  table("A'", "B", 50, 0, 0, 50),
                                  table("A'", "B'", 50, 0, 0, 50)});
  CHECK(report.s_value == 4.0);
  CHECK(report.classification == ChshClass::kSupraQuantum);
  CHECK(report.best_abs_s == 4.0);
}

TEST_CASE("singlet-derived counts land on the Tsirelson bound") {
  // E(theta_a - theta_b) = -cos(angle) at 0, pi/2, pi/4, -pi/4 gives
  // +-1/sqrt(2) after relabeling one outcome; counts approximate that.
  // Plus-sign pairs round down, the minus pair rounds up, so S approaches
  // 2*sqrt(2) from below and stays inside the quantum region.
  const double e = 1.0 / std::sqrt(2.0);
  const std::int64_t half = 20'000'000;
  const ChshReport report = chsh({counts_for("A", "B", e, half),
                                  counts_for("A", "B'", -e, half, true),
                                  counts_for("A'", "B", e, half),
                                  counts_for("A'", "B'", e, half)});
  CHECK(std::abs(report.s_value - 2.0 * std::sqrt(2.0)) < 1e-6);
  CHECK(report.s_value <= 2.0 * std::sqrt(2.0));
  CHECK(report.classification == ChshClass::kQuantum);
}

TEST_CASE("chsh validates the setting-pair layout") {
  auto tables = perfect_correlations();
  SUBCASE("missing pair") {
    tables.pop_back();
    CHECK_THROWS_AS(chsh(tables), ValidationError);
  }
  SUBCASE("duplicate pair") {
    tables[1] = table("A", "B", 1, 2, 3, 4);
    CHECK_THROWS_AS(chsh(tables), ValidationError);
  }
  SUBCASE("unknown setting name") {
    tables[0].setting_a = "C";
    CHECK_THROWS_AS(chsh(tables), ValidationError);
  }
}

TEST_CASE("small samples are flagged") {
  auto tables = perfect_correlations();
  tables[2] = table("A'", "B", 3, 0, 0, 4);
  const ChshReport report = chsh(tables);
  REQUIRE(report.warnings.size() == 1);
  CHECK(report.warnings[0].find("A',B") != std::string::npos);
}

TEST_CASE("local strategies cap |S| at exactly 2") {
  CHECK(local_strategy_scan() == 2);
  for (int s : deterministic_strategy_values()) CHECK((std::abs(s) == 0 || std::abs(s) == 2));
}

TEST_CASE("mixtures of local strategies stay classical") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto strategy_s = deterministic_strategy_values();
  for (int trial = 0; trial < 2000; ++trial) {
    std::array<double, 16> weights{};
    double sum = 0.0;
    for (double& w : weights) {
      w = unit(rng);
      sum += w;
    }
    double s = 0.0;
    for (int k = 0; k < 16; ++k) s += (weights[k] / sum) * strategy_s[k];
    CHECK(std::abs(s) <= 2.0 + 1e-12);
  }
  // An even mixture of an S=2 and an S=-2 strategy cancels.
  int plus = -1, minus = -1;
  for (int k = 0; k < 16; ++k) {
    if (strategy_s[k] == 2) plus = k;
    if (strategy_s[k] == -2) minus = k;
  }
  REQUIRE(plus >= 0);
  REQUIRE(minus >= 0);
  CHECK(0.5 * strategy_s[plus] + 0.5 * strategy_s[minus] == 0.0);
}

TEST_CASE("the best-over-conventions figure is relabeling invariant") {
  std::mt19937_64 rng(78);
  std::uniform_int_distribution<std::int64_t> count(1, 500);
  for (int trial = 0; trial < 200; ++trial) {
    auto draw = [&](const char* a, const char* b) {
      return table(a, b, count(rng), count(rng), count(rng), count(rng));
    };
    std::vector<CoincidenceTable> tables{draw("A", "B"), draw("A", "B'"), draw("A'", "B"),
                                         draw("A'", "B'")};
    const ChshReport base = chsh(tables);
    // Swapping B and B' relabels which pair carries the minus; the best
    // figure must not move.
    std::vector<CoincidenceTable> swapped = tables;
    swapped[0].setting_b = "B'";
    swapped[1].setting_b = "B";
    swapped[2].setting_b = "B'";
    swapped[3].setting_b = "B";
    const ChshReport relabeled = chsh(swapped);
    CHECK(base.best_abs_s == doctest::Approx(relabeled.best_abs_s).epsilon(1e-12));
    CHECK(std::abs(base.s_value) <= base.best_abs_s + 1e-12);
  }
}

TEST_CASE("coincidence CSV parses into tables") {
  const std::string text =
      "settingA,settingB,npp,npm,nmp,nmm\n"
      "A,B,50,0,0,50\n"
      "A,B',0,50,50,0\n"
      "A',B,50,0,0,50\n"
      "A',B',50,0,0,50\n";
  const auto tables = ingest::parse_coincidence_csv(text);
  REQUIRE(tables.size() == 4);
  CHECK(tables[1].setting_b == "B'");
  CHECK(tables[1].n_pm == 50);
  const ChshReport report = chsh(tables);
  CHECK(report.s_value == 4.0);
}

TEST_CASE("coincidence CSV errors name the row") {
  const std::string bad =
      "settingA,settingB,npp,npm,nmp,nmm\n"
      "A,B,50,0,0,50\n"
      "A,B',x,50,50,0\n";
  try {
    ingest::parse_coincidence_csv(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    CHECK(e.row() == 3);
  }
  CHECK_THROWS_AS(ingest::parse_coincidence_csv("settingA,settingB,npp\nA,B,5\n"), ParseError);
}
