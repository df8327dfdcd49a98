#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "conceptlab/core_model.hpp"

using namespace conceptlab;
using namespace conceptlab::core;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Random unit vector in C^3.
ComplexVector3 random_unit_vector(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexVector3 v;
  for (auto& e : v.entries) e = Complex{gauss(rng), gauss(rng)};
  const double norm = std::sqrt(v.squared_norm());
  for (auto& e : v.entries) e /= norm;
  return v;
}

// Gram-Schmidt: a second unit vector orthogonal to the first.
ComplexVector3 random_orthogonal_vector(std::mt19937_64& rng, const ComplexVector3& a) {
  while (true) {
    ComplexVector3 v = random_unit_vector(rng);
    const Complex overlap = inner_product(a, v);
    for (int i = 0; i < 3; ++i) v.entries[i] -= overlap * a.entries[i];
    const double norm = std::sqrt(v.squared_norm());
    if (norm < 1e-6) continue;  // nearly parallel draw, retry
    for (auto& e : v.entries) e /= norm;
    return v;
  }
}

ProjectorSpec random_projector(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> mask(0, 7);
  const int bits = mask(rng);
  ProjectorSpec p;
  for (int i = 0; i < 3; ++i) p.axes[i] = (bits >> i) & 1;
  return p;
}

// A valid model from a random orthonormal pair; the phase is read off the
// cross term so the model invariant holds by construction.
QuantumConceptModel random_model(std::mt19937_64& rng) {
  QuantumConceptModel model;
  model.vec_a = random_unit_vector(rng);
  model.vec_b = random_orthogonal_vector(rng, model.vec_a);
  model.projector = random_projector(rng);
  const Complex cross = cross_term(model);
  model.phase = std::abs(cross) > 0.0
                    ? std::acos(std::clamp(cross.real() / std::abs(cross), -1.0, 1.0))
                    : kPi / 2.0;
  return model;
}

}  // namespace

TEST_CASE("membership probability on coordinate projectors") {
  CHECK(membership_probability(ComplexVector3::real(1, 0, 0), ProjectorSpec::on({0, 1})) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(membership_probability(ComplexVector3::real(0, 0, 1), ProjectorSpec::on({0, 1})) ==
        doctest::Approx(0.0).epsilon(1e-12));
  const double r = std::sqrt(0.5);
  CHECK(membership_probability(ComplexVector3::real(r, 0, r), ProjectorSpec::on({0, 1})) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("membership probability rejects non-normalized vectors") {
  CHECK_THROWS_AS(membership_probability(ComplexVector3::real(1, 1, 0), ProjectorSpec::on({0})),
                  ValidationError);
}

TEST_CASE("projector complement splits the norm") {
  std::mt19937_64 rng(7001);
  for (int i = 0; i < 2000; ++i) {
    const ComplexVector3 v = random_unit_vector(rng);
    const ProjectorSpec m = random_projector(rng);
    const double p = membership_probability(v, m);
    const double q = membership_probability(v, m.complement());
    CHECK(std::abs(p + q - 1.0) <= kAlgebraTolerance);
  }
}

TEST_CASE("interference deviation arithmetic") {
  CHECK(interference_deviation(0.5, 0.5, 0.5) == 0.0);
  CHECK(interference_deviation(0.5, 0.5, 1.0) == 0.5);
  CHECK(interference_deviation(0.9, 0.9, 0.4) == -0.5);
  CHECK_THROWS_AS(interference_deviation(1.2, 0.5, 0.5), ValidationError);
}

TEST_CASE("interference bound values") {
  CHECK(interference_bound(0.5, 0.5) == 0.5);
  CHECK(interference_bound(1.0, 0.3) == 0.0);
  CHECK(interference_bound(0.9, 0.9) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK_THROWS_AS(interference_bound(-0.1, 0.5), ValidationError);
}

TEST_CASE("random model search never beats the interference bound") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 20000; ++i) {
    const QuantumConceptModel model = random_model(rng);
    const double mu_a = membership_probability(model.vec_a, model.projector);
    const double mu_b = membership_probability(model.vec_b, model.projector);
    const double cross_re = std::abs(cross_term(model).real());
    CHECK(cross_re <= interference_bound(mu_a, mu_b) + kFitTolerance);
  }
}

TEST_CASE("disjunction probability equals average plus interference term") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 5000; ++i) {
    const QuantumConceptModel model = random_model(rng);
    const double direct = disjunction_probability(model);
    const double mu_a = membership_probability(model.vec_a, model.projector);
    const double mu_b = membership_probability(model.vec_b, model.projector);
    const double decomposed = 0.5 * (mu_a + mu_b) + cross_term(model).real();
    CHECK(std::abs(direct - decomposed) <= kAlgebraTolerance);
  }
}

TEST_CASE("disjunction of a zero-interference model returns the average") {
  const double r = std::sqrt(0.5);
  // <A|M|B> = 0: both vectors split evenly across the projector boundary.
  QuantumConceptModel model;
  model.vec_a = ComplexVector3::real(r, 0, r);
  model.vec_b = ComplexVector3{{Complex{0, r}, Complex{0, 0}, Complex{0, -r}}};
  model.projector = ProjectorSpec::on({0, 1});
  model.phase = kPi / 2.0;
  CHECK(std::abs(cross_term(model).real()) <= kAlgebraTolerance);
  CHECK(disjunction_probability(model) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("disjunction probability rejects non-orthogonal vectors") {
  QuantumConceptModel model;
  model.vec_a = ComplexVector3::real(1, 0, 0);
  model.vec_b = ComplexVector3::real(1, 0, 0);
  model.projector = ProjectorSpec::on({0});
  CHECK_THROWS_AS(disjunction_probability(model), ValidationError);
}

TEST_CASE("fit reproduces the canonical cases") {
  SUBCASE("zero interference pins the phase at pi/2") {
    const QuantumConceptModel model = fit_interference_model(0.5, 0.5, 0.5);
    CHECK(model.phase == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(disjunction_probability(model) == doctest::Approx(0.5).epsilon(1e-9));
  }
  SUBCASE("maximal constructive interference") {
    const QuantumConceptModel model = fit_interference_model(0.5, 0.5, 1.0);
    CHECK(model.phase == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(disjunction_probability(model) == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("round-trip through the complemented construction") {
    const QuantumConceptModel model = fit_interference_model(0.3, 0.3, 0.3);
    CHECK(disjunction_probability(model) == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(membership_probability(model.vec_a, model.projector) ==
          doctest::Approx(0.3).epsilon(1e-9));
  }
  SUBCASE("deviation beyond the bound is infeasible") {
    try {
      fit_interference_model(0.9, 0.9, 0.4);
      FAIL("expected InfeasibleError");
    } catch (const InfeasibleError& e) {
      CHECK(e.delta() == doctest::Approx(-0.5).epsilon(1e-12));
      CHECK(e.kappa() == doctest::Approx(0.1).epsilon(1e-12));
    }
  }
}

TEST_CASE("fit handles endpoint marginals") {
  for (const auto& [a, b] : {std::pair{0.0, 0.4}, {1.0, 0.4}, {0.4, 0.0}, {0.4, 1.0},
                             {0.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}) {
    const double m = 0.5 * (a + b);
    const QuantumConceptModel model = fit_interference_model(a, b, m);
    CHECK(membership_probability(model.vec_a, model.projector) ==
          doctest::Approx(a).epsilon(1e-12));
    CHECK(membership_probability(model.vec_b, model.projector) ==
          doctest::Approx(b).epsilon(1e-12));
    CHECK(disjunction_probability(model) == doctest::Approx(m).epsilon(1e-12));
    CHECK_THROWS_AS(fit_interference_model(a, b, std::clamp(m + 0.01, 0.0, 1.0) == m
                                                     ? m - 0.01
                                                     : std::clamp(m + 0.01, 0.0, 1.0)),
                    InfeasibleError);
  }
}

TEST_CASE("fit survives marginals within rounding distance of an endpoint") {
  // 1 - a rounds to 1.0 for these, which collapses the complemented branch.
  for (const auto& [a, b] : {std::pair{1e-300, 0.5}, {1e-17, 0.5}, {0.5, 1e-300},
                             {1e-300, 1e-300}, {2e-17, 0.7}}) {
    const double m = 0.5 * (a + b);
    const QuantumConceptModel model = fit_interference_model(a, b, m);
    MembershipRecord record{"x", "A", "B", CombinationKind::kDisjunction, a, b, m};
    const InterferenceReport report = verify_model(model, record);
    CHECK(report.max_residual() < kFitTolerance);
  }
}

TEST_CASE("fit round-trip over the feasible band") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double a = unit(rng);
    const double b = unit(rng);
    const double kappa = interference_bound(a, b);
    const double m = 0.5 * (a + b) + (2.0 * unit(rng) - 1.0) * kappa;
    const QuantumConceptModel model = fit_interference_model(a, b, m);
    MembershipRecord record{"x", "A", "B", CombinationKind::kDisjunction, a, b, m};
    const InterferenceReport report = verify_model(model, record);
    CHECK(report.max_residual() < kFitTolerance);
    CHECK(report.feasible);
  }
}

TEST_CASE("bound is sharp: the band edges fit, just beyond fails") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const double a = unit(rng);
    const double b = unit(rng);
    const double avg = 0.5 * (a + b);
    const double kappa = interference_bound(a, b);
    for (const double sign : {1.0, -1.0}) {
      const double edge = avg + sign * kappa;
      const QuantumConceptModel model = fit_interference_model(a, b, edge);
      MembershipRecord record{"x", "A", "B", CombinationKind::kDisjunction, a, b, edge};
      CHECK(verify_model(model, record).max_residual() < kFitTolerance);
      const double beyond = avg + sign * (kappa + 1e-6);
      if (beyond >= 0.0 && beyond <= 1.0)
        CHECK_THROWS_AS(fit_interference_model(a, b, beyond), InfeasibleError);
    }
  }
}

TEST_CASE("verify_model reports residuals against mismatched records") {
  const QuantumConceptModel model = fit_interference_model(0.5, 0.5, 1.0);
  SUBCASE("matching record round-trips") {
    MembershipRecord record{"x", "A", "B", CombinationKind::kDisjunction, 0.5, 0.5, 1.0};
    const InterferenceReport report = verify_model(model, record);
    CHECK(report.max_residual() < kFitTolerance);
    CHECK(report.mu_reconstructed == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("mismatched observation shows up as a residual") {
    MembershipRecord record{"x", "A", "B", CombinationKind::kDisjunction, 0.5, 0.5, 0.7};
    const InterferenceReport report = verify_model(model, record);
    CHECK(report.mu_reconstructed == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(report.residual_combined == doctest::Approx(0.3).epsilon(1e-9));
  }
  SUBCASE("zero-interference model on the average record has delta zero") {
    const QuantumConceptModel flat = fit_interference_model(0.5, 0.5, 0.5);
    MembershipRecord record{"x", "A", "B", CombinationKind::kDisjunction, 0.5, 0.5, 0.5};
    const InterferenceReport report = verify_model(flat, record);
    CHECK(report.delta == 0.0);
  }
}

TEST_CASE("model validation rejects inconsistent phases") {
  QuantumConceptModel model = fit_interference_model(0.4, 0.6, 0.7);
  model.phase = 3.0;  // contradicts the cross term
  CHECK_THROWS_AS(validate_model(model), ValidationError);
}
