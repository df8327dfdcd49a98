#pragma once

#include <array>
#include <complex>
#include <initializer_list>

#include "conceptlab/membership.hpp"

namespace conceptlab::core {

using Complex = std::complex<double>;

// Feasibility slack and round-trip residual tolerance.
inline constexpr double kFitTolerance = 1e-9;
// Algebraic identities (complement sum, interference decomposition).
inline constexpr double kAlgebraTolerance = 1e-12;

// Unit vector in C^3. Three dimensions are the smallest space where two
// orthogonal concept vectors and a tunable cross term coexist.
struct ComplexVector3 {
  std::array<Complex, 3> entries{};

  static ComplexVector3 real(double x, double y, double z) {
    return ComplexVector3{{Complex{x, 0.0}, Complex{y, 0.0}, Complex{z, 0.0}}};
  }

  double squared_norm() const;
  bool normalized(double tol = kFitTolerance) const;
};

// <a|b>, conjugate-linear in the first argument.
Complex inner_product(const ComplexVector3& a, const ComplexVector3& b);

// Orthogonal projector onto a canonical coordinate subspace of C^3.
// Coordinate projectors satisfy M = M^2 = M^dagger exactly in floating point.
struct ProjectorSpec {
  std::array<bool, 3> axes{};

  static ProjectorSpec on(std::initializer_list<int> indices);
  ProjectorSpec complement() const;
  int dimension() const;
};

// Two orthonormal concept vectors, the membership projector, and the free
// phase theta in [0, pi] satisfying Re<A|M|B> = |<A|M|B>| cos(theta).
struct QuantumConceptModel {
  ComplexVector3 vec_a;
  ComplexVector3 vec_b;
  ProjectorSpec projector;
  double phase = 0.0;
};

struct InterferenceReport {
  double mu_a = 0.0;
  double mu_b = 0.0;
  double mu_observed = 0.0;
  double average = 0.0;   // (mu_a + mu_b) / 2
  double delta = 0.0;     // mu_observed - average
  double kappa = 0.0;     // interference bound for (mu_a, mu_b)
  bool feasible = false;  // |delta| <= kappa + kFitTolerance
  bool has_reconstruction = false;
  double mu_reconstructed = 0.0;
  double residual_a = 0.0;
  double residual_b = 0.0;
  double residual_combined = 0.0;

  double max_residual() const;
};

// <vec|M|vec> = sum of squared moduli at the projector coordinates.
double membership_probability(const ComplexVector3& vec, const ProjectorSpec& projector);

// <A|M|B> for a validated model.
Complex cross_term(const QuantumConceptModel& model);

// Throws ValidationError when the vectors are not unit, not orthogonal,
// or the phase is inconsistent with the cross term.
void validate_model(const QuantumConceptModel& model);

// Probability assigned to the equal-weight superposition state; equals
// (mu_a + mu_b)/2 + Re<A|M|B> up to kAlgebraTolerance.
double disjunction_probability(const QuantumConceptModel& model);

// mu_observed - (mu_a + mu_b)/2.
double interference_deviation(double mu_a, double mu_b, double mu_observed);

// Largest attainable |<A|M|B>| over all valid models with these marginals:
// min(sqrt(a b), sqrt((1-a)(1-b))), Cauchy-Schwarz applied to M and 1-M.
double interference_bound(double mu_a, double mu_b);

// Constructs a model reproducing (mu_a, mu_b, mu_observed) within
// kFitTolerance. Throws InfeasibleError when |delta| exceeds the bound.
QuantumConceptModel fit_interference_model(double mu_a, double mu_b, double mu_observed);

// Recomputes the three probabilities from the model and reports residuals
// against the record's observed weights.
InterferenceReport verify_model(const QuantumConceptModel& model,
                                const MembershipRecord& record);

}  // namespace conceptlab::core
