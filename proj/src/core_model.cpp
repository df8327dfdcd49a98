#include "conceptlab/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace conceptlab {

std::string to_string(CombinationKind kind) {
  return kind == CombinationKind::kConjunction ? "conjunction" : "disjunction";
}

CombinationKind combination_kind_from_string(const std::string& text) {
  if (text == "conjunction") return CombinationKind::kConjunction;
  if (text == "disjunction") return CombinationKind::kDisjunction;
  throw ValidationError("unknown combination kind: '" + text + "'");
}

bool weights_valid(const MembershipRecord& record) {
  auto ok = [](double w) { return w >= 0.0 && w <= 1.0; };
  return ok(record.mu_a) && ok(record.mu_b) && ok(record.mu_combined);
}

void validate_weights(const MembershipRecord& record) {
  auto check = [](double w, const char* name) {
    if (!(w >= 0.0 && w <= 1.0))
      throw ValidationError(std::string(name) + " out of range [0,1]: " + std::to_string(w));
  };
  check(record.mu_a, "muA");
  check(record.mu_b, "muB");
  check(record.mu_combined, "muCombined");
}

}  // namespace conceptlab

namespace conceptlab::core {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = kPi / 2.0;

void require_probability(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0))
    throw ValidationError(std::string(name) + " out of range [0,1]: " + std::to_string(value));
}

}  // namespace

double ComplexVector3::squared_norm() const {
  double s = 0.0;
  for (const auto& e : entries) s += std::norm(e);
  return s;
}

bool ComplexVector3::normalized(double tol) const {
  return std::abs(squared_norm() - 1.0) <= tol;
}

Complex inner_product(const ComplexVector3& a, const ComplexVector3& b) {
  Complex s{0.0, 0.0};
  for (int i = 0; i < 3; ++i) s += std::conj(a.entries[i]) * b.entries[i];
  return s;
}

ProjectorSpec ProjectorSpec::on(std::initializer_list<int> indices) {
  ProjectorSpec p;
  for (int i : indices) {
    if (i < 0 || i > 2) throw ValidationError("projector index out of range: " + std::to_string(i));
    p.axes[static_cast<std::size_t>(i)] = true;
  }
  return p;
}

ProjectorSpec ProjectorSpec::complement() const {
  ProjectorSpec p;
  for (int i = 0; i < 3; ++i) p.axes[i] = !axes[i];
  return p;
}

int ProjectorSpec::dimension() const {
  int d = 0;
  for (bool a : axes) d += a ? 1 : 0;
  return d;
}

double InterferenceReport::max_residual() const {
  return std::max(residual_a, std::max(residual_b, residual_combined));
}

double membership_probability(const ComplexVector3& vec, const ProjectorSpec& projector) {
  if (!vec.normalized())
    throw ValidationError("vector is not normalized: |v|^2 = " +
                          std::to_string(vec.squared_norm()));
  double p = 0.0;
  for (int i = 0; i < 3; ++i)
    if (projector.axes[i]) p += std::norm(vec.entries[i]);
  return std::clamp(p, 0.0, 1.0);
}

Complex cross_term(const QuantumConceptModel& model) {
  Complex s{0.0, 0.0};
  for (int i = 0; i < 3; ++i)
    if (model.projector.axes[i])
      s += std::conj(model.vec_a.entries[i]) * model.vec_b.entries[i];
  return s;
}

void validate_model(const QuantumConceptModel& model) {
  if (!model.vec_a.normalized()) throw ValidationError("vecA is not normalized");
  if (!model.vec_b.normalized()) throw ValidationError("vecB is not normalized");
  const double overlap = std::abs(inner_product(model.vec_a, model.vec_b));
  if (overlap > kFitTolerance)
    throw ValidationError("vectors are not orthogonal: |<A|B>| = " + std::to_string(overlap));
  if (!(model.phase >= 0.0 && model.phase <= kPi))
    throw ValidationError("phase out of range [0,pi]: " + std::to_string(model.phase));
  const Complex cross = cross_term(model);
  const double magnitude = std::abs(cross);
  if (magnitude > kFitTolerance &&
      std::abs(cross.real() - magnitude * std::cos(model.phase)) > kFitTolerance)
    throw ValidationError("phase is inconsistent with the cross term");
}

double disjunction_probability(const QuantumConceptModel& model) {
  validate_model(model);
  // (1/2)(<A|+<B|) M (|A>+|B>) = (1/2) |M(A+B)|^2 for a projector M.
  double p = 0.0;
  for (int i = 0; i < 3; ++i)
    if (model.projector.axes[i])
      p += std::norm(model.vec_a.entries[i] + model.vec_b.entries[i]);
  return std::clamp(0.5 * p, 0.0, 1.0);
}

double interference_deviation(double mu_a, double mu_b, double mu_observed) {
  require_probability(mu_a, "muA");
  require_probability(mu_b, "muB");
  require_probability(mu_observed, "muObserved");
  return mu_observed - 0.5 * (mu_a + mu_b);
}

double interference_bound(double mu_a, double mu_b) {
  require_probability(mu_a, "muA");
  require_probability(mu_b, "muB");
  return std::min(std::sqrt(mu_a * mu_b), std::sqrt((1.0 - mu_a) * (1.0 - mu_b)));
}

namespace {

// Vectors for the case (1-a)(1-b) <= a*b on the projector {0,1}; the cross
// term comes out as e^{i theta} sqrt((1-a)(1-b)). Requires a, b in (0, 1).
std::pair<ComplexVector3, ComplexVector3> build_vector_pair(double a, double b, double theta) {
  const double t = (1.0 - a) * (1.0 - b) / a;
  const Complex u = std::polar(1.0, theta);
  ComplexVector3 vec_a = ComplexVector3::real(std::sqrt(a), 0.0, std::sqrt(1.0 - a));
  ComplexVector3 vec_b{{u * std::sqrt(t),
                        Complex{std::sqrt(std::max(0.0, b - t)), 0.0},
                        -u * std::sqrt(std::max(0.0, a * t / (1.0 - a)))}};
  return {vec_a, vec_b};
}

// Used when a marginal sits at (or within rounding distance of) an
// endpoint: the nearest endpoint decides which vector lies entirely inside
// or outside the subspace, which forces a zero cross term.
QuantumConceptModel degenerate_model(double a, double b) {
  const double ra = std::sqrt(a), ca = std::sqrt(1.0 - a);
  const double rb = std::sqrt(b), cb = std::sqrt(1.0 - b);
  const double gaps[4] = {a, 1.0 - a, b, 1.0 - b};
  int nearest = 0;
  for (int i = 1; i < 4; ++i)
    if (gaps[i] < gaps[nearest]) nearest = i;
  switch (nearest) {
    case 0:  // a at 0
      return {ComplexVector3::real(0, 0, 1), ComplexVector3::real(rb, cb, 0),
              ProjectorSpec::on({0}), kHalfPi};
    case 1:  // a at 1
      return {ComplexVector3::real(1, 0, 0), ComplexVector3::real(0, rb, cb),
              ProjectorSpec::on({0, 1}), kHalfPi};
    case 2:  // b at 0
      return {ComplexVector3::real(ra, ca, 0), ComplexVector3::real(0, 0, 1),
              ProjectorSpec::on({0}), kHalfPi};
    default:  // b at 1
      return {ComplexVector3::real(0, ra, ca), ComplexVector3::real(1, 0, 0),
              ProjectorSpec::on({0, 1}), kHalfPi};
  }
}

}  // namespace

QuantumConceptModel fit_interference_model(double mu_a, double mu_b, double mu_observed) {
  require_probability(mu_a, "muA");
  require_probability(mu_b, "muB");
  require_probability(mu_observed, "muObserved");
  const double delta = interference_deviation(mu_a, mu_b, mu_observed);
  const double kappa = interference_bound(mu_a, mu_b);
  if (std::abs(delta) > kappa + kFitTolerance) throw InfeasibleError(delta, kappa);
  if (kappa == 0.0) return degenerate_model(mu_a, mu_b);

  const double theta = std::acos(std::clamp(delta / kappa, -1.0, 1.0));
  QuantumConceptModel model;
  if ((1.0 - mu_a) * (1.0 - mu_b) <= mu_a * mu_b) {
    auto [va, vb] = build_vector_pair(mu_a, mu_b, theta);
    model = {va, vb, ProjectorSpec::on({0, 1}), theta};
  } else {
    // Complemented data; the complement projector flips the cross term's
    // sign, so the internal phase is pi - theta.
    const double aa = 1.0 - mu_a;
    if (aa == 0.0 || aa == 1.0) {
      // A marginal so extreme the complement rounded to an endpoint; kappa
      // is below resolution, so the zero-cross placement is exact enough.
      model = degenerate_model(mu_a, mu_b);
      return model;
    }
    auto [va, vb] = build_vector_pair(aa, 1.0 - mu_b, kPi - theta);
    model = {va, vb, ProjectorSpec::on({0, 1}).complement(), theta};
  }
  return model;
}

InterferenceReport verify_model(const QuantumConceptModel& model,
                                const MembershipRecord& record) {
  validate_model(model);
  validate_weights(record);
  InterferenceReport r;
  r.mu_a = record.mu_a;
  r.mu_b = record.mu_b;
  r.mu_observed = record.mu_combined;
  r.average = 0.5 * (r.mu_a + r.mu_b);
  r.delta = r.mu_observed - r.average;
  r.kappa = interference_bound(r.mu_a, r.mu_b);
  r.feasible = std::abs(r.delta) <= r.kappa + kFitTolerance;
  r.has_reconstruction = true;
  const double model_a = membership_probability(model.vec_a, model.projector);
  const double model_b = membership_probability(model.vec_b, model.projector);
  r.mu_reconstructed = disjunction_probability(model);
  r.residual_a = std::abs(model_a - r.mu_a);
  r.residual_b = std::abs(model_b - r.mu_b);
  r.residual_combined = std::abs(r.mu_reconstructed - r.mu_observed);
  return r;
}

}  // namespace conceptlab::core
