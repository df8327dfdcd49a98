#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "conceptlab/errors.hpp"

namespace conceptlab::scop {

// Distinguished context describing the situation where no context occurs;
// always present and acts as the identity on states.
inline constexpr const char* kUnitContext = "__unit__";

inline constexpr double kDistributionTolerance = 1e-9;

// Five-element state/context/property system. Transition probabilities are
// stored sparsely per context as (source, target) -> p with absent entries
// meaning zero; context matrices are typically near-deterministic.
struct ScopSystem {
  std::vector<std::string> states;
  std::vector<std::string> contexts;  // index 0 is the unit context
  std::vector<std::string> properties;
  std::string ground_state;
  std::vector<std::map<std::pair<int, int>, double>> transitions;
  std::map<std::pair<int, int>, double> property_weights;  // (state, property) -> w

  int state_index(const std::string& name) const;
  int context_index(const std::string& name) const;
  int property_index(const std::string& name) const;

  // Setters look identifiers up by name and throw LookupError when unknown.
  // Values are stored as given; validate() reports range and column issues.
  void set_transition(const std::string& context, const std::string& from,
                      const std::string& to, double p);
  void set_weight(const std::string& state, const std::string& property, double w);
};

// Injects the unit context when absent. Throws ValidationError on duplicate
// or empty identifiers.
ScopSystem make_system(std::vector<std::string> states, std::vector<std::string> contexts,
                       std::vector<std::string> properties, std::string ground_state);

struct Violation {
  std::string message;
  std::string context;
  std::string state;
  std::string property;
};

struct ValidationResult {
  bool ok = true;
  std::vector<Violation> violations;
};

// Enumerates every violated column and cell; never throws.
ValidationResult validate(const ScopSystem& system);

// Mixed epistemic state over the system's states, aligned with the state order.
struct StateDistribution {
  std::vector<double> weights;

  static StateDistribution point_mass(const ScopSystem& system, const std::string& state);
  // Validates nonnegativity and a total within kDistributionTolerance of 1,
  // then renormalizes exactly; anything further off is rejected, silent
  // renormalization hides data errors.
  static StateDistribution from_values(const ScopSystem& system, std::vector<double> values);
  static StateDistribution from_map(const ScopSystem& system,
                                    const std::map<std::string, double>& values);

  std::map<std::string, double> to_map(const ScopSystem& system) const;
};

// result(q) = sum_p mu(q, context, p) * dist(p).
StateDistribution evolve(const ScopSystem& system, const StateDistribution& dist,
                         const std::string& context);

// Left fold of evolve over the sequence.
StateDistribution evolve_sequence(const ScopSystem& system, const StateDistribution& dist,
                                  std::span<const std::string> contexts);

// sum_p dist(p) * nu(p, property).
double property_weight(const ScopSystem& system, const StateDistribution& dist,
                       const std::string& property);

// Monte-Carlo realization of mu: one state per step, contexts.size()+1 states
// total, deterministic for a fixed seed.
std::vector<std::string> sample_trajectory(const ScopSystem& system,
                                           const std::string& start_state,
                                           std::span<const std::string> contexts,
                                           std::uint64_t seed);

struct PollModel {
  ScopSystem system;
  StateDistribution initial;
};

// Three-state opinion poll: decided states are fixed points, the poll context
// collapses the undetermined state to "for" with probability collapse_for,
// otherwise to "against".
PollModel build_poll_system(double p_for, double p_against, double p_undetermined,
                            double collapse_for);

// JSON document: {states, contexts, properties, ground, transitions:[{ctx,
// from, to, p}], weights:[{state, prop, w}]}; unit context omitted from
// transitions.
std::string serialize_system(const ScopSystem& system);
ScopSystem parse_system(const std::string& text);

}  // namespace conceptlab::scop
