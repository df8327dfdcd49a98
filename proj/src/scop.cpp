#include "conceptlab/scop.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

namespace conceptlab::scop {

namespace {

using nlohmann::json;

int index_of(const std::vector<std::string>& names, const std::string& name) {
  const auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

}  // namespace

int ScopSystem::state_index(const std::string& name) const { return index_of(states, name); }
int ScopSystem::context_index(const std::string& name) const { return index_of(contexts, name); }
int ScopSystem::property_index(const std::string& name) const {
  return index_of(properties, name);
}

void ScopSystem::set_transition(const std::string& context, const std::string& from,
                                const std::string& to, double p) {
  const int c = context_index(context);
  if (c < 0) throw LookupError("unknown context: '" + context + "'");
  const int src = state_index(from);
  if (src < 0) throw LookupError("unknown state: '" + from + "'");
  const int tgt = state_index(to);
  if (tgt < 0) throw LookupError("unknown state: '" + to + "'");
  transitions[static_cast<std::size_t>(c)][{src, tgt}] = p;
}

void ScopSystem::set_weight(const std::string& state, const std::string& property, double w) {
  const int s = state_index(state);
  if (s < 0) throw LookupError("unknown state: '" + state + "'");
  const int p = property_index(property);
  if (p < 0) throw LookupError("unknown property: '" + property + "'");
  property_weights[{s, p}] = w;
}

ScopSystem make_system(std::vector<std::string> states, std::vector<std::string> contexts,
                       std::vector<std::string> properties, std::string ground_state) {
  auto check_unique = [](const std::vector<std::string>& names, const char* what) {
    std::set<std::string> seen;
    for (const std::string& n : names) {
      if (n.empty()) throw ValidationError(std::string("empty ") + what + " identifier");
      if (!seen.insert(n).second)
        throw ValidationError(std::string("duplicate ") + what + ": '" + n + "'");
    }
  };
  check_unique(states, "state");
  check_unique(contexts, "context");
  check_unique(properties, "property");

  ScopSystem system;
  system.states = std::move(states);
  system.contexts.push_back(kUnitContext);
  for (std::string& c : contexts)
    if (c != kUnitContext) system.contexts.push_back(std::move(c));
  system.properties = std::move(properties);
  system.ground_state = std::move(ground_state);
  system.transitions.resize(system.contexts.size());
  return system;
}

ValidationResult validate(const ScopSystem& system) {
  ValidationResult result;
  auto flag = [&result](std::string message, std::string context = {}, std::string state = {},
                        std::string property = {}) {
    result.ok = false;
    result.violations.push_back(
        {std::move(message), std::move(context), std::move(state), std::move(property)});
  };

  const int n_states = static_cast<int>(system.states.size());
  if (n_states == 0) flag("system has no states");
  if (system.contexts.empty() || system.contexts[0] != kUnitContext)
    flag("unit context missing from position 0");
  if (system.state_index(system.ground_state) < 0)
    flag("ground state '" + system.ground_state + "' is not a state", {}, system.ground_state);
  if (system.transitions.size() != system.contexts.size())
    flag("transition storage does not cover every context");

  const std::size_t n_contexts =
      std::min(system.transitions.size(), system.contexts.size());
  for (std::size_t c = 0; c < n_contexts; ++c) {
    const std::string& context_name = system.contexts[c];
    const bool is_unit = context_name == kUnitContext && c == 0;
    for (const auto& [key, p] : system.transitions[c]) {
      const auto [src, tgt] = key;
      if (src < 0 || src >= n_states || tgt < 0 || tgt >= n_states) {
        flag("transition references an unknown state index", context_name);
        continue;
      }
      if (!(p >= 0.0 && p <= 1.0))
        flag("transition probability out of range [0,1]: " + std::to_string(p), context_name,
             system.states[src]);
      if (is_unit) {
        const double expected = src == tgt ? 1.0 : 0.0;
        if (p != expected)
          flag("unit context must act as the identity; mu(" + system.states[tgt] + ", 1, " +
                   system.states[src] + ") = " + std::to_string(p),
               context_name, system.states[src]);
      }
    }
    if (is_unit) continue;
    // Every (context, source) column must be a distribution.
    for (int src = 0; src < n_states; ++src) {
      double sum = 0.0;
      for (const auto& [key, p] : system.transitions[c])
        if (key.first == src) sum += p;
      if (std::abs(sum - 1.0) > kDistributionTolerance)
        flag("column (" + context_name + ", " + system.states[src] + ") sums to " +
                 std::to_string(sum) + ", expected 1",
             context_name, system.states[src]);
    }
  }

  for (const auto& [key, w] : system.property_weights) {
    const auto [s, p] = key;
    if (s < 0 || s >= n_states || p < 0 || p >= static_cast<int>(system.properties.size())) {
      flag("property weight references an unknown index");
      continue;
    }
    if (!(w >= 0.0 && w <= 1.0))
      flag("property weight out of range [0,1]: " + std::to_string(w), {}, system.states[s],
           system.properties[p]);
  }
  return result;
}

StateDistribution StateDistribution::point_mass(const ScopSystem& system,
                                                const std::string& state) {
  const int s = system.state_index(state);
  if (s < 0) throw LookupError("unknown state: '" + state + "'");
  StateDistribution dist;
  dist.weights.assign(system.states.size(), 0.0);
  dist.weights[static_cast<std::size_t>(s)] = 1.0;
  return dist;
}

StateDistribution StateDistribution::from_values(const ScopSystem& system,
                                                 std::vector<double> values) {
  if (values.size() != system.states.size())
    throw ValidationError("distribution has " + std::to_string(values.size()) +
                          " entries, system has " + std::to_string(system.states.size()) +
                          " states");
  double sum = 0.0;
  for (double w : values) {
    if (w < 0.0) throw ValidationError("negative distribution weight: " + std::to_string(w));
    sum += w;
  }
  if (std::abs(sum - 1.0) > kDistributionTolerance)
    throw ValidationError("distribution sums to " + std::to_string(sum) + ", expected 1");
  for (double& w : values) w /= sum;
  StateDistribution dist;
  dist.weights = std::move(values);
  return dist;
}

StateDistribution StateDistribution::from_map(const ScopSystem& system,
                                              const std::map<std::string, double>& values) {
  std::vector<double> aligned(system.states.size(), 0.0);
  for (const auto& [name, w] : values) {
    const int s = system.state_index(name);
    if (s < 0) throw LookupError("unknown state: '" + name + "'");
    aligned[static_cast<std::size_t>(s)] = w;
  }
  return from_values(system, std::move(aligned));
}

std::map<std::string, double> StateDistribution::to_map(const ScopSystem& system) const {
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < weights.size() && i < system.states.size(); ++i)
    out[system.states[i]] = weights[i];
  return out;
}

StateDistribution evolve(const ScopSystem& system, const StateDistribution& dist,
                         const std::string& context) {
  const int c = system.context_index(context);
  if (c < 0) throw LookupError("unknown context: '" + context + "'");
  if (dist.weights.size() != system.states.size())
    throw ValidationError("distribution is not aligned with the system's states");
  if (c == 0) return dist;  // unit context is the identity
  StateDistribution out;
  out.weights.assign(system.states.size(), 0.0);
  for (const auto& [key, p] : system.transitions[static_cast<std::size_t>(c)])
    out.weights[static_cast<std::size_t>(key.second)] +=
        p * dist.weights[static_cast<std::size_t>(key.first)];
  return out;
}

StateDistribution evolve_sequence(const ScopSystem& system, const StateDistribution& dist,
                                  std::span<const std::string> contexts) {
  StateDistribution current = dist;
  for (const std::string& context : contexts) current = evolve(system, current, context);
  return current;
}

double property_weight(const ScopSystem& system, const StateDistribution& dist,
                       const std::string& property) {
  const int p = system.property_index(property);
  if (p < 0) throw LookupError("unknown property: '" + property + "'");
  if (dist.weights.size() != system.states.size())
    throw ValidationError("distribution is not aligned with the system's states");
  double sum = 0.0;
  for (std::size_t s = 0; s < dist.weights.size(); ++s) {
    const auto it = system.property_weights.find({static_cast<int>(s), p});
    if (it != system.property_weights.end()) sum += dist.weights[s] * it->second;
  }
  return std::clamp(sum, 0.0, 1.0);
}

std::vector<std::string> sample_trajectory(const ScopSystem& system,
                                           const std::string& start_state,
                                           std::span<const std::string> contexts,
                                           std::uint64_t seed) {
  int current = system.state_index(start_state);
  if (current < 0) throw LookupError("unknown state: '" + start_state + "'");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::string> path;
  path.reserve(contexts.size() + 1);
  path.push_back(system.states[static_cast<std::size_t>(current)]);
  for (const std::string& context : contexts) {
    const int c = system.context_index(context);
    if (c < 0) throw LookupError("unknown context: '" + context + "'");
    if (c == 0) {
      path.push_back(system.states[static_cast<std::size_t>(current)]);
      continue;
    }
    const double u = unit(rng);
    double acc = 0.0;
    int next = current;
    int last = -1;
    bool chosen = false;
    // Walk the (current -> *) column in ascending target order.
    for (const auto& [key, p] : system.transitions[static_cast<std::size_t>(c)]) {
      if (key.first != current) continue;
      last = key.second;
      acc += p;
      if (u < acc) {
        next = key.second;
        chosen = true;
        break;
      }
    }
    if (!chosen && last >= 0) next = last;  // float shortfall at the column's end
    current = next;
    path.push_back(system.states[static_cast<std::size_t>(current)]);
  }
  return path;
}

PollModel build_poll_system(double p_for, double p_against, double p_undetermined,
                            double collapse_for) {
  auto check = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
      throw ValidationError(std::string(name) + " out of range [0,1]: " + std::to_string(v));
  };
  check(p_for, "pFor");
  check(p_against, "pAgainst");
  check(p_undetermined, "pUndetermined");
  check(collapse_for, "collapseFor");
  const double sum = p_for + p_against + p_undetermined;
  if (std::abs(sum - 1.0) > kDistributionTolerance)
    throw ValidationError("poll shares sum to " + std::to_string(sum) + ", expected 1");

  ScopSystem system = make_system({"for", "against", "undetermined"}, {"poll"},
                                  {"decided", "in_favor"}, "undetermined");
  system.set_transition("poll", "for", "for", 1.0);
  system.set_transition("poll", "against", "against", 1.0);
  system.set_transition("poll", "undetermined", "for", collapse_for);
  system.set_transition("poll", "undetermined", "against", 1.0 - collapse_for);
  system.set_weight("for", "decided", 1.0);
  system.set_weight("against", "decided", 1.0);
  system.set_weight("undetermined", "decided", 0.0);
  system.set_weight("for", "in_favor", 1.0);

  StateDistribution initial =
      StateDistribution::from_values(system, {p_for, p_against, p_undetermined});
  return {std::move(system), std::move(initial)};
}

std::string serialize_system(const ScopSystem& system) {
  json j;
  j["states"] = system.states;
  j["contexts"] = system.contexts;
  j["properties"] = system.properties;
  j["ground"] = system.ground_state;
  json transitions = json::array();
  for (std::size_t c = 1; c < system.transitions.size(); ++c) {
    for (const auto& [key, p] : system.transitions[c]) {
      transitions.push_back({{"ctx", system.contexts[c]},
                             {"from", system.states[static_cast<std::size_t>(key.first)]},
                             {"to", system.states[static_cast<std::size_t>(key.second)]},
                             {"p", p}});
    }
  }
  j["transitions"] = transitions;
  json weights = json::array();
  for (const auto& [key, w] : system.property_weights) {
    weights.push_back({{"state", system.states[static_cast<std::size_t>(key.first)]},
                       {"prop", system.properties[static_cast<std::size_t>(key.second)]},
                       {"w", w}});
  }
  j["weights"] = weights;
  return j.dump(2) + "\n";
}

ScopSystem parse_system(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid system JSON: ") + e.what());
  }
  auto string_list = [&j](const char* key) {
    if (!j.contains(key) || !j[key].is_array())
      throw ParseError(std::string("system JSON missing array field '") + key + "'");
    std::vector<std::string> out;
    for (const auto& item : j[key]) {
      if (!item.is_string())
        throw ParseError(std::string("field '") + key + "' must contain strings");
      out.push_back(item.get<std::string>());
    }
    return out;
  };
  if (!j.contains("ground") || !j["ground"].is_string())
    throw ParseError("system JSON missing string field 'ground'");

  ScopSystem system;
  try {
    system = make_system(string_list("states"), string_list("contexts"),
                         string_list("properties"), j["ground"].get<std::string>());
  } catch (const ValidationError& e) {
    throw ParseError(std::string("invalid system JSON: ") + e.what());
  }

  if (j.contains("transitions")) {
    if (!j["transitions"].is_array()) throw ParseError("'transitions' must be an array");
    std::size_t i = 0;
    for (const auto& entry : j["transitions"]) {
      if (!entry.is_object() || !entry.contains("ctx") || !entry.contains("from") ||
          !entry.contains("to") || !entry.contains("p") || !entry["p"].is_number())
        throw ParseError("transition " + std::to_string(i) +
                         " must be {ctx, from, to, p}");
      try {
        system.set_transition(entry["ctx"].get<std::string>(), entry["from"].get<std::string>(),
                              entry["to"].get<std::string>(), entry["p"].get<double>());
      } catch (const LookupError& e) {
        throw ParseError("transition " + std::to_string(i) + ": " + e.what());
      }
      ++i;
    }
  }
  if (j.contains("weights")) {
    if (!j["weights"].is_array()) throw ParseError("'weights' must be an array");
    std::size_t i = 0;
    for (const auto& entry : j["weights"]) {
      if (!entry.is_object() || !entry.contains("state") || !entry.contains("prop") ||
          !entry.contains("w") || !entry["w"].is_number())
        throw ParseError("weight " + std::to_string(i) + " must be {state, prop, w}");
      try {
        system.set_weight(entry["state"].get<std::string>(), entry["prop"].get<std::string>(),
                          entry["w"].get<double>());
      } catch (const LookupError& e) {
        throw ParseError("weight " + std::to_string(i) + ": " + e.what());
      }
      ++i;
    }
  }
  return system;
}

}  // namespace conceptlab::scop
