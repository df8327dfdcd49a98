#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "conceptlab/bell.hpp"
#include "conceptlab/diagnostics.hpp"
#include "conceptlab/ingest.hpp"
#include "conceptlab/scop.hpp"

namespace conceptlab::report {

using json = nlohmann::json;

// FNV-1a 64-bit over the raw input bytes, "fnv1a64:" + 16 hex digits.
std::string content_digest(std::string_view bytes);

// Rounds to 12 significant digits so reports are byte-stable.
double quantize(double value);

// %.12g rendering used by the CSV views.
std::string format_double(double value);

// Envelope shared by every report: kind, toolVersion, inputDigest.
json envelope(const std::string& kind, std::string_view input_bytes);

json record_to_json(const MembershipRecord& record);

json fit_report(const ingest::Dataset& dataset, std::string_view input_bytes);

json diagnose_report(const ingest::Dataset& dataset, std::string_view input_bytes);

json chsh_report(const bell::ChshReport& result, std::string_view input_bytes);

json scop_validate_report(const scop::ScopSystem& system, const scop::ValidationResult& result,
                          std::string_view input_bytes);

json scop_evolve_report(const scop::ScopSystem& system, const scop::StateDistribution& initial,
                        const scop::StateDistribution& final_dist,
                        const std::vector<std::string>& contexts, std::string_view input_bytes);

json scop_simulate_report(const scop::ScopSystem& system,
                          const std::vector<std::vector<std::string>>& trajectories,
                          const std::string& start, const std::vector<std::string>& contexts,
                          std::uint64_t seed, std::string_view input_bytes);

json scop_poll_report(double p_for, double p_against, double p_undetermined,
                      double collapse_for);

json corpus_index_report(const ingest::CorpusIndex& index, std::string_view input_bytes);

json corpus_guppy_report(const ingest::CorpusIndex& index, const MembershipRecord& record,
                         std::string_view input_bytes);

// Flattened plotting view; dispatches on the report's "kind" field.
std::string to_csv(const json& report);

// Canonical rendering written to disk: 2-space indent, trailing newline,
// keys in sorted order.
std::string dump(const json& report);

}  // namespace conceptlab::report
