#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "conceptlab/bell.hpp"
#include "conceptlab/membership.hpp"

namespace conceptlab::ingest {

struct Dataset {
  std::vector<MembershipRecord> records;
  std::string source;
};

// Auto-detects CSV vs JSON from the first non-space character.
Dataset parse_membership(const std::string& text);

// CSV schema: exemplar, conceptA, conceptB, kind, muA, muB, muCombined.
// Errors name the physical line and field.
Dataset parse_membership_csv(const std::string& text);

// JSON mirror: an array of records, or {"source": ..., "records": [...]}.
Dataset parse_membership_json(const std::string& text);

std::string serialize_membership_csv(const Dataset& dataset);
std::string serialize_membership_json(const Dataset& dataset);

// CSV columns: settingA, settingB, npp, npm, nmp, nmm; one row per pair.
std::vector<bell::CoincidenceTable> parse_coincidence_csv(const std::string& text);

// Document-frequency index over a corpus of text documents.
struct CorpusIndex {
  std::size_t document_count = 0;
  std::map<std::string, std::set<std::size_t>> term_documents;

  std::size_t document_frequency(const std::string& term) const;
  // Documents containing every term.
  std::size_t joint_frequency(std::span<const std::string> terms) const;
};

// Lowercase, split on non-alphanumeric ASCII; bytes >= 0x80 are kept so
// UTF-8 words survive untouched.
std::vector<std::string> tokenize(const std::string& text);

CorpusIndex build_corpus_index(const std::vector<std::string>& documents);

// A regular file is one document per line; a directory is one document per
// file, in sorted filename order.
std::vector<std::string> load_corpus(const std::filesystem::path& path);

// df(exemplar and concept terms) / df(concept terms). A two-term concept is
// the conjunction proxy: both terms must appear in the same document.
// Throws UndefinedWeightError when the concept frequency is zero.
double cooccurrence_weight(const CorpusIndex& index, const std::string& exemplar,
                           std::span<const std::string> concept_terms);

// Assembles the (exemplar | conceptA, conceptB) conjunction record from the
// three co-occurrence weights, ready for diagnostics.
MembershipRecord guppy_scan(const CorpusIndex& index, const std::string& exemplar,
                            const std::string& concept_a, const std::string& concept_b);

}  // namespace conceptlab::ingest
