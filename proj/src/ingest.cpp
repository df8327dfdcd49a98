#include "conceptlab/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace conceptlab::ingest {

namespace {

using nlohmann::json;

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : text) {
    if (c == '\n') {
      if (!current.empty() && current.back() == '\r') current.pop_back();
      lines.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty() && current.back() == '\r') current.pop_back();
  if (!current.empty()) lines.push_back(current);
  return lines;
}

// Minimal CSV field splitter with double-quote support.
std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  fields.push_back(field);
  return fields;
}

std::string trim(const std::string& s) {
  std::size_t begin = 0, end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

double parse_weight(const std::string& text, long row, const std::string& field) {
  const std::string value = trim(text);
  char* end = nullptr;
  const double parsed = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size())
    throw ParseError("row " + std::to_string(row) + ": " + field + ": not a number: '" + text +
                         "'",
                     row);
  if (!(parsed >= 0.0 && parsed <= 1.0))
    throw ParseError("row " + std::to_string(row) + ": " + field + " out of range [0,1]: " +
                         value,
                     row);
  return parsed;
}

std::int64_t parse_count(const std::string& text, long row, const std::string& field) {
  const std::string value = trim(text);
  char* end = nullptr;
  const long long parsed = std::strtoll(value.c_str(), &end, 10);
  if (value.empty() || end != value.c_str() + value.size())
    throw ParseError("row " + std::to_string(row) + ": " + field +
                         ": not an integer: '" + text + "'",
                     row);
  if (parsed < 0)
    throw ParseError("row " + std::to_string(row) + ": " + field + " is negative: " + value,
                     row);
  return parsed;
}

// Maps required header names to column positions.
std::map<std::string, std::size_t> parse_header(const std::string& line,
                                                std::span<const char* const> required) {
  const std::vector<std::string> names = split_csv_row(line);
  std::map<std::string, std::size_t> columns;
  for (std::size_t i = 0; i < names.size(); ++i) columns[trim(names[i])] = i;
  for (const char* name : required)
    if (!columns.count(name))
      throw ParseError(std::string("header is missing column '") + name + "'", 1);
  return columns;
}

MembershipRecord record_from_json(const json& item, std::size_t index) {
  auto context = [index](const std::string& what) {
    return "record " + std::to_string(index) + ": " + what;
  };
  if (!item.is_object()) throw ParseError(context("expected an object"));
  for (const char* key : {"exemplar", "conceptA", "conceptB", "kind"})
    if (!item.contains(key) || !item[key].is_string())
      throw ParseError(context(std::string("missing string field '") + key + "'"));
  for (const char* key : {"muA", "muB", "muCombined"})
    if (!item.contains(key) || !item[key].is_number())
      throw ParseError(context(std::string("missing numeric field '") + key + "'"));
  MembershipRecord record;
  record.exemplar = item["exemplar"].get<std::string>();
  record.concept_a = item["conceptA"].get<std::string>();
  record.concept_b = item["conceptB"].get<std::string>();
  try {
    record.kind = combination_kind_from_string(item["kind"].get<std::string>());
  } catch (const ValidationError& e) {
    throw ParseError(context(e.what()));
  }
  record.mu_a = item["muA"].get<double>();
  record.mu_b = item["muB"].get<double>();
  record.mu_combined = item["muCombined"].get<double>();
  try {
    validate_weights(record);
  } catch (const ValidationError& e) {
    throw ParseError(context(e.what()));
  }
  return record;
}

}  // namespace

Dataset parse_membership(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '[' || c == '{') return parse_membership_json(text);
    break;
  }
  return parse_membership_csv(text);
}

Dataset parse_membership_csv(const std::string& text) {
  static constexpr const char* kColumns[] = {"exemplar", "conceptA", "conceptB", "kind",
                                             "muA",      "muB",      "muCombined"};
  const std::vector<std::string> lines = split_lines(text);
  if (lines.empty() || trim(lines[0]).empty())
    throw ParseError("membership CSV is missing its header row", 1);
  const auto columns = parse_header(lines[0], kColumns);

  Dataset dataset;
  dataset.source = "csv";
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const long row = static_cast<long>(i) + 1;  // physical line number
    if (trim(lines[i]).empty()) continue;
    const std::vector<std::string> fields = split_csv_row(lines[i]);
    auto field = [&](const char* name) -> const std::string& {
      const std::size_t idx = columns.at(name);
      if (idx >= fields.size())
        throw ParseError("row " + std::to_string(row) + ": missing field '" + name + "'", row);
      return fields[idx];
    };
    MembershipRecord record;
    record.exemplar = trim(field("exemplar"));
    record.concept_a = trim(field("conceptA"));
    record.concept_b = trim(field("conceptB"));
    try {
      record.kind = combination_kind_from_string(trim(field("kind")));
    } catch (const ValidationError& e) {
      throw ParseError("row " + std::to_string(row) + ": " + e.what(), row);
    }
    record.mu_a = parse_weight(field("muA"), row, "muA");
    record.mu_b = parse_weight(field("muB"), row, "muB");
    record.mu_combined = parse_weight(field("muCombined"), row, "muCombined");
    dataset.records.push_back(std::move(record));
  }
  return dataset;
}

Dataset parse_membership_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid membership JSON: ") + e.what());
  }
  Dataset dataset;
  dataset.source = "json";
  const json* records = &j;
  if (j.is_object()) {
    if (j.contains("source") && j["source"].is_string())
      dataset.source = j["source"].get<std::string>();
    if (!j.contains("records") || !j["records"].is_array())
      throw ParseError("membership JSON object must contain a 'records' array");
    records = &j["records"];
  } else if (!j.is_array()) {
    throw ParseError("membership JSON must be an array or {source, records}");
  }
  std::size_t index = 0;
  for (const auto& item : *records) dataset.records.push_back(record_from_json(item, index++));
  return dataset;
}

std::string serialize_membership_csv(const Dataset& dataset) {
  std::ostringstream out;
  out << "exemplar,conceptA,conceptB,kind,muA,muB,muCombined\n";
  char buffer[64];
  auto number = [&buffer](double v) {
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    return std::string(buffer);
  };
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += "\"\"";
      else quoted.push_back(c);
    }
    return quoted + "\"";
  };
  for (const MembershipRecord& r : dataset.records) {
    out << quote(r.exemplar) << ',' << quote(r.concept_a) << ',' << quote(r.concept_b) << ','
        << to_string(r.kind) << ',' << number(r.mu_a) << ',' << number(r.mu_b) << ','
        << number(r.mu_combined) << '\n';
  }
  return out.str();
}

std::string serialize_membership_json(const Dataset& dataset) {
  json records = json::array();
  for (const MembershipRecord& r : dataset.records) {
    records.push_back({{"exemplar", r.exemplar},
                       {"conceptA", r.concept_a},
                       {"conceptB", r.concept_b},
                       {"kind", to_string(r.kind)},
                       {"muA", r.mu_a},
                       {"muB", r.mu_b},
                       {"muCombined", r.mu_combined}});
  }
  json j{{"source", dataset.source}, {"records", records}};
  return j.dump(2) + "\n";
}

std::vector<bell::CoincidenceTable> parse_coincidence_csv(const std::string& text) {
  static constexpr const char* kColumns[] = {"settingA", "settingB", "npp",
                                             "npm",      "nmp",      "nmm"};
  const std::vector<std::string> lines = split_lines(text);
  if (lines.empty() || trim(lines[0]).empty())
    throw ParseError("coincidence CSV is missing its header row", 1);
  const auto columns = parse_header(lines[0], kColumns);

  std::vector<bell::CoincidenceTable> tables;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const long row = static_cast<long>(i) + 1;
    if (trim(lines[i]).empty()) continue;
    const std::vector<std::string> fields = split_csv_row(lines[i]);
    auto field = [&](const char* name) -> const std::string& {
      const std::size_t idx = columns.at(name);
      if (idx >= fields.size())
        throw ParseError("row " + std::to_string(row) + ": missing field '" + name + "'", row);
      return fields[idx];
    };
    bell::CoincidenceTable table;
    table.setting_a = trim(field("settingA"));
    table.setting_b = trim(field("settingB"));
    table.n_pp = parse_count(field("npp"), row, "npp");
    table.n_pm = parse_count(field("npm"), row, "npm");
    table.n_mp = parse_count(field("nmp"), row, "nmp");
    table.n_mm = parse_count(field("nmm"), row, "nmm");
    if (table.total() <= 0)
      throw ParseError("row " + std::to_string(row) + ": table has zero total count", row);
    tables.push_back(std::move(table));
  }
  return tables;
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : text) {
    if (std::isalnum(c) || c >= 0x80) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      tokens.push_back(current);
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(current);
  return tokens;
}

std::size_t CorpusIndex::document_frequency(const std::string& term) const {
  const auto it = term_documents.find(term);
  return it == term_documents.end() ? 0 : it->second.size();
}

std::size_t CorpusIndex::joint_frequency(std::span<const std::string> terms) const {
  if (terms.empty()) return document_count;
  const auto first = term_documents.find(terms[0]);
  if (first == term_documents.end()) return 0;
  std::set<std::size_t> docs = first->second;
  for (std::size_t i = 1; i < terms.size(); ++i) {
    const auto it = term_documents.find(terms[i]);
    if (it == term_documents.end()) return 0;
    std::set<std::size_t> intersection;
    std::set_intersection(docs.begin(), docs.end(), it->second.begin(), it->second.end(),
                          std::inserter(intersection, intersection.begin()));
    docs = std::move(intersection);
    if (docs.empty()) return 0;
  }
  return docs.size();
}

CorpusIndex build_corpus_index(const std::vector<std::string>& documents) {
  CorpusIndex index;
  index.document_count = documents.size();
  for (std::size_t doc = 0; doc < documents.size(); ++doc)
    for (const std::string& token : tokenize(documents[doc]))
      index.term_documents[token].insert(doc);
  return index;
}

std::vector<std::string> load_corpus(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path))
      if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<std::string> documents;
    for (const fs::path& file : files) {
      std::ifstream in(file, std::ios::binary);
      if (!in) throw IoError("cannot read corpus file: " + file.string());
      std::ostringstream buffer;
      buffer << in.rdbuf();
      documents.push_back(buffer.str());
    }
    return documents;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read corpus file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::vector<std::string> documents;
  for (std::string& line : split_lines(buffer.str()))
    if (!trim(line).empty()) documents.push_back(std::move(line));
  return documents;
}

double cooccurrence_weight(const CorpusIndex& index, const std::string& exemplar,
                           std::span<const std::string> concept_terms) {
  std::vector<std::string> concept_tokens;
  for (const std::string& term : concept_terms) {
    const std::vector<std::string> tokens = tokenize(term);
    if (tokens.size() != 1)
      throw ValidationError("concept term must be a single token: '" + term + "'");
    concept_tokens.push_back(tokens[0]);
  }
  const std::vector<std::string> exemplar_tokens = tokenize(exemplar);
  if (exemplar_tokens.size() != 1)
    throw ValidationError("exemplar must be a single token: '" + exemplar + "'");

  const std::size_t denominator = index.joint_frequency(concept_tokens);
  if (denominator == 0)
    throw UndefinedWeightError("concept has zero document frequency; weight undefined");
  std::vector<std::string> joint = concept_tokens;
  joint.push_back(exemplar_tokens[0]);
  const std::size_t numerator = index.joint_frequency(joint);
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

MembershipRecord guppy_scan(const CorpusIndex& index, const std::string& exemplar,
                            const std::string& concept_a, const std::string& concept_b) {
  const std::vector<std::string> single_a{concept_a};
  const std::vector<std::string> single_b{concept_b};
  const std::vector<std::string> pair{concept_a, concept_b};
  MembershipRecord record;
  record.exemplar = exemplar;
  record.concept_a = concept_a;
  record.concept_b = concept_b;
  record.kind = CombinationKind::kConjunction;
  record.mu_a = cooccurrence_weight(index, exemplar, single_a);
  record.mu_b = cooccurrence_weight(index, exemplar, single_b);
  record.mu_combined = cooccurrence_weight(index, exemplar, pair);
  return record;
}

}  // namespace conceptlab::ingest
