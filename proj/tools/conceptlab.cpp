// Command-line front end: fit, diagnose, chsh, scop, corpus.
// Exit codes: 0 success, 1 data/validation errors, 2 I/O errors.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "conceptlab/bell.hpp"
#include "conceptlab/diagnostics.hpp"
#include "conceptlab/errors.hpp"
#include "conceptlab/ingest.hpp"
#include "conceptlab/report.hpp"
#include "conceptlab/scop.hpp"
#include "conceptlab/version.hpp"

namespace {

namespace fs = std::filesystem;
using conceptlab::report::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw conceptlab::IoError("cannot open input file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw conceptlab::IoError("failed reading input file: " + path);
  return buffer.str();
}

void write_atomic(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw conceptlab::IoError("cannot open output file: " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw conceptlab::IoError("failed writing output file: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec)
    throw conceptlab::IoError("cannot move report into place: " + path.string() + ": " +
                              ec.message());
}

// JSON goes to --out (or stdout); --csv adds the flattened view, replacing
// stdout output or landing next to the JSON file with a .csv extension.
void emit_report(const json& report, const std::optional<std::string>& out_path, bool csv) {
  const std::string text = conceptlab::report::dump(report);
  if (!out_path) {
    if (csv)
      std::cout << conceptlab::report::to_csv(report);
    else
      std::cout << text;
    return;
  }
  write_atomic(*out_path, text);
  if (csv) {
    fs::path csv_path(*out_path);
    csv_path.replace_extension(".csv");
    write_atomic(csv_path, conceptlab::report::to_csv(report));
  }
}

struct CommonOptions {
  std::string in_path;
  std::optional<std::string> out_path;
  bool csv = false;
};

void add_out_options(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option_function<std::string>(
      "--out", [&opts](const std::string& v) { opts.out_path = v; },
      "Write the JSON report to this path (default: stdout)");
  cmd->add_flag("--csv", opts.csv, "Also emit the flattened CSV view");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concept-combination analysis: interference fits, classicality "
               "diagnostics, SCoP systems, CHSH statistics, corpus counts"};
  app.set_version_flag("--version", conceptlab::kToolVersion);
  app.require_subcommand(1);

  int exit_code = 0;
  auto guarded = [&exit_code](auto&& fn) {
    return [&exit_code, fn]() {
      try {
        fn();
      } catch (const conceptlab::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        exit_code = 2;
      } catch (const conceptlab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        exit_code = 1;
      } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        exit_code = 2;
      }
    };
  };

  // fit
  auto fit_opts = std::make_shared<CommonOptions>();
  CLI::App* fit = app.add_subcommand("fit", "Fit interference models to membership data");
  fit->add_option("--in", fit_opts->in_path, "Membership CSV or JSON")->required();
  add_out_options(fit, *fit_opts);
  fit->callback(guarded([fit_opts]() {
    const std::string bytes = read_file(fit_opts->in_path);
    const conceptlab::ingest::Dataset dataset = conceptlab::ingest::parse_membership(bytes);
    emit_report(conceptlab::report::fit_report(dataset, bytes), fit_opts->out_path,
                fit_opts->csv);
  }));

  // diagnose
  auto diag_opts = std::make_shared<CommonOptions>();
  CLI::App* diagnose =
      app.add_subcommand("diagnose", "Classicality verdicts, joint feasibility, fits");
  diagnose->add_option("--in", diag_opts->in_path, "Membership CSV or JSON")->required();
  add_out_options(diagnose, *diag_opts);
  diagnose->callback(guarded([diag_opts]() {
    const std::string bytes = read_file(diag_opts->in_path);
    const conceptlab::ingest::Dataset dataset = conceptlab::ingest::parse_membership(bytes);
    emit_report(conceptlab::report::diagnose_report(dataset, bytes), diag_opts->out_path,
                diag_opts->csv);
  }));

  // chsh
  auto chsh_opts = std::make_shared<CommonOptions>();
  CLI::App* chsh_cmd = app.add_subcommand("chsh", "CHSH statistic from coincidence counts");
  chsh_cmd->add_option("--in", chsh_opts->in_path, "Coincidence CSV (four setting pairs)")
      ->required();
  add_out_options(chsh_cmd, *chsh_opts);
  chsh_cmd->callback(guarded([chsh_opts]() {
    const std::string bytes = read_file(chsh_opts->in_path);
    const auto tables = conceptlab::ingest::parse_coincidence_csv(bytes);
    const conceptlab::bell::ChshReport result = conceptlab::bell::chsh(tables);
    emit_report(conceptlab::report::chsh_report(result, bytes), chsh_opts->out_path,
                chsh_opts->csv);
  }));

  // scop
  CLI::App* scop_cmd = app.add_subcommand("scop", "State-context-property systems");
  scop_cmd->require_subcommand(1);

  auto val_opts = std::make_shared<CommonOptions>();
  CLI::App* scop_validate = scop_cmd->add_subcommand("validate", "Check system invariants");
  scop_validate->add_option("--in", val_opts->in_path, "System JSON")->required();
  add_out_options(scop_validate, *val_opts);
  scop_validate->callback(guarded([val_opts, &exit_code]() {
    const std::string bytes = read_file(val_opts->in_path);
    const conceptlab::scop::ScopSystem system = conceptlab::scop::parse_system(bytes);
    const conceptlab::scop::ValidationResult result = conceptlab::scop::validate(system);
    emit_report(conceptlab::report::scop_validate_report(system, result, bytes),
                val_opts->out_path, val_opts->csv);
    if (!result.ok) exit_code = 1;
  }));

  auto evolve_opts = std::make_shared<CommonOptions>();
  auto evolve_dist = std::make_shared<std::string>();
  auto evolve_contexts = std::make_shared<std::vector<std::string>>();
  CLI::App* scop_evolve = scop_cmd->add_subcommand("evolve", "Apply contexts to a distribution");
  scop_evolve->add_option("--in", evolve_opts->in_path, "System JSON")->required();
  scop_evolve->add_option("--dist", *evolve_dist,
                          "Initial distribution: inline JSON object or a file path "
                          "(default: point mass at the ground state)");
  scop_evolve->add_option("--ctx", *evolve_contexts, "Context to apply, repeatable, in order");
  add_out_options(scop_evolve, *evolve_opts);
  scop_evolve->callback(guarded([evolve_opts, evolve_dist, evolve_contexts]() {
    const std::string bytes = read_file(evolve_opts->in_path);
    const conceptlab::scop::ScopSystem system = conceptlab::scop::parse_system(bytes);
    conceptlab::scop::StateDistribution initial =
        conceptlab::scop::StateDistribution::point_mass(system, system.ground_state);
    if (!evolve_dist->empty()) {
      std::string dist_text = *evolve_dist;
      if (dist_text.find('{') == std::string::npos) dist_text = read_file(dist_text);
      json parsed;
      try {
        parsed = json::parse(dist_text);
      } catch (const json::exception& e) {
        throw conceptlab::ParseError(std::string("invalid distribution JSON: ") + e.what());
      }
      if (!parsed.is_object())
        throw conceptlab::ParseError("distribution must be a JSON object of state: weight");
      std::map<std::string, double> values;
      for (const auto& [state, weight] : parsed.items()) {
        if (!weight.is_number())
          throw conceptlab::ParseError("distribution weight for '" + state +
                                       "' must be a number");
        values[state] = weight.get<double>();
      }
      initial = conceptlab::scop::StateDistribution::from_map(system, values);
    }
    const conceptlab::scop::StateDistribution final_dist =
        conceptlab::scop::evolve_sequence(system, initial, *evolve_contexts);
    emit_report(conceptlab::report::scop_evolve_report(system, initial, final_dist,
                                                       *evolve_contexts, bytes),
                evolve_opts->out_path, evolve_opts->csv);
  }));

  auto sim_opts = std::make_shared<CommonOptions>();
  auto sim_start = std::make_shared<std::string>();
  auto sim_contexts = std::make_shared<std::vector<std::string>>();
  auto sim_seed = std::make_shared<std::uint64_t>(0);
  auto sim_runs = std::make_shared<std::uint64_t>(1);
  CLI::App* scop_simulate = scop_cmd->add_subcommand("simulate", "Sample state trajectories");
  scop_simulate->add_option("--in", sim_opts->in_path, "System JSON")->required();
  scop_simulate->add_option("--start", *sim_start,
                            "Start state (default: the ground state)");
  scop_simulate->add_option("--ctx", *sim_contexts, "Context to apply, repeatable, in order");
  scop_simulate->add_option("--seed", *sim_seed, "Base RNG seed; run i uses seed + i");
  scop_simulate->add_option("--runs", *sim_runs, "Number of trajectories");
  add_out_options(scop_simulate, *sim_opts);
  scop_simulate->callback(guarded([sim_opts, sim_start, sim_contexts, sim_seed, sim_runs]() {
    const std::string bytes = read_file(sim_opts->in_path);
    const conceptlab::scop::ScopSystem system = conceptlab::scop::parse_system(bytes);
    const std::string start = sim_start->empty() ? system.ground_state : *sim_start;
    std::vector<std::vector<std::string>> trajectories;
    trajectories.reserve(*sim_runs);
    for (std::uint64_t i = 0; i < *sim_runs; ++i)
      trajectories.push_back(
          conceptlab::scop::sample_trajectory(system, start, *sim_contexts, *sim_seed + i));
    emit_report(conceptlab::report::scop_simulate_report(system, trajectories, start,
                                                         *sim_contexts, *sim_seed, bytes),
                sim_opts->out_path, sim_opts->csv);
  }));

  auto poll_opts = std::make_shared<CommonOptions>();
  auto poll_for = std::make_shared<double>(0.0);
  auto poll_against = std::make_shared<double>(0.0);
  auto poll_undetermined = std::make_shared<double>(0.0);
  auto poll_collapse = std::make_shared<double>(0.5);
  CLI::App* scop_poll = scop_cmd->add_subcommand("poll", "Three-state opinion-poll model");
  scop_poll->add_option("--for", *poll_for, "Share already in favor")->required();
  scop_poll->add_option("--against", *poll_against, "Share already against")->required();
  scop_poll->add_option("--undetermined", *poll_undetermined, "Share with no settled opinion")
      ->required();
  scop_poll->add_option("--collapse", *poll_collapse,
                        "Probability the poll pushes an undetermined mind to 'for'")
      ->required();
  add_out_options(scop_poll, *poll_opts);
  scop_poll->callback(guarded([poll_opts, poll_for, poll_against, poll_undetermined,
                               poll_collapse]() {
    emit_report(conceptlab::report::scop_poll_report(*poll_for, *poll_against,
                                                     *poll_undetermined, *poll_collapse),
                poll_opts->out_path, poll_opts->csv);
  }));

  // corpus
  CLI::App* corpus_cmd = app.add_subcommand("corpus", "Local corpus co-occurrence counts");
  corpus_cmd->require_subcommand(1);

  auto index_opts = std::make_shared<CommonOptions>();
  CLI::App* corpus_index = corpus_cmd->add_subcommand("index", "Build a document-frequency index");
  corpus_index
      ->add_option("--in", index_opts->in_path,
                   "Corpus: text file (one document per line) or directory of files")
      ->required();
  add_out_options(corpus_index, *index_opts);
  corpus_index->callback(guarded([index_opts]() {
    const auto documents = conceptlab::ingest::load_corpus(index_opts->in_path);
    const conceptlab::ingest::CorpusIndex index =
        conceptlab::ingest::build_corpus_index(documents);
    std::string joined;
    for (const std::string& doc : documents) {
      joined += doc;
      joined.push_back('\n');
    }
    emit_report(conceptlab::report::corpus_index_report(index, joined), index_opts->out_path,
                index_opts->csv);
  }));

  auto guppy_opts = std::make_shared<CommonOptions>();
  auto guppy_exemplar = std::make_shared<std::string>();
  auto guppy_a = std::make_shared<std::string>();
  auto guppy_b = std::make_shared<std::string>();
  CLI::App* corpus_guppy = corpus_cmd->add_subcommand(
      "guppy", "Co-occurrence membership record for (exemplar | conceptA, conceptB)");
  corpus_guppy->add_option("--in", guppy_opts->in_path, "Corpus file or directory")->required();
  corpus_guppy->add_option("--exemplar", *guppy_exemplar, "Exemplar term")->required();
  corpus_guppy->add_option("--concept-a", *guppy_a, "First concept term")->required();
  corpus_guppy->add_option("--concept-b", *guppy_b, "Second concept term")->required();
  add_out_options(corpus_guppy, *guppy_opts);
  corpus_guppy->callback(guarded([guppy_opts, guppy_exemplar, guppy_a, guppy_b]() {
    const auto documents = conceptlab::ingest::load_corpus(guppy_opts->in_path);
    const conceptlab::ingest::CorpusIndex index =
        conceptlab::ingest::build_corpus_index(documents);
    std::string joined;
    for (const std::string& doc : documents) {
      joined += doc;
      joined.push_back('\n');
    }
    const conceptlab::MembershipRecord record =
        conceptlab::ingest::guppy_scan(index, *guppy_exemplar, *guppy_a, *guppy_b);
    emit_report(conceptlab::report::corpus_guppy_report(index, record, joined),
                guppy_opts->out_path, guppy_opts->csv);
  }));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) return app.exit(e);
    app.exit(e);
    return 1;  // usage problems are data errors, not environment errors
  }
  return exit_code;
}
