#include <charconv>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "chier/cli.hpp"
#include "chier/error.hpp"

namespace chier::cli {

namespace {

std::pair<std::size_t, std::size_t> parse_dims(const std::string& text) {
  std::vector<std::size_t> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find_first_of(",x", start);
    const std::string piece = text.substr(start, end == std::string::npos ? end : end - start);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (ec != std::errc() || ptr != piece.data() + piece.size() || value == 0) {
      throw Error(ErrorKind::ParseError, "--dims: expected D or DA,DB, got '" + text + "'");
    }
    parts.push_back(value);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  if (parts.size() == 1) return {parts[0], parts[0]};
  if (parts.size() == 2) return {parts[0], parts[1]};
  throw Error(ErrorKind::ParseError, "--dims: expected D or DA,DB, got '" + text + "'");
}

void emit(const Report& report, bool as_json, std::ostream& out) {
  if (as_json) {
    out << report.data.dump(2) << '\n';
  } else {
    out << report.text;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Concurrence hierarchy, majorization and two-qubit concurrence toolkit", "chier"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  bool as_json = false;
  bool renormalize = false;
  int digits = 6;
  const auto common = [&](CLI::App* sub, bool states) {
    sub->add_flag("--json", as_json, "Machine-readable output");
    sub->add_option("--digits", digits, "Significant digits in tables")
        ->check(CLI::Range(1, 17));
    if (states) sub->add_flag("--renormalize", renormalize, "Rescale inputs to unit norm");
  };

  std::string state_path;
  std::string path_name = "eig";
  std::vector<double> renyi_orders{0.5, 1.0, 2.0};
  CLI::App* measure = app.add_subcommand("measure", "Entanglement measures of a pure state");
  measure->add_option("state", state_path, "State document")->required();
  measure->add_option("--path", path_name, "Hierarchy computation: eig, minors or newton")
      ->check(CLI::IsMember({"eig", "minors", "newton"}));
  measure->add_option("--renyi", renyi_orders, "Renyi orders")->delimiter(',');
  common(measure, true);

  CLI::App* schmidt = app.add_subcommand("schmidt", "Schmidt spectrum and rank of a pure state");
  schmidt->add_option("state", state_path, "State document")->required();
  common(schmidt, true);

  std::string source_path, target_path;
  CLI::App* locc = app.add_subcommand("locc", "Nielsen verdict and hierarchy dominance");
  locc->add_option("source", source_path, "Source state document")->required();
  locc->add_option("target", target_path, "Target state document")->required();
  common(locc, true);

  std::string density_path;
  CLI::App* wootters = app.add_subcommand("wootters", "Two-qubit concurrence, EoF and PPT test");
  wootters->add_option("density", density_path, "4x4 density document")->required();
  common(wootters, false);

  std::string dims_text = "3";
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  CLI::App* scan = app.add_subcommand("scan", "Classify random state pairs");
  scan->add_option("--dims", dims_text, "D or DA,DB");
  scan->add_option("--samples", samples, "Number of pairs")->check(CLI::PositiveNumber);
  scan->add_option("--seed", seed, "Seed");
  scan->add_option("--threads", threads, "Worker threads (0: all cores)");
  common(scan, false);

  CLI::App* paper = app.add_subcommand("paper-examples", "Reproduce and self-check the worked examples");
  common(paper, false);

  std::string emit_input, example_name, output_path;
  bool random_state = false;
  CLI::App* emit_state = app.add_subcommand("emit-state", "Write a state as an amplitude document");
  emit_state->add_option("state", emit_input, "State document to re-emit");
  const std::vector<std::string_view> example_names = fixtures::names();
  emit_state->add_option("--example", example_name, "Named state")
      ->check(CLI::IsMember(std::vector<std::string>(example_names.begin(), example_names.end())));
  emit_state->add_flag("--random", random_state, "Random Haar-induced state");
  emit_state->add_option("--dims", dims_text, "D or DA,DB (with --random)");
  emit_state->add_option("--seed", seed, "Seed (with --random)");
  emit_state->add_option("-o,--output", output_path, "Write to a file instead of stdout");
  emit_state->add_flag("--renormalize", renormalize, "Rescale input to unit norm");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kParseError;
  }

  try {
    Report report;
    if (measure->parsed()) {
      MeasureOptions opt;
      opt.renormalize = renormalize;
      opt.path = *parse_hierarchy_path(path_name);
      opt.renyi_orders = renyi_orders;
      opt.digits = digits;
      report = cmd_measure(state_path, opt);
    } else if (schmidt->parsed()) {
      report = cmd_schmidt(state_path, renormalize, digits);
    } else if (locc->parsed()) {
      report = cmd_locc(source_path, target_path, renormalize, digits);
    } else if (wootters->parsed()) {
      report = cmd_wootters(density_path, digits);
    } else if (scan->parsed()) {
      ScanOptions opt;
      std::tie(opt.dim_a, opt.dim_b) = parse_dims(dims_text);
      opt.samples = samples;
      opt.seed = seed;
      opt.threads = threads;
      opt.digits = digits;
      report = cmd_scan(opt);
    } else if (paper->parsed()) {
      report = cmd_paper_examples(digits);
    } else if (emit_state->parsed()) {
      const int sources = static_cast<int>(!emit_input.empty()) +
                          static_cast<int>(!example_name.empty()) + static_cast<int>(random_state);
      if (sources != 1) {
        throw Error(ErrorKind::ParseError,
                    "emit-state needs exactly one of a state file, --example or --random");
      }
      std::optional<PureState> state;
      if (!emit_input.empty()) {
        state = parse_state(emit_input, renormalize);
      } else if (!example_name.empty()) {
        state = fixtures::by_name(example_name);
      } else {
        const auto [da, db] = parse_dims(dims_text);
        SeededRng rng(seed);
        state = random_pure(da, db, rng);
      }
      const std::string doc = state_document(*state).dump(2) + "\n";
      if (output_path.empty()) {
        out << doc;
      } else {
        std::ofstream f(output_path);
        if (!f) throw Error(ErrorKind::ParseError, "cannot write '" + output_path + "'");
        f << doc;
      }
      return kSuccess;
    }
    emit(report, as_json, out);
    if (report.exit_code != kSuccess) {
      err << "self-check failed\n";
    }
    return report.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
}

}  // namespace chier::cli
