#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "chier/cli.hpp"
#include "chier/error.hpp"
#include "chier/locc.hpp"
#include "doctest.h"

using namespace chier;
using namespace chier::cli;
using nlohmann::json;

namespace {

const std::filesystem::path kData = CHIER_DATA_DIR;

std::string data(const char* name) { return (kData / name).string(); }

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "chier");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected chier::Error");
  return ErrorKind::OutOfRange;
}

std::string error_text(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

// Rows of a rendered table: label -> whitespace-separated value cells.
std::map<std::string, std::vector<std::string>> table_rows(const std::string& text) {
  std::map<std::string, std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("  ", 0) != 0 || line.size() < 24) continue;
    std::string label = line.substr(2, 20);
    label.erase(label.find_last_not_of(' ') + 1);
    std::istringstream cells(line.substr(22));
    std::vector<std::string> values;
    for (std::string c; cells >> c;) values.push_back(c);
    rows[label] = values;
  }
  return rows;
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("chier_cli_test_" + name);
}

}  // namespace

TEST_SUITE("state documents") {
  TEST_CASE("schmidt document") {
    const PureState psi = parse_state(data("psi.json"));
    CHECK(psi.dim_a() == 3);
    const SchmidtSpectrum s = schmidt_spectrum(psi);
    CHECK(std::abs(s[0] - 0.5) <= 1e-12);
    CHECK(std::abs(s[1] - 0.4) <= 1e-12);
    CHECK(std::abs(s[2] - 0.1) <= 1e-12);
  }

  TEST_CASE("six-digit coefficients need renormalization") {
    CHECK(kind_of([] { parse_state(data("psi_rounded.json")); }) == ErrorKind::NotNormalized);
    const PureState psi = parse_state(data("psi_rounded.json"), true);
    const SchmidtSpectrum s = schmidt_spectrum(psi);
    CHECK(std::abs(s[0] - 0.5) <= 1e-6);
    CHECK(std::abs(s[1] - 0.4) <= 1e-6);
    CHECK(std::abs(s[2] - 0.1) <= 1e-6);
  }

  TEST_CASE("amplitude document") {
    const PureState ket = parse_state(data("ket00.json"));
    CHECK(ket.amplitude(0, 0) == Complex(1.0));
    CHECK(ket.amplitude(1, 1) == Complex(0.0));
    const PureState prod = parse_state(data("product.json"));
    CHECK(std::abs(prod.amplitude(1, 2) - Complex(0.6, 0.8)) <= 1e-15);
  }

  TEST_CASE("malformed documents name the field") {
    const std::string msg = error_text([] { parse_state(data("malformed.json")); });
    CHECK(msg.find("ParseError") != std::string::npos);
    CHECK(msg.find("amplitudes[0].re") != std::string::npos);

    CHECK(kind_of([] { parse_state_text("{\"dims\":[2,2]}"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_state_text("{\"dims\":[2],\"schmidt\":[1]}"); }) ==
          ErrorKind::ParseError);
    CHECK(kind_of([] {
            parse_state_text("{\"dims\":[2,2],\"schmidt\":[1],\"amplitudes\":[]}");
          }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_state_text("{\"dims\":[2,2],\"schmidt\":[1,0,0]}"); }) ==
          ErrorKind::ParseError);
    const std::string syntax = error_text([] { parse_state_text("{\"dims\":[2,2],"); });
    CHECK(syntax.find("ParseError") != std::string::npos);
    CHECK(syntax.find("line") != std::string::npos);
    CHECK(kind_of([] { parse_state(data("missing.json")); }) == ErrorKind::ParseError);
  }

  TEST_CASE("domain errors pass through") {
    CHECK(kind_of([] { parse_state(data("unnormalized.json")); }) == ErrorKind::NotNormalized);
    CHECK_NOTHROW(parse_state(data("unnormalized.json"), true));
    CHECK(kind_of([] {
            parse_state_text("{\"dims\":[2,2],\"amplitudes\":[{\"i\":2,\"j\":0,\"re\":1}]}");
          }) == ErrorKind::IndexOutOfRange);
    CHECK(kind_of([] {
            parse_state_text(
                "{\"dims\":[2,2],\"amplitudes\":[{\"i\":0,\"j\":0,\"re\":1},"
                "{\"i\":0,\"j\":0,\"re\":0}]}");
          }) == ErrorKind::DuplicateEntry);
  }

  TEST_CASE("density documents") {
    CHECK_NOTHROW(parse_density(data("bell_density.json")));
    CHECK(kind_of([] { parse_density_text("{\"dims\":[4],\"matrix\":[[1,0]]}"); }) ==
          ErrorKind::ParseError);
    std::string identity = "{\"dims\":[4],\"matrix\":[";
    for (int k = 0; k < 16; ++k) identity += std::string(k ? "," : "") + (k % 5 == 0 ? "1" : "0");
    identity += "]}";
    CHECK(kind_of([&] { parse_density_text(identity); }) == ErrorKind::InvalidDensity);
  }

  TEST_CASE("emitted documents round-trip exactly") {
    SeededRng rng(900);
    for (int trial = 0; trial < 50; ++trial) {
      const PureState s = random_pure(1 + rng.below(5), 1 + rng.below(5), rng);
      const PureState back = parse_state_text(state_document(s).dump());
      CHECK(back == s);
    }
  }

  TEST_CASE("emit-state subcommand round-trips through a file") {
    const std::filesystem::path path = scratch("emit.json");
    const RunResult r =
        invoke({"emit-state", "--random", "--dims", "3,4", "--seed", "17", "-o", path.string()});
    REQUIRE(r.code == 0);
    SeededRng rng(17);
    const PureState expected = random_pure(3, 4, rng);
    CHECK(parse_state(path) == expected);

    const std::filesystem::path again = scratch("emit2.json");
    REQUIRE(invoke({"emit-state", path.string(), "-o", again.string()}).code == 0);
    CHECK(read_file(again) == read_file(path));
    std::filesystem::remove(path);
    std::filesystem::remove(again);

    const RunResult named = invoke({"emit-state", "--example", "phi-third"});
    REQUIRE(named.code == 0);
    CHECK(parse_state_text(named.out) == fixtures::qutrit_family(1.0 / 3.0));
    CHECK(invoke({"emit-state"}).code == kParseError);
    CHECK(invoke({"emit-state", "--example", "psi", "--random"}).code == kParseError);
  }

  TEST_CASE("digest") {
    CHECK(digest("") == "fnv1a64:cbf29ce484222325");
    CHECK(digest("a") == "fnv1a64:af63dc4c8601ec8c");
  }
}

TEST_SUITE("reports") {
  TEST_CASE("number formatting") {
    CHECK(format_number(0.29, 6) == "0.29");
    CHECK(format_number(0.2899999999999999, 6) == "0.29");
    CHECK(format_number(1.0 / 54.0, 6) == "0.0185185");
    CHECK(format_number(0.0, 6) == "0");
    CHECK(format_number(-0.0, 6) == "0");
  }

  TEST_CASE("measure on the worked state") {
    const Report r = cmd_measure(data("psi.json"), MeasureOptions{});
    const auto rows = table_rows(r.text);
    CHECK(rows.at("C2") == std::vector<std::string>{"0.29"});
    CHECK(rows.at("C3") == std::vector<std::string>{"0.02"});
    CHECK(rows.at("I1") == std::vector<std::string>{"0.42"});
    CHECK(rows.at("schmidt rank") == std::vector<std::string>{"3"});
    CHECK(r.data["schmidt_rank"] == 3);
    CHECK(r.data["hierarchy"]["path"] == "eig");
    CHECK(r.data["provenance"]["tool"] == "chier");
    CHECK(r.data["provenance"]["input_digest"] == digest(read_file(data("psi.json"))));
    CHECK(std::abs(r.data["rungta_concurrence"].get<double>() - std::sqrt(1.16)) <= 1e-12);
  }

  TEST_CASE("measure paths agree") {
    for (const char* p : {"eig", "minors", "newton"}) {
      MeasureOptions opt;
      opt.path = *parse_hierarchy_path(p);
      const Report r = cmd_measure(data("psi_prime.json"), opt);
      CHECK(r.data["hierarchy"]["path"] == p);
      const auto v = r.data["hierarchy"]["values"].get<std::vector<double>>();
      CHECK(std::abs(v[1] - 0.2925) <= 1e-12);
      CHECK(std::abs(v[2] - 0.02475) <= 1e-12);
    }
    CHECK_FALSE(parse_hierarchy_path("qr").has_value());
  }

  TEST_CASE("measure on a product state") {
    const Report r = cmd_measure(data("product.json"), MeasureOptions{});
    const auto v = r.data["hierarchy"]["values"].get<std::vector<double>>();
    for (std::size_t k = 1; k < v.size(); ++k) CHECK(v[k] == 0.0);
    CHECK(r.data["eof_bits"] == 0.0);
    CHECK(r.data["schmidt_rank"] == 1);
  }

  TEST_CASE("minor path guard") {
    MeasureOptions opt;
    opt.path = HierarchyPath::Minors;
    CHECK(kind_of([&] { cmd_measure(data("product13.json"), opt); }) ==
          ErrorKind::DimensionTooLargeForMinors);
    const RunResult r = invoke({"measure", "--path", "minors", data("product13.json")});
    CHECK(r.code == kDomainError);
    CHECK(r.err.find("DimensionTooLargeForMinors") != std::string::npos);
    CHECK(invoke({"measure", data("product13.json")}).code == 0);
  }

  TEST_CASE("JSON values match the table at 12 digits") {
    for (const char* file : {"psi.json", "phi.json", "psi_prime.json", "product.json"}) {
      CAPTURE(file);
      const RunResult table = invoke({"measure", "--digits", "12", data(file)});
      const RunResult machine = invoke({"measure", "--json", data(file)});
      REQUIRE(table.code == 0);
      REQUIRE(machine.code == 0);
      const json doc = json::parse(machine.out);
      const auto rows = table_rows(table.out);
      const auto same = [&](const std::string& label, double value) {
        CAPTURE(label);
        REQUIRE(rows.count(label) == 1);
        REQUIRE(rows.at(label).size() == 1);
        CHECK(rows.at(label)[0] == format_number(value, 12));
      };
      const auto h = doc["hierarchy"]["values"].get<std::vector<double>>();
      for (std::size_t k = 0; k < h.size(); ++k) same("C" + std::to_string(k + 1), h[k]);
      const auto inv = doc["invariants"].get<std::vector<double>>();
      for (std::size_t k = 0; k < inv.size(); ++k) same("I" + std::to_string(k), inv[k]);
      same("EoF (bits)", doc["eof_bits"].get<double>());
      same("AF concurrence", doc["af_concurrence"].get<double>());
      same("Rungta concurrence", doc["rungta_concurrence"].get<double>());
      for (const json& entry : doc["renyi"]) {
        same("S_" + format_number(entry["order"].get<double>(), 12), entry["value"].get<double>());
      }
      const auto spectrum = doc["schmidt_spectrum"].get<std::vector<double>>();
      const auto cells = rows.at("schmidt spectrum");
      REQUIRE(cells.size() == spectrum.size());
      for (std::size_t k = 0; k < cells.size(); ++k) CHECK(cells[k] == format_number(spectrum[k], 12));
    }
  }

  TEST_CASE("renyi orders from the command line") {
    const RunResult r = invoke({"measure", "--json", "--renyi", "2,3", data("psi.json")});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    REQUIRE(doc["renyi"].size() == 2);
    CHECK(doc["renyi"][1]["order"] == 3.0);
    CHECK(invoke({"measure", "--renyi", "0", data("psi.json")}).code == kDomainError);
  }

  TEST_CASE("schmidt report") {
    const Report r = cmd_schmidt(data("psi.json"), false, 6);
    CHECK(r.data["schmidt_rank"] == 3);
    CHECK(r.data["dims"] == json::array({3, 3}));
  }

  TEST_CASE("locc reports") {
    const Report r17 = cmd_locc(data("psi.json"), data("phi.json"), false, 6);
    CHECK(r17.data["verdict"] == "Incomparable");
    CHECK(r17.data["dominance"]["class"] == "mixed");
    CHECK(r17.data["source_to_target"] == false);
    const Report r20 = cmd_locc(data("psi_prime.json"), data("psi.json"), false, 6);
    CHECK(r20.data["verdict"] == "Incomparable");
    CHECK(r20.data["dominance"]["class"] == "source");
    const auto slack = r20.data["dominance"]["slack"].get<std::vector<double>>();
    CHECK(std::abs(slack[1] - 0.0025) <= 1e-12);
    CHECK(std::abs(slack[2] - 0.00475) <= 1e-12);
    const Report same = cmd_locc(data("psi.json"), data("psi.json"), false, 6);
    CHECK(same.data["verdict"] == "Equivalent");
    CHECK(same.data["dominance"]["class"] == "equal");
    const Report down = cmd_locc(data("psi.json"), data("ket00.json"), false, 6);
    CHECK(down.data["verdict"] == "ForwardOnly");
  }

  TEST_CASE("wootters reports") {
    const Report bell = cmd_wootters(data("bell_density.json"), 6);
    CHECK(std::abs(bell.data["concurrence"].get<double>() - 1.0) <= 1e-12);
    CHECK(std::abs(bell.data["eof_bits"].get<double>() - 1.0) <= 1e-12);
    CHECK(bell.data["ppt"] == "Entangled");
    const Report mixed = cmd_wootters(data("mixed_density.json"), 6);
    CHECK(mixed.data["concurrence"].get<double>() <= 1e-14);
    CHECK(mixed.data["eof_bits"].get<double>() <= 1e-12);
    CHECK(mixed.data["ppt"] == "Separable");
    const Report werner = cmd_wootters(data("werner09_density.json"), 6);
    CHECK(std::abs(werner.data["concurrence"].get<double>() - 0.85) <= 1e-9);
    CHECK(werner.data["lambdas"].size() == 4);
  }
}

TEST_SUITE("scan") {
  TEST_CASE("two qubits never show dominance without convertibility") {
    ScanOptions opt;
    opt.dim_a = opt.dim_b = 2;
    opt.samples = 2000;
    opt.seed = 5;
    const ScanCounts c = scan_pairs(opt);
    CHECK(c.incomparable_full_dominance == 0);
    CHECK(c.incomparable_mixed == 0);
    CHECK(c.comparable == 2000);
  }

  TEST_CASE("replay and thread independence") {
    ScanOptions opt;
    opt.samples = 3000;
    opt.seed = 11;
    opt.threads = 1;
    const ScanCounts serial = scan_pairs(opt);
    CHECK(scan_pairs(opt) == serial);
    for (unsigned t : {2u, 3u, 8u}) {
      opt.threads = t;
      CHECK(scan_pairs(opt) == serial);
    }
    opt.seed = 12;
    opt.threads = 1;
    CHECK_FALSE(scan_pairs(opt) == serial);
  }

  TEST_CASE("every class occurs for qutrits") {
    ScanOptions opt;
    opt.samples = 10000;
    opt.seed = 2024;
    const ScanCounts c = scan_pairs(opt);
    CHECK(c.comparable > 0);
    CHECK(c.incomparable_mixed > 0);
    CHECK(c.incomparable_full_dominance > 0);
    CHECK(c.comparable + c.incomparable_mixed + c.incomparable_full_dominance == 10000);
  }

  TEST_CASE("classification of the pinned pairs") {
    CHECK(classify_pair(fixtures::nielsen_source(), fixtures::nielsen_target()) ==
          PairClass::IncomparableMixed);
    CHECK(classify_pair(fixtures::dominating_source(), fixtures::nielsen_source()) ==
          PairClass::IncomparableFullDominance);
    CHECK(classify_pair(fixtures::nielsen_source(), fixtures::bell_in_qutrits()) ==
          PairClass::Comparable);
  }

  TEST_CASE("scan command output") {
    const RunResult a = invoke({"scan", "--json", "--dims", "3x3", "--samples", "500", "--seed", "9"});
    const RunResult b = invoke({"scan", "--json", "--dims", "3", "--samples", "500", "--seed", "9",
                                "--threads", "4"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const json doc = json::parse(a.out);
    CHECK(doc["provenance"]["seed"] == 9);
    CHECK(doc["samples"] == 500);
    CHECK(invoke({"scan", "--dims", "3,0"}).code == kParseError);
    CHECK(invoke({"scan", "--dims", "abc"}).code == kParseError);
  }
}

TEST_SUITE("worked examples") {
  TEST_CASE("self-check passes and reports every value") {
    const Report r = cmd_paper_examples();
    CHECK(r.exit_code == kSuccess);
    CHECK(r.data["all_pass"] == true);
    for (const json& check : r.data["checks"]) {
      CAPTURE(check["name"].get<std::string>());
      CHECK(check["pass"] == true);
    }
    CHECK(r.text.find("C2(Psi)=0.29, C2(Phi)=0.28") != std::string::npos);
    CHECK(r.text.find("0.0185185") != std::string::npos);
    CHECK(r.text.find("x*=0.2271±5e-4, E_f(phi(x*))=1.000000") != std::string::npos);
    const json& v = r.data["values"];
    CHECK(std::abs(v["C3_phi_third"].get<double>() - 1.0 / 54.0) <= 1e-12);
    CHECK(v["C3_psi"] == 0.0);
    CHECK(std::abs(v["x_star"].get<double>() - 0.2271) <= 5e-4);
  }

  TEST_CASE("named fixtures") {
    for (std::string_view name : fixtures::names()) {
      CAPTURE(name);
      CHECK(fixtures::by_name(name).has_value());
    }
    CHECK_FALSE(fixtures::by_name("nope").has_value());
    CHECK(kind_of([] { fixtures::qutrit_family(1.5); }) == ErrorKind::OutOfRange);
  }
}

TEST_SUITE("exit codes") {
  TEST_CASE("mapping") {
    CHECK(exit_code_for(ErrorKind::ParseError) == kParseError);
    CHECK(exit_code_for(ErrorKind::SelfCheckFailed) == kSelfCheckFailed);
    CHECK(exit_code_for(ErrorKind::NotNormalized) == kDomainError);
    CHECK(exit_code_for(ErrorKind::InvalidDensity) == kDomainError);
  }

  TEST_CASE("through run") {
    CHECK(invoke({"measure", data("psi.json")}).code == 0);
    CHECK(invoke({"measure", data("malformed.json")}).code == kParseError);
    CHECK(invoke({"measure", data("unnormalized.json")}).code == kDomainError);
    CHECK(invoke({"measure", "--renormalize", data("unnormalized.json")}).code == 0);
    CHECK(invoke({"wootters", data("psi.json")}).code == kParseError);
    CHECK(invoke({"frobnicate"}).code == kParseError);
    CHECK(invoke({}).code == kParseError);
    CHECK(invoke({"measure", "--digits", "40", data("psi.json")}).code == kParseError);
    CHECK(invoke({"paper-examples"}).code == 0);
    CHECK(invoke({"--help"}).code == 0);
  }
}
