#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <thread>

#include "chier/cli.hpp"
#include "chier/error.hpp"
#include "chier/locc.hpp"

namespace chier::cli {

using nlohmann::json;

namespace {

json provenance(const std::optional<std::string>& input_digest,
                const std::optional<std::uint64_t>& seed) {
  json p = {{"tool", "chier"}, {"version", kToolVersion}};
  p["input_digest"] = input_digest ? json(*input_digest) : json(nullptr);
  p["seed"] = seed ? json(*seed) : json(nullptr);
  return p;
}

std::string join(std::span<const double> xs, int digits) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += "  ";
    out += format_number(xs[i], digits);
  }
  return out;
}

void row(std::ostringstream& os, std::string_view label, std::string_view value) {
  os << "  " << std::left << std::setw(22) << label << value << '\n';
}

std::string dims_label(const PureState& s) {
  return std::to_string(s.dim_a()) + "x" + std::to_string(s.dim_b());
}

}  // namespace

std::optional<HierarchyPath> parse_hierarchy_path(std::string_view name) {
  if (name == "eig") return HierarchyPath::Eigenvalues;
  if (name == "minors") return HierarchyPath::Minors;
  if (name == "newton") return HierarchyPath::Newton;
  return std::nullopt;
}

std::string_view to_string(HierarchyPath path) noexcept {
  switch (path) {
    case HierarchyPath::Eigenvalues: return "eig";
    case HierarchyPath::Minors: return "minors";
    case HierarchyPath::Newton: return "newton";
  }
  return "eig";
}

ConcurrenceHierarchy hierarchy_by(const PureState& state, HierarchyPath path) {
  switch (path) {
    case HierarchyPath::Minors: return hierarchy_via_minors(state);
    case HierarchyPath::Newton: return hierarchy_via_invariants(state);
    case HierarchyPath::Eigenvalues: break;
  }
  return hierarchy(state);
}

// ---------------------------------------------------------------------------
// measure / schmidt

Report cmd_measure(const PureState& state, const MeasureOptions& options,
                   const std::string& input_digest) {
  const SchmidtSpectrum spectrum = schmidt_spectrum(state);
  const std::size_t rank = schmidt_rank(spectrum);
  const ConcurrenceHierarchy h = hierarchy_by(state, options.path);
  const InvariantVector inv = invariants(state);
  const double eof = eof_pure(state);
  const double af = af_concurrence(state);
  const double rungta = rungta_concurrence(state);

  json renyi = json::array();
  std::vector<double> renyi_values;
  for (double j : options.renyi_orders) {
    const double s = renyi_entropy(spectrum, j);
    renyi_values.push_back(s);
    renyi.push_back({{"order", j}, {"value", s}});
  }

  Report r;
  r.data = {{"command", "measure"},
            {"dims", {state.dim_a(), state.dim_b()}},
            {"schmidt_spectrum", spectrum.values()},
            {"schmidt_rank", rank},
            {"hierarchy", {{"path", to_string(options.path)}, {"values", h.values}}},
            {"invariants", inv.values},
            {"renyi", renyi},
            {"eof_bits", eof},
            {"af_concurrence", af},
            {"rungta_concurrence", rungta},
            {"provenance", provenance(input_digest, std::nullopt)}};

  const int dg = options.digits;
  std::ostringstream os;
  os << "state " << dims_label(state) << '\n';
  row(os, "schmidt spectrum", join(spectrum.values(), dg));
  row(os, "schmidt rank", std::to_string(rank));
  os << "concurrence hierarchy (" << to_string(options.path) << ")\n";
  for (std::size_t k = 1; k <= h.size(); ++k) {
    row(os, "C" + std::to_string(k), format_number(h.level(k), dg));
  }
  os << "trace invariants\n";
  for (std::size_t k = 0; k < inv.size(); ++k) {
    row(os, "I" + std::to_string(k), format_number(inv[k], dg));
  }
  os << "entropies and concurrences\n";
  for (std::size_t n = 0; n < renyi_values.size(); ++n) {
    row(os, "S_" + format_number(options.renyi_orders[n], dg), format_number(renyi_values[n], dg));
  }
  row(os, "EoF (bits)", format_number(eof, dg));
  row(os, "AF concurrence", format_number(af, dg));
  row(os, "Rungta concurrence", format_number(rungta, dg));
  r.text = os.str();
  return r;
}

Report cmd_measure(const std::filesystem::path& path, const MeasureOptions& options) {
  const std::string text = read_file(path);
  PureState state = [&] {
    try {
      return parse_state_text(text, options.renormalize);
    } catch (const Error& e) {
      throw Error(e.kind(), path.string() + ": " + e.detail());
    }
  }();
  return cmd_measure(state, options, digest(text));
}

Report cmd_schmidt(const std::filesystem::path& path, bool renormalize, int digits) {
  const std::string text = read_file(path);
  const PureState state = parse_state_text(text, renormalize);
  const SchmidtSpectrum spectrum = schmidt_spectrum(state);
  std::vector<double> coeffs;
  for (double x : spectrum.values()) coeffs.push_back(std::sqrt(x));
  const std::size_t rank = schmidt_rank(spectrum);

  Report r;
  r.data = {{"command", "schmidt"},
            {"dims", {state.dim_a(), state.dim_b()}},
            {"schmidt_spectrum", spectrum.values()},
            {"schmidt_coefficients", coeffs},
            {"schmidt_rank", rank},
            {"provenance", provenance(digest(text), std::nullopt)}};
  std::ostringstream os;
  os << "state " << dims_label(state) << '\n';
  row(os, "spectrum", join(spectrum.values(), digits));
  row(os, "coefficients", join(coeffs, digits));
  row(os, "schmidt rank", std::to_string(rank));
  r.text = os.str();
  return r;
}

// ---------------------------------------------------------------------------
// locc

namespace {

std::string_view dominance_label(const DominanceReport& d) {
  if (d.source_dominates && d.target_dominates) return "equal";
  if (d.source_dominates) return "source";
  if (d.target_dominates) return "target";
  return "mixed";
}

}  // namespace

Report cmd_locc(const std::filesystem::path& source, const std::filesystem::path& target,
                bool renormalize, int digits) {
  const std::string src_text = read_file(source);
  const std::string tgt_text = read_file(target);
  const PureState a = parse_state_text(src_text, renormalize);
  const PureState b = parse_state_text(tgt_text, renormalize);
  const ConvertibilityVerdict v = nielsen_verdict(a, b);
  const DominanceReport d = hierarchy_dominance(a, b);

  Report r;
  r.data = {{"command", "locc"},
            {"verdict", to_string(v.verdict)},
            {"source_to_target", v.source_to_target()},
            {"target_to_source", v.target_to_source()},
            {"source_prefix_sums", v.source_prefix},
            {"target_prefix_sums", v.target_prefix},
            {"dominance",
             {{"source_levels", d.source_levels},
              {"target_levels", d.target_levels},
              {"slack", d.slack},
              {"source_dominates", d.source_dominates},
              {"target_dominates", d.target_dominates},
              {"mixed", d.mixed()},
              {"class", dominance_label(d)}}},
            {"provenance",
             provenance(digest(src_text + std::string(1, '\0') + tgt_text), std::nullopt)}};

  std::ostringstream os;
  os << "nielsen verdict: " << to_string(v.verdict) << '\n';
  row(os, "source prefix sums", join(v.source_prefix, digits));
  row(os, "target prefix sums", join(v.target_prefix, digits));
  os << "hierarchy dominance: " << dominance_label(d) << '\n';
  os << "  " << std::left << std::setw(6) << "k" << std::setw(16) << "C_k(source)"
     << std::setw(16) << "C_k(target)" << "slack\n";
  for (std::size_t k = 0; k < d.slack.size(); ++k) {
    os << "  " << std::left << std::setw(6) << (k + 1) << std::setw(16)
       << format_number(d.source_levels[k], digits) << std::setw(16)
       << format_number(d.target_levels[k], digits) << format_number(d.slack[k], digits) << '\n';
  }
  r.text = os.str();
  return r;
}

// ---------------------------------------------------------------------------
// wootters

Report cmd_wootters(const std::filesystem::path& path, int digits) {
  const std::string text = read_file(path);
  const TwoQubitDensity rho = [&] {
    try {
      return parse_density_text(text);
    } catch (const Error& e) {
      throw Error(e.kind(), path.string() + ": " + e.detail());
    }
  }();
  const std::array<double, 4> lambdas = wootters_lambdas(rho);
  const double c = wootters_concurrence(rho);
  const double eof = eof_from_concurrence(c);
  const PptVerdict ppt = ppt_check(rho);
  const std::string_view ppt_label = ppt == PptVerdict::Entangled ? "Entangled" : "Separable";

  Report r;
  r.data = {{"command", "wootters"},
            {"concurrence", c},
            {"eof_bits", eof},
            {"lambdas", lambdas},
            {"ppt", ppt_label},
            {"provenance", provenance(digest(text), std::nullopt)}};
  std::ostringstream os;
  row(os, "concurrence", format_number(c, digits));
  row(os, "EoF (bits)", format_number(eof, digits));
  row(os, "lambdas", join(lambdas, digits));
  row(os, "PPT", ppt_label);
  r.text = os.str();
  return r;
}

// ---------------------------------------------------------------------------
// scan

PairClass classify_pair(const PureState& a, const PureState& b) {
  if (nielsen_verdict(a, b).verdict != Verdict::Incomparable) return PairClass::Comparable;
  return hierarchy_dominance(a, b).mixed() ? PairClass::IncomparableMixed
                                           : PairClass::IncomparableFullDominance;
}

ScanCounts scan_pairs(const ScanOptions& options) {
  if (options.samples == 0) throw Error(ErrorKind::OutOfRange, "scan needs samples >= 1");
  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, 64);
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, options.samples));

  std::vector<ScanCounts> partial(threads);
  auto work = [&](unsigned t) {
    ScanCounts& c = partial[t];
    for (std::size_t n = t; n < options.samples; n += threads) {
      SeededRng rng = SeededRng::derive(options.seed, n);
      const PureState a = random_pure(options.dim_a, options.dim_b, rng);
      const PureState b = random_pure(options.dim_a, options.dim_b, rng);
      switch (classify_pair(a, b)) {
        case PairClass::Comparable: ++c.comparable; break;
        case PairClass::IncomparableMixed: ++c.incomparable_mixed; break;
        case PairClass::IncomparableFullDominance: ++c.incomparable_full_dominance; break;
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }

  ScanCounts total;
  for (const ScanCounts& c : partial) {
    total.comparable += c.comparable;
    total.incomparable_mixed += c.incomparable_mixed;
    total.incomparable_full_dominance += c.incomparable_full_dominance;
  }
  return total;
}

Report cmd_scan(const ScanOptions& options) {
  const ScanCounts c = scan_pairs(options);
  const double n = static_cast<double>(options.samples);
  const auto freq = [n](std::size_t count) { return static_cast<double>(count) / n; };

  Report r;
  r.data = {{"command", "scan"},
            {"dims", {options.dim_a, options.dim_b}},
            {"samples", options.samples},
            {"counts",
             {{"comparable", c.comparable},
              {"incomparable_mixed", c.incomparable_mixed},
              {"incomparable_full_dominance", c.incomparable_full_dominance}}},
            {"frequencies",
             {{"comparable", freq(c.comparable)},
              {"incomparable_mixed", freq(c.incomparable_mixed)},
              {"incomparable_full_dominance", freq(c.incomparable_full_dominance)}}},
            {"provenance", provenance(std::nullopt, options.seed)}};
  std::ostringstream os;
  os << "scan " << options.dim_a << "x" << options.dim_b << ", " << options.samples
     << " random pairs, seed " << options.seed << '\n';
  os << "  " << std::left << std::setw(30) << "class" << std::setw(10) << "count"
     << "frequency\n";
  const auto line = [&](std::string_view label, std::size_t count) {
    os << "  " << std::left << std::setw(30) << label << std::setw(10) << count
       << format_number(freq(count), options.digits) << '\n';
  };
  line("comparable", c.comparable);
  line("incomparable-mixed-dominance", c.incomparable_mixed);
  line("incomparable-full-dominance", c.incomparable_full_dominance);
  r.text = os.str();
  return r;
}

// ---------------------------------------------------------------------------
// paper-examples

namespace {

struct Check {
  std::string name;
  double value;
  double expected;
  double tolerance;

  bool pass() const { return std::abs(value - expected) <= tolerance; }
};

struct FlagCheck {
  std::string name;
  std::string value;
  std::string expected;

  bool pass() const { return value == expected; }
};

}  // namespace

Report cmd_paper_examples(int digits) {
  using namespace fixtures;
  const PureState psi = nielsen_source();
  const PureState phi = nielsen_target();
  const PureState psi_p = dominating_source();
  const PureState& phi_p = psi;
  const PureState bell3 = bell_in_qutrits();
  const PureState phi_third = qutrit_family(1.0 / 3.0);

  const ConcurrenceHierarchy h_psi = hierarchy(psi);
  const ConcurrenceHierarchy h_phi = hierarchy(phi);
  const ConcurrenceHierarchy h_psi_p = hierarchy(psi_p);
  const ConcurrenceHierarchy h_bell3 = hierarchy(bell3);
  const ConcurrenceHierarchy h_third = hierarchy(phi_third);
  const ConcurrenceHierarchy h_third_minors = hierarchy_via_minors(phi_third);

  const double x_root = unit_entropy_root(1e-12);
  const double eof_root = eof_pure(qutrit_family(x_root));
  const double x_third = bisect_root([](double x) { return (3.0 * x - 1.0) * (x - 1.0); }, 0.0,
                                     0.9, 1e-12);
  const double af_bell3 = af_concurrence(bell3);
  const double af_third = af_concurrence(phi_third);

  const ConvertibilityVerdict v_pp = nielsen_verdict(psi, phi);
  const ConvertibilityVerdict v_primed = nielsen_verdict(psi_p, phi_p);
  const DominanceReport d_pp = hierarchy_dominance(psi, phi);
  const DominanceReport d_primed = hierarchy_dominance(psi_p, phi_p);

  constexpr double kGolden = 1e-12;
  const std::vector<Check> checks = {
      {"C2(Psi)", h_psi.level(2), 0.29, kGolden},
      {"C3(Psi)", h_psi.level(3), 0.020, kGolden},
      {"C2(Phi)", h_phi.level(2), 0.28, kGolden},
      {"C3(Phi)", h_phi.level(3), 0.024, kGolden},
      {"C2(Psi')", h_psi_p.level(2), 0.2925, kGolden},
      {"C3(Psi')", h_psi_p.level(3), 0.02475, kGolden},
      {"C3(phi(1/3))", h_third.level(3), 1.0 / 54.0, kGolden},
      {"C3(phi(1/3)) via minors", h_third_minors.level(3), 1.0 / 54.0, kGolden},
      {"C3(psi)", h_bell3.level(3), 0.0, 0.0},
      {"x*", x_root, 0.2271, 5e-4},
      {"E_f(phi(x*))", eof_root, 1.0, 1e-6},
      {"E_f(psi)", eof_pure(bell3), 1.0, kGolden},
      {"root of (3x-1)(x-1)", x_third, 1.0 / 3.0, 1e-9},
      {"AF(phi(1/3)) - AF(psi)", af_third - af_bell3, 0.0, kGolden},
      {"C3(phi(1/3)) - C3(psi)", h_third.level(3) - h_bell3.level(3), 1.0 / 54.0, kGolden},
  };
  const std::vector<FlagCheck> flags = {
      {"verdict(Psi, Phi)", std::string(to_string(v_pp.verdict)), "Incomparable"},
      {"verdict(Psi', Phi')", std::string(to_string(v_primed.verdict)), "Incomparable"},
      {"dominance(Psi, Phi)", std::string(dominance_label(d_pp)), "mixed"},
      {"dominance(Psi', Phi')", std::string(dominance_label(d_primed)), "source"},
  };

  bool all_pass = true;
  json jchecks = json::array();
  for (const Check& c : checks) {
    all_pass = all_pass && c.pass();
    jchecks.push_back({{"name", c.name},
                       {"value", c.value},
                       {"expected", c.expected},
                       {"tolerance", c.tolerance},
                       {"pass", c.pass()}});
  }
  for (const FlagCheck& f : flags) {
    all_pass = all_pass && f.pass();
    jchecks.push_back(
        {{"name", f.name}, {"value", f.value}, {"expected", f.expected}, {"pass", f.pass()}});
  }

  Report r;
  r.data = {{"command", "paper-examples"},
            {"values",
             {{"C2_Psi", h_psi.level(2)},
              {"C3_Psi", h_psi.level(3)},
              {"C2_Phi", h_phi.level(2)},
              {"C3_Phi", h_phi.level(3)},
              {"C2_Psi_prime", h_psi_p.level(2)},
              {"C3_Psi_prime", h_psi_p.level(3)},
              {"C2_Phi_prime", h_psi.level(2)},
              {"C3_Phi_prime", h_psi.level(3)},
              {"C3_phi_third", h_third.level(3)},
              {"C3_psi", h_bell3.level(3)},
              {"x_star", x_root},
              {"eof_phi_x_star", eof_root},
              {"eof_psi", eof_pure(bell3)},
              {"af_psi", af_bell3},
              {"af_phi_third", af_third},
              {"slack_psi_phi", d_pp.slack},
              {"slack_psi_prime_phi_prime", d_primed.slack}}},
            {"verdicts",
             {{"psi_phi", to_string(v_pp.verdict)},
              {"psi_prime_phi_prime", to_string(v_primed.verdict)},
              {"dominance_psi_phi", dominance_label(d_pp)},
              {"dominance_psi_prime_phi_prime", dominance_label(d_primed)}}},
            {"checks", jchecks},
            {"all_pass", all_pass},
            {"provenance", provenance(std::nullopt, std::nullopt)}};

  const int dg = digits;
  std::ostringstream os;
  os << "C2(Psi)=" << format_number(h_psi.level(2), dg)
     << ", C2(Phi)=" << format_number(h_phi.level(2), dg) << '\n';
  os << "C3(Psi)=" << format_number(h_psi.level(3), dg)
     << ", C3(Phi)=" << format_number(h_phi.level(3), dg) << '\n';
  os << "C2(Psi')=" << format_number(h_psi_p.level(2), dg)
     << ", C2(Phi')=" << format_number(h_psi.level(2), dg) << '\n';
  os << "C3(Psi')=" << format_number(h_psi_p.level(3), dg)
     << ", C3(Phi')=" << format_number(h_psi.level(3), dg) << '\n';
  os << "verdict(Psi, Phi)=" << to_string(v_pp.verdict) << ", dominance " << dominance_label(d_pp)
     << '\n';
  os << "verdict(Psi', Phi')=" << to_string(v_primed.verdict) << ", dominance "
     << dominance_label(d_primed) << '\n';
  os << "C3(psi)=" << format_number(h_bell3.level(3), dg)
     << ", C3(phi)=" << format_number(h_third.level(3), dg) << " (x=1/3)\n";
  os << "AF(psi)=" << format_number(af_bell3, dg) << ", AF(phi)=" << format_number(af_third, dg)
     << " (x=1/3)\n";
  {
    // Fixed-point rendering for the root line.
    std::ostringstream fx;
    fx << std::fixed << std::setprecision(4) << x_root << "±5e-4, E_f(phi(x*))="
       << std::setprecision(6) << eof_root;
    os << "x*=" << fx.str() << '\n';
  }
  os << "checks\n";
  for (const Check& c : checks) {
    os << "  [" << (c.pass() ? "PASS" : "FAIL") << "] " << std::left << std::setw(26) << c.name
       << format_number(c.value, dg) << '\n';
  }
  for (const FlagCheck& f : flags) {
    os << "  [" << (f.pass() ? "PASS" : "FAIL") << "] " << std::left << std::setw(26) << f.name
       << f.value << '\n';
  }
  r.text = os.str();
  r.exit_code = all_pass ? kSuccess : kSelfCheckFailed;
  return r;
}

}  // namespace chier::cli
