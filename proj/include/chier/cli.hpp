#pragma once

// File formats, report rendering and subcommands of the `chier` tool.
//
// State document:
//   {"dims": [dA, dB], "amplitudes": [{"i":0, "j":0, "re":1, "im":0}, ...]}
//   {"dims": [dA, dB], "schmidt": [c0, c1, ...]}        coefficients on |ii>
// Two-qubit density document:
//   {"dims": [4], "matrix": [[re, im], ...]}            16 entries, row-major

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "chier/error.hpp"
#include "chier/measures.hpp"
#include "chier/states.hpp"

namespace chier::cli {

inline constexpr std::string_view kToolVersion = "1.0.0";

enum ExitCode : int { kSuccess = 0, kDomainError = 1, kParseError = 2, kSelfCheckFailed = 3 };

int exit_code_for(ErrorKind kind) noexcept;

// ---------------------------------------------------------------------------
// Documents

struct StateFile {
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  std::optional<std::vector<AmplitudeEntry>> amplitudes;
  std::optional<std::vector<double>> schmidt;
};

/// Structural parse; throws ParseError naming the offending field.
StateFile parse_state_file(std::string_view text);
PureState to_state(const StateFile& file, bool renormalize);

PureState parse_state_text(std::string_view text, bool renormalize = false);
PureState parse_state(const std::filesystem::path& path, bool renormalize = false);

TwoQubitDensity parse_density_text(std::string_view text);
TwoQubitDensity parse_density(const std::filesystem::path& path);

/// Amplitude-form document listing every nonzero amplitude.
nlohmann::json state_document(const PureState& state);
nlohmann::json density_document(const ComplexMatrix& rho);

std::string read_file(const std::filesystem::path& path);
/// FNV-1a over the bytes, as "fnv1a64:<16 hex digits>".
std::string digest(std::string_view bytes);

// ---------------------------------------------------------------------------
// Reports

/// Machine-readable document plus its human rendering.
struct Report {
  nlohmann::json data;
  std::string text;
  int exit_code = kSuccess;
};

/// printf %.{digits}g rendering used by every table.
std::string format_number(double x, int digits);

enum class HierarchyPath { Eigenvalues, Minors, Newton };

std::optional<HierarchyPath> parse_hierarchy_path(std::string_view name);
std::string_view to_string(HierarchyPath path) noexcept;

ConcurrenceHierarchy hierarchy_by(const PureState& state, HierarchyPath path);

struct MeasureOptions {
  bool renormalize = false;
  HierarchyPath path = HierarchyPath::Eigenvalues;
  std::vector<double> renyi_orders{0.5, 1.0, 2.0};
  int digits = 6;
};

struct ScanOptions {
  std::size_t dim_a = 3;
  std::size_t dim_b = 3;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: hardware concurrency
  int digits = 6;
};

struct ScanCounts {
  std::size_t comparable = 0;
  std::size_t incomparable_mixed = 0;
  std::size_t incomparable_full_dominance = 0;

  friend bool operator==(const ScanCounts&, const ScanCounts&) = default;
};

enum class PairClass { Comparable, IncomparableMixed, IncomparableFullDominance };

PairClass classify_pair(const PureState& a, const PureState& b);
ScanCounts scan_pairs(const ScanOptions& options);

Report cmd_measure(const PureState& state, const MeasureOptions& options,
                   const std::string& input_digest);
Report cmd_measure(const std::filesystem::path& path, const MeasureOptions& options);
Report cmd_schmidt(const std::filesystem::path& path, bool renormalize, int digits);
Report cmd_locc(const std::filesystem::path& source, const std::filesystem::path& target,
                bool renormalize, int digits);
Report cmd_wootters(const std::filesystem::path& path, int digits);
Report cmd_scan(const ScanOptions& options);
Report cmd_paper_examples(int digits = 6);

// ---------------------------------------------------------------------------
// Named states reproduced by `paper-examples` and `emit-state --example`.

namespace fixtures {

/// sqrt(0.5)|00> + sqrt(0.4)|11> + sqrt(0.1)|22>; also the primed target.
PureState nielsen_source();
/// sqrt(0.6)|00> + sqrt(0.2)|11> + sqrt(0.2)|22>.
PureState nielsen_target();
/// sqrt(0.55)|00> + sqrt(0.3)|11> + sqrt(0.15)|22>.
PureState dominating_source();
/// (|00> + |11>)/sqrt(2) embedded in 3x3.
PureState bell_in_qutrits();
/// sqrt(x/2)(|00> + |11>) + sqrt(1 - x)|22>.
PureState qutrit_family(double x);
/// Root of x^x [2(1 - x)]^(1 - x) = 1 in (0, 1/2): the family member whose
/// entanglement of formation is one bit.
double unit_entropy_root(double tol = 1e-12);

std::optional<PureState> by_name(std::string_view name);
std::vector<std::string_view> names();

}  // namespace fixtures

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chier::cli
