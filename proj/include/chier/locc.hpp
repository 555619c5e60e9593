#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "chier/numerics.hpp"
#include "chier/states.hpp"

namespace chier {

inline constexpr double kPrefixTolerance = 1e-12;
inline constexpr double kTotalTolerance = 1e-9;

/// x "is majorized by" y: every descending prefix sum of x is at most that of
/// y (within 1e-12) and the totals agree (within 1e-9). The shorter spectrum
/// is zero-padded.
bool majorizes(const SchmidtSpectrum& x, const SchmidtSpectrum& y);

std::vector<double> prefix_sums(const SchmidtSpectrum& s);

enum class Verdict { ForwardOnly, BackwardOnly, Equivalent, Incomparable };

std::string_view to_string(Verdict v) noexcept;

struct ConvertibilityVerdict {
  Verdict verdict = Verdict::Incomparable;
  std::vector<double> source_prefix;
  std::vector<double> target_prefix;

  bool source_to_target() const noexcept {
    return verdict == Verdict::ForwardOnly || verdict == Verdict::Equivalent;
  }
  bool target_to_source() const noexcept {
    return verdict == Verdict::BackwardOnly || verdict == Verdict::Equivalent;
  }
};

/// Nielsen's criterion: source -> target by LOCC iff spectrum(source) is
/// majorized by spectrum(target). Both directions holding is Equivalent.
ConvertibilityVerdict nielsen_verdict(const PureState& source, const PureState& target);
ConvertibilityVerdict nielsen_verdict(const SchmidtSpectrum& source,
                                      const SchmidtSpectrum& target);

struct DominanceReport {
  std::vector<double> source_levels;  // C_k(source), k = 1..d
  std::vector<double> target_levels;
  std::vector<double> slack;          // C_k(source) - C_k(target)
  bool source_dominates = false;      // every slack >= -1e-12
  bool target_dominates = false;      // every slack <= +1e-12
  bool mixed() const noexcept { return !source_dominates && !target_dominates; }
};

/// Per-level comparison of the two hierarchies. source_dominates is the
/// necessary condition for source -> target.
DominanceReport hierarchy_dominance(const PureState& source, const PureState& target);

/// Moves `fraction` of half the gap between entries i and j (i above j in
/// descending order) from the larger to the smaller. fraction in [0, 1]; the
/// two entries never cross, so the result is majorized by the input.
SchmidtSpectrum robin_hood_transfer(const SchmidtSpectrum& s, std::size_t i, std::size_t j,
                                    double fraction);

/// `steps` random Robin-Hood transfers applied to `target`; the result is
/// always majorized by `target`.
SchmidtSpectrum t_transform_source(const SchmidtSpectrum& target, std::size_t steps,
                                   SeededRng& rng);

}  // namespace chier
