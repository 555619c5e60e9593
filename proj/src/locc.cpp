#include "chier/locc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chier/error.hpp"
#include "chier/measures.hpp"

namespace chier {

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::ForwardOnly: return "ForwardOnly";
    case Verdict::BackwardOnly: return "BackwardOnly";
    case Verdict::Equivalent: return "Equivalent";
    case Verdict::Incomparable: return "Incomparable";
  }
  return "Unknown";
}

std::vector<double> prefix_sums(const SchmidtSpectrum& s) {
  std::vector<double> out(s.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) out[k] = acc += s[k];
  return out;
}

bool majorizes(const SchmidtSpectrum& x, const SchmidtSpectrum& y) {
  const std::size_t n = std::max(x.size(), y.size());
  const std::vector<double> px = prefix_sums(x.padded(n));
  const std::vector<double> py = prefix_sums(y.padded(n));
  if (std::abs(px.back() - py.back()) > kTotalTolerance) return false;
  for (std::size_t k = 0; k < n; ++k)
    if (px[k] > py[k] + kPrefixTolerance) return false;
  return true;
}

ConvertibilityVerdict nielsen_verdict(const SchmidtSpectrum& source,
                                      const SchmidtSpectrum& target) {
  const std::size_t n = std::max(source.size(), target.size());
  ConvertibilityVerdict v;
  v.source_prefix = prefix_sums(source.padded(n));
  v.target_prefix = prefix_sums(target.padded(n));
  const bool forward = majorizes(source, target);
  const bool backward = majorizes(target, source);
  if (forward && backward) {
    v.verdict = Verdict::Equivalent;
  } else if (forward) {
    v.verdict = Verdict::ForwardOnly;
  } else if (backward) {
    v.verdict = Verdict::BackwardOnly;
  } else {
    v.verdict = Verdict::Incomparable;
  }
  return v;
}

ConvertibilityVerdict nielsen_verdict(const PureState& source, const PureState& target) {
  return nielsen_verdict(schmidt_spectrum(source), schmidt_spectrum(target));
}

DominanceReport hierarchy_dominance(const PureState& source, const PureState& target) {
  const ConcurrenceHierarchy hs = hierarchy(source);
  const ConcurrenceHierarchy ht = hierarchy(target);
  const std::size_t n = std::max(hs.size(), ht.size());
  DominanceReport r;
  r.source_dominates = true;
  r.target_dominates = true;
  for (std::size_t k = 1; k <= n; ++k) {
    const double cs = hs.level(k);
    const double ct = ht.level(k);
    const double slack = cs - ct;
    r.source_levels.push_back(cs);
    r.target_levels.push_back(ct);
    r.slack.push_back(slack);
    if (slack < -kPrefixTolerance) r.source_dominates = false;
    if (slack > kPrefixTolerance) r.target_dominates = false;
  }
  return r;
}

SchmidtSpectrum robin_hood_transfer(const SchmidtSpectrum& s, std::size_t i, std::size_t j,
                                    double fraction) {
  if (i >= s.size() || j >= s.size() || i >= j) {
    throw Error(ErrorKind::IndexOutOfRange, "transfer needs i < j < " + std::to_string(s.size()));
  }
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw Error(ErrorKind::OutOfRange, "transfer fraction " + std::to_string(fraction));
  }
  std::vector<double> v(s.values().begin(), s.values().end());
  const double amount = fraction * 0.5 * (v[i] - v[j]);
  v[i] -= amount;
  v[j] += amount;
  return SchmidtSpectrum::from_unsorted(std::move(v));
}

SchmidtSpectrum t_transform_source(const SchmidtSpectrum& target, std::size_t steps,
                                   SeededRng& rng) {
  if (steps == 0) throw Error(ErrorKind::OutOfRange, "t_transform_source needs steps >= 1");
  SchmidtSpectrum current = target;
  if (current.size() < 2) return current;
  for (std::size_t step = 0; step < steps; ++step) {
    std::size_t i = rng.below(current.size());
    std::size_t j = rng.below(current.size() - 1);
    if (j >= i) ++j;
    if (i > j) std::swap(i, j);
    current = robin_hood_transfer(current, i, j, rng.uniform());
  }
  return current;
}

}  // namespace chier
