#include "chier/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chier/error.hpp"

namespace chier {

namespace {

// Spectrum entries at or below this are treated as exact zeros by the
// entropies; otherwise rounding noise of order 1e-16 would leak into
// fractional Renyi orders as noise of order 1e-8.
constexpr double kSpectrumZero = 1e-14;

// Eigenvalues of rho at or below this are zeroed before taking square roots.
constexpr double kSqrtFloor = 1e-13;

double purity(const SchmidtSpectrum& s) {
  double p = 0.0;
  for (double x : s.values()) p += x * x;
  return p;
}

}  // namespace

// ---------------------------------------------------------------------------
// Hierarchy, three ways

ConcurrenceHierarchy hierarchy(const PureState& state) {
  const SchmidtSpectrum spectrum = schmidt_spectrum(state);
  std::vector<double> e = elementary_symmetric_all(spectrum.values());
  return {std::vector<double>(e.begin() + 1, e.end())};
}

ConcurrenceHierarchy hierarchy_via_minors(const PureState& state) {
  const std::size_t d = state.schmidt_length();
  if (d > kMaxMinorDimension) {
    throw Error(ErrorKind::DimensionTooLargeForMinors,
                "Schmidt length " + std::to_string(d) + " exceeds " +
                    std::to_string(kMaxMinorDimension));
  }
  ConcurrenceHierarchy h;
  h.values.reserve(d);
  for (std::size_t k = 1; k <= d; ++k) h.values.push_back(minor_sum(state.amplitudes(), k));
  return h;
}

InvariantVector invariants(const PureState& state) {
  const ComplexMatrix rho = state.reduced_density().matrix();
  const std::size_t d = rho.rows();
  InvariantVector inv;
  inv.values.reserve(d);
  ComplexMatrix power = rho;
  for (std::size_t k = 0; k < d; ++k) {
    if (k > 0) power = power * rho;
    inv.values.push_back(power.trace().real());
  }
  return inv;
}

ConcurrenceHierarchy hierarchy_via_invariants(const PureState& state) {
  const InvariantVector inv = invariants(state);
  const std::size_t d = inv.size();
  // Power sums p_1..p_d of the spectrum; p_1 is the unit trace.
  std::vector<double> p(d + 1, 0.0);
  p[1] = 1.0;
  for (std::size_t m = 2; m <= d; ++m) p[m] = inv[m - 1];

  // Newton: k e_k = sum_{m=1}^{k} (-1)^{m-1} e_{k-m} p_m.
  std::vector<double> e(d + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t k = 1; k <= d; ++k) {
    double acc = 0.0;
    for (std::size_t m = 1; m <= k; ++m) {
      const double term = e[k - m] * p[m];
      acc += (m % 2 == 1) ? term : -term;
    }
    e[k] = acc / static_cast<double>(k);
  }
  return {std::vector<double>(e.begin() + 1, e.end())};
}

// ---------------------------------------------------------------------------
// Entropies and generalized concurrences

double renyi_entropy(const SchmidtSpectrum& spectrum, double order) {
  if (!std::isfinite(order) || order <= 0.0) {
    throw Error(ErrorKind::NonPositiveOrder, "Renyi order " + std::to_string(order));
  }
  if (order == 1.0) {
    double s = 0.0;
    for (double x : spectrum.values())
      if (x > kSpectrumZero) s -= x * std::log2(x);
    return s;
  }
  double sum = 0.0;
  for (double x : spectrum.values())
    if (x > kSpectrumZero) sum += std::pow(x, order);
  return std::log2(sum) / (1.0 - order);
}

double renyi_entropy(const PureState& state, double order) {
  return renyi_entropy(schmidt_spectrum(state), order);
}

double eof_pure(const PureState& state) { return renyi_entropy(schmidt_spectrum(state), 1.0); }

double af_concurrence(const PureState& state) {
  const std::size_t d = state.schmidt_length();
  if (d < 2) return 0.0;
  const double linear = 1.0 - purity(schmidt_spectrum(state));
  const double dd = static_cast<double>(d);
  return std::clamp(std::sqrt(std::max(0.0, dd / (dd - 1.0) * linear)), 0.0, 1.0);
}

double rungta_concurrence(const PureState& state) {
  const double linear = 1.0 - purity(schmidt_spectrum(state));
  return std::sqrt(std::max(0.0, 2.0 * linear));
}

// ---------------------------------------------------------------------------
// Two qubits

namespace {

HermitianMatrix validated_density(ComplexMatrix m) {
  if (m.rows() != 4 || m.cols() != 4) {
    throw Error(ErrorKind::InvalidDensity, "two-qubit density must be 4x4, got " +
                                               std::to_string(m.rows()) + "x" +
                                               std::to_string(m.cols()));
  }
  if (hermiticity_residual(m) > kHermitianTolerance) {
    throw Error(ErrorKind::InvalidDensity, "density matrix is not Hermitian");
  }
  HermitianMatrix h(std::move(m));
  const double tr = h.matrix().trace().real();
  if (std::abs(tr - 1.0) > 1e-9) {
    throw Error(ErrorKind::InvalidDensity, "trace " + std::to_string(tr));
  }
  const std::vector<double> ev = hermitian_eigenvalues(h);
  if (ev.back() < -kClampFloor) {
    throw Error(ErrorKind::InvalidDensity, "negative eigenvalue " + std::to_string(ev.back()));
  }
  return h;
}

}  // namespace

TwoQubitDensity::TwoQubitDensity(ComplexMatrix m) : rho_(validated_density(std::move(m))) {}

TwoQubitDensity TwoQubitDensity::projector(const PureState& state) {
  if (state.dim_a() != 2 || state.dim_b() != 2) {
    throw Error(ErrorKind::DimensionMismatch, "projector needs a two-qubit state");
  }
  ComplexMatrix col(4, 1);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) col(2 * i + j, 0) = state.amplitude(i, j);
  return TwoQubitDensity(gram(col));
}

const ComplexMatrix& spin_flip_operator() {
  static const ComplexMatrix yy = [] {
    ComplexMatrix m(4, 4);
    m(0, 3) = -1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 0) = -1.0;
    return m;
  }();
  return yy;
}

ComplexMatrix spin_flipped(const TwoQubitDensity& rho) {
  const ComplexMatrix& yy = spin_flip_operator();
  return yy * rho.matrix().matrix().conjugate() * yy;
}

std::array<double, 4> wootters_lambdas(const TwoQubitDensity& rho) {
  // rho rho~ is isospectral to S rho~ S with S = sqrt(rho), and
  // S rho~ S = A A^dagger for A = S Y S^* (Y = sigma_y (x) sigma_y). The
  // lambdas are therefore the singular values of A, read off the Hermitian
  // dilation [[0, A], [A^dagger, 0]] whose spectrum is {+-sigma_i}. This
  // avoids square roots of near-zero eigenvalues of S rho~ S.
  const Eigensystem es = hermitian_eigensystem(rho.matrix());
  ComplexMatrix sqrt_rho(4, 4);
  for (std::size_t c = 0; c < 4; ++c) {
    const double w = es.values[c] > kSqrtFloor ? std::sqrt(es.values[c]) : 0.0;
    if (w == 0.0) continue;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        sqrt_rho(i, j) += w * es.vectors(i, c) * std::conj(es.vectors(j, c));
  }
  const ComplexMatrix a = sqrt_rho * spin_flip_operator() * sqrt_rho.conjugate();

  ComplexMatrix dilation(8, 8);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      dilation(i, 4 + j) = a(i, j);
      dilation(4 + j, i) = std::conj(a(i, j));
    }
  const std::vector<double> ev = hermitian_eigenvalues(HermitianMatrix(std::move(dilation)));

  std::array<double, 4> lambdas{};
  for (std::size_t i = 0; i < 4; ++i) lambdas[i] = std::abs(ev[i]);
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
  return lambdas;
}

double wootters_concurrence(const TwoQubitDensity& rho) {
  const std::array<double, 4> l = wootters_lambdas(rho);
  return std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
}

double wootters_pure(const PureState& state) {
  if (state.dim_a() != 2 || state.dim_b() != 2) {
    throw Error(ErrorKind::DimensionMismatch, "pure-state Wootters concurrence needs 2x2");
  }
  return 2.0 * std::abs(determinant(state.amplitudes()));
}

double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

double eof_from_concurrence(double concurrence) {
  if (!std::isfinite(concurrence) || concurrence < -1e-12 || concurrence > 1.0 + 1e-12) {
    throw Error(ErrorKind::OutOfRange, "concurrence " + std::to_string(concurrence));
  }
  const double c = std::clamp(concurrence, 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

ComplexMatrix partial_transpose_b(const TwoQubitDensity& rho) {
  const ComplexMatrix& m = rho.matrix().matrix();
  ComplexMatrix pt(4, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) pt(2 * i + j, 2 * k + l) = m(2 * i + l, 2 * k + j);
  return pt;
}

PptVerdict ppt_check(const TwoQubitDensity& rho) {
  const std::vector<double> ev = hermitian_eigenvalues(HermitianMatrix(partial_transpose_b(rho)));
  return ev.back() < -kClampFloor ? PptVerdict::Entangled : PptVerdict::Separable;
}

}  // namespace chier
