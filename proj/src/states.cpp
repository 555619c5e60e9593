#include "chier/states.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "chier/error.hpp"

namespace chier {

namespace {

constexpr double kSpectrumSumTolerance = 1e-9;
// Squared norms this close to 1 are left untouched so that re-normalizing a
// unit state is the identity.
constexpr double kUnitNormSlack = 32 * std::numeric_limits<double>::epsilon();

ComplexMatrix normalized(ComplexMatrix m, bool renormalize) {
  double norm2 = 0.0;
  for (const Complex& z : m.entries()) norm2 += std::norm(z);
  if (norm2 == 0.0) throw Error(ErrorKind::ZeroState, "all amplitudes are zero");
  if (!renormalize && std::abs(norm2 - 1.0) > kNormTolerance) {
    throw Error(ErrorKind::NotNormalized,
                "squared norm " + std::to_string(norm2) + " deviates from 1 by more than 1e-6");
  }
  if (std::abs(norm2 - 1.0) > kUnitNormSlack) m *= 1.0 / std::sqrt(norm2);
  return m;
}

}  // namespace

PureState PureState::from_amplitudes(std::size_t dim_a, std::size_t dim_b,
                                     std::span<const AmplitudeEntry> entries, bool renormalize) {
  if (dim_a == 0 || dim_b == 0) {
    throw Error(ErrorKind::IndexOutOfRange, "local dimensions must be >= 1");
  }
  ComplexMatrix m(dim_a, dim_b);
  std::vector<bool> seen(dim_a * dim_b, false);
  for (const AmplitudeEntry& e : entries) {
    if (e.i >= dim_a || e.j >= dim_b) {
      throw Error(ErrorKind::IndexOutOfRange, "amplitude (" + std::to_string(e.i) + ", " +
                                                  std::to_string(e.j) + ") outside " +
                                                  std::to_string(dim_a) + "x" +
                                                  std::to_string(dim_b));
    }
    if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag())) {
      throw Error(ErrorKind::NonFinite, "amplitude is not finite");
    }
    const std::size_t flat = e.i * dim_b + e.j;
    if (seen[flat]) {
      throw Error(ErrorKind::DuplicateEntry, "amplitude (" + std::to_string(e.i) + ", " +
                                                 std::to_string(e.j) + ") given twice");
    }
    seen[flat] = true;
    m(e.i, e.j) = e.value;
  }
  return PureState(normalized(std::move(m), renormalize));
}

PureState PureState::from_matrix(ComplexMatrix amplitudes, bool renormalize) {
  if (amplitudes.rows() == 0 || amplitudes.cols() == 0) {
    throw Error(ErrorKind::IndexOutOfRange, "local dimensions must be >= 1");
  }
  return PureState(normalized(std::move(amplitudes), renormalize));
}

PureState PureState::from_schmidt(std::span<const double> coefficients, bool renormalize) {
  if (coefficients.empty()) throw Error(ErrorKind::ZeroState, "no Schmidt coefficients");
  std::vector<Complex> diag;
  diag.reserve(coefficients.size());
  for (double c : coefficients) {
    if (!std::isfinite(c)) throw Error(ErrorKind::NonFinite, "Schmidt coefficient not finite");
    if (c < 0.0) {
      throw Error(ErrorKind::NegativeCoefficient, "Schmidt coefficient " + std::to_string(c));
    }
    diag.emplace_back(c, 0.0);
  }
  return PureState(normalized(ComplexMatrix::diagonal(diag), renormalize));
}

HermitianMatrix PureState::reduced_density() const {
  return HermitianMatrix(dim_a() <= dim_b() ? gram(amps_) : gram(amps_.adjoint()));
}

SchmidtSpectrum::SchmidtSpectrum(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorKind::InvalidSpectrum, "empty spectrum");
  double sum = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double x = values_[i];
    if (!std::isfinite(x) || x < 0.0 || x > 1.0 + kSpectrumSumTolerance) {
      throw Error(ErrorKind::InvalidSpectrum, "value " + std::to_string(x) + " outside [0, 1]");
    }
    if (i > 0 && x > values_[i - 1]) {
      throw Error(ErrorKind::InvalidSpectrum, "spectrum is not descending");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > kSpectrumSumTolerance) {
    throw Error(ErrorKind::InvalidSpectrum, "spectrum sums to " + std::to_string(sum));
  }
}

SchmidtSpectrum SchmidtSpectrum::from_unsorted(std::vector<double> values) {
  std::stable_sort(values.begin(), values.end(), std::greater<>());
  return SchmidtSpectrum(std::move(values));
}

SchmidtSpectrum SchmidtSpectrum::padded(std::size_t n) const {
  std::vector<double> v = values_;
  if (n > v.size()) v.resize(n, 0.0);
  return SchmidtSpectrum(std::move(v));
}

SchmidtSpectrum schmidt_spectrum(const PureState& state) {
  std::vector<double> values = singular_values_squared(state.amplitudes());
  double sum = 0.0;
  for (double x : values) sum += x;
  if (std::abs(sum - 1.0) > kNormTolerance) {
    throw Error(ErrorKind::InvalidSpectrum,
                "internal: Schmidt spectrum of a unit state sums to " + std::to_string(sum));
  }
  for (double& x : values) x = std::min(x / sum, 1.0);
  return SchmidtSpectrum(std::move(values));
}

PureState apply_local_unitary(const PureState& state, const UnitaryMatrix& u,
                              const UnitaryMatrix& v) {
  if (u.dim() != state.dim_a() || v.dim() != state.dim_b()) {
    throw Error(ErrorKind::DimensionMismatch,
                "local unitaries " + std::to_string(u.dim()) + "x" + std::to_string(v.dim()) +
                    " do not match state " + std::to_string(state.dim_a()) + "x" +
                    std::to_string(state.dim_b()));
  }
  return PureState::from_matrix(u.matrix().transpose() * state.amplitudes() * v.matrix());
}

PureState random_pure(std::size_t dim_a, std::size_t dim_b, SeededRng& rng) {
  if (dim_a == 0 || dim_b == 0) {
    throw Error(ErrorKind::IndexOutOfRange, "local dimensions must be >= 1");
  }
  ComplexMatrix m(dim_a, dim_b);
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_b; ++j) m(i, j) = rng.complex_normal();
  return PureState::from_matrix(std::move(m), /*renormalize=*/true);
}

std::size_t schmidt_rank(const SchmidtSpectrum& spectrum, double tol) {
  return static_cast<std::size_t>(
      std::count_if(spectrum.values().begin(), spectrum.values().end(),
                    [tol](double x) { return x > tol; }));
}

}  // namespace chier
