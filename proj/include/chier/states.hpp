#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "chier/numerics.hpp"

namespace chier {

inline constexpr double kNormTolerance = 1e-6;

struct AmplitudeEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  Complex value;
};

/// Bipartite pure state sum_ij a_ij |i>|j>, held as its dimA x dimB amplitude
/// matrix. Always unit norm.
class PureState {
 public:
  /// Sparse assembly. Without `renormalize`, the squared norm must already be
  /// within 1e-6 of one (it is then rescaled to exact unit norm).
  static PureState from_amplitudes(std::size_t dim_a, std::size_t dim_b,
                                   std::span<const AmplitudeEntry> entries,
                                   bool renormalize = false);
  /// Dense assembly under the same normalization rule.
  static PureState from_matrix(ComplexMatrix amplitudes, bool renormalize = false);
  /// sum_i c_i |ii> on a d x d space, d = number of coefficients.
  static PureState from_schmidt(std::span<const double> coefficients, bool renormalize = false);

  std::size_t dim_a() const noexcept { return amps_.rows(); }
  std::size_t dim_b() const noexcept { return amps_.cols(); }
  /// Length of the Schmidt spectrum.
  std::size_t schmidt_length() const noexcept { return std::min(dim_a(), dim_b()); }
  const ComplexMatrix& amplitudes() const noexcept { return amps_; }
  Complex amplitude(std::size_t i, std::size_t j) const { return amps_(i, j); }

  /// min(dimA, dimB) x min(dimA, dimB) Gram matrix of the amplitudes: rho_A
  /// when dimA <= dimB, otherwise the (isospectral) rho_B.
  HermitianMatrix reduced_density() const;

  friend bool operator==(const PureState&, const PureState&) = default;

 private:
  explicit PureState(ComplexMatrix amps) : amps_(std::move(amps)) {}
  ComplexMatrix amps_;
};

/// Eigenvalues of the reduced density operator, descending, summing to one.
class SchmidtSpectrum {
 public:
  /// Validates an already-descending probability vector.
  explicit SchmidtSpectrum(std::vector<double> values);
  /// Sorts descending, then validates.
  static SchmidtSpectrum from_unsorted(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Copy padded with zeros to length n (n >= size()).
  SchmidtSpectrum padded(std::size_t n) const;

 private:
  std::vector<double> values_;
};

SchmidtSpectrum schmidt_spectrum(const PureState& state);

/// Amplitude matrix becomes U^T Lambda V for the local unitary U (x) V.
PureState apply_local_unitary(const PureState& state, const UnitaryMatrix& u,
                              const UnitaryMatrix& v);

/// Independent standard complex Gaussian amplitudes, then normalized.
PureState random_pure(std::size_t dim_a, std::size_t dim_b, SeededRng& rng);

std::size_t schmidt_rank(const SchmidtSpectrum& spectrum, double tol = 1e-10);

}  // namespace chier
