#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "chier/numerics.hpp"
#include "chier/states.hpp"

namespace chier {

/// (C_1, ..., C_d): C_k is the degree-k elementary symmetric polynomial of
/// the Schmidt spectrum. C_1 = 1 is the normalization.
struct ConcurrenceHierarchy {
  std::vector<double> values;  // values[k - 1] = C_k

  std::size_t size() const noexcept { return values.size(); }
  /// 1-based level; levels past the spectrum length are zero.
  double level(std::size_t k) const { return k >= 1 && k <= values.size() ? values[k - 1] : 0.0; }
};

/// (I_0, ..., I_{d-1}) with I_k = Tr (Lambda Lambda^dagger)^{k+1}.
struct InvariantVector {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t k) const { return values[k]; }
};

/// Eigenvalue path: elementary symmetric polynomials of the Schmidt spectrum.
ConcurrenceHierarchy hierarchy(const PureState& state);
/// Cauchy-Binet path: C_k = sum over k x k minors of |det Lambda(rows, cols)|^2.
/// Throws DimensionTooLargeForMinors when min(dimA, dimB) > 12.
ConcurrenceHierarchy hierarchy_via_minors(const PureState& state);
/// Newton-identity path from the trace invariants, never touching eigenvalues.
ConcurrenceHierarchy hierarchy_via_invariants(const PureState& state);

/// Computed from traces of powers of the reduced density matrix.
InvariantVector invariants(const PureState& state);

/// S_j = log2(sum lambda^j) / (1 - j); j = 1 is the von Neumann entropy.
double renyi_entropy(const PureState& state, double order);
double renyi_entropy(const SchmidtSpectrum& spectrum, double order);

/// Entanglement of formation of a pure state, in bits.
double eof_pure(const PureState& state);

/// sqrt(d / (d - 1) * (1 - Tr rho_A^2)) with d = min(dimA, dimB); 0 when d = 1.
double af_concurrence(const PureState& state);
/// sqrt(2 (1 - Tr rho_A^2)).
double rungta_concurrence(const PureState& state);

/// Trace-one, positive semidefinite 4x4 density matrix on two qubits.
class TwoQubitDensity {
 public:
  /// Throws InvalidDensity on a wrong shape, a trace off by more than 1e-9,
  /// or an eigenvalue below -1e-10.
  explicit TwoQubitDensity(ComplexMatrix m);
  static TwoQubitDensity projector(const PureState& state);

  const HermitianMatrix& matrix() const noexcept { return rho_; }

 private:
  HermitianMatrix rho_;
};

/// sigma_y (x) sigma_y.
const ComplexMatrix& spin_flip_operator();

/// (sigma_y (x) sigma_y) rho^* (sigma_y (x) sigma_y).
ComplexMatrix spin_flipped(const TwoQubitDensity& rho);

/// Square roots of the eigenvalues of rho rho~, descending.
std::array<double, 4> wootters_lambdas(const TwoQubitDensity& rho);
/// max(0, l1 - l2 - l3 - l4).
double wootters_concurrence(const TwoQubitDensity& rho);
/// 2 |det Lambda| for a 2x2 pure state.
double wootters_pure(const PureState& state);

/// h((1 + sqrt(1 - C^2)) / 2) with the binary entropy in bits.
double eof_from_concurrence(double concurrence);
double binary_entropy(double p);

enum class PptVerdict { Separable, Entangled };

/// Partial transpose on B; entangled iff its least eigenvalue is below -1e-10.
PptVerdict ppt_check(const TwoQubitDensity& rho);
ComplexMatrix partial_transpose_b(const TwoQubitDensity& rho);

}  // namespace chier
