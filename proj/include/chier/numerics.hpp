#pragma once

// Dense complex linear algebra for small matrices (dimensions up to ~16).

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace chier {

using Complex = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Row-major entries; throws NonFinite or DimensionMismatch.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const Complex> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Complex> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  /// Submatrix selected by strictly increasing row and column index lists.
  ComplexMatrix submatrix(std::span<const std::size_t> row_idx,
                          std::span<const std::size_t> col_idx) const;

  double frobenius_norm() const;
  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);

/// M M^dagger, assembled so that the result is exactly Hermitian.
ComplexMatrix gram(const ComplexMatrix& m);

/// Largest |H(i,j) - conj(H(j,i))|.
double hermiticity_residual(const ComplexMatrix& h);

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-10;
/// Eigenvalues of PSD constructions above -kClampFloor are clamped to zero.
inline constexpr double kClampFloor = 1e-10;

class HermitianMatrix {
 public:
  /// Throws NonHermitianInput when the symmetry residual exceeds 1e-12.
  explicit HermitianMatrix(ComplexMatrix m);

  std::size_t dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

 private:
  ComplexMatrix m_;
};

class UnitaryMatrix {
 public:
  /// Throws NotUnitary unless ||U U^dagger - I||_F <= 1e-10.
  explicit UnitaryMatrix(ComplexMatrix m);
  static UnitaryMatrix identity(std::size_t dim);

  std::size_t dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }

 private:
  ComplexMatrix m_;
};

double unitarity_residual(const ComplexMatrix& u);

/// A strictly increasing subset of {0, ..., n-1}.
class IndexSet {
 public:
  explicit IndexSet(std::vector<std::size_t> indices);
  /// The lexicographically first k-subset {0, ..., k-1}.
  static IndexSet first(std::size_t k);

  std::span<const std::size_t> indices() const noexcept { return idx_; }
  std::size_t size() const noexcept { return idx_.size(); }

  /// Advances to the next k-subset of {0, ..., n-1} in lexicographic order.
  /// Returns false (leaving the set unchanged) after the last one.
  bool advance(std::size_t n);

 private:
  std::vector<std::size_t> idx_;
};

/// Platform-stable random stream: std::mt19937_64 supplies the bits (its
/// output sequence is fixed by the standard); uniform and Gaussian variates
/// are derived here because <random> distributions are implementation-defined.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);

  /// Independent stream for sample `index` of a run seeded with `seed`.
  static SeededRng derive(std::uint64_t seed, std::uint64_t index);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal, Marsaglia polar method.
  double normal();
  /// Real and imaginary parts independent N(0, 1/2), so E|z|^2 = 1.
  Complex complex_normal();
  /// Uniform integer in [0, n).
  std::size_t below(std::size_t n);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

struct Eigensystem {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column i pairs with values[i]
};

/// Cyclic complex Jacobi. Ties keep their original diagonal order.
Eigensystem hermitian_eigensystem(const HermitianMatrix& h);
std::vector<double> hermitian_eigenvalues(const HermitianMatrix& h);

/// Eigenvalues of M M^dagger (or M^dagger M, whichever is smaller), i.e. the
/// squared singular values, min(rows, cols) of them, descending, clamped >= 0.
std::vector<double> singular_values_squared(const ComplexMatrix& m);

/// LU with partial pivoting.
Complex determinant(const ComplexMatrix& m);

/// e_k(values) with e_0 = 1.
double elementary_symmetric(std::span<const double> values, std::size_t k);
/// (e_0, e_1, ..., e_n) in one pass.
std::vector<double> elementary_symmetric_all(std::span<const double> values);

inline constexpr std::size_t kMaxMinorDimension = 12;

/// Sum over all k-row sets and k-column sets of |det M(rows, cols)|^2.
double minor_sum(const ComplexMatrix& m, std::size_t k);
/// Sum over all k-sets b of det H(b, b).
double principal_minor_sum(const HermitianMatrix& h, std::size_t k);

/// Haar unitary: QR of a complex Gaussian matrix with R's diagonal made
/// positive real.
UnitaryMatrix random_unitary(std::size_t dim, SeededRng& rng);

/// Bisection on a sign-changing bracket; returns the midpoint once the
/// bracket is no wider than tol.
double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol);

}  // namespace chier
