#include "chier/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "chier/error.hpp"

namespace chier {

namespace {

void require_finite(std::span<const Complex> entries) {
  for (const Complex& z : entries) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorKind::NonFinite, "matrix entry is not finite");
    }
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NonHermitianInput: return "NonHermitianInput";
    case ErrorKind::NonPositiveSpectrum: return "NonPositiveSpectrum";
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorKind::NoSignChange: return "NoSignChange";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::ZeroState: return "ZeroState";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::DuplicateEntry: return "DuplicateEntry";
    case ErrorKind::NegativeCoefficient: return "NegativeCoefficient";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DimensionTooLargeForMinors: return "DimensionTooLargeForMinors";
    case ErrorKind::InvalidSpectrum: return "InvalidSpectrum";
    case ErrorKind::NonPositiveOrder: return "NonPositiveOrder";
    case ErrorKind::InvalidDensity: return "InvalidDensity";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SelfCheckFailed: return "SelfCheckFailed";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(ErrorKind::DimensionMismatch,
                "expected " + std::to_string(rows_ * cols_) + " entries, got " +
                    std::to_string(data_.size()));
  }
  require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix r = *this;
  for (Complex& z : r.data_) z = std::conj(z);
  return r;
}

ComplexMatrix ComplexMatrix::submatrix(std::span<const std::size_t> row_idx,
                                       std::span<const std::size_t> col_idx) const {
  ComplexMatrix r(row_idx.size(), col_idx.size());
  for (std::size_t a = 0; a < row_idx.size(); ++a)
    for (std::size_t b = 0; b < col_idx.size(); ++b) r(a, b) = (*this)(row_idx[a], col_idx[b]);
  return r;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw Error(ErrorKind::DimensionMismatch, "matrix sum shape mismatch");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw Error(ErrorKind::DimensionMismatch, "matrix difference shape mismatch");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (Complex& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
  }
  ComplexMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix gram(const ComplexMatrix& m) {
  const std::size_t n = m.rows();
  ComplexMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double d = 0.0;
    for (std::size_t k = 0; k < m.cols(); ++k) d += std::norm(m(i, k));
    g(i, i) = d;
    for (std::size_t j = i + 1; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < m.cols(); ++k) s += m(i, k) * std::conj(m(j, k));
      g(i, j) = s;
      g(j, i) = std::conj(s);
    }
  }
  return g;
}

double hermiticity_residual(const ComplexMatrix& h) {
  double r = 0.0;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = i; j < h.cols(); ++j)
      r = std::max(r, std::abs(h(i, j) - std::conj(h(j, i))));
  return r;
}

// ---------------------------------------------------------------------------
// HermitianMatrix / UnitaryMatrix

HermitianMatrix::HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (!m_.is_square()) throw Error(ErrorKind::NonSquare, "Hermitian matrix must be square");
  require_finite(m_.entries());
  const double res = hermiticity_residual(m_);
  if (res > kHermitianTolerance) {
    throw Error(ErrorKind::NonHermitianInput, "symmetry residual " + std::to_string(res));
  }
  // Fold the admitted residual away so downstream kernels see exact symmetry.
  for (std::size_t i = 0; i < m_.rows(); ++i) {
    m_(i, i) = m_(i, i).real();
    for (std::size_t j = i + 1; j < m_.cols(); ++j) {
      const Complex avg = 0.5 * (m_(i, j) + std::conj(m_(j, i)));
      m_(i, j) = avg;
      m_(j, i) = std::conj(avg);
    }
  }
}

double unitarity_residual(const ComplexMatrix& u) {
  return (u * u.adjoint() - ComplexMatrix::identity(u.rows())).frobenius_norm();
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (!m_.is_square()) throw Error(ErrorKind::NonSquare, "unitary matrix must be square");
  require_finite(m_.entries());
  const double res = unitarity_residual(m_);
  if (res > kUnitaryTolerance) {
    throw Error(ErrorKind::NotUnitary, "||UU^dagger - I||_F = " + std::to_string(res));
  }
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
  return UnitaryMatrix(ComplexMatrix::identity(dim));
}

// ---------------------------------------------------------------------------
// IndexSet

IndexSet::IndexSet(std::vector<std::size_t> indices) : idx_(std::move(indices)) {
  if (idx_.empty()) throw Error(ErrorKind::DegreeOutOfRange, "index set must be nonempty");
  for (std::size_t i = 1; i < idx_.size(); ++i) {
    if (idx_[i] <= idx_[i - 1]) {
      throw Error(ErrorKind::IndexOutOfRange, "index set must be strictly increasing");
    }
  }
}

IndexSet IndexSet::first(std::size_t k) {
  std::vector<std::size_t> v(k);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return IndexSet(std::move(v));
}

bool IndexSet::advance(std::size_t n) {
  const std::size_t k = idx_.size();
  // Rightmost position that can still move up.
  std::size_t pos = k;
  while (pos > 0 && idx_[pos - 1] == n - k + pos - 1) --pos;
  if (pos == 0) return false;
  ++idx_[pos - 1];
  for (std::size_t i = pos; i < k; ++i) idx_[i] = idx_[i - 1] + 1;
  return true;
}

// ---------------------------------------------------------------------------
// SeededRng

SeededRng::SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

SeededRng SeededRng::derive(std::uint64_t seed, std::uint64_t index) {
  return SeededRng(splitmix64(splitmix64(seed) ^ splitmix64(~index)));
}

std::uint64_t SeededRng::next_u64() { return engine_(); }

double SeededRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double SeededRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double u = 0.0, v = 0.0, s = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * f;
  has_spare_ = true;
  return u * f;
}

Complex SeededRng::complex_normal() {
  constexpr double kHalf = 0.70710678118654752440;
  const double re = normal();
  const double im = normal();
  return {re * kHalf, im * kHalf};
}

std::size_t SeededRng::below(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::OutOfRange, "below(0)");
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = 0;
  do {
    x = next_u64();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

// ---------------------------------------------------------------------------
// Eigensolver

namespace {

constexpr double kJacobiOffTolerance = 1e-14;
constexpr int kJacobiMaxSweeps = 100;

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

Eigensystem hermitian_eigensystem(const HermitianMatrix& h) {
  const std::size_t n = h.dim();
  ComplexMatrix a = h.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(1.0, a.frobenius_norm());

  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= kJacobiOffTolerance * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;

        // G = diag(1, e^{-i phi}) * real rotation, so G^dagger A G zeroes (p,q).
        const Complex phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        double t = 0.0;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex gpp = c;
        const Complex gpq = s;
        const Complex gqp = -s * std::conj(phase);
        const Complex gqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() > a(y, y).real();
  });

  Eigensystem es;
  es.values.reserve(n);
  es.vectors = ComplexMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    es.values.push_back(a(order[c], order[c]).real());
    for (std::size_t r = 0; r < n; ++r) es.vectors(r, c) = v(r, order[c]);
  }
  return es;
}

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& h) {
  return hermitian_eigensystem(h).values;
}

std::vector<double> singular_values_squared(const ComplexMatrix& m) {
  require_finite(m.entries());
  const ComplexMatrix g = m.rows() <= m.cols() ? gram(m) : gram(m.adjoint());
  std::vector<double> values = hermitian_eigenvalues(HermitianMatrix(g));
  const double floor = kClampFloor * std::max(1.0, g.trace().real());
  for (double& x : values) {
    if (x < -floor) {
      throw Error(ErrorKind::NonPositiveSpectrum, "Gram eigenvalue " + std::to_string(x));
    }
    x = std::max(x, 0.0);
  }
  return values;
}

// ---------------------------------------------------------------------------
// Determinants and symmetric functions

Complex determinant(const ComplexMatrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::NonSquare, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1.0;
  if (n == 1) return m(0, 0);
  ComplexMatrix lu = m;
  Complex det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(lu(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double mag = std::abs(lu(r, col));
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(pivot, j), lu(col, j));
      det = -det;
    }
    const Complex d = lu(col, col);
    det *= d;
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = lu(r, col) / d;
      if (f == Complex{}) continue;
      for (std::size_t j = col + 1; j < n; ++j) lu(r, j) -= f * lu(col, j);
    }
  }
  return det;
}

std::vector<double> elementary_symmetric_all(std::span<const double> values) {
  std::vector<double> e(values.size() + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t n = 0; n < values.size(); ++n) {
    const double v = values[n];
    for (std::size_t k = n + 1; k > 0; --k) e[k] += v * e[k - 1];
  }
  return e;
}

double elementary_symmetric(std::span<const double> values, std::size_t k) {
  if (k > values.size()) {
    throw Error(ErrorKind::DegreeOutOfRange, "degree " + std::to_string(k) + " exceeds " +
                                                 std::to_string(values.size()) + " values");
  }
  return elementary_symmetric_all(values)[k];
}

double minor_sum(const ComplexMatrix& m, std::size_t k) {
  const std::size_t dmin = std::min(m.rows(), m.cols());
  if (k < 1 || k > dmin) {
    throw Error(ErrorKind::DegreeOutOfRange,
                "minor size " + std::to_string(k) + " outside [1, " + std::to_string(dmin) + "]");
  }
  if (dmin > kMaxMinorDimension) {
    throw Error(ErrorKind::DimensionTooLargeForMinors,
                "minor enumeration limited to dimension " + std::to_string(kMaxMinorDimension));
  }
  double total = 0.0;
  IndexSet rows = IndexSet::first(k);
  do {
    IndexSet cols = IndexSet::first(k);
    do {
      total += std::norm(determinant(m.submatrix(rows.indices(), cols.indices())));
    } while (cols.advance(m.cols()));
  } while (rows.advance(m.rows()));
  return total;
}

double principal_minor_sum(const HermitianMatrix& h, std::size_t k) {
  const std::size_t n = h.dim();
  if (k < 1 || k > n) {
    throw Error(ErrorKind::DegreeOutOfRange,
                "minor size " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
  if (n > kMaxMinorDimension) {
    throw Error(ErrorKind::DimensionTooLargeForMinors,
                "minor enumeration limited to dimension " + std::to_string(kMaxMinorDimension));
  }
  double total = 0.0;
  IndexSet set = IndexSet::first(k);
  do {
    total += determinant(h.matrix().submatrix(set.indices(), set.indices())).real();
  } while (set.advance(n));
  return total;
}

// ---------------------------------------------------------------------------
// Random unitaries

UnitaryMatrix random_unitary(std::size_t dim, SeededRng& rng) {
  if (dim == 0) throw Error(ErrorKind::OutOfRange, "unitary dimension must be >= 1");
  ComplexMatrix q(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) q(i, j) = rng.complex_normal();

  // Modified Gram-Schmidt, two passes per column. Normalizing by the positive
  // residual norm is the phase correction: R ends up with a positive real
  // diagonal, which makes Q Haar distributed.
  for (std::size_t j = 0; j < dim; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        Complex r = 0.0;
        for (std::size_t k = 0; k < dim; ++k) r += std::conj(q(k, i)) * q(k, j);
        for (std::size_t k = 0; k < dim; ++k) q(k, j) -= r * q(k, i);
      }
    }
    double norm = 0.0;
    for (std::size_t k = 0; k < dim; ++k) norm += std::norm(q(k, j));
    norm = std::sqrt(norm);
    for (std::size_t k = 0; k < dim; ++k) q(k, j) /= norm;
  }
  return UnitaryMatrix(std::move(q));
}

// ---------------------------------------------------------------------------
// Root bracketing

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::OutOfRange, "bisection tolerance must be positive");
  if (lo > hi) std::swap(lo, hi);
  double flo = f(lo);
  const double fhi = f(hi);
  if (!(flo * fhi < 0.0)) {
    throw Error(ErrorKind::NoSignChange, "f(" + std::to_string(lo) + ") and f(" +
                                             std::to_string(hi) + ") do not bracket a root");
  }
  for (int iter = 0; iter < 1100 && hi - lo > tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace chier
