#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcompat {

using cx = std::complex<double>;

// Dense square complex matrix, row-major. Sized for the 2x2/4x4/8x8 blocks
// this library works with; not intended as a general linear-algebra type.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {
    if (n < 1) throw std::invalid_argument("ComplexMatrix: dimension must be positive");
  }

  static ComplexMatrix identity(int n) {
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int dim() const { return n_; }

  cx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  const cx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    check_same_dim(o);
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    check_same_dim(o);
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  ComplexMatrix& operator*=(cx s) {
    for (auto& v : a_) v *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(cx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(ComplexMatrix a, cx s) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    a.check_same_dim(b);
    const int n = a.n_;
    ComplexMatrix c(n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const cx aik = a(i, k);
        if (aik == cx{}) continue;
        for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix m(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  cx trace() const {
    cx t{};
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
  }

  /* largest entrywise deviation from the adjoint */
  double hermiticity_defect() const {
    double m = 0.0;
    for (int i = 0; i < n_; ++i)
      for (int j = i; j < n_; ++j) m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
  }

  bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }

 private:
  void check_same_dim(const ComplexMatrix& o) const {
    if (n_ != o.n_) throw std::invalid_argument("ComplexMatrix: dimension mismatch");
  }

  int n_;
  std::vector<cx> a_;
};

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const int na = a.dim(), nb = b.dim();
  ComplexMatrix c(na * nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) {
      const cx aij = a(i, j);
      if (aij == cx{}) continue;
      for (int k = 0; k < nb; ++k)
        for (int l = 0; l < nb; ++l) c(i * nb + k, j * nb + l) = aij * b(k, l);
    }
  return c;
}

// pauli(0..3) = I, sigma_x, sigma_y, sigma_z
inline const ComplexMatrix& pauli(int j) {
  static const std::array<ComplexMatrix, 4> sigma = [] {
    std::array<ComplexMatrix, 4> s{ComplexMatrix(2), ComplexMatrix(2), ComplexMatrix(2), ComplexMatrix(2)};
    s[0](0, 0) = 1;  s[0](1, 1) = 1;
    s[1](0, 1) = 1;  s[1](1, 0) = 1;
    s[2](0, 1) = cx(0, -1);  s[2](1, 0) = cx(0, 1);
    s[3](0, 0) = 1;  s[3](1, 1) = -1;
    return s;
  }();
  if (j < 0 || j > 3) throw std::invalid_argument("pauli: index must be 0..3");
  return sigma[static_cast<size_t>(j)];
}

inline double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("real_trace_product: dimension mismatch");
  double t = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int k = 0; k < a.dim(); ++k) t += (a(i, k) * b(k, i)).real();
  return t;
}

}  // namespace qcompat
