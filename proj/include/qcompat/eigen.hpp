#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "qcompat/matrix.hpp"

namespace qcompat {

// Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.
// Row-major n x n input; returns eigenvalues in descending order with the
// matching eigenvectors as columns of `vectors` (also row-major n x n).
struct SymmetricEigen {
  std::vector<double> values;
  std::vector<double> vectors;
  int n = 0;

  double vec(int row, int col) const { return vectors[static_cast<size_t>(row) * n + col]; }
};

inline SymmetricEigen eigen_symmetric(std::vector<double> a, int n) {
  if (n < 1 || a.size() != static_cast<size_t>(n) * n)
    throw std::invalid_argument("eigen_symmetric: bad dimensions");

  std::vector<double> v(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i) * n + i] = 1.0;

  auto at = [n](std::vector<double>& m, int i, int j) -> double& {
    return m[static_cast<size_t>(i) * n + j];
  };

  double scale = 0.0;
  for (double x : a) scale = std::max(scale, std::abs(x));
  const double thresh = 1e-14 * std::max(scale, 1.0);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(at(a, p, q)));
    if (off <= thresh) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(a, p, q);
        if (std::abs(apq) <= thresh * 1e-2) continue;
        const double theta = (at(a, q, q) - at(a, p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const double app = at(a, p, p), aqq = at(a, q, q);
        at(a, p, p) = c * c * app - 2.0 * s * c * apq + s * s * aqq;
        at(a, q, q) = s * s * app + 2.0 * s * c * apq + c * c * aqq;
        at(a, p, q) = 0.0;
        at(a, q, p) = 0.0;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = at(a, k, p), akq = at(a, k, q);
          at(a, k, p) = c * akp - s * akq;
          at(a, p, k) = at(a, k, p);
          at(a, k, q) = s * akp + c * akq;
          at(a, q, k) = at(a, k, q);
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = at(v, k, p), vkq = at(v, k, q);
          at(v, k, p) = c * vkp - s * vkq;
          at(v, k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return a[static_cast<size_t>(i) * n + i] > a[static_cast<size_t>(j) * n + j];
  });

  SymmetricEigen out;
  out.n = n;
  out.values.resize(static_cast<size_t>(n));
  out.vectors.assign(static_cast<size_t>(n) * n, 0.0);
  for (int c = 0; c < n; ++c) {
    out.values[static_cast<size_t>(c)] = a[static_cast<size_t>(order[c]) * n + order[c]];
    for (int r = 0; r < n; ++r)
      out.vectors[static_cast<size_t>(r) * n + c] = v[static_cast<size_t>(r) * n + order[c]];
  }
  return out;
}

inline std::array<double, 3> eigenvalues_symmetric3(const std::array<double, 9>& m) {
  const auto e = eigen_symmetric(std::vector<double>(m.begin(), m.end()), 3);
  return {e.values[0], e.values[1], e.values[2]};
}

struct HermitianEigen {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // unitary, eigenvectors as columns
};

// Hermitian eigensolver via the real embedding [[X, -Y], [Y, X]] of A = X + iY.
// Every eigenvalue of A shows up twice in the embedding; complex eigenvectors
// are recovered per eigenvalue cluster by greedy Gram-Schmidt over the mapped
// real pairs (u; v) -> u + iv, picking the largest residual each round.
inline HermitianEigen eigen_hermitian(const ComplexMatrix& m) {
  const int n = m.dim();
  const double defect = m.hermiticity_defect();
  if (defect > 1e-12) {
    std::ostringstream os;
    os << "eigen_hermitian: input is not Hermitian (max |A_ij - conj(A_ji)| = " << defect << ")";
    throw std::invalid_argument(os.str());
  }

  std::vector<double> b(static_cast<size_t>(2 * n) * (2 * n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cx h = 0.5 * (m(i, j) + std::conj(m(j, i)));
      b[static_cast<size_t>(i) * 2 * n + j] = h.real();
      b[static_cast<size_t>(i + n) * 2 * n + (j + n)] = h.real();
      b[static_cast<size_t>(i) * 2 * n + (j + n)] = -h.imag();
      b[static_cast<size_t>(i + n) * 2 * n + j] = h.imag();
    }

  const auto re = eigen_symmetric(std::move(b), 2 * n);

  double scale = 1.0;
  for (double lam : re.values) scale = std::max(scale, std::abs(lam));
  const double cluster_tol = 1e-11 * scale;

  HermitianEigen out{std::vector<double>(), ComplexMatrix(n)};
  out.values.reserve(static_cast<size_t>(n));
  int accepted_total = 0;

  int lo = 0;
  while (lo < 2 * n) {
    int hi = lo + 1;
    while (hi < 2 * n && re.values[static_cast<size_t>(hi - 1)] - re.values[static_cast<size_t>(hi)] <= cluster_tol) ++hi;
    if ((hi - lo) % 2 != 0 && hi < 2 * n) ++hi;  // pairing can't split; keep clusters even
    const int count = hi - lo;
    const int want = count / 2;

    std::vector<std::vector<cx>> cand(static_cast<size_t>(count), std::vector<cx>(static_cast<size_t>(n)));
    for (int c = 0; c < count; ++c)
      for (int r = 0; r < n; ++r)
        cand[static_cast<size_t>(c)][static_cast<size_t>(r)] =
            cx(re.vec(r, lo + c), re.vec(r + n, lo + c));

    std::vector<std::vector<cx>> basis;
    std::vector<bool> used(static_cast<size_t>(count), false);
    for (int round = 0; round < want; ++round) {
      double best_norm = -1.0;
      int best = -1;
      std::vector<cx> best_res;
      for (int c = 0; c < count; ++c) {
        if (used[static_cast<size_t>(c)]) continue;
        std::vector<cx> res = cand[static_cast<size_t>(c)];
        for (const auto& e : basis) {
          cx ip{};
          for (int r = 0; r < n; ++r) ip += std::conj(e[static_cast<size_t>(r)]) * res[static_cast<size_t>(r)];
          for (int r = 0; r < n; ++r) res[static_cast<size_t>(r)] -= ip * e[static_cast<size_t>(r)];
        }
        double nr = 0.0;
        for (const auto& z : res) nr += std::norm(z);
        nr = std::sqrt(nr);
        if (nr > best_norm) {
          best_norm = nr;
          best = c;
          best_res = std::move(res);
        }
      }
      used[static_cast<size_t>(best)] = true;
      for (auto& z : best_res) z /= best_norm;
      basis.push_back(std::move(best_res));

      out.values.push_back(re.values[static_cast<size_t>(lo + best)]);
      for (int r = 0; r < n; ++r) out.vectors(r, accepted_total) = basis.back()[static_cast<size_t>(r)];
      ++accepted_total;
    }
    lo = hi;
  }

  return out;
}

// Principal square root of a positive semidefinite Hermitian matrix.
// Eigenvalues below -tol are rejected; small negatives are clamped to zero.
inline ComplexMatrix sqrt_psd(const ComplexMatrix& m, double tol = 1e-12) {
  const auto eig = eigen_hermitian(m);
  const int n = m.dim();
  for (double lam : eig.values) {
    if (lam < -tol) {
      std::ostringstream os;
      os << "sqrt_psd: matrix is not positive semidefinite (eigenvalue " << lam << ")";
      throw std::invalid_argument(os.str());
    }
  }
  ComplexMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cx acc{};
      for (int k = 0; k < n; ++k) {
        const double root = std::sqrt(std::max(eig.values[static_cast<size_t>(k)], 0.0));
        acc += eig.vectors(i, k) * root * std::conj(eig.vectors(j, k));
      }
      out(i, j) = acc;
    }
  return out;
}

inline double min_eigenvalue(const ComplexMatrix& m) {
  const auto eig = eigen_hermitian(m);
  return eig.values.back();
}

}  // namespace qcompat
