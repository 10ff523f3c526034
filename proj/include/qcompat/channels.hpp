#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <utility>

#include "qcompat/core.hpp"
#include "qcompat/eigen.hpp"
#include "qcompat/matrix.hpp"

namespace qcompat {

//============================================================================
// 3x3 real matrices (row-major) and rotations
//============================================================================

using Mat3 = std::array<double, 9>;

inline Mat3 mat3_identity() { return {1, 0, 0, 0, 1, 0, 0, 0, 1}; }

inline Mat3 mat3_mul(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j) c[static_cast<size_t>(3 * i + j)] += a[static_cast<size_t>(3 * i + k)] * b[static_cast<size_t>(3 * k + j)];
  return c;
}

inline Mat3 mat3_transpose(const Mat3& a) {
  return {a[0], a[3], a[6], a[1], a[4], a[7], a[2], a[5], a[8]};
}

inline Vec3 mat3_apply(const Mat3& a, const Vec3& v) {
  return {a[0] * v[0] + a[1] * v[1] + a[2] * v[2],
          a[3] * v[0] + a[4] * v[1] + a[5] * v[2],
          a[6] * v[0] + a[7] * v[1] + a[8] * v[2]};
}

inline double mat3_det(const Mat3& a) {
  return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
         a[2] * (a[3] * a[7] - a[4] * a[6]);
}

inline double mat3_max_abs_diff(const Mat3& a, const Mat3& b) {
  double m = 0.0;
  for (size_t k = 0; k < 9; ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

// Proper rotation: orthogonal within 1e-10 with determinant +1.
class Rotation3 {
 public:
  explicit Rotation3(const Mat3& m) : m_(m) {
    const Mat3 gram = mat3_mul(mat3_transpose(m), m);
    const double ortho = mat3_max_abs_diff(gram, mat3_identity());
    if (ortho > 1e-10) {
      std::ostringstream os;
      os << "Rotation3: not orthogonal (max |R^T R - I| = " << ortho << ")";
      throw std::invalid_argument(os.str());
    }
    const double det = mat3_det(m);
    if (std::abs(det - 1.0) > 1e-10) {
      std::ostringstream os;
      os << "Rotation3: determinant " << det << " is not +1";
      throw std::invalid_argument(os.str());
    }
  }

  static Rotation3 identity() { return Rotation3(mat3_identity()); }

  // Rodrigues formula; axis need not be pre-normalized.
  static Rotation3 axis_angle(const Vec3& axis, double angle) {
    const Vec3 a = normalized(axis);
    const double c = std::cos(angle), s = std::sin(angle);
    Mat3 m{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        m[static_cast<size_t>(3 * i + j)] = (i == j ? c : 0.0) + (1.0 - c) * a[static_cast<size_t>(i)] * a[static_cast<size_t>(j)];
    m[1] -= s * a[2];  m[2] += s * a[1];
    m[3] += s * a[2];  m[5] -= s * a[0];
    m[6] -= s * a[1];  m[7] += s * a[0];
    return Rotation3(m);
  }

  const Mat3& matrix() const { return m_; }
  Vec3 apply(const Vec3& v) const { return mat3_apply(m_, v); }
  Rotation3 transposed() const { return Rotation3(mat3_transpose(m_)); }
  bool is_identity(double tol = 1e-14) const { return mat3_max_abs_diff(m_, mat3_identity()) <= tol; }

  friend Rotation3 operator*(const Rotation3& a, const Rotation3& b) {
    return Rotation3(mat3_mul(a.m_, b.m_));
  }

 private:
  Mat3 m_;
};

// 2x2 unitary within 1e-10.
class Unitary2 {
 public:
  explicit Unitary2(const ComplexMatrix& u) : u_(u) {
    if (u.dim() != 2) throw std::invalid_argument("Unitary2: dimension must be 2");
    ComplexMatrix g = u.adjoint() * u;
    g -= ComplexMatrix::identity(2);
    if (g.max_abs() > 1e-10) {
      std::ostringstream os;
      os << "Unitary2: not unitary (max |U*U - I| = " << g.max_abs() << ")";
      throw std::invalid_argument(os.str());
    }
  }

  const ComplexMatrix& matrix() const { return u_; }

 private:
  ComplexMatrix u_;
};

// R_ij = Re Tr(sigma_i V sigma_j V*) / 2; the adjoint action of V on the
// Pauli basis, V sigma_j V* = sum_i R_ij sigma_i.
inline Rotation3 rotation_from_unitary(const Unitary2& v) {
  const ComplexMatrix& u = v.matrix();
  const ComplexMatrix ud = u.adjoint();
  Mat3 r{};
  for (int j = 0; j < 3; ++j) {
    const ComplexMatrix conj_j = u * pauli(j + 1) * ud;
    for (int i = 0; i < 3; ++i)
      r[static_cast<size_t>(3 * i + j)] = 0.5 * real_trace_product(pauli(i + 1), conj_j);
  }
  return Rotation3(r);
}

// Inverse of the adjoint action, up to global phase. The quaternion (w, v) is
// extracted from the largest of trace/diagonal pivots for stability, then
// U = w I - i v.sigma. Phase convention: first entry over 1e-8 in magnitude
// is made real positive.
inline Unitary2 unitary_from_rotation(const Rotation3& rot) {
  const Mat3& r = rot.matrix();
  double w, x, y, z;
  const double tr = r[0] + r[4] + r[8];
  if (tr > 0.0) {
    const double s = 2.0 * std::sqrt(tr + 1.0);
    w = 0.25 * s;
    x = (r[7] - r[5]) / s;
    y = (r[2] - r[6]) / s;
    z = (r[3] - r[1]) / s;
  } else if (r[0] >= r[4] && r[0] >= r[8]) {
    const double s = 2.0 * std::sqrt(1.0 + r[0] - r[4] - r[8]);
    w = (r[7] - r[5]) / s;
    x = 0.25 * s;
    y = (r[1] + r[3]) / s;
    z = (r[2] + r[6]) / s;
  } else if (r[4] >= r[8]) {
    const double s = 2.0 * std::sqrt(1.0 + r[4] - r[0] - r[8]);
    w = (r[2] - r[6]) / s;
    x = (r[1] + r[3]) / s;
    y = 0.25 * s;
    z = (r[5] + r[7]) / s;
  } else {
    const double s = 2.0 * std::sqrt(1.0 + r[8] - r[0] - r[4]);
    w = (r[3] - r[1]) / s;
    x = (r[2] + r[6]) / s;
    y = (r[5] + r[7]) / s;
    z = 0.25 * s;
  }
  const double qn = std::sqrt(w * w + x * x + y * y + z * z);
  w /= qn;  x /= qn;  y /= qn;  z /= qn;

  ComplexMatrix u(2);
  u(0, 0) = cx(w, -z);
  u(0, 1) = cx(-y, -x);
  u(1, 0) = cx(y, -x);
  u(1, 1) = cx(w, z);

  cx phase{1.0, 0.0};
  bool found = false;
  for (int i = 0; i < 2 && !found; ++i)
    for (int j = 0; j < 2 && !found; ++j)
      if (std::abs(u(i, j)) > 1e-8) {
        phase = u(i, j) / std::abs(u(i, j));
        found = true;
      }
  u *= std::conj(phase);
  return Unitary2(u);
}

//============================================================================
// Pauli channels
//============================================================================

// Mixing weights (p0, p1, p2, p3) of rho -> sum_j p_j sigma_j rho sigma_j.
// The Bloch action is diag(lambda1, lambda2, lambda3) with
//   lambda1 = p0 + p1 - p2 - p3, and cyclic.
class PauliProbabilities {
 public:
  explicit PauliProbabilities(const std::array<double, 4>& p) : p_(p) {
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
      if (p_[static_cast<size_t>(i)] < -1e-12) {
        std::ostringstream os;
        os << "PauliProbabilities: component " << i << " = " << p_[static_cast<size_t>(i)] << " is negative";
        throw std::invalid_argument(os.str());
      }
      p_[static_cast<size_t>(i)] = std::max(p_[static_cast<size_t>(i)], 0.0);
      sum += p_[static_cast<size_t>(i)];
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      std::ostringstream os;
      os << "PauliProbabilities: sum " << sum << " is not 1";
      throw std::invalid_argument(os.str());
    }
  }

  double operator[](int i) const { return p_[static_cast<size_t>(i)]; }
  const std::array<double, 4>& values() const { return p_; }

  std::array<double, 3> lambdas() const {
    return {p_[0] + p_[1] - p_[2] - p_[3],
            p_[0] - p_[1] + p_[2] - p_[3],
            p_[0] - p_[1] - p_[2] + p_[3]};
  }

  // Inverse of lambdas(). Complete positivity means every recovered weight is
  // nonnegative; anything below -1e-9 is rejected. Values in [-1e-9, 0) are
  // clamped and the sum renormalized, since the clamp can push the total past
  // the strict constructor tolerance.
  static PauliProbabilities from_lambdas(const std::array<double, 3>& lam) {
    std::array<double, 4> p{
        0.25 * (1.0 + lam[0] + lam[1] + lam[2]),
        0.25 * (1.0 + lam[0] - lam[1] - lam[2]),
        0.25 * (1.0 - lam[0] + lam[1] - lam[2]),
        0.25 * (1.0 - lam[0] - lam[1] + lam[2])};
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
      if (p[static_cast<size_t>(i)] < -1e-9) {
        std::ostringstream os;
        os << "from_lambdas: Bloch scalings (" << lam[0] << ", " << lam[1] << ", " << lam[2]
           << ") are not completely positive (weight " << i << " = " << p[static_cast<size_t>(i)] << ")";
        throw std::invalid_argument(os.str());
      }
      p[static_cast<size_t>(i)] = std::max(p[static_cast<size_t>(i)], 0.0);
      sum += p[static_cast<size_t>(i)];
    }
    for (auto& v : p) v /= sum;
    return PauliProbabilities(p);
  }

 private:
  std::array<double, 4> p_;
};

inline QubitState apply_pauli(const PauliProbabilities& p, const QubitState& state) {
  const auto lam = p.lambdas();
  const Vec3& r = state.bloch();
  return QubitState({lam[0] * r[0], lam[1] * r[1], lam[2] * r[2]});
}

// Kraus-sum route, sum_j p_j sigma_j rho sigma_j; used as an independent
// cross-check of the Bloch route.
inline ComplexMatrix apply_pauli_matrix(const PauliProbabilities& p, const ComplexMatrix& rho) {
  ComplexMatrix out(rho.dim());
  for (int j = 0; j < 4; ++j) {
    if (p[j] == 0.0) continue;
    out += p[j] * (pauli(j) * rho * pauli(j));
  }
  return out;
}

//============================================================================
// Unital channels and the canonical rotation/Pauli/rotation decomposition
//============================================================================

namespace detail {

struct Svd3 {
  Mat3 u;
  std::array<double, 3> sigma;  // descending, nonnegative
  Mat3 v;                       // T = U diag(sigma) V^T
};

// One-sided Jacobi on columns. Small and deterministic; adequate for the
// well-scaled 3x3 Bloch matrices this library sees.
inline Svd3 svd3(const Mat3& t) {
  Mat3 b = t;
  Mat3 v = mat3_identity();

  auto col_dot = [](const Mat3& m, int p, int q) {
    return m[static_cast<size_t>(p)] * m[static_cast<size_t>(q)] +
           m[static_cast<size_t>(3 + p)] * m[static_cast<size_t>(3 + q)] +
           m[static_cast<size_t>(6 + p)] * m[static_cast<size_t>(6 + q)];
  };
  auto rotate_cols = [](Mat3& m, int p, int q, double c, double s) {
    for (int r = 0; r < 3; ++r) {
      const double mp = m[static_cast<size_t>(3 * r + p)], mq = m[static_cast<size_t>(3 * r + q)];
      m[static_cast<size_t>(3 * r + p)] = c * mp - s * mq;
      m[static_cast<size_t>(3 * r + q)] = s * mp + c * mq;
    }
  };

  for (int sweep = 0; sweep < 60; ++sweep) {
    bool converged = true;
    for (int p = 0; p < 3; ++p)
      for (int q = p + 1; q < 3; ++q) {
        const double alpha = col_dot(b, p, p), beta = col_dot(b, q, q), gamma = col_dot(b, p, q);
        if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta) || gamma == 0.0) continue;
        converged = false;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double tt = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + tt * tt);
        const double s = c * tt;
        rotate_cols(b, p, q, c, s);
        rotate_cols(v, p, q, c, s);
      }
    if (converged) break;
  }

  std::array<double, 3> sig{};
  for (int j = 0; j < 3; ++j) sig[static_cast<size_t>(j)] = std::sqrt(std::max(col_dot(b, j, j), 0.0));

  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return sig[static_cast<size_t>(i)] > sig[static_cast<size_t>(j)]; });

  Svd3 out;
  Mat3 bs{}, vs{};
  for (int c = 0; c < 3; ++c) {
    out.sigma[static_cast<size_t>(c)] = sig[static_cast<size_t>(order[static_cast<size_t>(c)])];
    for (int r = 0; r < 3; ++r) {
      bs[static_cast<size_t>(3 * r + c)] = b[static_cast<size_t>(3 * r + order[static_cast<size_t>(c)])];
      vs[static_cast<size_t>(3 * r + c)] = v[static_cast<size_t>(3 * r + order[static_cast<size_t>(c)])];
    }
  }
  out.v = vs;

  // Left vectors: normalized columns of B, completing any null columns into
  // an orthonormal frame.
  Mat3 u{};
  const double rank_tol = 1e-13 * std::max(out.sigma[0], 1.0);
  int rank = 0;
  for (int c = 0; c < 3; ++c) {
    if (out.sigma[static_cast<size_t>(c)] > rank_tol) {
      for (int r = 0; r < 3; ++r) u[static_cast<size_t>(3 * r + c)] = bs[static_cast<size_t>(3 * r + c)] / out.sigma[static_cast<size_t>(c)];
      ++rank;
    }
  }
  auto col = [&u](int c) -> Vec3 { return {u[static_cast<size_t>(c)], u[static_cast<size_t>(3 + c)], u[static_cast<size_t>(6 + c)]}; };
  auto set_col = [&u](int c, const Vec3& w) {
    u[static_cast<size_t>(c)] = w[0];
    u[static_cast<size_t>(3 + c)] = w[1];
    u[static_cast<size_t>(6 + c)] = w[2];
  };
  if (rank == 0) {
    u = mat3_identity();
  } else if (rank == 1) {
    const Vec3 u0 = col(0);
    int least = 0;
    for (int k = 1; k < 3; ++k)
      if (std::abs(u0[static_cast<size_t>(k)]) < std::abs(u0[static_cast<size_t>(least)])) least = k;
    Vec3 e{0, 0, 0};
    e[static_cast<size_t>(least)] = 1.0;
    const Vec3 u1 = normalized(sub(e, scaled(u0, dot(u0, e))));
    set_col(1, u1);
    set_col(2, cross(u0, u1));
  } else if (rank == 2) {
    set_col(2, normalized(cross(col(0), col(1))));
  }
  out.u = u;
  return out;
}

}  // namespace detail

// Unital qubit channel as output-rotation o Pauli o input-rotation. The Bloch
// action is T = R_out diag(lambda) R_in.
class UnitalChannel {
 public:
  UnitalChannel(const Rotation3& r_out, const PauliProbabilities& p, const Rotation3& r_in)
      : r_out_(r_out), r_in_(r_in), p_(p) {
    const auto lam = p.lambdas();
    Mat3 d{};
    d[0] = lam[0];  d[4] = lam[1];  d[8] = lam[2];
    t_ = mat3_mul(r_out.matrix(), mat3_mul(d, r_in.matrix()));
    rotations_trivial_ = r_out.is_identity() && r_in.is_identity();
  }

  static UnitalChannel from_pauli(const PauliProbabilities& p) {
    return UnitalChannel(Rotation3::identity(), p, Rotation3::identity());
  }

  // Canonical decomposition of an arbitrary Bloch matrix: SVD with the sign
  // folding that flips a negative-determinant factor together with the third
  // singular value, keeping both factors proper rotations. Leftover signs
  // stay on the scalings; sign foldings only permute the recovered weights,
  // so complete positivity of one folding settles all of them.
  static UnitalChannel from_bloch(const Mat3& t) {
    auto svd = detail::svd3(t);
    std::array<double, 3> lam = svd.sigma;
    Mat3 u = svd.u, v = svd.v;
    if (mat3_det(u) < 0.0) {
      for (int r = 0; r < 3; ++r) u[static_cast<size_t>(3 * r + 2)] = -u[static_cast<size_t>(3 * r + 2)];
      lam[2] = -lam[2];
    }
    if (mat3_det(v) < 0.0) {
      for (int r = 0; r < 3; ++r) v[static_cast<size_t>(3 * r + 2)] = -v[static_cast<size_t>(3 * r + 2)];
      lam[2] = -lam[2];
    }
    return UnitalChannel(Rotation3(u), PauliProbabilities::from_lambdas(lam), Rotation3(mat3_transpose(v)));
  }

  const Mat3& bloch_matrix() const { return t_; }
  const PauliProbabilities& pauli_weights() const { return p_; }
  const Rotation3& output_rotation() const { return r_out_; }
  const Rotation3& input_rotation() const { return r_in_; }
  bool rotations_trivial() const { return rotations_trivial_; }

  QubitState apply(const QubitState& state) const { return QubitState(mat3_apply(t_, state.bloch())); }

 private:
  Mat3 t_;
  Rotation3 r_out_, r_in_;
  PauliProbabilities p_;
  bool rotations_trivial_;
};

// Density-matrix route V2 (sum_j p_j sigma_j V1 rho V1* sigma_j) V2*;
// independent of the Bloch route above.
inline ComplexMatrix apply_unital_matrix(const UnitalChannel& c, const ComplexMatrix& rho) {
  if (c.rotations_trivial()) return apply_pauli_matrix(c.pauli_weights(), rho);
  const ComplexMatrix v1 = unitary_from_rotation(c.input_rotation()).matrix();
  const ComplexMatrix v2 = unitary_from_rotation(c.output_rotation()).matrix();
  const ComplexMatrix inner = apply_pauli_matrix(c.pauli_weights(), v1 * rho * v1.adjoint());
  return v2 * inner * v2.adjoint();
}

//============================================================================
// Choi states
//============================================================================

// Choi state (E (x) id)(|phi+><phi+|), channel on the first factor.
// Hermitian, unit trace, PSD, both partial traces maximally mixed.
class ChoiState {
 public:
  explicit ChoiState(const ComplexMatrix& m) : m_(m) {
    if (m.dim() != 4) throw std::invalid_argument("ChoiState: dimension must be 4");
    if (m.hermiticity_defect() > 1e-12) throw std::invalid_argument("ChoiState: matrix is not Hermitian");
    if (std::abs(m.trace().real() - 1.0) > 1e-10 || std::abs(m.trace().imag()) > 1e-10)
      throw std::invalid_argument("ChoiState: trace is not 1");
    if (min_eigenvalue(m) < -1e-12) throw std::invalid_argument("ChoiState: matrix is not positive semidefinite");
    for (int side = 0; side < 2; ++side) {
      ComplexMatrix pt(2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 2; ++k)
            pt(i, j) += side == 0 ? m(2 * k + i, 2 * k + j) : m(2 * i + k, 2 * j + k);
      pt -= 0.5 * ComplexMatrix::identity(2);
      if (pt.max_abs() > 1e-10) throw std::invalid_argument("ChoiState: a partial trace is not maximally mixed");
    }
  }

  const ComplexMatrix& matrix() const { return m_; }

 private:
  ComplexMatrix m_;
};

// Closed Bell-diagonal form for Pauli channels: corner block on (p0, p3),
// middle block on (p1, p2).
inline ChoiState choi_state(const PauliProbabilities& p) {
  ComplexMatrix m(4);
  m(0, 0) = m(3, 3) = 0.5 * (p[0] + p[3]);
  m(0, 3) = m(3, 0) = 0.5 * (p[0] - p[3]);
  m(1, 1) = m(2, 2) = 0.5 * (p[1] + p[2]);
  m(1, 2) = m(2, 1) = 0.5 * (p[1] - p[2]);
  return ChoiState(m);
}

inline ChoiState choi_state_unital(const UnitalChannel& c) {
  if (c.rotations_trivial()) return choi_state(c.pauli_weights());
  ComplexMatrix bell(4);
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
  const ComplexMatrix v1 = kron(unitary_from_rotation(c.input_rotation()).matrix(), ComplexMatrix::identity(2));
  const ComplexMatrix v2 = kron(unitary_from_rotation(c.output_rotation()).matrix(), ComplexMatrix::identity(2));
  ComplexMatrix rotated = v1 * bell * v1.adjoint();
  ComplexMatrix mixed(4);
  for (int j = 0; j < 4; ++j) {
    if (c.pauli_weights()[j] == 0.0) continue;
    const ComplexMatrix k = kron(pauli(j), ComplexMatrix::identity(2));
    mixed += c.pauli_weights()[j] * (k * rotated * k);
  }
  return ChoiState(v2 * mixed * v2.adjoint());
}

}  // namespace qcompat
