#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <utility>
#include <vector>

#include "qcompat/eigen.hpp"
#include "qcompat/matrix.hpp"
#include "qcompat/rng.hpp"

namespace qcompat {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline Vec3 scaled(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
inline Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

inline Vec3 normalized(const Vec3& a) {
  const double n = norm(a);
  if (n <= 0.0) throw std::invalid_argument("normalized: zero vector");
  return scaled(a, 1.0 / n);
}

struct SamplerConfig {
  uint64_t seed = 0;
  uint64_t count = 0;
};

// Qubit state by its Bloch vector; |r| <= 1.
class QubitState {
 public:
  explicit QubitState(const Vec3& r) : r_(r) {
    if (norm(r) > 1.0 + 1e-12) {
      std::ostringstream os;
      os << "QubitState: Bloch vector norm " << norm(r) << " exceeds 1";
      throw std::invalid_argument(os.str());
    }
  }

  const Vec3& bloch() const { return r_; }

  ComplexMatrix density() const {
    ComplexMatrix rho(2);
    rho(0, 0) = 0.5 * (1.0 + r_[2]);
    rho(1, 1) = 0.5 * (1.0 - r_[2]);
    rho(0, 1) = 0.5 * cx(r_[0], -r_[1]);
    rho(1, 0) = 0.5 * cx(r_[0], r_[1]);
    return rho;
  }

 private:
  Vec3 r_;
};

// Unit vector on the Bloch sphere. Inputs within 1e-6 of unit norm are
// normalized; anything farther off is rejected rather than rescaled.
class Direction {
 public:
  explicit Direction(const Vec3& n) {
    const double len = norm(n);
    if (std::abs(len - 1.0) > 1e-6) {
      std::ostringstream os;
      os << "Direction: norm " << len << " is not within 1e-6 of 1";
      throw std::invalid_argument(os.str());
    }
    n_ = scaled(n, 1.0 / len);
  }

  const Vec3& vec() const { return n_; }
  double operator[](int i) const { return n_[static_cast<size_t>(i)]; }

 private:
  Vec3 n_;
};

// Two-outcome measurement M(+/-) = (I +/- s n.sigma)/2 with sharpness s.
// Both effects have unit trace; s = 1 is projective, s = 0 is trivial.
class BinaryMeasurement {
 public:
  BinaryMeasurement(double s, const Direction& direction) : s_(s), dir_(direction) {
    if (!(s >= -1e-12 && s <= 1.0 + 1e-12)) {
      std::ostringstream os;
      os << "BinaryMeasurement: sharpness " << s << " outside [0, 1]";
      throw std::invalid_argument(os.str());
    }
    s_ = std::min(std::max(s, 0.0), 1.0);
  }

  double sharpness() const { return s_; }
  const Direction& direction() const { return dir_; }

  // M- is built as I - M+, so the pair sums to the identity exactly.
  std::pair<ComplexMatrix, ComplexMatrix> effects() const {
    const Vec3& n = dir_.vec();
    ComplexMatrix plus(2);
    plus(0, 0) = 0.5 * (1.0 + s_ * n[2]);
    plus(1, 1) = 0.5 * (1.0 - s_ * n[2]);
    plus(0, 1) = 0.5 * s_ * cx(n[0], -n[1]);
    plus(1, 0) = 0.5 * s_ * cx(n[0], n[1]);
    ComplexMatrix minus = ComplexMatrix::identity(2) - plus;
    return {plus, minus};
  }

 private:
  double s_;
  Direction dir_;
};

// Outcome probabilities (p+, p-) = (1 +/- s n.r)/2.
inline std::pair<double, double> measure_probabilities(const BinaryMeasurement& m, const QubitState& state) {
  const double overlap = m.sharpness() * dot(m.direction().vec(), state.bloch());
  return {0.5 * (1.0 + overlap), 0.5 * (1.0 - overlap)};
}

// Finite POVM in dimension 2..4: Hermitian PSD effects summing to identity.
class GeneralPovm {
 public:
  explicit GeneralPovm(std::vector<ComplexMatrix> effects) : effects_(std::move(effects)) {
    if (effects_.empty()) throw std::invalid_argument("GeneralPovm: no effects");
    const int d = effects_.front().dim();
    if (d < 2 || d > 4) throw std::invalid_argument("GeneralPovm: dimension must be 2..4");
    ComplexMatrix sum(d);
    for (const auto& e : effects_) {
      if (e.dim() != d) throw std::invalid_argument("GeneralPovm: mixed dimensions");
      if (e.hermiticity_defect() > 1e-12) throw std::invalid_argument("GeneralPovm: effect is not Hermitian");
      if (min_eigenvalue(e) < -1e-12) throw std::invalid_argument("GeneralPovm: effect is not positive semidefinite");
      sum += e;
    }
    sum -= ComplexMatrix::identity(d);
    if (sum.max_abs() > 1e-12) throw std::invalid_argument("GeneralPovm: effects do not sum to identity");
  }

  static GeneralPovm from_binary(const BinaryMeasurement& m) {
    auto [plus, minus] = m.effects();
    return GeneralPovm({std::move(plus), std::move(minus)});
  }

  int dim() const { return effects_.front().dim(); }
  size_t size() const { return effects_.size(); }
  const ComplexMatrix& effect(size_t i) const { return effects_[i]; }

 private:
  std::vector<ComplexMatrix> effects_;
};

// Uncertainty-based unsharpness: sum_ij |r_ij| with
// r_ij = (delta_ij Tr M_i - Tr M_i M_j) / d. Zero for projective measurements.
inline double unsharpness_uncertainty(const GeneralPovm& povm) {
  const double d = povm.dim();
  double total = 0.0;
  for (size_t i = 0; i < povm.size(); ++i)
    for (size_t j = 0; j < povm.size(); ++j) {
      double r = -real_trace_product(povm.effect(i), povm.effect(j));
      if (i == j) r += povm.effect(i).trace().real();
      total += std::abs(r / d);
    }
  return total;
}

// Luders-channel unsharpness: operator norm of I - sum_i M_i^2.
inline double unsharpness_luders(const GeneralPovm& povm) {
  ComplexMatrix x = ComplexMatrix::identity(povm.dim());
  for (size_t i = 0; i < povm.size(); ++i) x -= povm.effect(i) * povm.effect(i);
  const auto eig = eigen_hermitian(x);
  return std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
}

// Haar-uniform pure qubit states: three Box-Muller normals, normalized.
// Sample i consumes normal pairs 2i and 2i+1 of its stream, so states are
// pure functions of (seed, index).
class HaarSampler {
 public:
  explicit HaarSampler(uint64_t seed) : seed_(seed) {}

  Vec3 bloch(uint64_t i) const {
    const auto [z0, z1] = normal_pair(seed_, 2 * i);
    const auto [z2, z3] = normal_pair(seed_, 2 * i + 1);
    (void)z3;
    const Vec3 v{z0, z1, z2};
    const double n = norm(v);
    if (n <= 0.0) return {0.0, 0.0, 1.0};
    return scaled(v, 1.0 / n);
  }

  QubitState state(uint64_t i) const { return QubitState(bloch(i)); }

  HaarSampler split(uint64_t k) const { return HaarSampler(substream(seed_, k)); }

  uint64_t seed() const { return seed_; }

 private:
  uint64_t seed_;
};

inline std::vector<QubitState> sample_haar_pure(const SamplerConfig& cfg) {
  if (cfg.count == 0) throw std::invalid_argument("sample_haar_pure: count must be positive");
  HaarSampler sampler(cfg.seed);
  std::vector<QubitState> out;
  out.reserve(cfg.count);
  for (uint64_t i = 0; i < cfg.count; ++i) out.push_back(sampler.state(i));
  return out;
}

}  // namespace qcompat
