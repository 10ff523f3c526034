#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "qcompat/channels.hpp"
#include "qcompat/core.hpp"

namespace qcompat {

//============================================================================
// P values
//============================================================================

// P_i = 2(sqrt(p0 p_i) + sqrt(p_j p_k)) for {i, j, k} = {1, 2, 3}. Each lies
// in [0, 1]; they control both measurement compatibility and the Choi-state
// uncertainty matrix below.
class PValues {
 public:
  explicit PValues(const std::array<double, 3>& v) : v_(v) {
    for (double x : v_)
      if (!(x >= 0.0 && x <= 1.0 + 1e-12)) throw std::invalid_argument("PValues: value outside [0, 1]");
  }

  double operator[](int i) const { return v_[static_cast<size_t>(i)]; }
  const std::array<double, 3>& values() const { return v_; }
  double max() const { return std::max({v_[0], v_[1], v_[2]}); }

 private:
  std::array<double, 3> v_;
};

inline PValues p_values(const PauliProbabilities& p) {
  return PValues({2.0 * (std::sqrt(p[0] * p[1]) + std::sqrt(p[2] * p[3])),
                  2.0 * (std::sqrt(p[0] * p[2]) + std::sqrt(p[1] * p[3])),
                  2.0 * (std::sqrt(p[0] * p[3]) + std::sqrt(p[1] * p[2]))});
}

inline std::array<double, 4> sorted_descending(const PauliProbabilities& p) {
  std::array<double, 4> q = p.values();
  std::sort(q.begin(), q.end(), std::greater<double>());
  return q;
}

// Largest P value via the sorted form 2(sqrt(q0 q1) + sqrt(q2 q3)); equals
// max over p_values exactly (pairing the two largest weights maximizes).
inline double p_max_sorted(const PauliProbabilities& p) {
  const auto q = sorted_descending(p);
  return 2.0 * (std::sqrt(q[0] * q[1]) + std::sqrt(q[2] * q[3]));
}

// Signed counterparts of the two smaller sorted P values:
// T_i = 2(sqrt(q0 q_i) - sqrt(q_j q_k)) on the descending-sorted weights.
inline std::array<double, 2> t_values(const PauliProbabilities& p) {
  const auto q = sorted_descending(p);
  return {2.0 * (std::sqrt(q[0] * q[2]) - std::sqrt(q[1] * q[3])),
          2.0 * (std::sqrt(q[0] * q[3]) - std::sqrt(q[1] * q[2]))};
}

//============================================================================
// Fidelity
//============================================================================

// Haar-average input-output fidelity of a Pauli channel: (1 + 2 p0) / 3.
inline double avg_fidelity_pauli(const PauliProbabilities& p) { return (1.0 + 2.0 * p[0]) / 3.0; }

// Best average fidelity over unitary pre/post corrections: (1 + 2 max_j p_j) / 3.
inline double corrected_fidelity_pauli(const PauliProbabilities& p) {
  const auto& v = p.values();
  return (1.0 + 2.0 * *std::max_element(v.begin(), v.end())) / 3.0;
}

// Haar-average fidelity of a general unital channel, (3 + Tr T) / 6.
inline double avg_fidelity_unital(const UnitalChannel& c) {
  const Mat3& t = c.bloch_matrix();
  return 0.5 + (t[0] + t[4] + t[8]) / 6.0;
}

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

// Monte Carlo average of <psi| E(|psi><psi|) |psi> over Haar states, through
// the density-matrix route so it cross-checks the closed forms independently.
inline McEstimate avg_fidelity_mc(const UnitalChannel& c, const SamplerConfig& cfg) {
  if (cfg.count == 0) throw std::invalid_argument("avg_fidelity_mc: count must be positive");
  HaarSampler sampler(cfg.seed);
  double sum = 0.0, sum_sq = 0.0;
  for (uint64_t i = 0; i < cfg.count; ++i) {
    const ComplexMatrix rho = sampler.state(i).density();
    const double f = real_trace_product(rho, apply_unital_matrix(c, rho));
    sum += f;
    sum_sq += f * f;
  }
  const double n = static_cast<double>(cfg.count);
  const double mean = sum / n;
  const double var = std::max(sum_sq / n - mean * mean, 0.0);
  return {mean, std::sqrt(var / n)};
}

//============================================================================
// Quantumness (Haar-average coherence generated in the best-preserved basis)
//============================================================================

// Squared l1 coherence of a qubit state in the basis along `axis`:
// |r|^2 - (r.axis)^2, i.e. 4 |rho_01|^2 after rotating axis to z.
inline double squared_l1_coherence(const QubitState& state, const Direction& axis) {
  const Vec3& r = state.bloch();
  const double along = dot(r, axis.vec());
  return std::max(dot(r, r) - along * along, 0.0);
}

// Closed form for Pauli channels: half the sum of the two smallest squared
// Bloch scalings, equivalently (q0 - q1)^2 + (q2 - q3)^2 on sorted weights.
inline double quantumness_pauli(const PauliProbabilities& p) {
  const auto q = sorted_descending(p);
  const double a = q[0] - q[1], b = q[2] - q[3];
  return a * a + b * b;
}

// Fibonacci sphere lattice; count >= 1.
inline std::vector<Vec3> fibonacci_directions(int count) {
  std::vector<Vec3> dirs;
  dirs.reserve(static_cast<size_t>(count));
  const double golden_angle = 3.141592653589793238462643383279502884 * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < count; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / count;
    const double rad = std::sqrt(std::max(1.0 - z * z, 0.0));
    const double phi = golden_angle * k;
    dirs.push_back({rad * std::cos(phi), rad * std::sin(phi), z});
  }
  return dirs;
}

namespace detail {

// Sample second moments of the output Bloch vectors. The Haar-average squared
// l1 coherence in basis b is then m2 - b^T S b, identical to averaging
// per-sample values up to summation order, so the basis sweep below costs a
// few flops per direction.
struct OutputMoments {
  std::array<double, 9> s{};
  double m2 = 0.0;

  double coherence_mean(const Vec3& b) const {
    double q = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) q += b[static_cast<size_t>(i)] * s[static_cast<size_t>(3 * i + j)] * b[static_cast<size_t>(j)];
    return m2 - q;
  }
};

inline OutputMoments output_moments(const UnitalChannel& c, const SamplerConfig& cfg) {
  HaarSampler sampler(cfg.seed);
  OutputMoments m;
  for (uint64_t k = 0; k < cfg.count; ++k) {
    const Vec3 y = mat3_apply(c.bloch_matrix(), sampler.bloch(k));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m.s[static_cast<size_t>(3 * i + j)] += y[static_cast<size_t>(i)] * y[static_cast<size_t>(j)];
    m.m2 += dot(y, y);
  }
  const double n = static_cast<double>(cfg.count);
  for (auto& v : m.s) v /= n;
  m.m2 /= n;
  return m;
}

}  // namespace detail

// Monte Carlo + basis-grid estimate: minimize the Haar-average squared l1
// coherence over measurement bases (basis_grid^2 Fibonacci directions plus
// one local refinement pass around the best), normalized so the identity
// channel scores 1. The Haar average for the identity is 2/3, hence the 3/2.
inline double quantumness_numerical(const UnitalChannel& c, const SamplerConfig& cfg, int basis_grid) {
  if (basis_grid < 8) throw std::invalid_argument("quantumness_numerical: basis_grid must be at least 8");
  if (cfg.count == 0) throw std::invalid_argument("quantumness_numerical: count must be positive");

  const auto moments = detail::output_moments(c, cfg);

  const auto coarse = fibonacci_directions(basis_grid * basis_grid);
  double best = std::numeric_limits<double>::infinity();
  Vec3 best_dir{0, 0, 1};
  for (const auto& b : coarse) {
    const double val = moments.coherence_mean(b);
    if (val < best) {
      best = val;
      best_dir = b;
    }
  }

  // Refinement: tangent-plane probe at roughly twice the coarse spacing.
  const double radius = 2.0 * std::sqrt(4.0 / (basis_grid * basis_grid));
  Vec3 t1 = cross(best_dir, std::abs(best_dir[2]) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0});
  t1 = normalized(t1);
  const Vec3 t2 = cross(best_dir, t1);
  const int rings = 8, spokes = 16;
  for (int ri = 1; ri <= rings; ++ri)
    for (int si = 0; si < spokes; ++si) {
      const double rr = radius * ri / rings;
      const double ang = 2.0 * 3.141592653589793238462643383279502884 * si / spokes;
      const Vec3 b = normalized(add(best_dir, add(scaled(t1, rr * std::cos(ang)), scaled(t2, rr * std::sin(ang)))));
      best = std::min(best, moments.coherence_mean(b));
    }

  return 1.5 * std::max(best, 0.0);
}

//============================================================================
// Local quantum uncertainty of the Choi state
//============================================================================

// Uncertainty matrix W_ij = Tr[ sqrt(rho) (sigma_i (x) I) sqrt(rho) (sigma_j (x) I) ].
// Real symmetric; diagonal (P1, P2, P3) when rho is the Choi state of a
// Pauli channel.
inline std::array<double, 9> lqu_w_matrix(const ChoiState& state) {
  const ComplexMatrix root = sqrt_psd(state.matrix());
  std::array<ComplexMatrix, 3> obs{kron(pauli(1), ComplexMatrix::identity(2)),
                                   kron(pauli(2), ComplexMatrix::identity(2)),
                                   kron(pauli(3), ComplexMatrix::identity(2))};
  std::array<ComplexMatrix, 3> rooted{root * obs[0], root * obs[1], root * obs[2]};
  std::array<double, 9> w{};
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      const double v = real_trace_product(rooted[static_cast<size_t>(i)], rooted[static_cast<size_t>(j)]);
      w[static_cast<size_t>(3 * i + j)] = v;
      w[static_cast<size_t>(3 * j + i)] = v;
    }
  return w;
}

// LQU on the first factor: 1 - lambda_max(W). The identity channel's Choi
// state (a Bell state) scores 1; the fully depolarizing channel's (I/4)
// scores 0.
inline double lqu_direct(const ChoiState& state) {
  const auto w = lqu_w_matrix(state);
  const auto ev = eigenvalues_symmetric3(w);
  return 1.0 - ev[0];
}

// Closed form for Pauli channels: 1 - max_i P_i.
inline double lqu_pauli(const PauliProbabilities& p) { return 1.0 - p_max_sorted(p); }

//============================================================================
// Reports
//============================================================================

struct MeasureReport {
  double avg_fidelity = 0.0;
  double corrected_fidelity = 0.0;
  double quantumness = 0.0;
  double lqu = 0.0;
  std::array<double, 3> p_values{};
  double p_max = 0.0;
  double max_sharpness = 0.0;
};

inline MeasureReport measure_report(const PauliProbabilities& p) {
  MeasureReport r;
  r.avg_fidelity = avg_fidelity_pauli(p);
  r.corrected_fidelity = corrected_fidelity_pauli(p);
  r.quantumness = quantumness_pauli(p);
  r.lqu = lqu_pauli(p);
  r.p_values = p_values(p).values();
  r.p_max = p_max_sorted(p);
  r.max_sharpness = r.p_max;
  return r;
}

// For decorated channels the rotation-invariant measures come from the
// canonical Pauli weights; the average fidelity keeps the full Bloch trace.
inline MeasureReport measure_report(const UnitalChannel& c) {
  MeasureReport r = measure_report(c.pauli_weights());
  r.avg_fidelity = avg_fidelity_unital(c);
  return r;
}

}  // namespace qcompat
