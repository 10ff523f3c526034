#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "qcompat/channels.hpp"
#include "qcompat/core.hpp"
#include "qcompat/measures.hpp"

namespace qcompat {

//============================================================================
// Compatibility criterion
//============================================================================

struct CompatVerdict {
  bool compatible = false;
  double lhs = 0.0;
  PValues p_values{{0.0, 0.0, 0.0}};
};

// A Pauli channel admits the measurement (s, n) exactly when
//   s^2 n1^2 / P1^2 + s^2 n2^2 / P2^2 + s^2 n3^2 / P3^2 <= 1.
// A vanishing P_i forces the matching numerator to vanish: below 1e-14 on
// both counts the term contributes nothing, otherwise the channel is
// incompatible and lhs is reported as +inf.
inline CompatVerdict is_compatible_pauli(const PauliProbabilities& p, const BinaryMeasurement& m) {
  const PValues pv = p_values(p);
  const double s = m.sharpness();
  double lhs = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double num = s * m.direction()[i];
    if (pv[i] < 1e-14) {
      if (std::abs(num) >= 1e-14) {
        lhs = std::numeric_limits<double>::infinity();
        break;
      }
      continue;
    }
    const double ratio = num / pv[i];
    lhs += ratio * ratio;
  }
  return {lhs <= 1.0 + 1e-12, lhs, pv};
}

// Rotations only re-aim the measurement: the channel R_out o Pauli o R_in is
// compatible with (s, n) exactly when the Pauli part is compatible with
// (s, R_in n).
inline CompatVerdict is_compatible_unital(const UnitalChannel& c, const BinaryMeasurement& m) {
  const Vec3 rotated = c.input_rotation().apply(m.direction().vec());
  return is_compatible_pauli(c.pauli_weights(), BinaryMeasurement(m.sharpness(), Direction(rotated)));
}

// Sharpest compatible measurement for a Pauli channel: s = P_max along the
// arg-max principal axis.
inline double max_sharpness(const PauliProbabilities& p) { return p_max_sorted(p); }

// The four Pauli channels whose three P values all equal s; they are
// compatible with every direction at sharpness s and attain the minimal-LQU
// boundary. One has p1 = p2 = p3 = (1 + s - sqrt(1 + 2s - 3s^2))/8; the rest
// move the large weight to the other slots.
inline std::array<PauliProbabilities, 4> equal_p_channels(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("equal_p_channels: sharpness outside [0, 1]");
  const double disc = std::max(1.0 + 2.0 * s - 3.0 * s * s, 0.0);
  const double small = (1.0 + s - std::sqrt(disc)) / 8.0;
  const double large = 1.0 - 3.0 * small;
  return {PauliProbabilities({large, small, small, small}),
          PauliProbabilities({small, large, small, small}),
          PauliProbabilities({small, small, large, small}),
          PauliProbabilities({small, small, small, large})};
}

//============================================================================
// Compatibility polytope
//============================================================================

namespace detail {

// Feasibility of p in the convex hull of the columns of `verts` (each a
// probability 4-vector), by a phase-1 simplex on  V w + a = p,  w, a >= 0,
// minimizing sum(a). Bland's rule; feasible iff the optimum is ~0.
inline bool in_hull_lp(const std::vector<std::array<double, 4>>& verts, const std::array<double, 4>& p) {
  const int rows = 4;
  const int nv = static_cast<int>(verts.size());
  const int cols = nv + rows;

  std::vector<double> tab(static_cast<size_t>(rows) * cols, 0.0);
  std::array<double, 4> b = p;
  std::array<int, 4> basis{};
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < nv; ++j) tab[static_cast<size_t>(i) * cols + j] = verts[static_cast<size_t>(j)][static_cast<size_t>(i)];
    tab[static_cast<size_t>(i) * cols + nv + i] = 1.0;
    basis[static_cast<size_t>(i)] = nv + i;
  }

  // cost 1 on artificials; reduced cost of column j is c_j - sum over rows of
  // the column entries that sit under basic artificials
  for (int iter = 0; iter < 500; ++iter) {
    int enter = -1;
    for (int j = 0; j < cols && enter < 0; ++j) {
      double reduced = j >= nv ? 1.0 : 0.0;
      for (int i = 0; i < rows; ++i)
        if (basis[static_cast<size_t>(i)] >= nv) reduced -= tab[static_cast<size_t>(i) * cols + j];
      if (reduced < -1e-11) enter = j;  // Bland: first improving column
    }
    if (enter < 0) break;

    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < rows; ++i) {
      const double a = tab[static_cast<size_t>(i) * cols + enter];
      if (a > 1e-11) {
        const double ratio = b[static_cast<size_t>(i)] / a;
        if (leave < 0 || ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 && basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leave)])) {
          leave = i;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0) break;  // unbounded cannot happen here; bail defensively

    const double piv = tab[static_cast<size_t>(leave) * cols + enter];
    for (int j = 0; j < cols; ++j) tab[static_cast<size_t>(leave) * cols + j] /= piv;
    b[static_cast<size_t>(leave)] /= piv;
    for (int i = 0; i < rows; ++i) {
      if (i == leave) continue;
      const double f = tab[static_cast<size_t>(i) * cols + enter];
      if (f == 0.0) continue;
      for (int j = 0; j < cols; ++j) tab[static_cast<size_t>(i) * cols + j] -= f * tab[static_cast<size_t>(leave) * cols + j];
      b[static_cast<size_t>(i)] -= f * b[static_cast<size_t>(leave)];
    }
    basis[static_cast<size_t>(leave)] = enter;
  }

  double artificial_mass = 0.0;
  for (int i = 0; i < rows; ++i)
    if (basis[static_cast<size_t>(i)] >= nv) artificial_mass += b[static_cast<size_t>(i)];
  return artificial_mass <= 1e-9;
}

}  // namespace detail

// Convex hull of the Pauli channels compatible (in the sense above) with a
// principal-axis measurement of sharpness s: the probability simplex
// truncated at cap = (1 + sqrt(1 - s^2))/2. Full simplex at s = 0, regular
// octahedron at s = 1.
class CompatibilityPolytope {
 public:
  explicit CompatibilityPolytope(double s) : s_(s) {
    if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("CompatibilityPolytope: sharpness outside [0, 1]");
    cap_ = 0.5 * (1.0 + std::sqrt(std::max(1.0 - s * s, 0.0)));
  }

  double sharpness() const { return s_; }
  double cap() const { return cap_; }

  // The 12 vectors with entries {cap, 1-cap, 0, 0}: v_ij has cap at slot i
  // and 1-cap at slot j.
  std::vector<PauliProbabilities> vertices() const {
    std::vector<PauliProbabilities> out;
    out.reserve(12);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        if (i == j) continue;
        std::array<double, 4> v{};
        v[static_cast<size_t>(i)] = cap_;
        v[static_cast<size_t>(j)] = 1.0 - cap_;
        out.emplace_back(v);
      }
    return out;
  }

  // Halfspace form: inside the simplex with every component at most cap.
  bool contains(const PauliProbabilities& p) const {
    for (int i = 0; i < 4; ++i)
      if (p[i] > cap_ + 1e-12) return false;
    return true;
  }

  // Vertex form via LP feasibility; slow cross-check for contains().
  bool contains_lp(const PauliProbabilities& p) const {
    std::vector<std::array<double, 4>> verts;
    for (const auto& v : vertices()) verts.push_back(v.values());
    return detail::in_hull_lp(verts, p.values());
  }

  // The 18 edges: 12 sides of the four truncation triangles (cap fixed, the
  // small weight hops) plus the 6 shortened simplex edges (cap and small
  // weight swap slots). At s = 1 the latter collapse to points.
  std::vector<std::pair<std::array<double, 4>, std::array<double, 4>>> edges() const {
    auto vertex = [this](int i, int j) {
      std::array<double, 4> v{};
      v[static_cast<size_t>(i)] = cap_;
      v[static_cast<size_t>(j)] = 1.0 - cap_;
      return v;
    };
    std::vector<std::pair<std::array<double, 4>, std::array<double, 4>>> out;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = j + 1; k < 4; ++k)
          if (j != i && k != i) out.emplace_back(vertex(i, j), vertex(i, k));
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) out.emplace_back(vertex(i, j), vertex(j, i));
    return out;
  }

 private:
  double s_;
  double cap_;
};

inline double distance_to_segment(const std::array<double, 4>& x, const std::array<double, 4>& a,
                                  const std::array<double, 4>& b) {
  std::array<double, 4> ab{}, ax{};
  double ab2 = 0.0, proj = 0.0;
  for (int i = 0; i < 4; ++i) {
    ab[static_cast<size_t>(i)] = b[static_cast<size_t>(i)] - a[static_cast<size_t>(i)];
    ax[static_cast<size_t>(i)] = x[static_cast<size_t>(i)] - a[static_cast<size_t>(i)];
    ab2 += ab[static_cast<size_t>(i)] * ab[static_cast<size_t>(i)];
    proj += ab[static_cast<size_t>(i)] * ax[static_cast<size_t>(i)];
  }
  const double t = ab2 > 0.0 ? std::clamp(proj / ab2, 0.0, 1.0) : 0.0;
  double d2 = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double diff = ax[static_cast<size_t>(i)] - t * ab[static_cast<size_t>(i)];
    d2 += diff * diff;
  }
  return std::sqrt(d2);
}

inline double distance_to_polytope_edges(const CompatibilityPolytope& poly, const PauliProbabilities& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [a, b] : poly.edges()) best = std::min(best, distance_to_segment(p.values(), a, b));
  return best;
}

//============================================================================
// Boundary structures
//============================================================================

// P values of the channel w1 q1 + w2 q2 + w3 q3 mixed from the three
// truncation-facet vertices that share the cap slot:
//   P_i = s sqrt(w_i) + (1 - sqrt(1 - s^2)) sqrt(w_j w_k).
inline PValues facet_p_values(double s, const Vec3& w) {
  if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("facet_p_values: sharpness outside [0, 1]");
  double sum = 0.0;
  for (double x : w) {
    if (x < -1e-12) throw std::invalid_argument("facet_p_values: negative weight");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("facet_p_values: weights do not sum to 1");
  const double rest = 1.0 - std::sqrt(std::max(1.0 - s * s, 0.0));
  auto w_at = [&w](int i) { return std::max(w[static_cast<size_t>(i)], 0.0); };
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    out[static_cast<size_t>(i)] = s * std::sqrt(w_at(i)) + rest * std::sqrt(w_at(j) * w_at(k));
  }
  return PValues(out);
}

// Ellipsoid of compatible measurement Bloch points s*n for a unital channel:
// semiaxes are the canonical P values, frame carried by the transpose of the
// input rotation. Membership of s*n means sum_i (u_i / P_i)^2 <= 1 for
// u = frame^T (s n), with the same vanishing-term rule as the criterion.
struct MeasurementEllipsoid {
  PValues semiaxes{{0.0, 0.0, 0.0}};
  Rotation3 frame = Rotation3::identity();

  bool contains(double s, const Direction& n) const {
    const Vec3 u = frame.transposed().apply(scaled(n.vec(), s));
    double lhs = 0.0;
    for (int i = 0; i < 3; ++i) {
      if (semiaxes[i] < 1e-14) {
        if (std::abs(u[static_cast<size_t>(i)]) >= 1e-14) return false;
        continue;
      }
      const double ratio = u[static_cast<size_t>(i)] / semiaxes[i];
      lhs += ratio * ratio;
    }
    return lhs <= 1.0 + 1e-12;
  }
};

inline MeasurementEllipsoid ellipsoid_semiaxes(const UnitalChannel& c) {
  return {p_values(c.pauli_weights()), c.input_rotation().transposed()};
}

// Channels compatible with a sharp (s = 1) measurement: a line segment
// across two opposite simplex edges when the direction is a principal axis,
// the tetrahedron center alone otherwise.
struct SharpDirectionSet {
  bool center_only = true;
  int axis = 0;  // 1..3 when center_only is false

  // Parametrizes the line by t in [0, 1/2]; the center belongs to every set.
  PauliProbabilities channel_at(double t) const {
    if (center_only) return PauliProbabilities({0.25, 0.25, 0.25, 0.25});
    if (!(t >= 0.0 && t <= 0.5)) throw std::invalid_argument("channel_at: parameter outside [0, 1/2]");
    const double u = 0.5 - t;
    switch (axis) {
      case 1: return PauliProbabilities({t, t, u, u});
      case 2: return PauliProbabilities({t, u, t, u});
      default: return PauliProbabilities({t, u, u, t});
    }
  }
};

inline SharpDirectionSet sharp_direction_constraints(const Direction& n) {
  int nonzero = 0, axis = 0;
  for (int i = 0; i < 3; ++i)
    if (std::abs(n[i]) > 1e-12) {
      ++nonzero;
      axis = i + 1;
    }
  if (nonzero == 1) return {false, axis};
  return {true, 0};
}

//============================================================================
// Sampling helpers
//============================================================================

// Uniform point on the probability simplex from three ordered uniform draws
// (spacings method). Sample i consumes uniforms 4i..4i+2 of its stream.
inline PauliProbabilities sample_simplex(uint64_t seed, uint64_t index) {
  std::array<double, 3> u{uniform01(seed, 4 * index), uniform01(seed, 4 * index + 1),
                          uniform01(seed, 4 * index + 2)};
  std::sort(u.begin(), u.end());
  return PauliProbabilities({u[0], u[1] - u[0], u[2] - u[1], 1.0 - u[2]});
}

}  // namespace qcompat
