#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "qcompat/compatibility.hpp"
#include "qcompat/core.hpp"
#include "qcompat/measures.hpp"
#include "qcompat/tradeoffs.hpp"

namespace qcompat {

struct CheckResult {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  std::string detail;
};

namespace verify_detail {

inline CheckResult residual_check(const std::string& name, double residual, double tol,
                                  const std::string& detail = "") {
  std::ostringstream os;
  os << "tolerance " << tol;
  if (!detail.empty()) os << "; " << detail;
  return {name, residual <= tol, residual, os.str()};
}

inline Vec3 random_direction(uint64_t seed, uint64_t index) {
  return HaarSampler(seed).bloch(index);
}

// Random proper rotation from a Haar axis and uniform angle.
inline Rotation3 random_rotation(uint64_t seed, uint64_t index) {
  const Vec3 axis = HaarSampler(substream(seed, 101)).bloch(index);
  const double angle = 2.0 * 3.141592653589793238462643383279502884 * uniform01(substream(seed, 102), index);
  return Rotation3::axis_angle(axis, angle);
}

}  // namespace verify_detail

//============================================================================
// Identity suite: algebraic relations that must hold to round-off
//============================================================================

inline std::vector<CheckResult> verify_identities(uint64_t seed, uint64_t samples) {
  using verify_detail::residual_check;
  std::vector<CheckResult> out;

  {
    // 1 - P_max^2 = Q + (T2^2 + T3^2)/2 on the simplex
    double worst = 0.0;
    for (uint64_t i = 0; i < samples; ++i) {
      const auto p = sample_simplex(seed, i);
      const double pmax = p_max_sorted(p);
      const auto t = t_values(p);
      const double r = std::abs(1.0 - pmax * pmax - quantumness_pauli(p) - 0.5 * (t[0] * t[0] + t[1] * t[1]));
      worst = std::max(worst, r);
    }
    out.push_back(residual_check("pvalue-complement-identity", worst, 1e-12));
  }

  {
    // sorted-pair form of P_max against the max over the three P values
    double worst = 0.0;
    for (uint64_t i = 0; i < samples; ++i) {
      const auto p = sample_simplex(substream(seed, 1), i);
      worst = std::max(worst, std::abs(p_max_sorted(p) - p_values(p).max()));
    }
    out.push_back(residual_check("pmax-sorted-form", worst, 1e-15));
  }

  {
    // weights -> Bloch scalings -> weights round trip
    double worst = 0.0;
    for (uint64_t i = 0; i < samples; ++i) {
      const auto p = sample_simplex(substream(seed, 2), i);
      const auto q = PauliProbabilities::from_lambdas(p.lambdas());
      for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(p[k] - q[k]));
    }
    out.push_back(residual_check("bloch-weights-roundtrip", worst, 1e-14));
  }

  {
    // general-POVM unsharpness closed forms for binary measurements
    double worst = 0.0;
    const uint64_t n = std::min<uint64_t>(samples, 1000);
    for (uint64_t i = 0; i < n; ++i) {
      const double s = uniform01(substream(seed, 3), i);
      const Direction dir(verify_detail::random_direction(substream(seed, 4), i));
      const auto povm = GeneralPovm::from_binary(BinaryMeasurement(s, dir));
      worst = std::max(worst, std::abs(unsharpness_uncertainty(povm) - (1.0 - s * s)));
      worst = std::max(worst, std::abs(unsharpness_luders(povm) - 0.5 * (1.0 - s * s)));
    }
    out.push_back(residual_check("unsharpness-closed-forms", worst, 1e-12));
  }

  {
    // (3F - 2)^2 + s^2 = 1 along the closed fidelity curve
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double s = i / 100.0;
      const double f = best_fidelity_unital_closed(s);
      const double g = 3.0 * f - 2.0;
      worst = std::max(worst, std::abs(g * g + s * s - 1.0));
    }
    out.push_back(residual_check("fidelity-curve-identity", worst, 1e-14));
  }

  {
    // facet P formula against p_values of the mixed vertex vector
    double worst = 0.0;
    const uint64_t n = std::min<uint64_t>(samples, 10000);
    for (uint64_t i = 0; i < n; ++i) {
      const double s = uniform01(substream(seed, 5), i);
      std::array<double, 3> u{uniform01(substream(seed, 6), 3 * i), uniform01(substream(seed, 6), 3 * i + 1),
                              uniform01(substream(seed, 6), 3 * i + 2)};
      std::sort(u.begin(), u.end());
      const Vec3 w{u[0], u[1] - u[0], 1.0 - u[1]};
      const double cap = 0.5 * (1.0 + std::sqrt(1.0 - s * s));
      std::array<double, 4> mixed{cap, (1.0 - cap) * w[0], (1.0 - cap) * w[1], (1.0 - cap) * w[2]};
      const auto direct = p_values(PauliProbabilities(mixed));
      const auto facet = facet_p_values(s, w);
      for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(direct[k] - facet[k]));
    }
    out.push_back(residual_check("facet-pvalues-match", worst, 1e-10));
  }

  {
    // the four equal-P channels have every P value at s
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double s = i / 100.0;
      for (const auto& q : equal_p_channels(s)) {
        const auto pv = p_values(q);
        for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(pv[k] - s));
      }
    }
    out.push_back(residual_check("equal-p-channels", worst, 1e-10));
  }

  {
    // resource tradeoff: LQU + P_max = 1 exactly, Q <= 1 - P_max^2
    double worst_residual = 0.0, worst_slack = 0.0;
    for (uint64_t i = 0; i < samples; ++i) {
      const auto p = sample_simplex(substream(seed, 7), i);
      const auto rt = check_resource_sharpness_tradeoff(p);
      worst_residual = std::max(worst_residual, rt.lqu_residual);
      worst_slack = std::min(worst_slack, rt.q_slack);
    }
    std::ostringstream os;
    os << "min q_slack " << worst_slack;
    out.push_back(residual_check("resource-tradeoff-residuals", std::max(worst_residual, -worst_slack), 1e-12, os.str()));
  }

  return out;
}

//============================================================================
// "theorems" suite: tradeoff curves, geometry, and sampled containments
//============================================================================

inline std::vector<CheckResult> verify_theorems(uint64_t seed, uint64_t samples) {
  using verify_detail::residual_check;
  std::vector<CheckResult> out;
  const SearchConfig cfg{60, 1, 2};

  {
    // best corrected fidelity over compatible channels against the curve
    double worst_gap = 0.0, worst_over = 0.0;
    for (int i = 0; i <= 10; ++i) {
      const double s = i / 10.0;
      const double closed = best_fidelity_unital_closed(s);
      const double searched = best_fidelity_search(BinaryMeasurement(s, Direction({1, 0, 0})), cfg).value;
      worst_gap = std::max(worst_gap, closed - searched);
      worst_over = std::max(worst_over, searched - closed);
    }
    std::ostringstream os;
    os << "max overshoot " << worst_over;
    out.push_back({"fidelity-tradeoff-search", worst_gap <= 0.02 && worst_over <= 1e-9, worst_gap, os.str()});
  }

  {
    // best quantumness along a principal axis, with exact vertex attainment
    double worst = 0.0, worst_vertex = 0.0;
    for (int i = 0; i <= 10; ++i) {
      const double s = i / 10.0;
      const double closed = best_quantumness_unital_closed(s);
      const double searched = best_quantumness_search(BinaryMeasurement(s, Direction({1, 0, 0})), cfg, false).value;
      worst = std::max(worst, std::abs(searched - closed));
      for (const auto& v : CompatibilityPolytope(s).vertices())
        if (is_compatible_pauli(v, BinaryMeasurement(s, Direction({1, 0, 0}))).compatible)
          worst_vertex = std::max(worst_vertex, std::abs(quantumness_pauli(v) - closed));
    }
    std::ostringstream os;
    os << "vertex attainment residual " << worst_vertex;
    out.push_back({"quantumness-tradeoff-axis", worst <= 0.01 && worst_vertex <= 1e-12, worst, os.str()});
  }

  {
    // off-axis Pauli-restricted quantumness never beats the unital bound
    double worst_over = 0.0;
    const Direction diag(normalized({1, 1, 1}));
    for (int i = 0; i <= 10; ++i) {
      const double s = i / 10.0;
      const double searched = best_quantumness_search(BinaryMeasurement(s, diag), cfg, true).value;
      worst_over = std::max(worst_over, searched - best_quantumness_unital_closed(s));
    }
    out.push_back(residual_check("quantumness-offaxis-bound", std::max(worst_over, 0.0), 1e-9));
  }

  {
    // best Choi-state LQU against 1 - s, attained by the equal-P channels
    double worst = 0.0;
    for (int i = 0; i <= 10; ++i) {
      const double s = i / 10.0;
      const double searched = best_lqu_search(BinaryMeasurement(s, Direction({1, 0, 0})), cfg).value;
      worst = std::max(worst, std::abs(searched - best_lqu_unital_closed(s)));
    }
    out.push_back(residual_check("lqu-tradeoff-search", worst, 1e-10));
  }

  {
    // pointwise corrected-fidelity/sharpness bound where p_m >= 1/2,
    // equality on (a, 1-a, 0, 0), failure below the hypothesis
    double worst_lhs = 0.0, worst_eq = 0.0;
    uint64_t kept = 0, idx = 0;
    while (kept < samples && idx < 100 * samples) {
      const auto p = sample_simplex(substream(seed, 10), idx++);
      const auto& v = p.values();
      if (*std::max_element(v.begin(), v.end()) < 0.5) continue;
      ++kept;
      worst_lhs = std::max(worst_lhs, check_fidelity_sharpness_tradeoff(p).first);
    }
    for (int i = 0; i <= 100; ++i) {
      const double a = 0.5 + 0.5 * i / 100.0;
      const auto [lhs, holds] = check_fidelity_sharpness_tradeoff(PauliProbabilities({a, 1.0 - a, 0.0, 0.0}));
      worst_eq = std::max(worst_eq, std::abs(lhs - 1.0));
      (void)holds;
    }
    const double counter_lhs = (2.0 * 0.4 - 1.0) * (2.0 * 0.4 - 1.0) +
                               p_max_sorted(counterexample_pm_below_half()) * p_max_sorted(counterexample_pm_below_half());
    const bool pass = worst_lhs <= 1.0 + 1e-12 && worst_eq <= 1e-12 && counter_lhs > 1.0;
    std::ostringstream os;
    os << "max lhs " << worst_lhs << "; saturating-family residual " << worst_eq << "; counterexample lhs " << counter_lhs;
    out.push_back({"fidelity-sharpness-pointwise", pass, std::max(worst_lhs - 1.0, worst_eq), os.str()});
  }

  {
    // rejection-sampled compatible triples: polytope containment and s <= P_max
    uint64_t kept = 0, attempts = 0;
    uint64_t contained = 0;
    double worst_excess = -1.0;
    const uint64_t want = samples;
    while (kept < want && attempts < 100 * want + 1000) {
      const uint64_t i = attempts++;
      const auto p = sample_simplex(substream(seed, 11), i);
      const double s = uniform01(substream(seed, 12), i);
      const Direction dir(verify_detail::random_direction(substream(seed, 13), i));
      if (!is_compatible_pauli(p, BinaryMeasurement(s, dir)).compatible) continue;
      ++kept;
      if (CompatibilityPolytope(s).contains(p)) ++contained;
      worst_excess = std::max(worst_excess, s - p_max_sorted(p));
    }
    std::ostringstream os;
    os << "kept " << kept << " of " << attempts << " attempts; containment failures " << (kept - contained)
       << "; max s - P_max " << worst_excess;
    const bool pass = kept == contained && worst_excess <= 1e-12 && kept >= want;
    out.push_back({"polytope-containment-sampled", pass, std::max(worst_excess, 0.0), os.str()});
  }

  {
    // sharpest compatible measurement sits exactly at P_max
    bool pass = true;
    double worst = 0.0;
    for (uint64_t i = 0; i < 100; ++i) {
      const auto p = sample_simplex(substream(seed, 14), i);
      const auto pv = p_values(p);
      int axis = 0;
      for (int k = 1; k < 3; ++k)
        if (pv[k] > pv[axis]) axis = k;
      Vec3 n{0, 0, 0};
      n[static_cast<size_t>(axis)] = 1.0;
      const double pmax = p_max_sorted(p);
      const auto at = is_compatible_pauli(p, BinaryMeasurement(pmax, Direction(n)));
      if (!at.compatible) pass = false;
      worst = std::max(worst, at.lhs - 1.0);
      if (pmax + 1e-6 <= 1.0) {
        if (is_compatible_pauli(p, BinaryMeasurement(pmax + 1e-6, Direction(n))).compatible) pass = false;
      }
    }
    out.push_back({"sharpness-bound-tightness", pass, std::max(worst, 0.0), "s = P_max compatible, s = P_max + 1e-6 not"});
  }

  {
    // sharp measurements admit only classical-output channels
    double worst = 0.0;
    std::vector<Vec3> dirs{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (const auto& d : fibonacci_directions(17)) dirs.push_back(d);
    const int g = 24;
    for (const auto& d : dirs) {
      const BinaryMeasurement m(1.0, Direction(d));
      for (int a = 0; a <= g; ++a)
        for (int b = 0; a + b <= g; ++b)
          for (int c = 0; a + b + c <= g; ++c) {
            const PauliProbabilities p({static_cast<double>(a) / g, static_cast<double>(b) / g,
                                        static_cast<double>(c) / g, static_cast<double>(g - a - b - c) / g});
            if (!is_compatible_pauli(p, m).compatible) continue;
            worst = std::max({worst, quantumness_pauli(p), lqu_pauli(p)});
          }
    }
    out.push_back(residual_check("sharp-classicality", worst, 0.01, "20 directions, grid 24"));
  }

  {
    // sharp compatible set: a line for principal axes, the center otherwise
    double worst_line = 0.0, worst_center = 0.0;
    const int g = 24;
    auto scan = [&](const Vec3& nvec, bool line_expected) {
      const BinaryMeasurement m(1.0, Direction(nvec));
      for (int a = 0; a <= g; ++a)
        for (int b = 0; a + b <= g; ++b)
          for (int c = 0; a + b + c <= g; ++c) {
            const PauliProbabilities p({static_cast<double>(a) / g, static_cast<double>(b) / g,
                                        static_cast<double>(c) / g, static_cast<double>(g - a - b - c) / g});
            if (!is_compatible_pauli(p, m).compatible) continue;
            if (line_expected) {
              const double d2 = 0.5 * (p[0] - p[1]) * (p[0] - p[1]) + 0.5 * (p[2] - p[3]) * (p[2] - p[3]);
              worst_line = std::max(worst_line, std::sqrt(d2));
            } else {
              double d2 = 0.0;
              for (int k = 0; k < 4; ++k) d2 += (p[k] - 0.25) * (p[k] - 0.25);
              worst_center = std::max(worst_center, std::sqrt(d2));
            }
          }
    };
    scan({1, 0, 0}, true);
    scan(normalized({1, 1, 1}), false);
    scan(normalized({1, 1, 0}), false);
    const auto set_axis = sharp_direction_constraints(Direction({1, 0, 0}));
    const auto set_diag = sharp_direction_constraints(Direction(normalized({1, 1, 1})));
    bool geometry = !set_axis.center_only && set_axis.axis == 1 && set_diag.center_only;
    for (int i = 0; i <= 20 && geometry; ++i) {
      const auto p = set_axis.channel_at(0.5 * i / 20.0);
      if (!is_compatible_pauli(p, BinaryMeasurement(1.0, Direction({1, 0, 0}))).compatible) geometry = false;
    }
    std::ostringstream os;
    os << "line deviation " << worst_line << "; off-axis center deviation " << worst_center;
    out.push_back({"sharp-geometry", geometry && worst_line <= 1e-6 && worst_center <= 1e-6,
                   std::max(worst_line, worst_center), os.str()});
  }

  {
    // compatibility survives lowering the sharpness
    bool pass = true;
    const uint64_t n = std::min<uint64_t>(samples, 10000);
    for (uint64_t i = 0; i < n && pass; ++i) {
      const auto p = sample_simplex(substream(seed, 15), i);
      const double s = uniform01(substream(seed, 16), i);
      const Direction dir(verify_detail::random_direction(substream(seed, 17), i));
      if (!is_compatible_pauli(p, BinaryMeasurement(s, dir)).compatible) continue;
      for (int k = 0; k <= 10; ++k)
        if (!is_compatible_pauli(p, BinaryMeasurement(s * k / 10.0, dir)).compatible) pass = false;
    }
    const auto line = sharp_direction_constraints(Direction({0, 1, 0}));
    for (int i = 0; i <= 10 && pass; ++i)
      for (int k = 0; k <= 10 && pass; ++k)
        if (!is_compatible_pauli(line.channel_at(0.5 * i / 10.0),
                                 BinaryMeasurement(k / 10.0, Direction({0, 1, 0}))).compatible)
          pass = false;
    out.push_back({"compatibility-monotonicity", pass, 0.0, "10-point sharpness grid"});
  }

  {
    // polytope edges are touched only along principal axes
    const double s = 0.85;
    const CompatibilityPolytope poly(s);
    const PauliProbabilities mid({0.5, 0.5, 0.0, 0.0});
    const double axis_dist = distance_to_polytope_edges(poly, mid);
    const bool axis_ok = is_compatible_pauli(mid, BinaryMeasurement(s, Direction({1, 0, 0}))).compatible && axis_dist <= 1e-12;

    const Direction diag(normalized({1, 1, 1}));
    const BinaryMeasurement m(s, diag);
    double min_dist = std::numeric_limits<double>::infinity();
    uint64_t kept = 0;
    const uint64_t budget = std::max<uint64_t>(samples, 100000);
    for (uint64_t i = 0; i < budget; ++i) {
      const auto p = sample_simplex(substream(seed, 18), i);
      if (!is_compatible_pauli(p, m).compatible) continue;
      ++kept;
      min_dist = std::min(min_dist, distance_to_polytope_edges(poly, p));
    }
    std::ostringstream os;
    os << "axis edge distance " << axis_dist << "; off-axis min edge distance " << min_dist << " over " << kept
       << " compatible samples";
    out.push_back({"polytope-edge-contact", axis_ok && min_dist > 1e-6, min_dist, os.str()});
  }

  return out;
}

//============================================================================
// Oracle suite: Monte Carlo and independent-route cross-checks
//============================================================================

inline std::vector<CheckResult> verify_oracles(uint64_t seed, uint64_t samples) {
  using verify_detail::residual_check;
  std::vector<CheckResult> out;

  {
    // counter RNG reference values, stream 0
    const bool pass = splitmix64(0, 0) == 0xE220A8397B1DCDAFull && splitmix64(0, 1) == 0x6E789E6AA1B965F4ull &&
                      splitmix64(0, 2) == 0x06C45D188009454Full;
    out.push_back({"splitmix-reference", pass, 0.0, "seed-0 reference outputs"});
  }

  {
    // Haar sphere moments: zero mean components, transverse second moment 2/3
    HaarSampler sampler(substream(seed, 20));
    Vec3 mean{};
    double m2 = 0.0, worst_norm = 0.0;
    for (uint64_t i = 0; i < samples; ++i) {
      const Vec3 r = sampler.bloch(i);
      mean = add(mean, r);
      m2 += r[0] * r[0] + r[1] * r[1];
      worst_norm = std::max(worst_norm, std::abs(norm(r) - 1.0));
    }
    const double n = static_cast<double>(samples);
    const double mean_tol = 4.0 / std::sqrt(n);
    const double worst_mean = std::max({std::abs(mean[0]), std::abs(mean[1]), std::abs(mean[2])}) / n;
    const double m2_err = std::abs(m2 / n - 2.0 / 3.0);
    const bool pass = worst_mean <= mean_tol && m2_err <= std::max(0.01, mean_tol) && worst_norm <= 1e-12;
    std::ostringstream os;
    os << "mean tol " << mean_tol << "; |E[rx^2+ry^2] - 2/3| = " << m2_err;
    out.push_back({"haar-moments", pass, worst_mean, os.str()});
  }

  {
    // Monte Carlo fidelity against the closed form, 4 standard errors
    double worst_z = 0.0, identity_err = 0.0;
    const uint64_t base = substream(seed, 21);
    const uint64_t per_channel = std::max<uint64_t>(samples, 10000);
    for (uint64_t j = 0; j < 100; ++j) {
      const auto p = sample_simplex(substream(base, 0), j);
      const auto est = avg_fidelity_mc(UnitalChannel::from_pauli(p), {substream(base, 1 + j), per_channel});
      const double err = std::abs(est.value - avg_fidelity_pauli(p));
      worst_z = std::max(worst_z, err / std::max(est.std_error, 1e-15));
    }
    const auto ident = avg_fidelity_mc(UnitalChannel::from_pauli(PauliProbabilities({1, 0, 0, 0})),
                                       {substream(base, 200), std::min<uint64_t>(per_channel, 100000)});
    identity_err = std::abs(ident.value - 1.0);
    const bool pass = worst_z <= 4.0 && identity_err <= 1e-12;
    std::ostringstream os;
    os << "worst z-score " << worst_z << "; identity error " << identity_err;
    out.push_back({"mc-fidelity-closed", pass, worst_z, os.str()});
  }

  {
    // numerical quantumness against the closed form; identity normalization
    double worst = 0.0;
    const uint64_t base = substream(seed, 24);
    const uint64_t mc = 10000;
    for (uint64_t j = 0; j < 20; ++j) {
      const auto p = sample_simplex(substream(base, 0), j);
      const double num = quantumness_numerical(UnitalChannel::from_pauli(p), {substream(base, 1 + j), mc}, 32);
      worst = std::max(worst, std::abs(num - quantumness_pauli(p)));
    }
    const double ident = quantumness_numerical(UnitalChannel::from_pauli(PauliProbabilities({1, 0, 0, 0})),
                                               {substream(base, 200), mc}, 32);
    const double ident_err = std::abs(ident - 1.0);
    const bool pass = worst <= 0.02 && ident_err <= 0.03;
    std::ostringstream os;
    os << "identity estimate " << ident << " (normalizer 3/2)";
    out.push_back({"quantumness-numerical-closed", pass, worst, os.str()});
  }

  {
    // Choi-state LQU route against the closed form, plus the W diagonal
    double worst = 0.0, worst_w = 0.0;
    const uint64_t n = std::min<uint64_t>(samples, 10000);
    for (uint64_t i = 0; i < n; ++i) {
      const auto p = sample_simplex(substream(seed, 27), i);
      const auto choi = choi_state(p);
      worst = std::max(worst, std::abs(lqu_direct(choi) - lqu_pauli(p)));
      const auto w = lqu_w_matrix(choi);
      const auto pv = p_values(p);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
          worst_w = std::max(worst_w, std::abs(w[static_cast<size_t>(3 * r + c)] - (r == c ? pv[r] : 0.0)));
    }
    std::ostringstream os;
    os << "W-matrix deviation " << worst_w;
    out.push_back({"lqu-direct-closed", std::max(worst, worst_w) <= 1e-9, worst, os.str()});
  }

  {
    // rotation decorations change neither LQU nor quantumness
    double worst_lqu = 0.0, worst_q = 0.0;
    const uint64_t n = 1000;
    for (uint64_t i = 0; i < n; ++i) {
      const auto p = sample_simplex(substream(seed, 28), i);
      const UnitalChannel c(verify_detail::random_rotation(substream(seed, 29), i), p,
                            verify_detail::random_rotation(substream(seed, 30), i));
      worst_lqu = std::max(worst_lqu, std::abs(lqu_direct(choi_state_unital(c)) - lqu_pauli(p)));
      const double num = quantumness_numerical(c, {substream(seed, 31), 8000}, 16);
      worst_q = std::max(worst_q, std::abs(num - quantumness_pauli(p)));
    }
    const bool pass = worst_lqu <= 1e-9 && worst_q <= 0.05;
    std::ostringstream os;
    os << "max quantumness deviation " << worst_q << " (Monte Carlo tolerance 0.05)";
    out.push_back({"rotation-invariance", pass, worst_lqu, os.str()});
  }

  {
    // halfspace form of the polytope against the vertex-hull LP
    uint64_t mismatches = 0;
    for (int si = 0; si < 10; ++si) {
      const double s = (si + 1) / 10.0;
      const CompatibilityPolytope poly(s);
      for (uint64_t i = 0; i < 100; ++i) {
        const auto p = sample_simplex(substream(seed, 32 + static_cast<uint64_t>(si)), i);
        if (poly.contains(p) != poly.contains_lp(p)) ++mismatches;
      }
    }
    out.push_back({"lp-vertex-halfspace", mismatches == 0, static_cast<double>(mismatches),
                   "1000 points across 10 sharpness values"});
  }

  {
    // ellipsoid membership equals the compatibility verdict
    uint64_t mismatches = 0;
    const uint64_t n = std::min<uint64_t>(samples, 10000);
    for (uint64_t i = 0; i < n; ++i) {
      const auto p = sample_simplex(substream(seed, 42), i);
      const UnitalChannel c(verify_detail::random_rotation(substream(seed, 43), i), p,
                            verify_detail::random_rotation(substream(seed, 44), i));
      const double s = uniform01(substream(seed, 45), i);
      const Direction dir(verify_detail::random_direction(substream(seed, 46), i));
      const auto ell = ellipsoid_semiaxes(c);
      if (ell.contains(s, dir) != is_compatible_unital(c, BinaryMeasurement(s, dir)).compatible) ++mismatches;
    }
    out.push_back({"ellipsoid-membership", mismatches == 0, static_cast<double>(mismatches),
                   "verdict agreement on random decorated channels"});
  }

  {
    // outcome probabilities: effect traces against the Bloch form
    double worst = 0.0;
    const uint64_t n = std::min<uint64_t>(samples, 2000);
    HaarSampler states(substream(seed, 47));
    for (uint64_t i = 0; i < n; ++i) {
      const double s = uniform01(substream(seed, 48), i);
      const Direction dir(verify_detail::random_direction(substream(seed, 49), i));
      const BinaryMeasurement m(s, dir);
      const QubitState st = states.state(i);
      const auto [prob_plus, prob_minus] = measure_probabilities(m, st);
      const auto [eff_plus, eff_minus] = m.effects();
      const ComplexMatrix rho = st.density();
      worst = std::max(worst, std::abs(prob_plus - real_trace_product(eff_plus, rho)));
      worst = std::max(worst, std::abs(prob_minus - real_trace_product(eff_minus, rho)));
    }
    out.push_back(residual_check("measurement-probability-consistency", worst, 1e-12));
  }

  return out;
}

inline std::vector<CheckResult> verify_suite(const std::string& suite, uint64_t seed, uint64_t samples) {
  if (suite == "identities") return verify_identities(seed, samples);
  if (suite == "theorems") return verify_theorems(seed, samples);
  if (suite == "oracles") return verify_oracles(seed, samples);
  if (suite == "all") {
    auto all = verify_identities(seed, samples);
    for (auto& r : verify_theorems(seed, samples)) all.push_back(std::move(r));
    for (auto& r : verify_oracles(seed, samples)) all.push_back(std::move(r));
    return all;
  }
  throw std::invalid_argument("verify_suite: unknown suite '" + suite + "'");
}

}  // namespace qcompat
