#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qcompat/compatibility.hpp"
#include "qcompat/measures.hpp"

namespace qcompat {

//============================================================================
// Closed-form tradeoff curves for unital channels
//============================================================================

// Best average fidelity compatible with sharpness s: (2 + sqrt(1 - s^2))/3,
// equivalently (3F - 2)^2 + s^2 = 1.
inline double best_fidelity_unital_closed(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("best_fidelity_unital_closed: sharpness outside [0, 1]");
  return (2.0 + std::sqrt(std::max(1.0 - s * s, 0.0))) / 3.0;
}

// Best quantumness compatible with sharpness s: 1 - s^2.
inline double best_quantumness_unital_closed(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("best_quantumness_unital_closed: sharpness outside [0, 1]");
  return 1.0 - s * s;
}

// Best Choi-state LQU compatible with sharpness s: 1 - s.
inline double best_lqu_unital_closed(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("best_lqu_unital_closed: sharpness outside [0, 1]");
  return 1.0 - s;
}

//============================================================================
// Grid searches over compatible channels
//============================================================================

struct SearchConfig {
  int simplex_grid = 60;
  int direction_grid = 1;
  int refine_steps = 2;
};

struct SearchResult {
  double value = 0.0;
  std::array<double, 4> argmax{};
  Vec3 direction{1.0, 0.0, 0.0};
};

struct TradeoffPoint {
  double s = 0.0;
  double closed_form = 0.0;
  double searched = 0.0;
  double gap = 0.0;
  int grid_resolution = 0;
};

namespace detail {

inline void validate_search_config(const SearchConfig& cfg) {
  if (cfg.simplex_grid < 1 || cfg.direction_grid < 1 || cfg.refine_steps < 0)
    throw std::invalid_argument("SearchConfig: grids must be positive and refine_steps nonnegative");
}

// Maximize `objective` over Pauli channels compatible with (s, direction):
// barycentric lattice with `grid` subdivisions per edge, plus the polytope
// vertices and the equal-P channels injected so known maximizers are hit
// exactly, then `refine_steps` passes of local shrinking around the
// incumbent. Ties break toward the lexicographically smaller weight vector
// so the scan order never shows in the result.
inline SearchResult search_compatible_max(double s, const Vec3& direction, const SearchConfig& cfg,
                                          const std::function<double(const PauliProbabilities&)>& objective) {
  const BinaryMeasurement m(s, Direction(direction));
  bool found = false;
  double best = 0.0;
  std::array<double, 4> best_p{};

  auto consider = [&](const PauliProbabilities& p) {
    if (!is_compatible_pauli(p, m).compatible) return;
    const double v = objective(p);
    if (!found || v > best || (v == best && p.values() < best_p)) {
      found = true;
      best = v;
      best_p = p.values();
    }
  };

  const int g = cfg.simplex_grid;
  for (int a = 0; a <= g; ++a)
    for (int b = 0; a + b <= g; ++b)
      for (int c = 0; a + b + c <= g; ++c) {
        const int d = g - a - b - c;
        consider(PauliProbabilities({static_cast<double>(a) / g, static_cast<double>(b) / g,
                                     static_cast<double>(c) / g, static_cast<double>(d) / g}));
      }

  for (const auto& v : CompatibilityPolytope(s).vertices()) consider(v);
  for (const auto& q : equal_p_channels(s)) consider(q);

  const int local = 16;
  double shrink = 0.5;
  for (int pass = 0; pass < cfg.refine_steps && found; ++pass) {
    const std::array<double, 4> center = best_p;
    for (int a = 0; a <= local; ++a)
      for (int b = 0; a + b <= local; ++b)
        for (int c = 0; a + b + c <= local; ++c) {
          const int d = local - a - b - c;
          std::array<double, 4> q{};
          const std::array<int, 4> lat{a, b, c, d};
          for (int i = 0; i < 4; ++i)
            q[static_cast<size_t>(i)] = (1.0 - shrink) * center[static_cast<size_t>(i)] +
                                        shrink * lat[static_cast<size_t>(i)] / local;
          consider(PauliProbabilities(q));
        }
    shrink *= 0.5;
  }

  return {best, best_p, direction};
}

inline std::vector<Vec3> search_directions(const SearchConfig& cfg) {
  std::vector<Vec3> dirs{{1.0, 0.0, 0.0}};
  if (cfg.direction_grid > 1) {
    dirs.push_back({0.0, 1.0, 0.0});
    dirs.push_back({0.0, 0.0, 1.0});
    for (const auto& d : fibonacci_directions(cfg.direction_grid)) dirs.push_back(d);
  }
  return dirs;
}

// Unital searches re-aim the measurement through the channel's input
// rotation, so they sweep effective directions (a principal axis by default)
// and maximize over compatible Pauli parts.
inline SearchResult search_over_directions(double s, const SearchConfig& cfg,
                                           const std::function<double(const PauliProbabilities&)>& objective) {
  validate_search_config(cfg);
  SearchResult best;
  bool first = true;
  for (const auto& dir : search_directions(cfg)) {
    const SearchResult r = search_compatible_max(s, dir, cfg, objective);
    if (first || r.value > best.value) {
      best = r;
      first = false;
    }
  }
  return best;
}

}  // namespace detail

// Best corrected fidelity over unital channels compatible with m.
inline SearchResult best_fidelity_search(const BinaryMeasurement& m, const SearchConfig& cfg) {
  return detail::search_over_directions(m.sharpness(), cfg, corrected_fidelity_pauli);
}

// Best quantumness over compatible channels. Restricted to Pauli channels the
// measurement direction is fixed and the bound 1 - s^2 may be unattainable;
// unrestricted, rotations re-aim the direction onto a principal axis where
// the bound is tight.
inline SearchResult best_quantumness_search(const BinaryMeasurement& m, const SearchConfig& cfg,
                                            bool restrict_to_pauli) {
  if (restrict_to_pauli) {
    detail::validate_search_config(cfg);
    return detail::search_compatible_max(m.sharpness(), m.direction().vec(), cfg, quantumness_pauli);
  }
  return detail::search_over_directions(m.sharpness(), cfg, quantumness_pauli);
}

// Best Choi-state LQU over unital channels compatible with m.
inline SearchResult best_lqu_search(const BinaryMeasurement& m, const SearchConfig& cfg) {
  return detail::search_over_directions(m.sharpness(), cfg, lqu_pauli);
}

//============================================================================
// Pointwise tradeoff checks
//============================================================================

// Corrected-fidelity/sharpness tradeoff, stated for channels whose largest
// weight reaches 1/2: (2 p_m - 1)^2 + P_max^2 <= 1. Below that threshold the
// bound genuinely fails (see sharpness_bound_counterexample), so such inputs
// are rejected rather than scored.
inline std::pair<double, bool> check_fidelity_sharpness_tradeoff(const PauliProbabilities& p) {
  const auto& v = p.values();
  const double pm = *std::max_element(v.begin(), v.end());
  if (pm < 0.5 - 1e-12) {
    std::ostringstream os;
    os << "check_fidelity_sharpness_tradeoff: largest weight " << pm
       << " is below 1/2, outside the bound's hypothesis";
    throw std::invalid_argument(os.str());
  }
  const double a = 2.0 * pm - 1.0;
  const double pmax = p_max_sorted(p);
  const double lhs = a * a + pmax * pmax;
  return {lhs, lhs <= 1.0 + 1e-12};
}

struct ResourceTradeoff {
  double q_slack = 0.0;      // 1 - Q - P_max^2, nonnegative
  double lqu_residual = 0.0; // |LQU + P_max - 1|, zero up to round-off
};

// Quantumness obeys Q <= 1 - P_max^2 with slack (T2^2 + T3^2)/2; the
// Choi-state LQU satisfies LQU + P_max = 1 identically.
inline ResourceTradeoff check_resource_sharpness_tradeoff(const PauliProbabilities& p) {
  const double pmax = p_max_sorted(p);
  return {1.0 - quantumness_pauli(p) - pmax * pmax, std::abs(lqu_pauli(p) + pmax - 1.0)};
}

// p = (1/2 - x, 1/2 - x, x, x) with x = 0.1: the largest weight sits below
// 1/2 yet P_max = 1, so (2 p_m - 1)^2 + P_max^2 = 1.04 > 1. Shows the
// hypothesis on p_m is necessary.
inline PauliProbabilities counterexample_pm_below_half() {
  return PauliProbabilities({0.4, 0.4, 0.1, 0.1});
}

//============================================================================
// Curve scans
//============================================================================

enum class TradeoffKind { fidelity, quantumness, lqu };

inline TradeoffPoint tradeoff_point(TradeoffKind kind, double s, const SearchConfig& cfg) {
  const BinaryMeasurement m(s, Direction({1.0, 0.0, 0.0}));
  TradeoffPoint pt;
  pt.s = s;
  pt.grid_resolution = cfg.simplex_grid;
  switch (kind) {
    case TradeoffKind::fidelity:
      pt.closed_form = best_fidelity_unital_closed(s);
      pt.searched = best_fidelity_search(m, cfg).value;
      break;
    case TradeoffKind::quantumness:
      pt.closed_form = best_quantumness_unital_closed(s);
      pt.searched = best_quantumness_search(m, cfg, false).value;
      break;
    case TradeoffKind::lqu:
      pt.closed_form = best_lqu_unital_closed(s);
      pt.searched = best_lqu_search(m, cfg).value;
      break;
  }
  pt.gap = pt.closed_form - pt.searched;
  return pt;
}

inline std::vector<TradeoffPoint> tradeoff_scan(TradeoffKind kind, int s_steps, const SearchConfig& cfg) {
  if (s_steps < 1) throw std::invalid_argument("tradeoff_scan: s_steps must be positive");
  std::vector<TradeoffPoint> out;
  out.reserve(static_cast<size_t>(s_steps));
  for (int i = 0; i < s_steps; ++i) {
    const double s = s_steps == 1 ? 0.0 : static_cast<double>(i) / (s_steps - 1);
    out.push_back(tradeoff_point(kind, s, cfg));
  }
  return out;
}

}  // namespace qcompat
