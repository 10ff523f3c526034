#include "catch2/catch_amalgamated.hpp"
#include "qcompat/measures.hpp"
#include "qcompat/rng.hpp"

#include <algorithm>
#include <cmath>

using namespace qcompat;
using Catch::Approx;

TEST_CASE("p values of a reference channel") {
  const PauliProbabilities p({0.4, 0.3, 0.2, 0.1});
  const PValues pv = p_values(p);
  // P_i = 2 (sqrt(p0 p_i) + sqrt(p_j p_k)).
  REQUIRE(pv[0] == Approx(2.0 * (std::sqrt(0.12) + std::sqrt(0.02))).margin(1e-15));
  REQUIRE(pv[1] == Approx(2.0 * (std::sqrt(0.08) + std::sqrt(0.03))).margin(1e-15));
  REQUIRE(pv[2] == Approx(2.0 * (std::sqrt(0.04) + std::sqrt(0.06))).margin(1e-15));
  REQUIRE(pv[0] == Approx(0.975663035502).margin(1e-12));
  REQUIRE(pv[1] == Approx(0.912095586463).margin(1e-12));
  REQUIRE(pv[2] == Approx(0.889897948557).margin(1e-12));
  REQUIRE(pv.max() == pv[0]);
}

TEST_CASE("sorted form of the largest p value matches the maximum exactly") {
  for (uint64_t i = 0; i < 5000; ++i) {
    std::array<double, 4> raw{uniform01(3, 4 * i), uniform01(3, 4 * i + 1), uniform01(3, 4 * i + 2),
                              uniform01(3, 4 * i + 3)};
    const double sum = raw[0] + raw[1] + raw[2] + raw[3];
    for (auto& v : raw) v /= sum;
    const PauliProbabilities p(raw);
    const PValues pv = p_values(p);
    const double direct = std::max({pv[0], pv[1], pv[2]});
    REQUIRE(p_max_sorted(p) == direct);  // bitwise
  }
}

TEST_CASE("complement identity ties p values, quantumness, and the t values") {
  for (uint64_t i = 0; i < 5000; ++i) {
    std::array<double, 4> raw{uniform01(5, 4 * i), uniform01(5, 4 * i + 1), uniform01(5, 4 * i + 2),
                              uniform01(5, 4 * i + 3)};
    const double sum = raw[0] + raw[1] + raw[2] + raw[3];
    for (auto& v : raw) v /= sum;
    const PauliProbabilities p(raw);
    const double pmax = p_max_sorted(p);
    const auto t = t_values(p);
    const double lhs = 1.0 - pmax * pmax;
    const double rhs = quantumness_pauli(p) + 0.5 * (t[0] * t[0] + t[1] * t[1]);
    REQUIRE(lhs == Approx(rhs).margin(1e-12));
  }
}

TEST_CASE("fidelity measures") {
  const PauliProbabilities p({0.4, 0.3, 0.2, 0.1});
  REQUIRE(avg_fidelity_pauli(p) == Approx(0.6).margin(1e-15));
  REQUIRE(corrected_fidelity_pauli(p) == Approx(0.6).margin(1e-15));

  // Correction picks the largest weight, not the first.
  const PauliProbabilities swapped({0.1, 0.6, 0.2, 0.1});
  REQUIRE(avg_fidelity_pauli(swapped) == Approx(0.4).margin(1e-15));
  REQUIRE(corrected_fidelity_pauli(swapped) == Approx((1.0 + 2.0 * 0.6) / 3.0).margin(1e-15));

  // Trace form agrees with the weight form and survives rotations.
  const UnitalChannel plain = UnitalChannel::from_pauli(p);
  REQUIRE(avg_fidelity_unital(plain) == Approx(0.6).margin(1e-14));
  const Rotation3 r = Rotation3::axis_angle({0, 0, 1}, 0.4);
  const UnitalChannel rot(r, p, r.transposed());
  // Conjugation by the same rotation preserves the trace of the bloch matrix.
  REQUIRE(avg_fidelity_unital(rot) == Approx(0.6).margin(1e-13));
}

TEST_CASE("monte carlo fidelity agrees with the closed form") {
  const UnitalChannel ch = UnitalChannel::from_pauli(PauliProbabilities({0.55, 0.25, 0.12, 0.08}));
  const McEstimate est = avg_fidelity_mc(ch, {123, 20000});
  REQUIRE(est.std_error > 0.0);
  REQUIRE(est.value == Approx(avg_fidelity_unital(ch)).margin(4.0 * est.std_error));

  // The identity channel has fidelity exactly one for every pure state.
  const McEstimate one = avg_fidelity_mc(UnitalChannel::from_pauli(PauliProbabilities({1, 0, 0, 0})), {5, 2000});
  REQUIRE(one.value == Approx(1.0).margin(1e-12));
  REQUIRE(one.std_error == Approx(0.0).margin(1e-12));
}

TEST_CASE("squared l1 coherence depends only on the transverse bloch component") {
  const QubitState st({0.6, 0.0, 0.8});
  REQUIRE(squared_l1_coherence(st, Direction({0, 0, 1})) == Approx(0.36).margin(1e-14));
  REQUIRE(squared_l1_coherence(st, Direction({1, 0, 0})) == Approx(0.64).margin(1e-14));
  const double diag = squared_l1_coherence(st, Direction(normalized(Vec3{1, 1, 1})));
  REQUIRE(diag == Approx(1.0 - std::pow((0.6 + 0.8) / std::sqrt(3.0), 2)).margin(1e-14));
}

TEST_CASE("quantumness closed form and numerical estimate") {
  const PauliProbabilities p({0.4, 0.3, 0.2, 0.1});
  REQUIRE(quantumness_pauli(p) == Approx(0.02).margin(1e-15));
  // Ordering matters: weights are sorted before pairing.
  REQUIRE(quantumness_pauli(PauliProbabilities({0.1, 0.4, 0.3, 0.2})) == Approx(0.02).margin(1e-15));

  const UnitalChannel ch = UnitalChannel::from_pauli(p);
  const double est = quantumness_numerical(ch, {77, 20000}, 24);
  REQUIRE(est == Approx(0.02).margin(0.02));

  REQUIRE_THROWS_AS(quantumness_numerical(ch, {1, 100}, 4), std::invalid_argument);
  REQUIRE_THROWS_AS(quantumness_numerical(ch, {1, 0}, 24), std::invalid_argument);
}

TEST_CASE("fibonacci directions cover the sphere with unit vectors") {
  const auto dirs = fibonacci_directions(128);
  REQUIRE(dirs.size() == 128);
  Vec3 mean{0, 0, 0};
  for (const Vec3& d : dirs) {
    REQUIRE(norm(d) == Approx(1.0).margin(1e-12));
    mean = add(mean, d);
  }
  REQUIRE(norm(scaled(mean, 1.0 / 128.0)) == Approx(0.0).margin(0.05));
}

TEST_CASE("lqu from the choi state matches the closed form") {
  const PauliProbabilities p({0.4, 0.3, 0.2, 0.1});
  REQUIRE(lqu_pauli(p) == Approx(1.0 - 0.975663035502).margin(1e-12));
  REQUIRE(lqu_direct(choi_state(p)) == Approx(lqu_pauli(p)).margin(1e-10));

  // W matrix is diagonal with the p values on the diagonal.
  const auto w = lqu_w_matrix(choi_state(p));
  const PValues pv = p_values(p);
  for (int i = 0; i < 3; ++i) {
    REQUIRE(w[3 * i + i] == Approx(pv[i]).margin(1e-10));
    for (int j = 0; j < 3; ++j)
      if (i != j) REQUIRE(w[3 * i + j] == Approx(0.0).margin(1e-10));
  }

  // Identity channel: maximally entangled output correlations, so lqu = 1;
  // the uniform channel erases them, lqu = 0.
  REQUIRE(lqu_pauli(PauliProbabilities({1, 0, 0, 0})) == Approx(1.0).margin(1e-15));
  REQUIRE(lqu_pauli(PauliProbabilities({0.25, 0.25, 0.25, 0.25})) == Approx(0.0).margin(1e-15));
}

TEST_CASE("measure report bundles everything consistently") {
  const PauliProbabilities p({0.1, 0.6, 0.2, 0.1});
  const MeasureReport rep = measure_report(p);
  REQUIRE(rep.avg_fidelity == Approx(avg_fidelity_pauli(p)).margin(1e-15));
  REQUIRE(rep.corrected_fidelity == Approx(corrected_fidelity_pauli(p)).margin(1e-15));
  REQUIRE(rep.quantumness == Approx(quantumness_pauli(p)).margin(1e-15));
  REQUIRE(rep.lqu == Approx(lqu_pauli(p)).margin(1e-15));
  REQUIRE(rep.p_max == Approx(p_max_sorted(p)).margin(0));
  REQUIRE(rep.max_sharpness == Approx(rep.p_max).margin(0));

  const UnitalChannel rot(Rotation3::axis_angle({0, 1, 0}, 1.1), p, Rotation3::identity());
  const MeasureReport rep2 = measure_report(rot);
  // Output rotation changes the average fidelity but not the sharpness data.
  REQUIRE(rep2.p_max == Approx(rep.p_max).margin(1e-15));
  const Mat3 t = rot.bloch_matrix();
  REQUIRE(rep2.avg_fidelity == Approx(0.5 + (t[0] + t[4] + t[8]) / 6.0).margin(1e-14));
}
