#include "catch2/catch_amalgamated.hpp"
#include "qcompat/channels.hpp"
#include "qcompat/rng.hpp"

#include <cmath>

using namespace qcompat;
using Catch::Approx;

namespace {

Rotation3 random_rotation(uint64_t seed, uint64_t index) {
  HaarSampler sampler(substream(seed, 7));
  const Vec3 axis = sampler.bloch(index);
  const double angle = 2.0 * M_PI * uniform01(substream(seed, 8), index);
  return Rotation3::axis_angle(axis, angle);
}

}  // namespace

TEST_CASE("rotation validation and axis-angle construction") {
  REQUIRE(Rotation3::identity().is_identity());
  Mat3 notrot{};
  notrot[0] = 2.0;
  notrot[4] = 1.0;
  notrot[8] = 1.0;
  REQUIRE_THROWS_AS(Rotation3(notrot), std::invalid_argument);
  Mat3 reflect{};
  reflect[0] = -1.0;
  reflect[4] = 1.0;
  reflect[8] = 1.0;
  REQUIRE_THROWS_AS(Rotation3(reflect), std::invalid_argument);  // det = -1

  // Quarter turn about z maps x to y.
  const Rotation3 r = Rotation3::axis_angle({0, 0, 1}, M_PI / 2.0);
  const Vec3 y = r.apply({1, 0, 0});
  REQUIRE(y[0] == Approx(0.0).margin(1e-15));
  REQUIRE(y[1] == Approx(1.0).margin(1e-15));
  REQUIRE(y[2] == Approx(0.0).margin(1e-15));

  // Composition and transpose.
  const Rotation3 rt = r * r.transposed();
  REQUIRE(rt.is_identity(1e-14));
}

TEST_CASE("rotation from unitary and back") {
  // V = sigma_z conjugation flips x and y.
  ComplexMatrix vz(2);
  vz(0, 0) = 1.0;
  vz(1, 1) = -1.0;
  const Rotation3 rz = rotation_from_unitary(Unitary2(vz));
  const Mat3 mz = rz.matrix();
  REQUIRE(mz[0] == Approx(-1.0).margin(1e-14));
  REQUIRE(mz[4] == Approx(-1.0).margin(1e-14));
  REQUIRE(mz[8] == Approx(1.0).margin(1e-14));

  // exp(-i pi/4 sigma_y): rotation about y by pi/2, maps x to -z.
  const double c = std::cos(M_PI / 4.0), s = std::sin(M_PI / 4.0);
  ComplexMatrix vy(2);
  vy(0, 0) = c;
  vy(0, 1) = -s;
  vy(1, 0) = s;
  vy(1, 1) = c;
  const Rotation3 ry = rotation_from_unitary(Unitary2(vy));
  const Vec3 img = ry.apply({1, 0, 0});
  REQUIRE(img[0] == Approx(0.0).margin(1e-14));
  REQUIRE(img[1] == Approx(0.0).margin(1e-14));
  REQUIRE(img[2] == Approx(-1.0).margin(1e-14));
  const Mat3 rodrigues = Rotation3::axis_angle({0, 1, 0}, M_PI / 2.0).matrix();
  for (int i = 0; i < 9; ++i) REQUIRE(ry.matrix()[i] == Approx(rodrigues[i]).margin(1e-14));

  // Round trip over random rotations: rotation -> unitary -> rotation.
  for (uint64_t i = 0; i < 200; ++i) {
    const Rotation3 r = random_rotation(3, i);
    const Unitary2 u = unitary_from_rotation(r);
    const Rotation3 back = rotation_from_unitary(u);
    REQUIRE(mat3_max_abs_diff(back.matrix(), r.matrix()) == Approx(0.0).margin(1e-12));
  }
}

TEST_CASE("unitary phase convention makes the first nonzero entry real positive") {
  for (uint64_t i = 0; i < 50; ++i) {
    const Unitary2 u = unitary_from_rotation(random_rotation(9, i));
    const ComplexMatrix& m = u.matrix();
    for (int k = 0; k < 4; ++k) {
      const cx e = m(k / 2, k % 2);
      if (std::abs(e) > 1e-8) {
        REQUIRE(e.real() > 0.0);
        REQUIRE(std::abs(e.imag()) == Approx(0.0).margin(1e-10 * std::abs(e)));
        break;
      }
    }
  }
}

TEST_CASE("pauli weights validate, expose scalings, and invert them") {
  REQUIRE_THROWS_AS(PauliProbabilities({0.5, 0.5, 0.5, -0.5}), std::invalid_argument);
  REQUIRE_THROWS_AS(PauliProbabilities({0.3, 0.3, 0.3, 0.3}), std::invalid_argument);

  const PauliProbabilities p({0.4, 0.3, 0.2, 0.1});
  const Vec3 lam = p.lambdas();
  REQUIRE(lam[0] == Approx(0.4 + 0.3 - 0.2 - 0.1).margin(1e-15));
  REQUIRE(lam[1] == Approx(0.4 - 0.3 + 0.2 - 0.1).margin(1e-15));
  REQUIRE(lam[2] == Approx(0.4 - 0.3 - 0.2 + 0.1).margin(1e-15));

  const PauliProbabilities back = PauliProbabilities::from_lambdas(lam);
  for (size_t i = 0; i < 4; ++i) REQUIRE(back[i] == Approx(p[i]).margin(1e-14));

  // Scalings (1, 1, -1) would need a negative weight.
  REQUIRE_THROWS_AS(PauliProbabilities::from_lambdas({1.0, 1.0, -1.0}), std::invalid_argument);
  // (1, 1, 0.5) gives weight p3 = (1 - 1 - 1 + 0.5)/4 = -0.125.
  REQUIRE_THROWS_AS(PauliProbabilities::from_lambdas({1.0, 1.0, 0.5}), std::invalid_argument);
}

TEST_CASE("pauli channel action agrees between bloch and density forms") {
  const PauliProbabilities p({0.55, 0.2, 0.15, 0.1});
  HaarSampler sampler(17);
  for (uint64_t i = 0; i < 100; ++i) {
    const QubitState st = sampler.state(i);
    const QubitState out = apply_pauli(p, st);
    const ComplexMatrix rho_out = apply_pauli_matrix(p, st.density());
    const ComplexMatrix expect = QubitState(out.bloch()).density();
    ComplexMatrix diff = rho_out;
    diff -= expect;
    REQUIRE(diff.max_abs() == Approx(0.0).margin(1e-13));
  }
}

TEST_CASE("canonical decomposition of bloch matrices") {
  // Identity channel.
  const UnitalChannel id = UnitalChannel::from_bloch(mat3_identity());
  REQUIRE(id.pauli_weights()[0] == Approx(1.0).margin(1e-12));
  REQUIRE(id.rotations_trivial());

  // diag(1, 0, 0): dephasing to the x axis, weights (1/2, 1/2, 0, 0).
  Mat3 dx{};
  dx[0] = 1.0;
  const UnitalChannel deph = UnitalChannel::from_bloch(dx);
  REQUIRE(deph.pauli_weights()[0] == Approx(0.5).margin(1e-12));
  REQUIRE(deph.pauli_weights()[1] == Approx(0.5).margin(1e-12));
  REQUIRE(deph.pauli_weights()[2] == Approx(0.0).margin(1e-12));

  // Rotated depolarizing-style map: T = R * diag(0.5) * R', weights ((1+3*0.5)/4, ...).
  const Rotation3 r1 = random_rotation(21, 0), r2 = random_rotation(21, 1);
  Mat3 t{};
  for (int i = 0; i < 9; ++i) t[i] = 0.5 * r1.matrix()[i];
  t = mat3_mul(t, r2.matrix());
  const UnitalChannel dep = UnitalChannel::from_bloch(t);
  REQUIRE(dep.pauli_weights()[0] == Approx(0.625).margin(1e-10));
  for (size_t i = 1; i < 4; ++i) REQUIRE(dep.pauli_weights()[i] == Approx(0.125).margin(1e-10));

  // The decomposition must reproduce the original matrix.
  const Mat3 rebuilt = dep.bloch_matrix();
  REQUIRE(mat3_max_abs_diff(rebuilt, t) == Approx(0.0).margin(1e-12));

  // Non-CP bloch matrix is rejected.
  Mat3 bad = mat3_identity();
  bad[8] = -1.0;
  REQUIRE_THROWS_AS(UnitalChannel::from_bloch(bad), std::invalid_argument);
}

TEST_CASE("decomposition handles degenerate and sign-flipped inputs") {
  HaarSampler axes(33);
  for (uint64_t i = 0; i < 200; ++i) {
    const Rotation3 r1 = random_rotation(34, i), r2 = random_rotation(35, i);
    // Random admissible scalings: mix of signs and magnitudes with a CP repair.
    const double a = uniform01(36, 2 * i), b = uniform01(36, 2 * i + 1);
    const Vec3 lam{a, b, a * b};  // lam3 = lam1 * lam2 keeps the scalings admissible
    Mat3 t = r1.matrix();
    for (int row = 0; row < 3; ++row)
      for (int col = 0; col < 3; ++col) t[3 * row + col] *= lam[col];
    t = mat3_mul(t, r2.matrix());
    const UnitalChannel ch = UnitalChannel::from_bloch(t);
    REQUIRE(mat3_max_abs_diff(ch.bloch_matrix(), t) == Approx(0.0).margin(1e-11));
    // Recovered weights are a valid distribution by construction; spot check.
    double sum = 0.0;
    for (size_t k = 0; k < 4; ++k) {
      REQUIRE(ch.pauli_weights()[k] >= 0.0);
      sum += ch.pauli_weights()[k];
    }
    REQUIRE(sum == Approx(1.0).margin(1e-12));
  }

  // Explicit corner cases: negative determinant, rank deficiency, zero map.
  const Rotation3 r1 = random_rotation(34, 999), r2 = random_rotation(35, 999);
  for (const Vec3& lam : {Vec3{-0.2, -0.2, -0.2}, Vec3{0.5, 0.0, 0.0}, Vec3{0.0, 0.0, 0.0}, Vec3{0.5, -0.5, -0.25}}) {
    Mat3 t = r1.matrix();
    for (int row = 0; row < 3; ++row)
      for (int col = 0; col < 3; ++col) t[3 * row + col] *= lam[col];
    t = mat3_mul(t, r2.matrix());
    const UnitalChannel ch = UnitalChannel::from_bloch(t);
    REQUIRE(mat3_max_abs_diff(ch.bloch_matrix(), t) == Approx(0.0).margin(1e-11));
  }
}

TEST_CASE("unital channel application composes rotations around the pauli core") {
  const PauliProbabilities p({0.7, 0.1, 0.1, 0.1});
  const Rotation3 rin = random_rotation(40, 0), rout = random_rotation(40, 1);
  const UnitalChannel ch(rout, p, rin);
  HaarSampler sampler(41);
  for (uint64_t i = 0; i < 50; ++i) {
    const QubitState st = sampler.state(i);
    const Vec3 expect = rout.apply(apply_pauli(p, QubitState(rin.apply(st.bloch()))).bloch());
    const Vec3 got = ch.apply(st).bloch();
    REQUIRE(sub(expect, got)[0] == Approx(0.0).margin(1e-13));
    REQUIRE(norm(sub(expect, got)) == Approx(0.0).margin(1e-13));

    const ComplexMatrix rho_out = apply_unital_matrix(ch, st.density());
    const ComplexMatrix from_bloch = QubitState(got).density();
    ComplexMatrix diff = rho_out;
    diff -= from_bloch;
    REQUIRE(diff.max_abs() == Approx(0.0).margin(1e-12));
  }
}

TEST_CASE("choi state of a pauli channel is bell-diagonal with known blocks") {
  const PauliProbabilities p({0.4, 0.3, 0.2, 0.1});
  const ChoiState choi = choi_state(p);
  const ComplexMatrix& m = choi.matrix();
  // Corner block: 0.5 * [[p0 + p3, p0 - p3], [p0 - p3, p0 + p3]].
  REQUIRE(m(0, 0).real() == Approx(0.25).margin(1e-14));
  REQUIRE(m(0, 3).real() == Approx(0.15).margin(1e-14));
  REQUIRE(m(3, 0).real() == Approx(0.15).margin(1e-14));
  REQUIRE(m(3, 3).real() == Approx(0.25).margin(1e-14));
  // Middle block: 0.5 * [[p1 + p2, p1 - p2], [p1 - p2, p1 + p2]].
  REQUIRE(m(1, 1).real() == Approx(0.25).margin(1e-14));
  REQUIRE(m(1, 2).real() == Approx(0.05).margin(1e-14));
  REQUIRE(m(2, 2).real() == Approx(0.25).margin(1e-14));
  REQUIRE(m(2, 1).real() == Approx(0.05).margin(1e-14));

  // Identity channel: maximally entangled state, trace one, rank one.
  const ChoiState bell = choi_state(PauliProbabilities({1, 0, 0, 0}));
  REQUIRE(bell.matrix()(0, 0).real() == Approx(0.5).margin(1e-14));
  REQUIRE(bell.matrix()(0, 3).real() == Approx(0.5).margin(1e-14));
}

TEST_CASE("choi state of a rotated channel keeps unital marginals") {
  const PauliProbabilities p({0.5, 0.3, 0.1, 0.1});
  const UnitalChannel ch(random_rotation(50, 0), p, random_rotation(50, 1));
  // Construction validates hermiticity, unit trace, positivity, and both marginals.
  REQUIRE_NOTHROW(choi_state_unital(ch));
}
