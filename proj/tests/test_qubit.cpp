#include "memflow/errors.hpp"
#include "memflow/qubit.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace memflow;
using doctest::Approx;

TEST_CASE("default state is maximally mixed") {
    const DensityMatrix rho;
    CHECK(rho(0, 0).real() == Approx(0.5));
    CHECK(rho(1, 1).real() == Approx(0.5));
    CHECK(std::abs(rho(0, 1)) == 0.0);
}

TEST_CASE("from_matrix rejects invalid operators") {
    Matrix2 m;
    m << 0.6, 0.0, 0.0, 0.6;
    CHECK_THROWS_AS(DensityMatrix::from_matrix(m), InvalidState);
    m << 1.2, 0.0, 0.0, -0.2;
    CHECK_THROWS_AS(DensityMatrix::from_matrix(m), InvalidState);
    m << 0.5, Complex(0.1, 0.1), Complex(0.2, 0.0), 0.5;
    CHECK_THROWS_AS(DensityMatrix::from_matrix(m), InvalidState);
    m << 0.5, Complex(0.3, 0.1), Complex(0.3, -0.1), 0.5;
    CHECK_NOTHROW(DensityMatrix::from_matrix(m));
}

TEST_CASE("bloch round trip") {
    const BlochVector v{0.3, -0.4, 0.5};
    const auto back = to_bloch(from_bloch(v));
    CHECK(back.x == Approx(v.x).epsilon(1e-14));
    CHECK(back.y == Approx(v.y).epsilon(1e-14));
    CHECK(back.z == Approx(v.z).epsilon(1e-14));
    CHECK_THROWS_AS(from_bloch({1.0, 1.0, 0.0}), InvalidState);
}

TEST_CASE("eigendecomposition reproduces the matrix") {
    const auto rho = from_bloch({0.2, 0.7, -0.3});
    const auto es = eigendecompose(rho.matrix());
    const double r = std::sqrt(0.04 + 0.49 + 0.09);
    CHECK(es.values[0] == Approx(0.5 * (1 + r)).epsilon(1e-14));
    CHECK(es.values[1] == Approx(0.5 * (1 - r)).epsilon(1e-14));
    Matrix2 back = es.vectors * Eigen::Vector2cd(es.values[0], es.values[1]).asDiagonal() * es.vectors.adjoint();
    CHECK((back - rho.matrix()).norm() < 1e-14);

    const auto degenerate = eigendecompose(DensityMatrix().matrix());
    CHECK(degenerate.values[0] == Approx(0.5));
    CHECK((degenerate.vectors.adjoint() * degenerate.vectors - Matrix2::Identity()).norm() < 1e-14);
}

TEST_CASE("equatorial pair is orthogonal and pure") {
    for (double phi : {0.0, 0.7, 2.5}) {
        const auto [a, b] = equatorial_pair(phi);
        CHECK(a.overlap(b) == Approx(0.0).epsilon(1e-15));
        CHECK(a.overlap(a) == Approx(1.0));
        CHECK(to_bloch(a).z == Approx(0.0));
    }
}

TEST_CASE("dephasing damps coherences only") {
    const auto rho = from_bloch({0.6, 0.2, 0.3});
    const auto out = dephase(rho, 0.7);
    CHECK(out(0, 0).real() == Approx(rho(0, 0).real()));
    CHECK(std::abs(out(0, 1)) == Approx(std::abs(rho(0, 1)) * std::exp(-0.7)));
    CHECK(std::abs(dephase(rho, 0.0)(0, 1) - rho(0, 1)) == 0.0);
    CHECK(std::abs(dephase(rho, INFINITY)(0, 1)) == 0.0);
    CHECK_THROWS_AS(dephase(rho, -0.1), InvalidParameter);
    CHECK_THROWS_AS(dephase(rho, NAN), InvalidParameter);
}

TEST_CASE("dephasing is the Kraus channel with sqrt((1+e^-G)/2) I and sqrt((1-e^-G)/2) Z") {
    const double g = 0.9;
    const double c = std::exp(-g);
    Matrix2 k0 = std::sqrt(0.5 * (1 + c)) * Matrix2::Identity();
    Matrix2 k1;
    k1 << std::sqrt(0.5 * (1 - c)), 0.0, 0.0, -std::sqrt(0.5 * (1 - c));
    const auto channel = KrausChannel::from_operators({k0, k1});
    const auto rho = from_bloch({-0.3, 0.5, 0.1});
    CHECK((channel.apply(rho).matrix() - dephase(rho, g).matrix()).norm() < 1e-14);
}

TEST_CASE("Kraus channels must be trace preserving") {
    Matrix2 k = 0.9 * Matrix2::Identity();
    CHECK_THROWS_AS(KrausChannel::from_operators({k}), InvalidParameter);
    CHECK_THROWS_AS(KrausChannel::from_operators({}), InvalidParameter);
}

TEST_CASE("random channels are complete and map states to states") {
    std::mt19937_64 rng(7);
    for (int k = 1; k <= 4; ++k) {
        const auto channel = random_channel(rng, k);
        CHECK(channel.completeness_error() < 1e-12);
        const auto out = channel.apply(random_state(rng));
        CHECK(out.matrix().trace().real() == Approx(1.0).epsilon(1e-13));
        CHECK(out.eigen().values[1] > -1e-13);
    }
    CHECK_THROWS_AS(random_channel(rng, 0), InvalidParameter);
    CHECK_THROWS_AS(random_channel(rng, 5), InvalidParameter);
}

TEST_CASE("random generation is seed reproducible") {
    CHECK((random_state(42).matrix() - random_state(42).matrix()).norm() == 0.0);
    CHECK((random_state(42).matrix() - random_state(43).matrix()).norm() > 0.0);
    std::mt19937_64 rng(3);
    CHECK(random_pure_state(rng).eigen().values[0] == Approx(1.0).epsilon(1e-13));
}

TEST_CASE("mixture weights") {
    const auto a = from_bloch({0.0, 0.0, 1.0});
    const auto b = from_bloch({0.0, 0.0, -1.0});
    CHECK(to_bloch(mixture(a, b, 0.25)).z == Approx(-0.5));
    CHECK_THROWS_AS(mixture(a, b, 1.5), InvalidParameter);
}
