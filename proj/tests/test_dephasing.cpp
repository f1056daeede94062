#include "memflow/dephasing.hpp"
#include "memflow/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace memflow;
using doctest::Approx;

namespace {

DephasingParams params(double kappa, double beta, double eta = 0.5) {
    DephasingParams p;
    p.kappa = kappa;
    p.beta = beta;
    p.eta = eta;
    return p;
}

// Γ(t) by mpmath quadrature at 25 digits, tests/oracle/generate.py.
struct Reference {
    double kappa, beta, t, gamma;
};
constexpr Reference kReference[] = {
    {0.1, 10, 1, 0.061179089811601375},
    {0.1, 10, 5, 0.2687012158844757},
    {0.1, 10, 10, 0.34418523383439217},
    {0.1, 10, 20, 0.48731357231576373},
    {0.1, 0.1, 1, 1.4567264292780662},
    {0.1, 0.1, 5, 10.75995774547704},
    {0.1, 0.1, 10, 18.300682038162478},
    {0.1, 0.1, 20, 33.753499513435765},
    {2, 1, 1, 3.1116349167145505},
    {2, 1, 5, 22.050205891493345},
    {2, 1, 10, 37.155101221402368},
    {2, 1, 20, 68.013987426446285},
};

} // namespace

TEST_CASE("parameter validation") {
    CHECK_NOTHROW(DephasingParams{}.validate());
    CHECK_THROWS_AS(params(-1, 10).validate(), InvalidParameter);
    CHECK_THROWS_AS(params(0.1, 0).validate(), InvalidParameter);
    CHECK_THROWS_AS(params(0.1, 10, 2.0).validate(), InvalidParameter);
    CHECK_THROWS_AS(params(0.1, 10, 3.0).validate(), InvalidParameter);
    CHECK_THROWS_AS(params(0.1, INFINITY).validate(), InvalidParameter);
    CHECK_THROWS_AS((MatsubaraTruncation{1e-2, 1000}.validate()), InvalidParameter);
    CHECK_THROWS_AS((MatsubaraTruncation{1e-12, 5}.validate()), InvalidParameter);
}

TEST_CASE("spectral density") {
    const auto p = params(0.1, 10);
    CHECK(spectral_density(0.0, p) == 0.0);
    CHECK(spectral_density(1.0, p) == Approx(0.1 / 0.5).epsilon(1e-15));
    CHECK(spectral_density(1e3, p) == Approx(0.1 * 0.5 / 1e9).epsilon(1e-5));
    CHECK(spectral_density(0.3, p) > 0.0);
}

TEST_CASE("resonance frequency") {
    CHECK(omega_resonance(params(0.1, 10, 1e-9)) == Approx(1.0).epsilon(1e-15));
    CHECK(omega_resonance(params(0.1, 10, 1.0)) == Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
    CHECK(omega_resonance(params(0.1, 10, 2.0 * (1.0 - 1e-12))) < 2e-6);
}

TEST_CASE("decoherence function vanishes at the origin") {
    for (double beta : {0.1, 1.0, 10.0, 50.0}) {
        const auto p = params(0.7, beta);
        CHECK(std::abs(gamma_closed(0.0, p)) <= 1e-10);
        CHECK(gamma_quadrature(0.0, p) == 0.0);
    }
}

TEST_CASE("closed form against high-precision reference") {
    for (const auto& r : kReference) {
        CAPTURE(r.kappa);
        CAPTURE(r.beta);
        CAPTURE(r.t);
        CHECK(gamma_closed(r.t, params(r.kappa, r.beta)) == Approx(r.gamma).epsilon(1e-9));
    }
}

TEST_CASE("quadrature against high-precision reference") {
    for (const auto& r : kReference) {
        CAPTURE(r.t);
        CHECK(gamma_quadrature(r.t, params(r.kappa, r.beta)) == Approx(r.gamma).epsilon(1e-9));
    }
}

TEST_CASE("closed form and quadrature agree away from the reference points") {
    for (double t : {0.3, 2.7, 13.1}) {
        for (double eta : {0.2, 1.2, 1.9}) {
            const auto p = params(0.3, 3.0, eta);
            CAPTURE(t);
            CAPTURE(eta);
            const double q = gamma_quadrature(t, p);
            CHECK(std::abs(gamma_closed(t, p) - q) / q < 1e-8);
        }
    }
}

TEST_CASE("integrand near zero frequency") {
    const auto p = params(0.1, 10);
    CHECK(decoherence_integrand(1e-8, 2.0, p) == Approx(0.1 * 0.5 * 4.0 / 10.0).epsilon(1e-8));
    // Both sides of the series switch agree.
    CHECK(decoherence_integrand(0.999999e-6, 2.0, p) == Approx(decoherence_integrand(1.000001e-6, 2.0, p)).epsilon(1e-9));
}

TEST_CASE("long-time growth is affine with the analytic slope") {
    const auto p = params(0.1, 10);
    const double h = 1e-2;
    const double slope = (gamma_closed(50.0 + h, p) - gamma_closed(50.0 - h, p)) / (2.0 * h);
    CHECK(slope == Approx(gamma_long_time_slope(p)).epsilon(1e-4));
    CHECK(gamma_long_time_slope(p) == Approx(std::numbers::pi * 0.1 * 0.5 / 10.0).epsilon(1e-15));
}

TEST_CASE("oscillation envelope bounds the derivative's oscillating part") {
    const auto p = params(0.5, 10);
    const double slope = gamma_long_time_slope(p);
    const double b = gamma_oscillation_envelope(p);
    const double h = 1e-4;
    for (double t = 2.0; t < 30.0; t += 0.37) {
        const double d = (gamma_closed(t + h, p) - gamma_closed(t - h, p)) / (2.0 * h);
        CHECK(std::abs(d - slope) <= b * std::exp(-0.25 * t) * 1.05 + 1e-3);
    }
}

TEST_CASE("higher temperature decoheres faster") {
    const auto hot = params(0.1, 0.1);
    const auto cold = params(0.1, 10);
    for (double t = 0.25; t <= 50.0; t += 0.25) {
        CHECK(gamma_closed(t, hot) >= gamma_closed(t, cold) - 1e-10);
    }
}

TEST_CASE("linear in the coupling") {
    for (double t : {0.5, 4.0, 30.0}) {
        const double single = gamma_closed(t, params(0.2, 5));
        CHECK(std::abs(gamma_closed(t, params(0.4, 5)) - 2.0 * single) <= 1e-10 * std::max(1.0, single));
    }
}

TEST_CASE("nonnegative everywhere sampled") {
    for (double beta : {0.1, 1.0, 20.0}) {
        for (double t = 0.0; t < 60.0; t += 0.173) {
            CHECK(gamma_closed(t, params(0.05, beta, 1.5)) >= -1e-10);
        }
    }
}

TEST_CASE("truncation cap reports partial progress") {
    const auto p = params(0.1, 0.01);
    try {
        gamma_closed(3.0, p, MatsubaraTruncation{1e-12, 10});
        FAIL("expected a convergence failure");
    } catch (const ConvergenceFailure& e) {
        CHECK(e.partial_value() > 0.0);
        CHECK(e.achieved_tolerance() > 1e-12);
    }
}
