// dephasing.cpp: spectral density and the two evaluators of Γ(t)

#include "memflow/dephasing.hpp"

#include "memflow/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace memflow {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSmallOmega = 1e-6;

// sinh(x)/D and sin(y)/D with D = cosh x − cos y, evaluated without overflow.
struct PoleWeights {
    double hyperbolic;
    double trigonometric;
};

PoleWeights pole_weights(double x, double y) {
    if (x > 40.0) {
        const double e = std::exp(-x);
        const double sech = 2.0 * e / (1.0 + e * e);
        const double denom = 1.0 - std::cos(y) * sech;
        return {std::tanh(x) / denom, std::sin(y) * sech / denom};
    }
    const double sh = std::sinh(0.5 * x);
    const double sn = std::sin(0.5 * y);
    const double denom = 2.0 * (sh * sh + sn * sn);
    return {std::sinh(x) / denom, std::sin(y) / denom};
}

struct PoleTerms {
    double omega_r;  // Ω
    double detuning; // η²/4 − Ω²
    double prefactor;
    PoleWeights weights;
};

PoleTerms pole_terms(const DephasingParams& p) {
    const double om = omega_resonance(p);
    return {om, 0.25 * p.eta * p.eta - om * om, kPi * p.kappa / (2.0 * om * p.omega0 * p.omega0),
            pole_weights(p.beta * om, 0.5 * p.beta * p.eta)};
}

} // namespace

void DephasingParams::validate() const {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw InvalidParameter("kappa must be positive");
    if (!(eta > 0.0) || !std::isfinite(eta)) throw InvalidParameter("eta must be positive");
    if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw InvalidParameter("omega0 must be positive");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidParameter("beta must be positive");
    if (!(0.5 * eta < omega0)) {
        throw InvalidParameter("overdamped bath: eta/2 must be below omega0");
    }
}

void MatsubaraTruncation::validate() const {
    if (!(rel_tol > 0.0 && rel_tol <= 1e-3)) throw InvalidParameter("Matsubara rel_tol must be in (0, 1e-3]");
    if (max_terms < 10) throw InvalidParameter("Matsubara max_terms must be at least 10");
}

double spectral_density(double omega, const DephasingParams& p) {
    const double w0sq = p.omega0 * p.omega0;
    const double split = omega * omega - w0sq;
    return p.kappa * w0sq * p.eta * omega / (split * split + p.eta * p.eta * omega * omega);
}

double omega_resonance(const DephasingParams& p) {
    p.validate();
    return std::sqrt(p.omega0 * p.omega0 - 0.25 * p.eta * p.eta);
}

double gamma_long_time_slope(const DephasingParams& p) {
    p.validate();
    return kPi * p.kappa * p.eta / (p.beta * p.omega0 * p.omega0);
}

double gamma_oscillation_envelope(const DephasingParams& p) {
    const PoleTerms pt = pole_terms(p);
    const double w = std::hypot(pt.weights.hyperbolic, pt.weights.trigonometric);
    const double a = std::hypot(pt.detuning, p.eta * pt.omega_r);
    return pt.prefactor * w * a * p.omega0;
}

double gamma_closed(double t, const DephasingParams& p, const MatsubaraTruncation& trunc) {
    if (!(t >= 0.0)) throw InvalidParameter("time must be non-negative");
    trunc.validate();
    const PoleTerms pt = pole_terms(p);
    const double om = pt.omega_r;
    const double eb = p.eta * om;

    const double decay = std::exp(-0.5 * p.eta * t);
    const double c = std::cos(om * t);
    const double s = std::sin(om * t);
    const double block_h = decay * (pt.detuning * c - eb * s) - pt.detuning;
    const double block_t = decay * (pt.detuning * s + eb * c) - eb;
    const double poles = pt.prefactor * (pt.weights.hyperbolic * block_h + pt.weights.trigonometric * block_t);

    const double w0sq = p.omega0 * p.omega0;
    const double linear = kPi * p.kappa * p.eta * t / (p.beta * w0sq);

    // Terms decrease monotonically in n; stop once the newest one is negligible.
    const double nu1 = 2.0 * kPi / p.beta;
    double series = 0.0;
    double last = 0.0;
    bool converged = false;
    for (int n = 1; n <= trunc.max_terms; ++n) {
        const double nu = nu1 * n;
        const double lower = nu * nu + w0sq - p.eta * nu;
        const double upper = nu * nu + w0sq + p.eta * nu;
        if (!(lower > 0.0)) {
            throw InvalidParameter("Matsubara denominator not positive; bath is not underdamped");
        }
        last = -std::expm1(-nu * t) / (nu * lower * upper);
        series += last;
        if (last <= trunc.rel_tol * series) {
            converged = true;
            break;
        }
    }
    const double matsubara = 2.0 * kPi * p.kappa * w0sq * p.eta / p.beta * series;
    const double value = std::max(poles + linear + matsubara, 0.0);
    if (!converged) {
        throw ConvergenceFailure("Matsubara series did not converge within " + std::to_string(trunc.max_terms)
                                     + " terms",
                                 value, series > 0.0 ? last / series : last);
    }
    return value;
}

double decoherence_integrand(double omega, double t, const DephasingParams& p) {
    const double w0sq = p.omega0 * p.omega0;
    const double split = omega * omega - w0sq;
    // J(ω)/ω is regular at the origin.
    const double j_over_omega = p.kappa * w0sq * p.eta / (split * split + p.eta * p.eta * omega * omega);
    if (omega < kSmallOmega) {
        const double wt = omega * t;
        const double bw = p.beta * omega;
        const double kernel = 0.5 * t * t * (1.0 - wt * wt / 12.0);
        const double thermal = 2.0 / p.beta * (1.0 + bw * bw / 12.0);
        return j_over_omega * kernel * thermal;
    }
    const double half = std::sin(0.5 * omega * t);
    const double kernel = 2.0 * half * half / (omega * omega);
    const double thermal = omega / std::tanh(0.5 * p.beta * omega);
    return j_over_omega * kernel * thermal;
}

double gamma_quadrature(double t, const DephasingParams& p, double abs_tol) {
    if (!(t >= 0.0)) throw InvalidParameter("time must be non-negative");
    if (!(abs_tol > 0.0)) throw InvalidParameter("quadrature tolerance must be positive");
    const double om = omega_resonance(p);

    using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
    constexpr unsigned kMaxDepth = 15;
    constexpr unsigned kSplitDepth = 6;
    constexpr double kPanelTol = 1e-12;
    constexpr long kPanelCap = 20'000'000;
    constexpr double kTailRelTol = 1e-12;

    auto f = [&](double w) { return decoherence_integrand(w, t, p); };
    // The integrand oscillates with period 2π/t; keep panels at half of it.
    const double max_width = t > 1.0 ? kPi / t : std::numeric_limits<double>::infinity();
    long panels = 0;

    auto integrate_segment = [&](double a, double b) {
        const long pieces = std::isfinite(max_width) ? std::max(1L, static_cast<long>(std::ceil((b - a) / max_width))) : 1L;
        const double width = (b - a) / static_cast<double>(pieces);
        const unsigned depth = pieces > 1 ? kSplitDepth : kMaxDepth;
        double sum = 0.0;
        for (long k = 0; k < pieces; ++k) {
            const double lo = a + width * static_cast<double>(k);
            const double hi = k + 1 == pieces ? b : lo + width;
            sum += Rule::integrate(f, lo, hi, depth, kPanelTol);
        }
        panels += pieces;
        return sum;
    };

    std::vector<double> cuts{0.0, om, p.omega0, 2.0 * p.omega0};
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        total += integrate_segment(cuts[i], cuts[i + 1]);
    }

    double lo = cuts.back();
    for (;;) {
        const double piece = integrate_segment(lo, 2.0 * lo);
        total += piece;
        if (std::abs(piece) < std::max(abs_tol, kTailRelTol * std::abs(total))) {
            break;
        }
        lo *= 2.0;
        if (panels > kPanelCap || lo > 1e12 * p.omega0) {
            throw ConvergenceFailure("quadrature tail did not converge", total, std::abs(piece));
        }
    }
    return total;
}

} // namespace memflow
