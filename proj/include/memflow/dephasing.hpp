// dephasing.hpp: decoherence function of the spin-boson dephasing model
//
// Units: ħ = 1, frequencies in units of ω₀ (omega0 is kept explicit but the CLI
// always sets it to 1), times in 1/ω₀, β in 1/(ħω₀).

#pragma once

#include <limits>

namespace memflow {

struct DephasingParams {
    double kappa{0.1};  // coupling strength
    double eta{0.5};    // bandwidth
    double omega0{1.0}; // resonance frequency
    double beta{10.0};  // inverse temperature

    // Positivity of all fields and the underdamped condition η/2 < ω₀.
    void validate() const;
};

struct MatsubaraTruncation {
    double rel_tol{1e-12};
    int max_terms{100000};

    void validate() const;
};

// J(ω) = κω₀² ηω / ((ω² − ω₀²)² + η²ω²)
double spectral_density(double omega, const DephasingParams& p);

// Ω = √(ω₀² − η²/4); throws InvalidParameter in the overdamped regime.
double omega_resonance(const DephasingParams& p);

// Γ(t) from the residue expansion: damped oscillatory pole terms, the linear
// high-temperature term πκηt/(βω₀²), and a Matsubara series with terms
// (1 − e^{−ν_n t}) / (ν_n [(ν_n² + ω₀²)² − η²ν_n²]).
// Throws ConvergenceFailure when the series needs more than trunc.max_terms terms.
double gamma_closed(double t, const DephasingParams& p, const MatsubaraTruncation& trunc = {});

// Asymptotic slope dΓ/dt as t → ∞.
double gamma_long_time_slope(const DephasingParams& p);

// B such that the oscillatory part of dΓ/dt is bounded by B·e^{−ηt/2}.
double gamma_oscillation_envelope(const DephasingParams& p);

// J(ω)(1 − cos ωt)/ω² · coth(βω/2), with its series form below ω = 1e-6.
double decoherence_integrand(double omega, double t, const DephasingParams& p);

// Direct adaptive Gauss–Kronrod quadrature of the integral definition of Γ(t).
double gamma_quadrature(double t, const DephasingParams& p, double abs_tol = 1e-12);

} // namespace memflow
