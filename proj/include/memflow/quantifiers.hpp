// quantifiers.hpp: distinguishability quantifiers between qubit states
//
// Trace distance D, square root of the Jensen-Shannon divergence √J, quantum skew
// divergence S_μ and Holevo skew divergence K_μ, together with the entropic
// primitives they are built from. Entropies use the natural logarithm throughout;
// J carries its explicit 1/(2 ln 2) normalizer.

#pragma once

#include "memflow/qubit.hpp"

#include <array>
#include <string>

namespace memflow {

enum class QuantifierTag { TraceDistance, SqrtJensenShannon, QuantumSkew, HolevoSkew };

struct QuantifierKind {
    QuantifierTag tag{QuantifierTag::TraceDistance};
    double mu{0.25}; // only meaningful for the skew variants

    static QuantifierKind trace_distance() { return {QuantifierTag::TraceDistance, 0.25}; }
    static QuantifierKind sqrt_jensen_shannon() { return {QuantifierTag::SqrtJensenShannon, 0.25}; }
    static QuantifierKind quantum_skew(double mu = 0.25);
    static QuantifierKind holevo_skew(double mu = 0.25);

    bool is_skew() const noexcept {
        return tag == QuantifierTag::QuantumSkew || tag == QuantifierTag::HolevoSkew;
    }

    // Short column label: D, sqrtJ, K14, S14 (K<mu>/S<mu> for other μ).
    std::string label() const;

    friend bool operator==(const QuantifierKind&, const QuantifierKind&) = default;
};

// The four quantifiers in canonical output order: D, √J, K_μ, S_μ.
std::array<QuantifierKind, 4> all_quantifiers(double mu = 0.25);

enum class LogBase { Natural, Two };

// −p log p − (1−p) log(1−p), with 0·log 0 = 0.
double binary_entropy(double p, LogBase base = LogBase::Natural);

// −Tr ρ ln ρ
double von_neumann_entropy(const DensityMatrix& rho);

// ½‖ρ − σ‖₁
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Tr A(ln A − ln B). Returns +∞ when supp A ⊄ supp B.
double relative_entropy(const DensityMatrix& a, const DensityMatrix& b);

// S(ρ, μρ + (1−μ)σ), bounded by ln(1/μ).
double telescopic(const DensityMatrix& rho, const DensityMatrix& sigma, double mu);

double quantum_skew(const DensityMatrix& rho, const DensityMatrix& sigma, double mu = 0.25);

// Normalized sum of telescopic terms.
double holevo_skew(const DensityMatrix& rho, const DensityMatrix& sigma, double mu = 0.25);

// χ({μ, ρ; 1−μ, σ}) = H(μρ + (1−μ)σ) − μH(ρ) − (1−μ)H(σ), unnormalized.
double holevo_chi(const DensityMatrix& rho, const DensityMatrix& sigma, double mu);

double jensen_shannon(const DensityMatrix& rho, const DensityMatrix& sigma);

double evaluate(const QuantifierKind& kind, const DensityMatrix& rho, const DensityMatrix& sigma);

// Constants of the fourth-root triangle-like bounds obeyed by S_μ and K_μ.
double sigma_mu(double mu);
double kappa_mu(double mu);

// φ in 𝔖(ρ,σ) − 𝔖(ρ,τ) ≤ φ(𝔖(σ,τ)).
struct TriangleBound {
    enum class Shape { Identity, ScaledFourthRoot };
    Shape shape{Shape::Identity};
    double constant{1.0};

    double operator()(double x) const;
};

TriangleBound triangle_bound(const QuantifierKind& kind);

// Throws InvalidParameter unless 0 < μ < 1.
void require_skew_weight(double mu);

} // namespace memflow
