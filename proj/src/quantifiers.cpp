// quantifiers.cpp: trace distance and entropic quantifiers

#include "memflow/quantifiers.hpp"

#include "memflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace memflow {

namespace {

// Weight ⟨b|A|b⟩ above which a vanishing eigenvalue of B counts as a support violation.
constexpr double kSupportTol = 1e-14;

double xlogx(double x) {
    return x > 0.0 ? x * std::log(x) : 0.0;
}

double clamp_nonneg(double x) {
    return x < 0.0 ? 0.0 : x;
}

// (1+x) ln(1+x) − x for x ≥ −1.
double bregman_log(double x) {
    if (x <= -1.0) {
        return 1.0;
    }
    if (std::abs(x) < 1e-3) {
        return x * x * (0.5 + x * (-1.0 / 6.0 + x * (1.0 / 12.0 + x * (-1.0 / 20.0))));
    }
    return (1.0 + x) * std::log1p(x) - x;
}

} // namespace

QuantifierKind QuantifierKind::quantum_skew(double mu) {
    require_skew_weight(mu);
    return {QuantifierTag::QuantumSkew, mu};
}

QuantifierKind QuantifierKind::holevo_skew(double mu) {
    require_skew_weight(mu);
    return {QuantifierTag::HolevoSkew, mu};
}

std::string QuantifierKind::label() const {
    switch (tag) {
    case QuantifierTag::TraceDistance: return "D";
    case QuantifierTag::SqrtJensenShannon: return "sqrtJ";
    case QuantifierTag::QuantumSkew:
    case QuantifierTag::HolevoSkew: {
        const char* prefix = tag == QuantifierTag::QuantumSkew ? "S" : "K";
        if (mu == 0.25) {
            return std::string(prefix) + "14";
        }
        std::ostringstream os;
        os << prefix << mu;
        return os.str();
    }
    }
    return "?";
}

std::array<QuantifierKind, 4> all_quantifiers(double mu) {
    return {QuantifierKind::trace_distance(), QuantifierKind::sqrt_jensen_shannon(),
            QuantifierKind::holevo_skew(mu), QuantifierKind::quantum_skew(mu)};
}

void require_skew_weight(double mu) {
    if (!(mu > 0.0 && mu < 1.0)) {
        throw InvalidParameter("skew weight mu must lie strictly inside (0, 1)");
    }
}

double binary_entropy(double p, LogBase base) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidParameter("binary entropy needs p in [0, 1]");
    }
    const double h = -xlogx(p) - xlogx(1.0 - p);
    return base == LogBase::Two ? h / std::numbers::ln2 : h;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const auto es = rho.eigen();
    return -xlogx(clamp_nonneg(es.values[0])) - xlogx(clamp_nonneg(es.values[1]));
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    const auto es = eigendecompose(rho.matrix() - sigma.matrix());
    return 0.5 * (std::abs(es.values[0]) + std::abs(es.values[1]));
}

double relative_entropy(const DensityMatrix& a, const DensityMatrix& b) {
    const auto ea = a.eigen();
    const auto eb = b.eigen();

    // Σ_ij |⟨a_i|b_j⟩|² [a_i ln(a_i/b_j) − a_i + b_j], each term nonnegative.
    double value = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double ai = clamp_nonneg(ea.values[static_cast<std::size_t>(i)]);
        for (int j = 0; j < 2; ++j) {
            const double bj = clamp_nonneg(eb.values[static_cast<std::size_t>(j)]);
            const double p = std::norm(ea.vectors.col(i).dot(eb.vectors.col(j)));
            if (bj == 0.0) {
                if (p * ai > kSupportTol) {
                    return std::numeric_limits<double>::infinity();
                }
                continue;
            }
            value += p * bj * bregman_log((ai - bj) / bj);
        }
    }
    return std::max(value, 0.0);
}

double telescopic(const DensityMatrix& rho, const DensityMatrix& sigma, double mu) {
    require_skew_weight(mu);
    return relative_entropy(rho, mixture(rho, sigma, mu));
}

double quantum_skew(const DensityMatrix& rho, const DensityMatrix& sigma, double mu) {
    require_skew_weight(mu);
    const DensityMatrix mid = mixture(rho, sigma, mu);
    const double first = relative_entropy(rho, mid);
    const double second = relative_entropy(sigma, mid);
    return mu / std::log(1.0 / mu) * first + (1.0 - mu) / std::log(1.0 / (1.0 - mu)) * second;
}

double holevo_skew(const DensityMatrix& rho, const DensityMatrix& sigma, double mu) {
    require_skew_weight(mu);
    const DensityMatrix mid = mixture(rho, sigma, mu);
    const double chi = mu * relative_entropy(rho, mid) + (1.0 - mu) * relative_entropy(sigma, mid);
    return chi / binary_entropy(mu);
}

double holevo_chi(const DensityMatrix& rho, const DensityMatrix& sigma, double mu) {
    require_skew_weight(mu);
    return von_neumann_entropy(mixture(rho, sigma, mu)) - mu * von_neumann_entropy(rho)
         - (1.0 - mu) * von_neumann_entropy(sigma);
}

double jensen_shannon(const DensityMatrix& rho, const DensityMatrix& sigma) {
    const DensityMatrix mid = mixture(rho, sigma, 0.5);
    return (relative_entropy(rho, mid) + relative_entropy(sigma, mid)) / (2.0 * std::numbers::ln2);
}

double evaluate(const QuantifierKind& kind, const DensityMatrix& rho, const DensityMatrix& sigma) {
    switch (kind.tag) {
    case QuantifierTag::TraceDistance: return trace_distance(rho, sigma);
    case QuantifierTag::SqrtJensenShannon: return std::sqrt(jensen_shannon(rho, sigma));
    case QuantifierTag::QuantumSkew: return quantum_skew(rho, sigma, kind.mu);
    case QuantifierTag::HolevoSkew: return holevo_skew(rho, sigma, kind.mu);
    }
    throw InvalidParameter("unknown quantifier");
}

double sigma_mu(double mu) {
    require_skew_weight(mu);
    const double lm = std::log(mu);
    const double ln = std::log1p(-mu);
    const double cubes = std::pow(lm * ln, 3);
    const double w = mu * (1.0 - mu);
    return std::log(1.0 / w) * std::pow(w / (2.0 * binary_entropy(mu) * cubes), 0.25);
}

double kappa_mu(double mu) {
    require_skew_weight(mu);
    const double h = binary_entropy(mu);
    return std::pow(8.0 * mu * (1.0 - mu) / (h * h * h), 0.25);
}

double TriangleBound::operator()(double x) const {
    const double arg = std::max(x, 0.0);
    return shape == Shape::Identity ? constant * arg : constant * std::pow(arg, 0.25);
}

TriangleBound triangle_bound(const QuantifierKind& kind) {
    switch (kind.tag) {
    case QuantifierTag::TraceDistance:
    case QuantifierTag::SqrtJensenShannon: return {TriangleBound::Shape::Identity, 1.0};
    case QuantifierTag::QuantumSkew: return {TriangleBound::Shape::ScaledFourthRoot, sigma_mu(kind.mu)};
    case QuantifierTag::HolevoSkew: return {TriangleBound::Shape::ScaledFourthRoot, kappa_mu(kind.mu)};
    }
    throw InvalidParameter("unknown quantifier");
}

} // namespace memflow
