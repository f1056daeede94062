// checks.cpp: property suites

#include "memflow/checks.hpp"

#include "memflow/dephasing.hpp"
#include "memflow/quantifiers.hpp"
#include "memflow/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace memflow {

namespace {

constexpr double kSymmetryTol = 1e-10;
constexpr double kRangeTol = 1e-10;
constexpr double kEntropicSlack = 1e-9;
constexpr std::size_t kMaxCounterexamples = 5;

class Recorder {
public:
    Recorder(std::string name, std::uint64_t seed) : seed_(seed) { result_.name = std::move(name); }

    // Records one instance; `excess` is how far the property is violated (≤ 0 passes).
    template <class Describe>
    void record(double excess, double tol, Describe&& describe) {
        ++result_.total;
        if (excess <= tol && std::isfinite(excess)) {
            ++result_.passed;
            return;
        }
        result_.worst_violation = std::max(result_.worst_violation, std::isfinite(excess) ? excess : HUGE_VAL);
        if (result_.counterexamples.size() < kMaxCounterexamples) {
            std::ostringstream os;
            os.precision(17);
            os << "seed=" << seed_ << " instance=" << result_.total - 1 << " excess=" << excess << " ";
            describe(os);
            result_.counterexamples.push_back(os.str());
        }
    }

    SuiteResult take() { return std::move(result_); }

private:
    std::uint64_t seed_;
    SuiteResult result_;
};

std::ostream& operator<<(std::ostream& os, const DensityMatrix& rho) {
    const BlochVector v = to_bloch(rho);
    return os << "(" << v.x << "," << v.y << "," << v.z << ")";
}

std::mt19937_64 suite_rng(std::uint64_t seed, std::uint64_t suite) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(suite)};
    return std::mt19937_64(seq);
}

// Mostly mixed states, with a quarter of pure ones to exercise the support edge cases.
DensityMatrix sample_state(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, 3);
    return pick(rng) == 0 ? random_pure_state(rng) : random_state(rng);
}

struct Evaluator {
    FaultInjection fault;

    double operator()(const QuantifierKind& kind, const DensityMatrix& a, const DensityMatrix& b) const {
        const double v = evaluate(kind, a, b);
        return fault == FaultInjection::CorruptQuantifier ? 1.0 - v : v;
    }
};

} // namespace

std::vector<SuiteResult> run_quantifier_suites(const CheckOptions& opt) {
    std::vector<SuiteResult> out;
    const Evaluator eval{opt.fault};
    const auto kinds = all_quantifiers(opt.mu);
    std::uint64_t suite_id = 0;

    for (const auto& kind : kinds) {
        const std::string tag = "[" + kind.label() + "]";

        {
            // Skew divergences are symmetric under the joint exchange (μ ↔ 1−μ, ρ ↔ σ).
            Recorder rec("symm" + tag, opt.seed);
            auto rng = suite_rng(opt.seed, ++suite_id);
            QuantifierKind mirrored = kind;
            if (kind.is_skew()) mirrored.mu = 1.0 - kind.mu;
            for (int i = 0; i < opt.samples; ++i) {
                const auto rho = sample_state(rng);
                const auto sigma = sample_state(rng);
                const double excess = std::abs(eval(kind, rho, sigma) - eval(mirrored, sigma, rho));
                rec.record(excess, kSymmetryTol, [&](std::ostream& os) { os << "rho=" << rho << " sigma=" << sigma; });
            }
            out.push_back(rec.take());
        }
        {
            Recorder rec("bound" + tag, opt.seed);
            auto rng = suite_rng(opt.seed, ++suite_id);
            for (int i = 0; i < opt.samples; ++i) {
                const auto rho = sample_state(rng);
                const auto sigma = sample_state(rng);
                const double v = eval(kind, rho, sigma);
                const double excess = std::max(-v, v - 1.0);
                rec.record(excess, kRangeTol, [&](std::ostream& os) { os << "rho=" << rho << " sigma=" << sigma; });
            }
            out.push_back(rec.take());
        }
        {
            Recorder rec("indid" + tag, opt.seed);
            auto rng = suite_rng(opt.seed, ++suite_id);
            for (int i = 0; i < opt.samples; ++i) {
                const auto rho = sample_state(rng);
                rec.record(eval(kind, rho, rho), opt.slack, [&](std::ostream& os) { os << "rho=" << rho; });
            }
            out.push_back(rec.take());
        }
        {
            Recorder rec("normorto" + tag, opt.seed);
            auto rng = suite_rng(opt.seed, ++suite_id);
            for (int i = 0; i < opt.samples; ++i) {
                const auto rho = random_pure_state(rng);
                const BlochVector v = to_bloch(rho);
                const auto perp = from_bloch({-v.x, -v.y, -v.z});
                rec.record(1.0 - eval(kind, rho, perp), opt.slack, [&](std::ostream& os) { os << "rho=" << rho; });
            }
            out.push_back(rec.take());
        }
        {
            Recorder rec("cpcontra" + tag, opt.seed);
            auto rng = suite_rng(opt.seed, ++suite_id);
            std::uniform_int_distribution<int> nk(1, 4);
            for (int i = 0; i < opt.samples; ++i) {
                const auto rho = sample_state(rng);
                const auto sigma = sample_state(rng);
                const auto channel = random_channel(rng, nk(rng));
                const double excess = eval(kind, channel.apply(rho), channel.apply(sigma)) - eval(kind, rho, sigma);
                rec.record(excess, std::min(opt.slack, kEntropicSlack), [&](std::ostream& os) {
                    os << "rho=" << rho << " sigma=" << sigma << " kraus=" << channel.operators().size();
                });
            }
            out.push_back(rec.take());
        }
    }

    // Triangle-type inequalities 𝔖(ρ,σ) − 𝔖(ρ,τ) ≤ φ(𝔖(σ,τ)).
    auto triangle_suite = [&](const std::string& name, const QuantifierKind& kind, double tol) {
        Recorder rec(name, opt.seed);
        auto rng = suite_rng(opt.seed, ++suite_id);
        const TriangleBound phi = triangle_bound(kind);
        for (int i = 0; i < opt.samples; ++i) {
            const auto rho = sample_state(rng);
            const auto sigma = sample_state(rng);
            const auto tau = sample_state(rng);
            const double excess = eval(kind, rho, sigma) - eval(kind, rho, tau) - phi(eval(kind, sigma, tau));
            rec.record(excess, tol, [&](std::ostream& os) { os << "rho=" << rho << " sigma=" << sigma << " tau=" << tau; });
        }
        out.push_back(rec.take());
    };
    triangle_suite("triangle[D]", QuantifierKind::trace_distance(), opt.slack);
    triangle_suite("tlikebis", QuantifierKind::sqrt_jensen_shannon(), opt.slack);
    triangle_suite("tlikeS", QuantifierKind::quantum_skew(opt.mu), std::min(opt.slack, kEntropicSlack));
    triangle_suite("tlikeK", QuantifierKind::holevo_skew(opt.mu), std::min(opt.slack, kEntropicSlack));

    std::uniform_real_distribution<double> weight(0.05, 0.95);
    {
        Recorder rec("b1", opt.seed);
        auto rng = suite_rng(opt.seed, ++suite_id);
        for (int i = 0; i < opt.samples; ++i) {
            const double mu = weight(rng);
            const auto sigma = sample_state(rng);
            const auto r1 = sample_state(rng);
            const auto r2 = sample_state(rng);
            const double lhs = relative_entropy(sigma, mixture(sigma, r1, mu)) - relative_entropy(sigma, mixture(sigma, r2, mu));
            const double rhs = std::log1p((1.0 - mu) / mu * trace_distance(r1, r2));
            rec.record(lhs - rhs, std::min(opt.slack, kEntropicSlack), [&](std::ostream& os) {
                os << "mu=" << mu << " sigma=" << sigma << " rho1=" << r1 << " rho2=" << r2;
            });
        }
        out.push_back(rec.take());
    }
    {
        Recorder rec("b2", opt.seed);
        auto rng = suite_rng(opt.seed, ++suite_id);
        for (int i = 0; i < opt.samples; ++i) {
            const double mu = weight(rng);
            const auto sigma = sample_state(rng);
            auto r1 = sample_state(rng);
            auto r2 = sample_state(rng);
            double d = trace_distance(r1, r2);
            while (d <= 1e-6) {
                r2 = sample_state(rng);
                d = trace_distance(r1, r2);
            }
            const double lhs = telescopic(r1, sigma, mu) - telescopic(r2, sigma, mu);
            const double rhs = d * std::log1p((1.0 - mu) / (mu * d));
            rec.record(lhs - rhs, std::min(opt.slack, kEntropicSlack), [&](std::ostream& os) {
                os << "mu=" << mu << " sigma=" << sigma << " rho1=" << r1 << " rho2=" << r2;
            });
        }
        out.push_back(rec.take());
    }
    return out;
}

std::vector<SuiteResult> run_dephasing_suites(const CheckOptions& opt) {
    std::vector<SuiteResult> out;
    std::uint64_t suite_id = 100;

    auto random_params = [](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        DephasingParams p;
        p.kappa = 0.05 * std::pow(40.0, u(rng));
        p.eta = 0.1 + 1.4 * u(rng);
        p.beta = 0.1 * std::pow(200.0, u(rng));
        return p;
    };
    auto describe = [](const DephasingParams& p, double t) {
        return [p, t](std::ostream& os) {
            os << "t=" << t << " kappa=" << p.kappa << " eta=" << p.eta << " beta=" << p.beta;
        };
    };

    {
        Recorder rec("gamma_origin", opt.seed);
        auto rng = suite_rng(opt.seed, ++suite_id);
        for (int i = 0; i < opt.dephasing_samples; ++i) {
            const auto p = random_params(rng);
            const double excess = std::max(std::abs(gamma_closed(0.0, p)), std::abs(gamma_quadrature(0.0, p)));
            rec.record(excess, 1e-10, describe(p, 0.0));
        }
        out.push_back(rec.take());
    }
    {
        Recorder rec("gamma_oracle", opt.seed);
        auto rng = suite_rng(opt.seed, ++suite_id);
        std::uniform_real_distribution<double> time(0.5, 40.0);
        for (int i = 0; i < opt.dephasing_samples; ++i) {
            const auto p = random_params(rng);
            const double t = time(rng);
            const double quad = gamma_quadrature(t, p);
            const double rel = std::abs(gamma_closed(t, p) - quad) / std::max(quad, 1e-12);
            rec.record(rel, 1e-6, describe(p, t));
        }
        out.push_back(rec.take());
    }
    {
        Recorder rec("gamma_temperature", opt.seed);
        auto rng = suite_rng(opt.seed, ++suite_id);
        std::uniform_real_distribution<double> time(0.0, 50.0);
        for (int i = 0; i < opt.dephasing_samples * 4; ++i) {
            auto hot = random_params(rng);
            auto cold = hot;
            cold.beta = hot.beta * (1.0 + 5.0 * std::uniform_real_distribution<double>(0.0, 1.0)(rng));
            const double t = time(rng);
            rec.record(gamma_closed(t, cold) - gamma_closed(t, hot), 1e-10, describe(hot, t));
        }
        out.push_back(rec.take());
    }
    {
        Recorder rec("gamma_kappa_linear", opt.seed);
        auto rng = suite_rng(opt.seed, ++suite_id);
        std::uniform_real_distribution<double> time(0.0, 50.0);
        for (int i = 0; i < opt.dephasing_samples * 4; ++i) {
            const auto p = random_params(rng);
            auto doubled = p;
            doubled.kappa *= 2.0;
            const double t = time(rng);
            const double single = gamma_closed(t, p);
            const double excess = std::abs(gamma_closed(t, doubled) - 2.0 * single) / std::max(1.0, single);
            rec.record(excess, 1e-10, describe(p, t));
        }
        out.push_back(rec.take());
    }
    return out;
}

std::vector<SuiteResult> run_all_suites(const CheckOptions& options) {
    auto all = run_quantifier_suites(options);
    auto deph = run_dephasing_suites(options);
    all.insert(all.end(), std::make_move_iterator(deph.begin()), std::make_move_iterator(deph.end()));
    return all;
}

} // namespace memflow
