// nonmarkov.cpp: revival detection and the non-Markovianity measure

#include "memflow/nonmarkov.hpp"

#include "memflow/errors.hpp"
#include "memflow/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace memflow {

namespace {

constexpr double kTailThreshold = 1e-8;
constexpr double kRefineTol = 1e-10;

// ln 2 − H((1+c)/2) in nats, accurate for small c.
double half_contrast_divergence(double c) {
    if (c < 1e-3) {
        const double c2 = c * c;
        return c2 * (0.5 + c2 * (1.0 / 12.0 + c2 * (1.0 / 30.0 + c2 / 56.0)));
    }
    const double plus = (1.0 + c) * std::log1p(c);
    const double minus = c < 1.0 ? (1.0 - c) * std::log1p(-c) : 0.0;
    return 0.5 * (plus + minus);
}

// Golden-section search for the maximizer of f on [a, b].
template <class F>
double golden_argmax(F&& f, double a, double b) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > kRefineTol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

// Secant iteration on the central difference quotient, started from a
// golden-section estimate.
template <class F>
double polish_stationary(F&& f, double t, double a, double b) {
    constexpr double h = 3e-5;
    auto slope = [&](double x) { return (f(x + h) - f(x - h)) / (2.0 * h); };
    double x0 = t;
    double x1 = t + 1e-6;
    double d0 = slope(x0);
    double d1 = slope(x1);
    for (int it = 0; it < 30; ++it) {
        if (d1 == d0) break;
        const double x2 = x1 - d1 * (x1 - x0) / (d1 - d0);
        if (!std::isfinite(x2) || x2 < a || x2 > b) return t;
        x0 = x1;
        d0 = d1;
        x1 = x2;
        if (std::abs(x1 - x0) < 1e-13) return x1;
        d1 = slope(x1);
    }
    return std::abs(x1 - t) < 1e-6 ? x1 : t;
}

// Bloch grid on [-1, 1]^3 with points outside the ball pushed onto the sphere.
std::vector<BlochVector> bloch_grid(int resolution) {
    std::vector<BlochVector> pts;
    const int n = std::max(resolution, 2);
    auto coord = [n](int k) { return -1.0 + 2.0 * k / (n - 1); };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                BlochVector v{coord(i), coord(j), coord(k)};
                const double r = v.norm();
                if (r > 1.0) {
                    v = {v.x / r, v.y / r, v.z / r};
                }
                pts.push_back(v);
            }
        }
    }
    return pts;
}

// Joint rotations about z leave the dephasing measure invariant, so the first
// state of a pair can be taken in the x–z half plane.
std::vector<BlochVector> azimuth_reduced(const std::vector<BlochVector>& pts) {
    std::vector<BlochVector> out;
    for (const auto& v : pts) {
        const BlochVector r{std::hypot(v.x, v.y), 0.0, v.z};
        const bool seen = std::any_of(out.begin(), out.end(), [&](const BlochVector& u) {
            return std::abs(u.x - r.x) < 1e-12 && std::abs(u.z - r.z) < 1e-12;
        });
        if (!seen) out.push_back(r);
    }
    return out;
}

void finish_tail(MeasureResult& result, const RevivalAnalysis& analysis, const std::function<double(double)>& value_at) {
    const double g_end = analysis.gamma.empty() ? 0.0 : analysis.gamma.back();
    const double lo = std::max(g_end - analysis.tail_drop, 0.0);
    result.tail_bound = analysis.tail_drop > 0.0 ? std::max(value_at(lo) - value_at(lo + analysis.tail_drop), 0.0) : 0.0;
    result.tail_negligible = value_at(g_end) < kTailThreshold || result.tail_bound < kTailThreshold;
}

} // namespace

void TimeGrid::validate() const {
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw InvalidParameter("t_max must be positive");
    if (steps < 100) throw InvalidParameter("time grid needs at least 100 steps");
}

double TimeGrid::default_horizon(const DephasingParams& p) {
    const double om = omega_resonance(p);
    return std::max(20.0 / p.eta, 6.0 * 2.0 * std::numbers::pi / om);
}

TimeGrid TimeGrid::default_for(const DephasingParams& p, int steps) {
    return {default_horizon(p), steps};
}

SpinBosonDecoherence::SpinBosonDecoherence(const DephasingParams& p, const MatsubaraTruncation& trunc)
    : params_(p), trunc_(trunc), slope_(gamma_long_time_slope(p)), envelope_(gamma_oscillation_envelope(p)) {
    trunc_.validate();
}

double SpinBosonDecoherence::oscillation_period() const {
    return 2.0 * std::numbers::pi / omega_resonance(params_);
}

double SpinBosonDecoherence::tail_drop_bound(double t) const {
    // dΓ/dt ≥ slope − envelope·e^{−ηt/2}; the Matsubara part only adds to it.
    const double a = 0.5 * params_.eta;
    const double osc = envelope_ * std::exp(-a * t);
    if (osc <= slope_) return 0.0;
    const double t_star = std::log(envelope_ / slope_) / a;
    return envelope_ / a * (std::exp(-a * t) - std::exp(-a * t_star)) - slope_ * (t_star - t);
}

LinearDecoherence::LinearDecoherence(double rate) : rate_(rate) {
    if (!(rate >= 0.0) || !std::isfinite(rate)) throw InvalidParameter("linear decoherence rate must be non-negative");
}

double quantifier_of_gamma(const QuantifierKind& kind, double gamma) {
    if (!(gamma >= 0.0)) throw InvalidParameter("decoherence exponent must be non-negative");
    const double c = std::exp(-gamma);
    if (kind.tag == QuantifierTag::TraceDistance) return c;

    const double g = half_contrast_divergence(c);
    if (kind.tag == QuantifierTag::SqrtJensenShannon || kind.mu == 0.5) {
        const double j = g / std::numbers::ln2;
        return kind.tag == QuantifierTag::SqrtJensenShannon ? std::sqrt(j) : j;
    }
    if (kind.mu == 0.25) {
        // Both states share the mixture ¼ρ¹ + ¾ρ², with eigenvalues ½(1 ∓ c/2).
        const double l_prod = std::log1p(-0.25 * c * c);
        const double l_ratio = -2.0 * std::atanh(0.5 * c);
        const double first = g - 0.5 * l_prod - 0.5 * c * l_ratio;
        const double second = g - 0.5 * l_prod + 0.5 * c * l_ratio;
        if (kind.tag == QuantifierTag::QuantumSkew) {
            return first / (4.0 * std::log(4.0)) + 3.0 * second / (4.0 * std::log(4.0 / 3.0));
        }
        return (0.25 * first + 0.75 * second) / binary_entropy(0.25);
    }
    const auto [p1, p2] = equatorial_pair(0.0);
    return evaluate(kind, dephase(p1, gamma), dephase(p2, gamma));
}

std::vector<double> sample_gamma(const TimeGrid& grid, const DecoherenceFunction& gamma) {
    grid.validate();
    std::vector<double> out(static_cast<std::size_t>(grid.steps) + 1);
    for (int i = 0; i <= grid.steps; ++i) {
        out[static_cast<std::size_t>(i)] = gamma(grid.time(i));
    }
    return out;
}

Trajectory distinguishability_series(const QuantifierKind& kind, const TimeGrid& grid,
                                     const DecoherenceFunction& gamma) {
    Trajectory tr;
    tr.quantifier = kind;
    tr.gamma = sample_gamma(grid, gamma);
    tr.times.resize(tr.gamma.size());
    tr.values.resize(tr.gamma.size());
    for (std::size_t i = 0; i < tr.gamma.size(); ++i) {
        tr.times[i] = grid.time(static_cast<int>(i));
        tr.values[i] = quantifier_of_gamma(kind, tr.gamma[i]);
    }
    return tr;
}

std::vector<RevivalWindow> find_revivals(std::span<const double> times, std::span<const double> g,
                                         const DecoherenceFunction& gamma) {
    if (times.size() != g.size()) throw InvalidParameter("time and Γ samples differ in length");
    std::vector<RevivalWindow> windows;
    if (times.size() < 2) return windows;

    const double dt = times[1] - times[0];
    const double period = gamma.oscillation_period();
    if (period > 0.0 && period / dt < kMinSamplesPerPeriod) {
        throw InvalidParameter("time grid undersamples the oscillation period (need at least 40 samples)");
    }

    const std::size_t last = times.size() - 1;
    auto refine_max = [&](std::size_t k) {
        const double a = times[k == 0 ? 0 : k - 1];
        const double b = times[std::min(k + 1, last)];
        double t = golden_argmax([&](double x) { return gamma(x); }, a, b);
        if (t > a + 1e-6 && t < b - 1e-6) t = polish_stationary([&](double x) { return gamma(x); }, t, a, b);
        return gamma(t) >= g[k] ? t : times[k];
    };
    auto refine_min = [&](std::size_t k) {
        const double a = times[k == 0 ? 0 : k - 1];
        const double b = times[std::min(k + 1, last)];
        double t = golden_argmax([&](double x) { return -gamma(x); }, a, b);
        if (t > a + 1e-6 && t < b - 1e-6) t = polish_stationary([&](double x) { return gamma(x); }, t, a, b);
        return gamma(t) <= g[k] ? t : times[k];
    };

    std::size_t i = 0;
    while (i < last) {
        if (!(g[i + 1] < g[i])) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < last && g[i + 1] < g[i]) ++i;
        const std::size_t end = i;

        RevivalWindow w;
        w.t_start = refine_max(start);
        w.t_end = refine_min(end);
        w.gamma_start = gamma(w.t_start);
        w.gamma_end = gamma(w.t_end);
        w.gain = w.gamma_start - w.gamma_end;
        if (w.t_start < w.t_end && w.gain > kRevivalFloor) {
            windows.push_back(w);
        }
    }
    return windows;
}

std::vector<RevivalWindow> find_revivals(const Trajectory& series, const DecoherenceFunction& gamma) {
    return find_revivals(series.times, series.gamma, gamma);
}

RevivalAnalysis analyze_revivals(const TimeGrid& grid, const DecoherenceFunction& gamma) {
    RevivalAnalysis a;
    a.grid = grid;
    a.gamma = sample_gamma(grid, gamma);
    std::vector<double> times(a.gamma.size());
    for (std::size_t i = 0; i < times.size(); ++i) times[i] = grid.time(static_cast<int>(i));
    a.windows = find_revivals(times, a.gamma, gamma);
    a.tail_drop = gamma.tail_drop_bound(grid.t_max);
    return a;
}

MeasureResult measure_equatorial(const QuantifierKind& kind, const RevivalAnalysis& analysis) {
    MeasureResult r;
    r.quantifier = kind;
    r.pair_phase = 0.0;
    r.pair_first = {1.0, 0.0, 0.0};
    r.pair_second = {-1.0, 0.0, 0.0};
    for (const auto& w : analysis.windows) {
        RevivalWindow out = w;
        out.gain = quantifier_of_gamma(kind, w.gamma_end) - quantifier_of_gamma(kind, w.gamma_start);
        if (out.gain > 0.0) {
            r.value += out.gain;
            r.windows.push_back(out);
        }
    }
    finish_tail(r, analysis, [&](double g) { return quantifier_of_gamma(kind, g); });
    return r;
}

MeasureResult measure_for_pair(const QuantifierKind& kind, const RevivalAnalysis& analysis, const StatePair& pair) {
    MeasureResult r;
    r.quantifier = kind;
    r.pair_first = to_bloch(pair.first);
    r.pair_second = to_bloch(pair.second);
    const bool equatorial = std::abs(r.pair_first.z) < 1e-12 && std::abs(r.pair_second.z) < 1e-12
                         && std::abs(r.pair_first.norm() - 1.0) < 1e-12
                         && std::abs(r.pair_first.x + r.pair_second.x) < 1e-12
                         && std::abs(r.pair_first.y + r.pair_second.y) < 1e-12;
    r.pair_phase = equatorial ? std::atan2(-r.pair_first.y, r.pair_first.x) : std::numeric_limits<double>::quiet_NaN();

    auto value_at = [&](double g) { return evaluate(kind, dephase(pair.first, g), dephase(pair.second, g)); };
    for (const auto& w : analysis.windows) {
        RevivalWindow out = w;
        out.gain = value_at(w.gamma_end) - value_at(w.gamma_start);
        if (out.gain > 0.0) {
            r.value += out.gain;
            r.windows.push_back(out);
        }
    }
    finish_tail(r, analysis, value_at);
    return r;
}

MeasureResult measure_for_pair(const QuantifierKind& kind, const TimeGrid& grid, const DecoherenceFunction& gamma,
                               const StatePair& pair) {
    return measure_for_pair(kind, analyze_revivals(grid, gamma), pair);
}

MeasureResult measure(const QuantifierKind& kind, const RevivalAnalysis& analysis, const MeasureOptions& options) {
    if (options.strategy == PairStrategy::EquatorialDefault) {
        return measure_equatorial(kind, analysis);
    }

    const auto [e1, e2] = equatorial_pair(0.0);
    MeasureResult best = measure_for_pair(kind, analysis, {e1, e2});
    if (analysis.windows.empty()) return best;

    const auto seconds = bloch_grid(options.grid_resolution);
    const auto firsts = azimuth_reduced(seconds);
    const std::size_t nw = analysis.windows.size();

    // Dephased states at every window endpoint, per grid point.
    auto endpoints = [&](const std::vector<BlochVector>& pts) {
        std::vector<std::vector<DensityMatrix>> out(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const DensityMatrix rho = from_bloch(pts[i]);
            out[i].reserve(2 * nw);
            for (const auto& w : analysis.windows) {
                out[i].push_back(dephase(rho, w.gamma_start));
                out[i].push_back(dephase(rho, w.gamma_end));
            }
        }
        return out;
    };
    const auto first_states = endpoints(firsts);
    const auto second_states = endpoints(seconds);

    struct Candidate {
        double score{-1.0};
        std::size_t second{0};
    };
    std::vector<Candidate> per_first(firsts.size());
    parallel_for(static_cast<int>(firsts.size()), options.threads, [&](int fi) {
        const auto& a = first_states[static_cast<std::size_t>(fi)];
        Candidate c;
        for (std::size_t j = 0; j < seconds.size(); ++j) {
            const auto& b = second_states[j];
            double score = 0.0;
            for (std::size_t w = 0; w < nw; ++w) {
                const double gain = evaluate(kind, a[2 * w + 1], b[2 * w + 1]) - evaluate(kind, a[2 * w], b[2 * w]);
                if (gain > 0.0) score += gain;
            }
            if (score > c.score) c = {score, j};
        }
        per_first[static_cast<std::size_t>(fi)] = c;
    });

    // Deterministic reduction: first strict improvement in index order wins.
    double best_score = best.value;
    std::size_t best_first = firsts.size();
    for (std::size_t i = 0; i < per_first.size(); ++i) {
        if (per_first[i].score > best_score) {
            best_score = per_first[i].score;
            best_first = i;
        }
    }
    if (best_first == firsts.size()) return best;
    const auto& chosen = per_first[best_first];
    return measure_for_pair(kind, analysis, {from_bloch(firsts[best_first]), from_bloch(seconds[chosen.second])});
}

MeasureResult measure(const QuantifierKind& kind, const TimeGrid& grid, const DecoherenceFunction& gamma,
                      const MeasureOptions& options) {
    return measure(kind, analyze_revivals(grid, gamma), options);
}

double internal_information(const QuantifierKind& kind, const DensityMatrix& rho1, const DensityMatrix& rho2) {
    return evaluate(kind, rho1, rho2);
}

double external_information(const QuantifierKind& kind, const DensityMatrix& rho1_initial,
                            const DensityMatrix& rho2_initial, const DensityMatrix& rho1_t,
                            const DensityMatrix& rho2_t) {
    return evaluate(kind, rho1_initial, rho2_initial) - evaluate(kind, rho1_t, rho2_t);
}

} // namespace memflow
