// nonmarkov.hpp: distinguishability trajectories, revival windows and the
// non-Markovianity measure for a qubit under pure dephasing

#pragma once

#include "memflow/dephasing.hpp"
#include "memflow/quantifiers.hpp"
#include "memflow/qubit.hpp"

#include <functional>
#include <span>
#include <vector>

namespace memflow {

// Revivals whose decoherence drop Γ(t_start) − Γ(t_end) is at or below this are noise.
inline constexpr double kRevivalFloor = 1e-10;

// Minimum number of samples per oscillation period accepted by find_revivals.
inline constexpr double kMinSamplesPerPeriod = 40.0;

struct TimeGrid {
    double t_max{40.0};
    int steps{4000};

    void validate() const;
    double step() const { return t_max / steps; }
    double time(int i) const { return t_max * static_cast<double>(i) / steps; }

    // Horizon max(20/η, 6·2π/Ω).
    static double default_horizon(const DephasingParams& p);
    static TimeGrid default_for(const DephasingParams& p, int steps = 4000);
};

// Γ(t) together with what revival detection needs to know about it.
class DecoherenceFunction {
public:
    virtual ~DecoherenceFunction() = default;

    virtual double operator()(double t) const = 0;

    // Period of the oscillatory component, 0 if there is none.
    virtual double oscillation_period() const = 0;

    // Upper bound on the total decrease of Γ over [t, ∞).
    virtual double tail_drop_bound(double t) const = 0;
};

class SpinBosonDecoherence final : public DecoherenceFunction {
public:
    explicit SpinBosonDecoherence(const DephasingParams& p, const MatsubaraTruncation& trunc = {});

    double operator()(double t) const override { return gamma_closed(t, params_, trunc_); }
    double oscillation_period() const override;
    double tail_drop_bound(double t) const override;

    const DephasingParams& params() const noexcept { return params_; }

private:
    DephasingParams params_;
    MatsubaraTruncation trunc_;
    double slope_;
    double envelope_;
};

// Γ(t) = rate·t, the decoherence function of a dynamical semigroup.
class LinearDecoherence final : public DecoherenceFunction {
public:
    explicit LinearDecoherence(double rate);

    double operator()(double t) const override { return rate_ * t; }
    double oscillation_period() const override { return 0.0; }
    double tail_drop_bound(double) const override { return 0.0; }

private:
    double rate_;
};

// Arbitrary Γ(t), mostly for synthetic fixtures.
class FunctionDecoherence final : public DecoherenceFunction {
public:
    FunctionDecoherence(std::function<double(double)> gamma, double period, double tail_bound = 0.0)
        : gamma_(std::move(gamma)), period_(period), tail_bound_(tail_bound) {}

    double operator()(double t) const override { return gamma_(t); }
    double oscillation_period() const override { return period_; }
    double tail_drop_bound(double) const override { return tail_bound_; }

private:
    std::function<double(double)> gamma_;
    double period_;
    double tail_bound_;
};

struct RevivalWindow {
    double t_start{0.0};
    double t_end{0.0};
    // Distinguishability increase over the window. For windows returned by
    // find_revivals this is the decoherence drop gamma_start − gamma_end.
    double gain{0.0};
    double gamma_start{0.0};
    double gamma_end{0.0};
};

struct Trajectory {
    QuantifierKind quantifier;
    std::vector<double> times;
    std::vector<double> gamma;
    std::vector<double> values;
};

// Closed-form 𝔖 for the antipodal equatorial pair dephased by Γ. Skew variants
// use closed forms for μ ∈ {1/4, 1/2} and matrix evaluation otherwise.
double quantifier_of_gamma(const QuantifierKind& kind, double gamma);

std::vector<double> sample_gamma(const TimeGrid& grid, const DecoherenceFunction& gamma);

Trajectory distinguishability_series(const QuantifierKind& kind, const TimeGrid& grid,
                                     const DecoherenceFunction& gamma);

// Maximal intervals on which Γ decreases (equivalently, on which every quantifier
// of the equatorial pair increases), with endpoints refined by golden-section search.
std::vector<RevivalWindow> find_revivals(std::span<const double> times, std::span<const double> gamma_samples,
                                         const DecoherenceFunction& gamma);
std::vector<RevivalWindow> find_revivals(const Trajectory& series, const DecoherenceFunction& gamma);

// Everything the measure needs from Γ, computed once and shared between quantifiers.
struct RevivalAnalysis {
    TimeGrid grid;
    std::vector<double> gamma;
    std::vector<RevivalWindow> windows;
    double tail_drop{0.0}; // bound on the Γ decrease beyond t_max
};

RevivalAnalysis analyze_revivals(const TimeGrid& grid, const DecoherenceFunction& gamma);

struct StatePair {
    DensityMatrix first;
    DensityMatrix second;
};

struct MeasureResult {
    double value{0.0};
    std::vector<RevivalWindow> windows;
    QuantifierKind quantifier;
    double pair_phase{0.0}; // NaN when the optimizing pair is not equatorial
    BlochVector pair_first;
    BlochVector pair_second;
    // Estimated measure contributed by revivals beyond t_max.
    double tail_bound{0.0};
    bool tail_negligible{true};
};

enum class PairStrategy { EquatorialDefault, BlochGridSearch };

struct MeasureOptions {
    PairStrategy strategy{PairStrategy::EquatorialDefault};
    int grid_resolution{12}; // samples per Bloch axis
    int threads{0};          // 0: hardware concurrency
};

// Σ over revival windows of the quantifier gain, evaluated with matrix quantifiers
// on the dephased pair.
MeasureResult measure_for_pair(const QuantifierKind& kind, const RevivalAnalysis& analysis, const StatePair& pair);
MeasureResult measure_for_pair(const QuantifierKind& kind, const TimeGrid& grid, const DecoherenceFunction& gamma,
                               const StatePair& pair);

// Same sum for the antipodal equatorial pair through quantifier_of_gamma.
MeasureResult measure_equatorial(const QuantifierKind& kind, const RevivalAnalysis& analysis);

MeasureResult measure(const QuantifierKind& kind, const RevivalAnalysis& analysis, const MeasureOptions& options = {});
MeasureResult measure(const QuantifierKind& kind, const TimeGrid& grid, const DecoherenceFunction& gamma,
                      const MeasureOptions& options = {});

double internal_information(const QuantifierKind& kind, const DensityMatrix& rho1, const DensityMatrix& rho2);
double external_information(const QuantifierKind& kind, const DensityMatrix& rho1_initial,
                            const DensityMatrix& rho2_initial, const DensityMatrix& rho1_t,
                            const DensityMatrix& rho2_t);

} // namespace memflow
