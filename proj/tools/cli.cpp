// cli.cpp: memoryflow subcommands: gamma, series, measure, sweep, check

#include "cli.hpp"

#include "memflow/checks.hpp"
#include "memflow/dephasing.hpp"
#include "memflow/errors.hpp"
#include "memflow/nonmarkov.hpp"
#include "memflow/parallel.hpp"
#include "memflow/quantifiers.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#ifndef MEMORYFLOW_VERSION
#define MEMORYFLOW_VERSION "dev"
#endif

namespace memflow::cli {

namespace {

struct RunConfig {
    DephasingParams params;
    std::vector<double> betas{10.0};
    std::optional<double> t_max;
    int steps{4000};
    MatsubaraTruncation trunc;
    double mu{0.25};
    std::string quantifiers{"D,sqrtJ,K,S"};
    std::string out_path;
    std::uint64_t seed{1};
    bool full_precision{false};
    std::string strategy{"equatorial"};
    std::optional<double> gamma_linear;
    int threads{0};
    int grid_resolution{12};
    SweepSpec sweep;
    std::string fault;
};

std::string shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// Selected quantifiers in canonical order D, sqrtJ, K, S.
std::vector<QuantifierKind> parse_quantifiers(const std::string& list, double mu) {
    bool want[4] = {false, false, false, false};
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok.erase(0, tok.find_first_not_of(" \t"));
        tok.erase(tok.find_last_not_of(" \t") + 1);
        if (tok.empty()) continue;
        if (tok == "D") want[0] = true;
        else if (tok == "sqrtJ" || tok == "J") want[1] = true;
        else if (tok == "K" || tok == "K14") want[2] = true;
        else if (tok == "S" || tok == "S14") want[3] = true;
        else throw InvalidParameter("unknown quantifier '" + tok + "' (expected D, sqrtJ, K, S)");
    }
    const auto all = all_quantifiers(mu);
    std::vector<QuantifierKind> out;
    for (int i = 0; i < 4; ++i) {
        if (want[i]) out.push_back(all[static_cast<std::size_t>(i)]);
    }
    if (out.empty()) throw InvalidParameter("quantifier selection is empty");
    return out;
}

std::unique_ptr<DecoherenceFunction> make_gamma(const RunConfig& cfg, const DephasingParams& p) {
    if (cfg.gamma_linear) return std::make_unique<LinearDecoherence>(*cfg.gamma_linear);
    return std::make_unique<SpinBosonDecoherence>(p, cfg.trunc);
}

TimeGrid make_grid(const RunConfig& cfg, const DephasingParams& p) {
    TimeGrid g{cfg.t_max ? *cfg.t_max : TimeGrid::default_horizon(p), cfg.steps};
    g.validate();
    return g;
}

MeasureOptions make_measure_options(const RunConfig& cfg, int threads) {
    MeasureOptions o;
    if (cfg.strategy == "equatorial") o.strategy = PairStrategy::EquatorialDefault;
    else if (cfg.strategy == "grid") o.strategy = PairStrategy::BlochGridSearch;
    else throw InvalidParameter("strategy must be 'equatorial' or 'grid'");
    o.grid_resolution = cfg.grid_resolution;
    o.threads = threads;
    return o;
}

int thread_count(const RunConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    if (const char* env = std::getenv("MEMORYFLOW_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return resolve_threads(0);
}

void write_metadata(std::ostream& os, const std::string& command, const RunConfig& cfg, const DephasingParams& p) {
    os << "# memoryflow " << MEMORYFLOW_VERSION << "\n";
    os << "# command = " << command << "\n";
    os << "# kappa = " << shortest(p.kappa) << "\n";
    os << "# eta = " << shortest(p.eta) << "\n";
    os << "# omega0 = " << shortest(p.omega0) << "\n";
    os << "# beta = " << shortest(p.beta) << "\n";
    os << "# tmax = " << (cfg.t_max ? shortest(*cfg.t_max) : std::string("auto")) << "\n";
    os << "# steps = " << cfg.steps << "\n";
    os << "# mu = " << shortest(cfg.mu) << "\n";
    os << "# quantifiers = " << cfg.quantifiers << "\n";
    os << "# strategy = " << cfg.strategy << "\n";
    if (cfg.gamma_linear) os << "# gamma_linear = " << shortest(*cfg.gamma_linear) << "\n";
    os << "# matsubara_rel_tol = " << shortest(cfg.trunc.rel_tol) << "\n";
    os << "# seed = " << cfg.seed << "\n";
}

// Output sink: --out file when given, the caller's stream otherwise.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw InvalidParameter("cannot open output file '" + path + "'");
            stream_ = &file_;
        }
    }
    std::ostream& get() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

std::string per_beta_path(const std::string& path, double beta) {
    const std::filesystem::path p(path);
    auto name = p.stem().string() + "_beta" + shortest(beta) + p.extension().string();
    return (p.parent_path() / name).string();
}

int cmd_gamma(const RunConfig& cfg, std::ostream& out) {
    for (double beta : cfg.betas) {
        DephasingParams p = cfg.params;
        p.beta = beta;
        p.validate();
        const auto gamma = make_gamma(cfg, p);
        const TimeGrid grid = make_grid(cfg, p);
        const std::string path = cfg.betas.size() > 1 && !cfg.out_path.empty() ? per_beta_path(cfg.out_path, beta)
                                                                                : cfg.out_path;
        Sink sink(path, out);
        auto& os = sink.get();
        write_metadata(os, "gamma", cfg, p);
        os << "t,gamma\n";
        for (int i = 0; i <= grid.steps; ++i) {
            const double t = grid.time(i);
            os << format_number(t, cfg.full_precision) << "," << format_number((*gamma)(t), cfg.full_precision) << "\n";
        }
    }
    return kSuccess;
}

int cmd_series(const RunConfig& cfg, std::ostream& out) {
    DephasingParams p = cfg.params;
    p.beta = cfg.betas.front();
    p.validate();
    const auto kinds = parse_quantifiers(cfg.quantifiers, cfg.mu);
    const auto gamma = make_gamma(cfg, p);
    const TimeGrid grid = make_grid(cfg, p);

    Sink sink(cfg.out_path, out);
    auto& os = sink.get();
    write_metadata(os, "series", cfg, p);
    os << "t";
    for (const auto& k : kinds) os << "," << k.label();
    os << "\n";
    for (int i = 0; i <= grid.steps; ++i) {
        const double t = grid.time(i);
        const double g = (*gamma)(t);
        os << format_number(t, cfg.full_precision);
        for (const auto& k : kinds) os << "," << format_number(quantifier_of_gamma(k, g), cfg.full_precision);
        os << "\n";
    }
    return kSuccess;
}

int cmd_measure(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    DephasingParams p = cfg.params;
    p.beta = cfg.betas.front();
    p.validate();
    const auto kinds = parse_quantifiers(cfg.quantifiers, cfg.mu);
    const auto gamma = make_gamma(cfg, p);
    const TimeGrid grid = make_grid(cfg, p);
    const MeasureOptions mopt = make_measure_options(cfg, thread_count(cfg));
    const RevivalAnalysis analysis = analyze_revivals(grid, *gamma);

    Sink sink(cfg.out_path, out);
    auto& os = sink.get();
    write_metadata(os, "measure", cfg, p);
    os << "# each summary line is followed by num_windows lines t_start,t_end,gain\n";
    os << "quantifier,measure,num_windows\n";
    for (const auto& k : kinds) {
        const MeasureResult r = measure(k, analysis, mopt);
        os << k.label() << "," << format_number(r.value, cfg.full_precision) << "," << r.windows.size() << "\n";
        for (const auto& w : r.windows) {
            os << format_number(w.t_start, cfg.full_precision) << "," << format_number(w.t_end, cfg.full_precision) << ","
               << format_number(w.gain, cfg.full_precision) << "\n";
        }
        if (!r.tail_negligible) {
            err << "warning: " << k.label() << ": revivals beyond t_max may contribute up to "
                << format_number(r.tail_bound) << "; increase --tmax\n";
        }
    }
    return kSuccess;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    cfg.sweep.validate();
    DephasingParams base = cfg.params;
    base.beta = cfg.betas.front();
    base.validate();
    const auto kinds = parse_quantifiers(cfg.quantifiers, cfg.mu);
    const auto values = cfg.sweep.values();
    const int threads = thread_count(cfg);
    const MeasureOptions mopt = make_measure_options(cfg, 1);

    struct Row {
        std::vector<double> measures;
        std::string error;
        bool failed{false};
    };
    std::vector<Row> rows(values.size());
    parallel_for(static_cast<int>(values.size()), threads, [&](int i) {
        Row& row = rows[static_cast<std::size_t>(i)];
        row.measures.assign(kinds.size(), std::nan(""));
        try {
            DephasingParams p = base;
            (cfg.sweep.parameter == SweepParameter::Beta ? p.beta : p.kappa) = values[static_cast<std::size_t>(i)];
            const auto gamma = make_gamma(cfg, p);
            const RevivalAnalysis analysis = analyze_revivals(make_grid(cfg, p), *gamma);
            for (std::size_t k = 0; k < kinds.size(); ++k) {
                row.measures[k] = measure(kinds[k], analysis, mopt).value;
            }
        } catch (const std::exception& e) {
            row.failed = true;
            row.error = e.what();
        }
    });

    Sink sink(cfg.out_path, out);
    auto& os = sink.get();
    write_metadata(os, "sweep", cfg, base);
    os << "# sweep = " << (cfg.sweep.parameter == SweepParameter::Beta ? "beta" : "kappa") << " from "
       << shortest(cfg.sweep.from) << " to " << shortest(cfg.sweep.to) << " points " << cfg.sweep.points
       << (cfg.sweep.log_scale ? " log" : " linear") << "\n";
    os << "param_value";
    for (const auto& k : kinds) os << ",M_" << k.label();
    os << "\n";
    bool any_failed = false;
    for (std::size_t i = 0; i < values.size(); ++i) {
        os << format_number(values[i], cfg.full_precision);
        for (double m : rows[i].measures) os << "," << format_number(m, cfg.full_precision);
        os << "\n";
        if (rows[i].failed) {
            any_failed = true;
            err << "error: sweep point " << shortest(values[i]) << ": " << rows[i].error << "\n";
        }
    }
    return any_failed ? kPartialSweepFailure : kSuccess;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
    CheckOptions opt;
    opt.seed = cfg.seed;
    opt.mu = cfg.mu;
    if (cfg.fault == "corrupt-quantifier") opt.fault = FaultInjection::CorruptQuantifier;
    else if (!cfg.fault.empty()) throw InvalidParameter("unknown fault '" + cfg.fault + "'");

    const auto suites = run_all_suites(opt);
    bool ok = true;
    for (const auto& s : suites) {
        out << s.name << ": " << s.passed << "/" << s.total << (s.ok() ? " passed" : " FAILED") << "\n";
        ok = ok && s.ok();
    }
    if (!ok) {
        out << "counterexamples:\n";
        for (const auto& s : suites) {
            for (const auto& c : s.counterexamples) out << "  " << s.name << ": " << c << "\n";
        }
    }
    return ok ? kSuccess : kCheckFailure;
}

} // namespace

void SweepSpec::validate() const {
    if (!(from > 0.0) || !(to > 0.0)) throw InvalidParameter("sweep bounds must be positive");
    if (!(from < to)) throw InvalidParameter("sweep needs from < to");
    if (points < 2) throw InvalidParameter("sweep needs at least 2 points");
}

std::vector<double> SweepSpec::values() const {
    validate();
    std::vector<double> v(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / (points - 1);
        v[static_cast<std::size_t>(i)] = log_scale ? from * std::pow(to / from, f) : from + (to - from) * f;
    }
    v.back() = to;
    return v;
}

std::string format_number(double value, bool full_precision) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, full_precision ? 16 : 6);
    std::string s(buf, res.ptr);
    const auto e = s.find('e');
    std::string mantissa = s.substr(0, e);
    const int exponent = std::stoi(s.substr(e + 1));
    return mantissa + "e" + std::to_string(exponent);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"memoryflow: distinguishability revivals and non-Markovianity of qubit dephasing"};
    app.set_version_flag("--version", MEMORYFLOW_VERSION);
    app.set_config("--config", "", "flat key = value configuration file; flags override it");
    app.require_subcommand(1, 1);

    app.add_option("--kappa", cfg.params.kappa, "coupling strength")->capture_default_str();
    app.add_option("--eta", cfg.params.eta, "bandwidth of the spectral density")->capture_default_str();
    app.add_option("--omega0", cfg.params.omega0, "resonance frequency (unit of frequency)")->capture_default_str();
    app.add_option("--beta", cfg.betas, "inverse temperature(s); comma separated for gamma")
        ->delimiter(',')
        ->capture_default_str();
    auto* tmax_opt = app.add_option("--tmax", "time horizon (default max(20/eta, 12 pi/Omega))")->type_name("FLOAT");
    app.add_option("--steps", cfg.steps, "time steps (grid has steps+1 points)")->capture_default_str();
    app.add_option("--mu", cfg.mu, "skew weight of K and S")->capture_default_str();
    app.add_option("--quantifiers", cfg.quantifiers, "subset of D,sqrtJ,K,S")->capture_default_str();
    app.add_option("--out", cfg.out_path, "output path (stdout when omitted)");
    app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    app.add_option("--matsubara-tol", cfg.trunc.rel_tol, "relative truncation tolerance of the Matsubara series")
        ->capture_default_str();
    app.add_flag("--full-precision", cfg.full_precision, "17 significant digits in data rows");
    app.add_option("--strategy", cfg.strategy, "initial pair: equatorial or grid")
        ->check(CLI::IsMember({"equatorial", "grid"}))
        ->capture_default_str();
    app.add_option("--grid-resolution", cfg.grid_resolution, "Bloch samples per axis for --strategy grid")
        ->capture_default_str();
    auto* linear_opt = app.add_option("--gamma-linear", "replace Gamma(t) by C*t")->type_name("C");
    app.add_option("--threads", cfg.threads, "worker threads (default MEMORYFLOW_THREADS or all cores)");
    std::string sweep_param = "beta";
    app.add_option("--sweep", sweep_param, "swept parameter")->check(CLI::IsMember({"beta", "kappa"}));
    auto* from_opt = app.add_option("--from", cfg.sweep.from, "sweep start");
    auto* to_opt = app.add_option("--to", cfg.sweep.to, "sweep end");
    app.add_option("--points", cfg.sweep.points, "sweep points")->capture_default_str();
    app.add_flag("--log", cfg.sweep.log_scale, "logarithmic sweep spacing");
    app.add_option("--inject-fault", cfg.fault)->group("");

    auto* gamma_cmd = app.add_subcommand("gamma", "decoherence function Gamma(t) as CSV")->fallthrough();
    auto* series_cmd = app.add_subcommand("series", "distinguishability trajectories as CSV")->fallthrough();
    auto* measure_cmd = app.add_subcommand("measure", "non-Markovianity measure and revival windows")->fallthrough();
    auto* sweep_cmd = app.add_subcommand("sweep", "measure over a beta or kappa sweep as CSV")->fallthrough();
    auto* check_cmd = app.add_subcommand("check", "run the property suites")->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInvalidParameters;
    }

    try {
        if (tmax_opt->count() > 0) cfg.t_max = tmax_opt->as<double>();
        if (linear_opt->count() > 0) cfg.gamma_linear = linear_opt->as<double>();
        cfg.sweep.parameter = sweep_param == "kappa" ? SweepParameter::Kappa : SweepParameter::Beta;
        if (from_opt->count() == 0) cfg.sweep.from = cfg.sweep.parameter == SweepParameter::Beta ? 1.0 : 0.05;
        if (to_opt->count() == 0) cfg.sweep.to = cfg.sweep.parameter == SweepParameter::Beta ? 20.0 : 5.0;
        if (cfg.betas.empty()) throw InvalidParameter("at least one beta is required");

        if (*gamma_cmd) return cmd_gamma(cfg, out);
        if (*series_cmd) return cmd_series(cfg, out);
        if (*measure_cmd) return cmd_measure(cfg, out, err);
        if (*sweep_cmd) return cmd_sweep(cfg, out, err);
        if (*check_cmd) return cmd_check(cfg, out);
    } catch (const ConvergenceFailure& e) {
        err << "error: " << e.what() << " (partial value " << format_number(e.partial_value()) << ", achieved tolerance "
            << format_number(e.achieved_tolerance()) << ")\n";
        return kConvergenceFailure;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidParameters;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidParameters;
    }
    return kInvalidParameters;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("memoryflow");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace memflow::cli
