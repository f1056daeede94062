// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any hard criterion fails.

#include "cli.hpp"

#include "memflow/checks.hpp"
#include "memflow/dephasing.hpp"
#include "memflow/nonmarkov.hpp"
#include "memflow/quantifiers.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace memflow;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::vector<double> column(std::size_t k) const {
        std::vector<double> c;
        for (const auto& r : rows) c.push_back(r[k]);
        return c;
    }
};

Table parse_csv(const std::string& text) {
    Table t;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (t.header.empty()) {
            t.header = cells;
            continue;
        }
        std::vector<double> row;
        for (const auto& c : cells) row.push_back(std::stod(c));
        t.rows.push_back(row);
    }
    return t;
}

struct CliRun {
    int code;
    std::string out;
};

CliRun invoke(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str()};
}

const std::vector<std::string> kBetaSweep = {"sweep", "--sweep", "beta", "--from", "1", "--to", "20", "--points", "8",
                                             "--kappa", "0.5", "--eta", "0.5", "--full-precision"};
const std::vector<std::string> kKappaSweep = {"sweep", "--sweep", "kappa", "--from", "0.05", "--to", "5", "--points",
                                              "16", "--log", "--beta", "10", "--eta", "0.5", "--full-precision"};

bool all_ok = true;

void report(int id, bool pass, const std::string& detail, bool soft = false) {
    std::cout << "criterion " << id << ": " << (pass ? "PASS" : (soft ? "REPORTED (soft)" : "FAIL")) << "  " << detail
              << std::endl;
    if (!pass && !soft) all_ok = false;
}

std::string fmt(double v) {
    return cli::format_number(v);
}

void gamma_oracle() {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (double t : {1.0, 5.0, 10.0, 20.0, 40.0}) {
        for (double beta : {0.1, 1.0, 5.0, 10.0, 20.0}) {
            for (double kappa : {0.05, 0.1, 0.5, 1.0, 2.0}) {
                DephasingParams p;
                p.kappa = kappa;
                p.eta = 0.5;
                p.beta = beta;
                const double q = gamma_quadrature(t, p);
                worst = std::max(worst, std::abs(gamma_closed(t, p) - q) / std::max(q, 1e-12));
            }
        }
    }
    const double elapsed = seconds_since(t0);
    report(1, worst <= 1e-6 && elapsed < 30.0,
           "max relative error " + fmt(worst) + " over 125 points in " + fmt(elapsed) + " s");
}

void closed_forms() {
    const auto [a, b] = equatorial_pair(0.0);
    double worst = 0.0;
    for (const auto& kind : all_quantifiers()) {
        for (double g : {0.0, 0.1, 0.5, 1.0, 2.0, 5.0}) {
            const double matrix = evaluate(kind, dephase(a, g), dephase(b, g));
            worst = std::max(worst, std::abs(quantifier_of_gamma(kind, g) - matrix));
        }
    }
    report(2, worst <= 1e-10, "max deviation " + fmt(worst));
}

void axioms() {
    const auto t0 = Clock::now();
    CheckOptions opt;
    opt.seed = 1;
    opt.samples = 1000;
    opt.slack = 1e-8;
    const auto suites = run_quantifier_suites(opt);
    const double elapsed = seconds_since(t0);
    int failed = 0;
    double worst = 0.0;
    for (const auto& s : suites) {
        failed += s.total - s.passed;
        worst = std::max(worst, s.worst_violation);
    }
    report(3, failed == 0 && elapsed < 60.0,
           std::to_string(suites.size()) + " suites, " + std::to_string(failed) + " violations (worst excess " +
               fmt(worst) + ") in " + fmt(elapsed) + " s");
}

void beta_trend(const Table& t) {
    bool ok = t.rows.size() == 8;
    double worst_drop = 0.0;
    for (std::size_t k = 1; k < t.header.size(); ++k) {
        const auto c = t.column(k);
        for (std::size_t i = 1; i < c.size(); ++i) {
            const double drop = c[i - 1] - c[i];
            worst_drop = std::max(worst_drop, drop);
            ok = ok && std::isfinite(c[i]) && drop <= 1e-9;
        }
    }
    report(4, ok, "8 points, largest decrease between neighbours " + fmt(worst_drop));
}

void kappa_trend(const Table& t) {
    bool ok = t.rows.size() == 16;
    std::ostringstream detail;
    for (std::size_t k = 1; k < t.header.size(); ++k) {
        const auto c = t.column(k);
        const auto peak = static_cast<std::size_t>(std::max_element(c.begin(), c.end()) - c.begin());
        const bool interior = peak > 0 && peak + 1 < c.size();
        const bool vanishes = c.back() < 1e-6;
        ok = ok && interior && vanishes;
        detail << t.header[k] << ": peak at kappa=" << fmt(t.rows[peak][0]) << (interior ? "" : " (edge)")
               << ", terminal " << fmt(c.back()) << (vanishes ? "" : " (>= 1e-6)") << "; ";
    }
    report(5, ok, detail.str());
}

void sensitivity(const Table& t) {
    std::vector<double> range;
    for (std::size_t k = 1; k < t.header.size(); ++k) {
        const auto c = t.column(k);
        range.push_back(*std::max_element(c.begin(), c.end()) - *std::min_element(c.begin(), c.end()));
    }
    // D and sqrtJ within 25% of each other, both above K, K above S.
    const bool close = std::abs(range[0] - range[1]) <= 0.25 * std::max(range[0], range[1]);
    const bool ordered = std::min(range[0], range[1]) > range[2] && range[2] > range[3];
    report(6, close && ordered,
           "ranges D " + fmt(range[0]) + ", sqrtJ " + fmt(range[1]) + ", K14 " + fmt(range[2]) + ", S14 " +
               fmt(range[3]),
           true);
}

struct Interval {
    double start, end;
};

double golden_max(const std::function<double(double)>& f, double a, double b) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - r * (b - a), x2 = a + r * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > 1e-12) {
        if (f1 < f2) {
            a = x1, x1 = x2, f1 = f2, x2 = a + r * (b - a), f2 = f(x2);
        } else {
            b = x2, x2 = x1, f2 = f1, x1 = b - r * (b - a), f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

// Increase intervals of one quantifier's own trajectory, endpoints refined on that quantifier.
std::vector<Interval> increase_intervals(const QuantifierKind& kind, const TimeGrid& grid,
                                         const DecoherenceFunction& gamma) {
    auto s = [&](double t) { return quantifier_of_gamma(kind, gamma(t)); };
    std::vector<double> v(static_cast<std::size_t>(grid.steps) + 1);
    for (int i = 0; i <= grid.steps; ++i) v[static_cast<std::size_t>(i)] = s(grid.time(i));
    std::vector<Interval> out;
    const int last = grid.steps;
    int i = 0;
    while (i < last) {
        if (!(v[static_cast<std::size_t>(i) + 1] > v[static_cast<std::size_t>(i)])) {
            ++i;
            continue;
        }
        const int lo = i;
        while (i < last && v[static_cast<std::size_t>(i) + 1] > v[static_cast<std::size_t>(i)]) ++i;
        const int hi = i;
        const double start = golden_max([&](double t) { return -s(t); }, grid.time(std::max(lo - 1, 0)),
                                        grid.time(std::min(lo + 1, last)));
        const double end = golden_max(s, grid.time(std::max(hi - 1, 0)), grid.time(std::min(hi + 1, last)));
        out.push_back({start, end});
    }
    return out;
}

void window_coincidence(const Table& kappa_sweep) {
    double worst_scale = 0.0;
    bool counts_agree = true;
    bool library_agrees = true;
    std::size_t total = 0;
    for (const auto& row : kappa_sweep.rows) {
        DephasingParams p;
        p.kappa = row[0];
        p.eta = 0.5;
        p.beta = 10.0;
        const SpinBosonDecoherence gamma(p);
        const TimeGrid grid = TimeGrid::default_for(p);
        const auto library = analyze_revivals(grid, gamma).windows;
        const auto reference = increase_intervals(QuantifierKind::trace_distance(), grid, gamma);
        for (const auto& kind : all_quantifiers()) {
            const auto w = increase_intervals(kind, grid, gamma);
            if (w.size() != reference.size()) {
                counts_agree = false;
                continue;
            }
            total += w.size();
            for (std::size_t i = 0; i < w.size(); ++i) {
                const double d = std::max(std::abs(w[i].start - reference[i].start), std::abs(w[i].end - reference[i].end));
                worst_scale = std::max(worst_scale, d / grid.t_max);
            }
        }
        // The library's shared windows are the same intervals.
        library_agrees = library_agrees && library.size() == reference.size();
        for (std::size_t i = 0; library_agrees && i < library.size(); ++i) {
            const double d = std::max(std::abs(library[i].t_start - reference[i].start),
                                      std::abs(library[i].t_end - reference[i].end));
            worst_scale = std::max(worst_scale, d / grid.t_max);
        }
    }
    report(7, counts_agree && library_agrees && worst_scale <= 1e-6,
           "16 kappa values, " + std::to_string(total) + " windows, max endpoint offset " + fmt(worst_scale) +
               " t_max" + (counts_agree ? "" : ", window counts differ") +
               (library_agrees ? "" : ", library windows differ"));
}

void semigroup() {
    const auto m = invoke({"measure", "--gamma-linear", "0.3", "--full-precision"});
    const auto table = parse_csv(invoke({"series", "--gamma-linear", "0.3", "--full-precision"}).out);
    bool zero = m.code == 0;
    std::istringstream is(m.out);
    std::string line;
    int reported = 0;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("quantifier", 0) == 0) continue;
        ++reported;
        zero = zero && line.substr(line.find(',')) == ",0.0000000000000000e0,0";
    }
    // I_ext(t) = S(0) − S(t).
    bool monotone = table.rows.size() > 1;
    for (std::size_t k = 1; k < table.header.size(); ++k) {
        const auto c = table.column(k);
        for (std::size_t i = 1; i < c.size(); ++i) monotone = monotone && (c[0] - c[i]) >= (c[0] - c[i - 1]);
    }
    report(8, zero && reported == 4 && monotone,
           std::string("measures ") + (zero ? "all exactly 0" : "NOT all 0") + ", I_ext " +
               (monotone ? "non-decreasing" : "decreases somewhere"));
}

void determinism(const std::string& first) {
    const auto second = invoke(kBetaSweep);
    const auto serial = [] {
        auto args = kBetaSweep;
        args.insert(args.end(), {"--threads", "1"});
        return invoke(args);
    }();
    report(9, first == second.out && first == serial.out,
           "repeat and single-threaded sweeps " + std::string(first == second.out && first == serial.out
                                                                  ? "byte-identical"
                                                                  : "differ"));
}

} // namespace

int main() {
    gamma_oracle();
    closed_forms();
    axioms();

    const auto beta_run = invoke(kBetaSweep);
    const auto beta_table = parse_csv(beta_run.out);
    if (beta_run.code != 0) report(4, false, "beta sweep exited with " + std::to_string(beta_run.code));
    else beta_trend(beta_table);

    const auto kappa_run = invoke(kKappaSweep);
    const auto kappa_table = parse_csv(kappa_run.out);
    if (kappa_run.code != 0) report(5, false, "kappa sweep exited with " + std::to_string(kappa_run.code));
    else kappa_trend(kappa_table);

    sensitivity(beta_table);
    window_coincidence(kappa_table);
    semigroup();
    determinism(beta_run.out);

    std::cout << (all_ok ? "all hard criteria passed" : "some hard criteria failed") << std::endl;
    return all_ok ? 0 : 1;
}
