// cli.hpp: memoryflow command-line front end

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace memflow::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInvalidParameters = 1,
    kConvergenceFailure = 2,
    kPartialSweepFailure = 3,
    kCheckFailure = 4,
};

enum class SweepParameter { Beta, Kappa };

struct SweepSpec {
    SweepParameter parameter{SweepParameter::Beta};
    double from{1.0};
    double to{20.0};
    int points{8};
    bool log_scale{false};

    void validate() const;
    // Ascending parameter values, endpoints included.
    std::vector<double> values() const;
};

// Scientific notation with 6 decimals (16 with full precision) and a bare
// exponent: 0.000000e0, 1.250000e-3. Non-finite values print as nan / inf.
std::string format_number(double value, bool full_precision = false);

// Runs the CLI with argv[0] as program name. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace memflow::cli
