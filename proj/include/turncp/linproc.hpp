#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "turncp/errors.hpp"

namespace turncp::linproc {

struct NoiseSpec {
    enum class Family { gaussian, student_t, laplace };

    Family family = Family::gaussian;
    double mean = 0.0;      // gaussian
    double stddev = 1.0;    // gaussian
    double nu = 1.0;        // student_t degrees of freedom
    double location = 0.0;  // laplace
    double scale = 1.0;     // laplace

    static NoiseSpec gaussian(double mean, double stddev);
    static NoiseSpec student_t(double nu);
    static NoiseSpec laplace(double location, double scale);

    void validate() const;
    std::string label() const;  // "N(0,1)", "t(2)", "Lap(0,4)"
};

// X_t = Z_t + theta_1 Z_{t-1} + ... + theta_q Z_{t-q}. Empty theta = i.i.d. noise.
struct MaModel {
    std::vector<double> theta;
};

// X_t = phi_1 X_{t-1} + ... + phi_p X_{t-p} + Z_t.
struct ArModel {
    std::vector<double> phi;
};

// Fractionally integrated noise of memory parameter d in (0, 1/2); the
// infinite moving-average representation is truncated after `truncation`
// lags and warmed up with as many extra noise draws (burn_in is not used).
struct FarimaModel {
    double d = 0.25;
    int truncation = 10000;
};

using Model = std::variant<MaModel, ArModel, FarimaModel>;

struct LinearProcessSpec {
    NoiseSpec noise;
    Model model;
    int burn_in = 1000;

    void validate() const;
};

// Two regimes sharing one innovation stream; the break changes coefficients
// only. Lagged state (past X for AR, past Z for MA/FARIMA) carries across.
struct BreakSpec {
    LinearProcessSpec pre;
    LinearProcessSpec post;
    double break_fraction = 0.5;

    void validate() const;
};

struct TimeSeries {
    std::vector<double> samples;
    std::string origin;
    std::optional<double> sample_rate;
};

// n i.i.d. draws; identical (spec, n, seed) give bit-identical output.
std::vector<double> sample_noise(const NoiseSpec& spec, std::size_t n, std::uint64_t seed);

// Coefficients b_0..b_J of the binomial expansion of (1-B)^(-d):
// b_0 = 1, b_j = b_{j-1} (j-1+d)/j. Tail behaves like j^(d-1)/Gamma(d).
std::vector<double> farima_coefficients(double d, int truncation);

TimeSeries simulate_increments(const LinearProcessSpec& spec, std::size_t n, std::uint64_t seed);

// First floor(n * break_fraction) samples from the pre regime, the rest from
// the post regime, on a single continuing noise stream.
TimeSeries simulate_with_break(const BreakSpec& spec, std::size_t n, std::uint64_t seed);

// Cumulative sums: output[0] = xi0, diff(output) == increments exactly.
TimeSeries integrate(const TimeSeries& increments, double xi0 = 0.0);

// Lag-1 autocorrelation implied by the model; used by experiment reports.
// MA(q): sum theta_i theta_{i+1} / sum theta_i^2 (theta_0 = 1);
// AR(1): phi; FARIMA(d): d/(1-d).
double theoretical_rho1(const Model& model);

}  // namespace turncp::linproc
