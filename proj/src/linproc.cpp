#include "turncp/linproc.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <sstream>

#include "turncp/rng.hpp"

namespace turncp::linproc {

namespace {

std::mutex fftw_planner_mutex;

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Linear convolution of signal and kernel, restricted to the outputs with a
// full kernel window: result[t] = sum_j kernel[j] * signal[t + kernel.size()-1 - j].
std::vector<double> convolve_valid_direct(const std::vector<double>& signal,
                                          const std::vector<double>& kernel) {
    const std::size_t k = kernel.size();
    const std::size_t n_out = signal.size() - k + 1;
    std::vector<double> out(n_out, 0.0);
    for (std::size_t t = 0; t < n_out; ++t) {
        double acc = 0.0;
        const double* s = signal.data() + t;
        for (std::size_t j = 0; j < k; ++j) acc += kernel[k - 1 - j] * s[j];
        out[t] = acc;
    }
    return out;
}

std::vector<double> convolve_valid_fft(const std::vector<double>& signal,
                                       const std::vector<double>& kernel) {
    const std::size_t full = signal.size() + kernel.size() - 1;
    const std::size_t n = next_pow2(full);
    const std::size_t nc = n / 2 + 1;

    double* a = fftw_alloc_real(n);
    double* b = fftw_alloc_real(n);
    fftw_complex* fa = fftw_alloc_complex(nc);
    fftw_complex* fb = fftw_alloc_complex(nc);

    fftw_plan fwd_a, fwd_b, bwd;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex);
        fwd_a = fftw_plan_dft_r2c_1d(static_cast<int>(n), a, fa, FFTW_ESTIMATE);
        fwd_b = fftw_plan_dft_r2c_1d(static_cast<int>(n), b, fb, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(static_cast<int>(n), fa, a, FFTW_ESTIMATE);
    }

    std::fill(a, a + n, 0.0);
    std::copy(signal.begin(), signal.end(), a);
    std::fill(b, b + n, 0.0);
    std::copy(kernel.begin(), kernel.end(), b);
    fftw_execute(fwd_a);
    fftw_execute(fwd_b);
    for (std::size_t i = 0; i < nc; ++i) {
        const std::complex<double> prod =
            std::complex<double>(fa[i][0], fa[i][1]) * std::complex<double>(fb[i][0], fb[i][1]);
        fa[i][0] = prod.real();
        fa[i][1] = prod.imag();
    }
    fftw_execute(bwd);

    const std::size_t offset = kernel.size() - 1;
    const std::size_t n_out = signal.size() - kernel.size() + 1;
    std::vector<double> out(n_out);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t t = 0; t < n_out; ++t) out[t] = a[offset + t] * inv_n;

    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex);
        fftw_destroy_plan(fwd_a);
        fftw_destroy_plan(fwd_b);
        fftw_destroy_plan(bwd);
    }
    fftw_free(a);
    fftw_free(b);
    fftw_free(fa);
    fftw_free(fb);
    return out;
}

std::vector<double> convolve_valid(const std::vector<double>& signal,
                                   const std::vector<double>& kernel) {
    if (signal.size() < kernel.size()) throw InvalidInputError("signal shorter than kernel");
    // Cutoff chosen by work estimate only; the branch depends on sizes alone,
    // keeping outputs deterministic for fixed inputs.
    const std::size_t direct_work = (signal.size() - kernel.size() + 1) * kernel.size();
    if (kernel.size() < 64 || direct_work < (1u << 22)) return convolve_valid_direct(signal, kernel);
    return convolve_valid_fft(signal, kernel);
}

const MaModel* as_ma(const Model& m) { return std::get_if<MaModel>(&m); }
const ArModel* as_ar(const Model& m) { return std::get_if<ArModel>(&m); }
const FarimaModel* as_farima(const Model& m) { return std::get_if<FarimaModel>(&m); }

// Trailing noise draws needed before the first retained sample.
std::size_t warmup_draws(const LinearProcessSpec& spec) {
    if (const auto* ma = as_ma(spec.model)) return static_cast<std::size_t>(spec.burn_in) + ma->theta.size();
    if (as_ar(spec.model)) return static_cast<std::size_t>(spec.burn_in);
    return static_cast<std::size_t>(as_farima(spec.model)->truncation);
}

// MA filter over noise[warm..]; noise must hold warm + n draws with warm >= q.
std::vector<double> apply_ma(const std::vector<double>& theta, const std::vector<double>& noise,
                             std::size_t warm, std::size_t n) {
    std::vector<double> x(n);
    const std::size_t q = theta.size();
    for (std::size_t t = 0; t < n; ++t) {
        const std::size_t i = warm + t;
        double acc = noise[i];
        for (std::size_t j = 0; j < q; ++j) acc += theta[j] * noise[i - 1 - j];
        x[t] = acc;
    }
    return x;
}

}  // namespace

NoiseSpec NoiseSpec::gaussian(double mean, double stddev) {
    NoiseSpec s;
    s.family = Family::gaussian;
    s.mean = mean;
    s.stddev = stddev;
    s.validate();
    return s;
}

NoiseSpec NoiseSpec::student_t(double nu) {
    NoiseSpec s;
    s.family = Family::student_t;
    s.nu = nu;
    s.validate();
    return s;
}

NoiseSpec NoiseSpec::laplace(double location, double scale) {
    NoiseSpec s;
    s.family = Family::laplace;
    s.location = location;
    s.scale = scale;
    s.validate();
    return s;
}

void NoiseSpec::validate() const {
    switch (family) {
        case Family::gaussian:
            if (!(stddev > 0.0)) throw ConfigError("gaussian noise requires stddev > 0");
            break;
        case Family::student_t:
            if (!(nu > 0.0)) throw ConfigError("student_t noise requires nu > 0");
            break;
        case Family::laplace:
            if (!(scale > 0.0)) throw ConfigError("laplace noise requires scale > 0");
            break;
    }
}

std::string NoiseSpec::label() const {
    std::ostringstream out;
    switch (family) {
        case Family::gaussian:
            out << "N(" << mean << "," << stddev * stddev << ")";
            break;
        case Family::student_t:
            out << "t(" << nu << ")";
            break;
        case Family::laplace:
            out << "Lap(" << location << "," << scale << ")";
            break;
    }
    return out.str();
}

void LinearProcessSpec::validate() const {
    noise.validate();
    if (burn_in < 0) throw ConfigError("burn_in must be >= 0");
    if (const auto* ar = as_ar(model)) {
        for (double phi : ar->phi) {
            if (!(std::abs(phi) < 1.0)) throw ConfigError("ar coefficients must satisfy |phi| < 1");
        }
    } else if (const auto* fa = as_farima(model)) {
        if (!(fa->d > 0.0 && fa->d < 0.5)) throw ConfigError("farima requires d in (0, 1/2)");
        if (fa->truncation < 1) throw ConfigError("farima truncation must be >= 1");
    }
}

void BreakSpec::validate() const {
    pre.validate();
    post.validate();
    if (!(break_fraction > 0.0 && break_fraction < 1.0))
        throw ConfigError("break_fraction must lie in (0, 1)");
    if (pre.noise.family != post.noise.family)
        throw ConfigError("break regimes must share the noise family");
    if (pre.model.index() != post.model.index())
        throw ConfigError("break regimes must share the model type");
    if (const auto* fa_pre = as_farima(pre.model)) {
        if (fa_pre->truncation != as_farima(post.model)->truncation)
            throw ConfigError("break regimes must share the farima truncation");
    }
}

std::vector<double> sample_noise(const NoiseSpec& spec, std::size_t n, std::uint64_t seed) {
    spec.validate();
    rng::Engine engine(seed);
    std::vector<double> out(n);
    switch (spec.family) {
        case NoiseSpec::Family::gaussian:
            for (auto& v : out) v = engine.normal(spec.mean, spec.stddev);
            break;
        case NoiseSpec::Family::student_t:
            for (auto& v : out) v = engine.student_t(spec.nu);
            break;
        case NoiseSpec::Family::laplace:
            for (auto& v : out) v = engine.laplace(spec.location, spec.scale);
            break;
    }
    return out;
}

std::vector<double> farima_coefficients(double d, int truncation) {
    if (!(d > 0.0 && d < 0.5)) throw ConfigError("farima requires d in (0, 1/2)");
    if (truncation < 0) throw ConfigError("truncation must be >= 0");
    std::vector<double> b(static_cast<std::size_t>(truncation) + 1);
    b[0] = 1.0;
    for (int j = 1; j <= truncation; ++j)
        b[static_cast<std::size_t>(j)] = b[static_cast<std::size_t>(j - 1)] * (j - 1 + d) / j;
    return b;
}

TimeSeries simulate_increments(const LinearProcessSpec& spec, std::size_t n, std::uint64_t seed) {
    spec.validate();
    if (n < 1) throw InvalidInputError("need n >= 1 samples");
    const std::size_t warm = warmup_draws(spec);
    const std::vector<double> noise = sample_noise(spec.noise, warm + n, seed);

    TimeSeries out;
    if (const auto* ma = as_ma(spec.model)) {
        out.samples = apply_ma(ma->theta, noise, warm, n);
    } else if (const auto* ar = as_ar(spec.model)) {
        const std::size_t p = ar->phi.size();
        std::vector<double> x(noise.size(), 0.0);
        for (std::size_t t = 0; t < noise.size(); ++t) {
            double acc = noise[t];
            for (std::size_t j = 0; j < p && j < t; ++j) acc += ar->phi[j] * x[t - 1 - j];
            x[t] = acc;
        }
        out.samples.assign(x.begin() + static_cast<std::ptrdiff_t>(warm), x.end());
    } else {
        const auto* fa = as_farima(spec.model);
        const std::vector<double> b = farima_coefficients(fa->d, fa->truncation);
        out.samples = convolve_valid(noise, b);
    }
    return out;
}

TimeSeries simulate_with_break(const BreakSpec& spec, std::size_t n, std::uint64_t seed) {
    spec.validate();
    if (n < 2) throw InvalidInputError("need n >= 2 samples");
    const std::size_t k_star = static_cast<std::size_t>(static_cast<double>(n) * spec.break_fraction);
    const std::size_t warm = std::max(warmup_draws(spec.pre), warmup_draws(spec.post));
    const std::vector<double> noise = sample_noise(spec.pre.noise, warm + n, seed);

    TimeSeries out;
    if (const auto* ma_pre = as_ma(spec.pre.model)) {
        const auto& theta_post = as_ma(spec.post.model)->theta;
        std::vector<double> head = apply_ma(ma_pre->theta, noise, warm, k_star);
        std::vector<double> x(n);
        std::copy(head.begin(), head.end(), x.begin());
        const std::size_t q = theta_post.size();
        for (std::size_t t = k_star; t < n; ++t) {
            const std::size_t i = warm + t;
            double acc = noise[i];
            for (std::size_t j = 0; j < q; ++j) acc += theta_post[j] * noise[i - 1 - j];
            x[t] = acc;
        }
        out.samples = std::move(x);
    } else if (const auto* ar_pre = as_ar(spec.pre.model)) {
        const auto& phi_post = as_ar(spec.post.model)->phi;
        std::vector<double> x(noise.size(), 0.0);
        for (std::size_t t = 0; t < noise.size(); ++t) {
            const auto& phi = (t < warm + k_star) ? ar_pre->phi : phi_post;
            double acc = noise[t];
            for (std::size_t j = 0; j < phi.size() && j < t; ++j) acc += phi[j] * x[t - 1 - j];
            x[t] = acc;
        }
        out.samples.assign(x.begin() + static_cast<std::ptrdiff_t>(warm), x.end());
    } else {
        const auto* fa_pre = as_farima(spec.pre.model);
        const auto* fa_post = as_farima(spec.post.model);
        const std::vector<double> pre =
            convolve_valid(noise, farima_coefficients(fa_pre->d, fa_pre->truncation));
        const std::vector<double> post =
            convolve_valid(noise, farima_coefficients(fa_post->d, fa_post->truncation));
        out.samples.assign(pre.begin(), pre.begin() + static_cast<std::ptrdiff_t>(k_star));
        out.samples.insert(out.samples.end(), post.begin() + static_cast<std::ptrdiff_t>(k_star),
                           post.end());
    }
    return out;
}

TimeSeries integrate(const TimeSeries& increments, double xi0) {
    TimeSeries out;
    out.origin = increments.origin;
    out.sample_rate = increments.sample_rate;
    out.samples.resize(increments.samples.size() + 1);
    out.samples[0] = xi0;
    for (std::size_t i = 0; i < increments.samples.size(); ++i)
        out.samples[i + 1] = out.samples[i] + increments.samples[i];
    return out;
}

double theoretical_rho1(const Model& model) {
    if (const auto* ma = as_ma(model)) {
        double num = 0.0;
        double den = 1.0;
        double prev = 1.0;  // theta_0
        for (std::size_t i = 0; i < ma->theta.size(); ++i) {
            num += prev * ma->theta[i];
            den += ma->theta[i] * ma->theta[i];
            prev = ma->theta[i];
        }
        return num / den;
    }
    if (const auto* ar = as_ar(model)) {
        if (ar->phi.empty()) return 0.0;
        if (ar->phi.size() == 1) return ar->phi[0];
        throw ConfigError("theoretical_rho1 supports AR(1) only");
    }
    const double d = std::get<FarimaModel>(model).d;
    return d / (1.0 - d);
}

}  // namespace turncp::linproc
