#include <doctest.h>

#include <cmath>

#include "support/oracles.hpp"
#include "turncp/linproc.hpp"
#include "turncp/rng.hpp"

using namespace turncp;
using linproc::ArModel;
using linproc::BreakSpec;
using linproc::FarimaModel;
using linproc::LinearProcessSpec;
using linproc::MaModel;
using linproc::NoiseSpec;

TEST_CASE("sample_noise moments") {
    const std::size_t n = 1000000;
    const auto gauss = linproc::sample_noise(NoiseSpec::gaussian(0.0, 1.0), n, 1);
    CHECK(std::abs(oracles::mean(gauss)) < 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(oracles::variance(gauss) == doctest::Approx(1.0).epsilon(0.01));

    const auto lap = linproc::sample_noise(NoiseSpec::laplace(0.0, 4.0), n, 2);
    CHECK(oracles::variance(lap) == doctest::Approx(32.0).epsilon(0.02));

    CHECK(linproc::sample_noise(NoiseSpec::student_t(2.0), 0, 3).empty());
}

TEST_CASE("student_t(5) variance matches nu/(nu-2)") {
    const auto t5 = linproc::sample_noise(NoiseSpec::student_t(5.0), 500000, 4);
    CHECK(oracles::variance(t5) == doctest::Approx(5.0 / 3.0).epsilon(0.05));
}

TEST_CASE("noise specs validate their parameters") {
    CHECK_THROWS_AS(NoiseSpec::gaussian(0.0, 0.0), ConfigError);
    CHECK_THROWS_AS(NoiseSpec::student_t(-1.0), ConfigError);
    CHECK_THROWS_AS(NoiseSpec::laplace(0.0, -2.0), ConfigError);
}

TEST_CASE("sample_noise is deterministic in the seed") {
    const NoiseSpec spec = NoiseSpec::gaussian(0.0, 1.0);
    CHECK(linproc::sample_noise(spec, 1000, 7) == linproc::sample_noise(spec, 1000, 7));
    CHECK(linproc::sample_noise(spec, 1000, 7) != linproc::sample_noise(spec, 1000, 8));
}

TEST_CASE("farima_coefficients recursion and tail") {
    const auto b = linproc::farima_coefficients(0.3, 10000);
    CHECK(b[0] == 1.0);
    CHECK(b[1] == doctest::Approx(0.3));
    CHECK(b[2] == doctest::Approx(0.195));
    const double gamma_d = std::tgamma(0.3);
    for (int j : {1000, 10000}) {
        const double asymptotic = std::pow(j, 0.3 - 1.0) / gamma_d;
        CHECK(b[static_cast<std::size_t>(j)] / asymptotic == doctest::Approx(1.0).epsilon(0.05));
    }
    CHECK_THROWS_AS(linproc::farima_coefficients(0.6, 10), ConfigError);
    CHECK_THROWS_AS(linproc::farima_coefficients(0.0, 10), ConfigError);
}

TEST_CASE("ma(1) increments have the right lag-1 autocorrelation") {
    LinearProcessSpec spec{NoiseSpec::gaussian(0.0, 1.0), MaModel{{0.4}}, 1000};
    const auto x = linproc::simulate_increments(spec, 200000, 5).samples;
    CHECK(oracles::autocorrelation(x, 1) == doctest::Approx(0.4 / 1.16).epsilon(0.03));
    CHECK(std::abs(oracles::mean(x)) < 4.0 * std::sqrt(1.16 / 200000.0));
}

TEST_CASE("degenerate models reproduce the noise stream") {
    const NoiseSpec noise = NoiseSpec::gaussian(0.0, 1.0);
    LinearProcessSpec ar0{noise, ArModel{{}}, 100};
    const auto x = linproc::simulate_increments(ar0, 5000, 11).samples;
    const auto z = linproc::sample_noise(noise, 100 + 5000, 11);
    CHECK(std::equal(x.begin(), x.end(), z.begin() + 100));

    LinearProcessSpec ma0{noise, MaModel{{}}, 100};
    CHECK(linproc::simulate_increments(ma0, 5000, 11).samples == x);
}

TEST_CASE("ar(1) autocorrelation matches phi") {
    LinearProcessSpec spec{NoiseSpec::gaussian(0.0, 1.0), ArModel{{0.6}}, 1000};
    const auto x = linproc::simulate_increments(spec, 200000, 13).samples;
    CHECK(oracles::autocorrelation(x, 1) == doctest::Approx(0.6).epsilon(0.02));
}

TEST_CASE("farima autocorrelation decays like a power law") {
    LinearProcessSpec spec{NoiseSpec::gaussian(0.0, 1.0), FarimaModel{0.3, 10000}, 0};
    const auto x = linproc::simulate_increments(spec, 400000, 17).samples;
    // log acf vs log lag: slope should be near 2d - 1 = -0.4.
    std::vector<double> lags, acf;
    for (int lag : {8, 16, 32, 64, 128}) {
        lags.push_back(lag);
        acf.push_back(oracles::autocorrelation(x, static_cast<std::size_t>(lag)));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lags.size(); ++i) {
        const double lx = std::log(lags[i]);
        const double ly = std::log(acf[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(lags.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope == doctest::Approx(-0.4).epsilon(0.25));
}

TEST_CASE("model validation") {
    const LinearProcessSpec unit_root{NoiseSpec::gaussian(0, 1), ArModel{{1.0}}, 0};
    CHECK_THROWS_AS(unit_root.validate(), ConfigError);
    const LinearProcessSpec bad_d{NoiseSpec::gaussian(0, 1), FarimaModel{0.7, 100}, 0};
    CHECK_THROWS_AS(bad_d.validate(), ConfigError);
    const LinearProcessSpec negative_burn{NoiseSpec::gaussian(0, 1), MaModel{{0.4}}, -1};
    CHECK_THROWS_AS(negative_burn.validate(), ConfigError);
    const LinearProcessSpec ok{NoiseSpec::gaussian(0, 1), MaModel{{0.4}}, 0};
    CHECK_THROWS_AS(linproc::simulate_increments(ok, 0, 1), InvalidInputError);
}

TEST_CASE("break simulation continues state and noise") {
    const NoiseSpec noise = NoiseSpec::gaussian(0.0, 1.0);
    LinearProcessSpec pre{noise, ArModel{{0.4}}, 1000};
    LinearProcessSpec post{noise, ArModel{{0.8}}, 1000};

    SUBCASE("identical regimes reduce to simulate_increments") {
        BreakSpec same{pre, pre, 0.37};
        CHECK(linproc::simulate_with_break(same, 4000, 23).samples ==
              linproc::simulate_increments(pre, 4000, 23).samples);
    }

    SUBCASE("the head of the broken path equals the unbroken pre path") {
        BreakSpec spec{pre, post, 0.5};
        const auto broken = linproc::simulate_with_break(spec, 1000, 29).samples;
        const auto unbroken = linproc::simulate_increments(pre, 1000, 29).samples;
        CHECK(std::equal(broken.begin(), broken.begin() + 500, unbroken.begin()));
        CHECK(broken[500] != unbroken[500]);
    }

    SUBCASE("each half shows its own autocorrelation") {
        BreakSpec spec{pre, post, 0.5};
        const auto x = linproc::simulate_with_break(spec, 1000, 31).samples;
        const std::span<const double> head(x.data(), 500);
        const std::span<const double> tail(x.data() + 500, 500);
        CHECK(oracles::autocorrelation(head, 1) == doctest::Approx(0.4).epsilon(0.3));
        CHECK(oracles::autocorrelation(tail, 1) == doctest::Approx(0.8).epsilon(0.15));
    }

    SUBCASE("regime constraints") {
        LinearProcessSpec laplace_post{NoiseSpec::laplace(0, 1), ArModel{{0.8}}, 1000};
        const BreakSpec mixed_noise{pre, laplace_post, 0.5};
        CHECK_THROWS_AS(mixed_noise.validate(), ConfigError);
        LinearProcessSpec ma_post{noise, MaModel{{0.8}}, 1000};
        const BreakSpec mixed_model{pre, ma_post, 0.5};
        CHECK_THROWS_AS(mixed_model.validate(), ConfigError);
        const BreakSpec bad_fraction{pre, post, 1.5};
        CHECK_THROWS_AS(bad_fraction.validate(), ConfigError);
    }
}

TEST_CASE("ma break switches coefficients at floor(n tau)") {
    const NoiseSpec noise = NoiseSpec::gaussian(0.0, 1.0);
    LinearProcessSpec pre{noise, MaModel{{0.4}}, 1000};
    LinearProcessSpec post{noise, MaModel{{0.7}}, 1000};
    BreakSpec spec{pre, post, 0.5};
    const auto broken = linproc::simulate_with_break(spec, 1000, 37).samples;
    const auto pre_path = linproc::simulate_increments(pre, 1000, 37).samples;
    const auto post_path = linproc::simulate_increments(post, 1000, 37).samples;
    CHECK(std::equal(broken.begin(), broken.begin() + 500, pre_path.begin()));
    CHECK(std::equal(broken.begin() + 500, broken.end(), post_path.begin() + 500));
}

TEST_CASE("farima break paths share the warmup stream") {
    const NoiseSpec noise = NoiseSpec::gaussian(0.0, 1.0);
    LinearProcessSpec pre{noise, FarimaModel{0.2, 500}, 0};
    LinearProcessSpec post{noise, FarimaModel{0.4, 500}, 0};
    BreakSpec spec{pre, post, 0.25};
    const auto broken = linproc::simulate_with_break(spec, 400, 41).samples;
    const auto pre_path = linproc::simulate_increments(pre, 400, 41).samples;
    const auto post_path = linproc::simulate_increments(post, 400, 41).samples;
    CHECK(std::equal(broken.begin(), broken.begin() + 100, pre_path.begin()));
    CHECK(std::equal(broken.begin() + 100, broken.end(), post_path.begin() + 100));
}

TEST_CASE("integrate") {
    linproc::TimeSeries inc;
    inc.samples = {1.0, -1.0, 2.0};
    const auto xi = linproc::integrate(inc, 0.0);
    CHECK(xi.samples == std::vector<double>{0.0, 1.0, 0.0, 2.0});

    linproc::TimeSeries empty;
    CHECK(linproc::integrate(empty, 3.5).samples == std::vector<double>{3.5});

    rng::Engine engine(43);
    linproc::TimeSeries random;
    random.samples.resize(257);
    for (auto& v : random.samples) v = engine.normal();
    const auto integrated = linproc::integrate(random, engine.normal());
    REQUIRE(integrated.samples.size() == random.samples.size() + 1);
    for (std::size_t i = 0; i < random.samples.size(); ++i) {
        CHECK(integrated.samples[i + 1] - integrated.samples[i] ==
              doctest::Approx(random.samples[i]).epsilon(1e-12));
    }
}

TEST_CASE("theoretical_rho1") {
    CHECK(linproc::theoretical_rho1(MaModel{{0.4}}) == doctest::Approx(0.4 / 1.16));
    CHECK(linproc::theoretical_rho1(MaModel{{}}) == 0.0);
    CHECK(linproc::theoretical_rho1(ArModel{{0.4}}) == 0.4);
    CHECK(linproc::theoretical_rho1(FarimaModel{0.3, 10}) == doctest::Approx(0.3 / 0.7));
    CHECK_THROWS_AS(linproc::theoretical_rho1(ArModel{{0.4, 0.2}}), ConfigError);
}
