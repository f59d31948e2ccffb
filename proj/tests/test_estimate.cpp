#include <doctest.h>

#include <cmath>

#include "support/oracles.hpp"
#include "turncp/estimate.hpp"
#include "turncp/rng.hpp"

using namespace turncp;
using ordpat::Pattern;

TEST_CASE("turning_rate basics") {
    CHECK(estimate::turning_rate(std::vector<double>{1, 2, 3, 4, 5}) == 0.0);
    CHECK(estimate::turning_rate(std::vector<double>{0, 1, 0, 1, 0}) == 1.0);
    CHECK_THROWS_AS(estimate::turning_rate(std::vector<double>{1, 2}), InvalidInputError);

    rng::Engine engine(3);
    std::vector<double> iid(200000);
    for (auto& v : iid) v = engine.normal();
    CHECK(estimate::turning_rate(iid) == doctest::Approx(2.0 / 3.0).epsilon(0.01));
}

TEST_CASE("turning_rate equals the summed turning-pattern frequencies") {
    rng::Engine engine(5);
    std::vector<double> epoch(64);
    for (auto& v : epoch) v = engine.normal();
    const auto freq = estimate::pattern_frequencies(epoch, 2);
    double turning_sum = 0.0;
    for (const auto& gamma : estimate::turning_patterns()) {
        const auto it = freq.find(gamma);
        if (it != freq.end()) turning_sum += it->second;
    }
    CHECK(estimate::turning_rate(epoch) == doctest::Approx(turning_sum).epsilon(1e-12));

    // Monotone complement.
    double monotone = 0.0;
    for (const auto& ranks : {std::vector<int>{0, 1, 2}, {2, 1, 0}}) {
        const auto it = freq.find(Pattern(ranks));
        if (it != freq.end()) monotone += it->second;
    }
    CHECK(monotone + turning_sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("turning_rate via the matrix characterization") {
    rng::Engine engine(7);
    std::vector<double> series(500);
    for (auto& v : series) v = engine.normal();
    std::vector<ordpat::PatternMatrix> matrices;
    for (const auto& gamma : estimate::turning_patterns())
        matrices.push_back(ordpat::pattern_matrix(gamma));
    std::size_t hits = 0;
    for (std::size_t t = 0; t + 2 < series.size(); ++t) {
        const double increments[2] = {series[t + 1] - series[t], series[t + 2] - series[t + 1]};
        for (const auto& m : matrices)
            hits += m.matches(std::span<const double>(increments, 2)) ? 1 : 0;
    }
    const double via_matrix = static_cast<double>(hits) / static_cast<double>(series.size() - 2);
    CHECK(estimate::turning_rate(series) == doctest::Approx(via_matrix).epsilon(1e-12));
}

TEST_CASE("turning_rate is scale and shift invariant") {
    rng::Engine engine(9);
    std::vector<double> series(300);
    for (auto& v : series) v = engine.normal();
    std::vector<double> mapped(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) mapped[i] = 2.5 * series[i] - 7.0;
    CHECK(estimate::turning_rate(mapped) == estimate::turning_rate(series));
}

TEST_CASE("turning_rate_series block geometry") {
    std::vector<double> ten(10);
    for (std::size_t i = 0; i < ten.size(); ++i) ten[i] = static_cast<double>(i % 3);
    const auto trs = estimate::turning_rate_series(ten, 3);
    CHECK(trs.n_b() == 2);
    CHECK(trs.block_m == 3);
    CHECK(trs.source_length == 10);

    std::vector<double> ramp(100);
    for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = static_cast<double>(i);
    const auto flat = estimate::turning_rate_series(ramp, 8);
    CHECK(flat.n_b() == 10);
    for (double v : flat.values) CHECK(v == 0.0);

    CHECK_THROWS_AS(estimate::turning_rate_series(ten, 0), InvalidInputError);
    CHECK_THROWS_AS(estimate::turning_rate_series(std::vector<double>{1, 2, 3}, 3),
                    InvalidInputError);
}

TEST_CASE("random-walk blocks have turning rate near 1/2") {
    rng::Engine engine(13);
    std::vector<double> walk(60012, 0.0);  // six blocks of 10002
    for (std::size_t i = 1; i < walk.size(); ++i) walk[i] = walk[i - 1] + engine.normal();
    const auto trs = estimate::turning_rate_series(walk, 10000);
    REQUIRE(trs.n_b() == 6);
    for (double v : trs.values) CHECK(v == doctest::Approx(0.5).epsilon(0.06));
}

TEST_CASE("block values are multiples of 1/m in [0,1]") {
    rng::Engine engine(15);
    std::vector<double> series(1000);
    for (auto& v : series) v = engine.normal();
    const auto trs = estimate::turning_rate_series(series, 7);
    for (double v : trs.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        const double scaled = v * 7.0;
        CHECK(scaled == doctest::Approx(std::round(scaled)).epsilon(1e-12));
    }
}

TEST_CASE("permutation_entropy") {
    CHECK(estimate::permutation_entropy(2.0 / 3.0) == doctest::Approx(std::log(6.0)));
    CHECK(estimate::permutation_entropy(0.0) == doctest::Approx(std::log(2.0)));
    CHECK(estimate::permutation_entropy(1.0) == doctest::Approx(std::log(4.0)));
    CHECK_THROWS_AS(estimate::permutation_entropy(-0.1), InvalidInputError);
    CHECK_THROWS_AS(estimate::permutation_entropy(1.1), InvalidInputError);

    // Concave on a grid with the maximum at q = 2/3.
    double prev_diff = std::numeric_limits<double>::infinity();
    for (int i = 1; i < 100; ++i) {
        const double q0 = (i - 1) / 100.0;
        const double q1 = i / 100.0;
        const double diff = estimate::permutation_entropy(q1) - estimate::permutation_entropy(q0);
        CHECK(diff < prev_diff);
        prev_diff = diff;
        CHECK(estimate::permutation_entropy(q1) <= std::log(6.0) + 1e-12);
    }
}

TEST_CASE("plug_in_long_run_variance") {
    CHECK(estimate::plug_in_long_run_variance(std::vector<double>(50, 3.0), 5) == 0.0);

    rng::Engine engine(17);
    std::vector<double> white(200000);
    for (auto& v : white) v = engine.normal();
    const double lrv = estimate::plug_in_long_run_variance(white, 3);
    CHECK(lrv == doctest::Approx(oracles::variance(white)).epsilon(0.02));

    CHECK_THROWS_AS(estimate::plug_in_long_run_variance(std::vector<double>{1.0}, 3),
                    InvalidInputError);
    CHECK_THROWS_AS(estimate::plug_in_long_run_variance(std::vector<double>{1.0, 2.0}, -1),
                    InvalidInputError);
}

TEST_CASE("turning indicator long-run variance approaches 8/45") {
    // Exact enumeration over permutations: P(window at t and t+lag both turn)
    // for exchangeable data needs only the relative order of the lag+3
    // values involved.
    auto joint_turn_probability = [](int lag) {
        std::vector<double> values(static_cast<std::size_t>(lag) + 3);
        for (std::size_t i = 0; i < values.size(); ++i) values[i] = static_cast<double>(i + 1);
        long long both = 0, total = 0;
        std::sort(values.begin(), values.end());
        do {
            const bool first = ordpat::is_turning(values[0], values[1], values[2]);
            const bool second =
                ordpat::is_turning(values[static_cast<std::size_t>(lag)],
                                   values[static_cast<std::size_t>(lag) + 1],
                                   values[static_cast<std::size_t>(lag) + 2]);
            both += (first && second) ? 1 : 0;
            ++total;
        } while (std::next_permutation(values.begin(), values.end()));
        return static_cast<double>(both) / static_cast<double>(total);
    };
    const double q = 2.0 / 3.0;
    const double enumerated =
        q * (1.0 - q) + 2.0 * (joint_turn_probability(1) - q * q) +
        2.0 * (joint_turn_probability(2) - q * q);
    CHECK(enumerated == doctest::Approx(8.0 / 45.0).epsilon(1e-12));

    rng::Engine engine(19);
    std::vector<double> series(300000);
    for (auto& v : series) v = engine.normal();
    const auto indicators = estimate::turning_indicators(series);
    const double lrv = estimate::plug_in_long_run_variance(indicators, 2);
    CHECK(lrv == doctest::Approx(enumerated).epsilon(0.05));
}

TEST_CASE("spectral_centroid_check") {
    SUBCASE("perfectly alternating series") {
        std::vector<double> alt(101);
        for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = (i % 2 == 0) ? 0.0 : 1.0;
        const auto c = estimate::spectral_centroid_check(alt);
        CHECK(c.mean_q == 1.0);
        CHECK(c.cos_pi_q == doctest::Approx(-1.0));
        CHECK(c.rho1 == doctest::Approx(-1.0).epsilon(0.01));
    }

    SUBCASE("iid gaussian series") {
        rng::Engine engine(21);
        std::vector<double> series(200000);
        for (auto& v : series) v = engine.normal();
        const auto c = estimate::spectral_centroid_check(series);
        CHECK(c.mean_q == doctest::Approx(2.0 / 3.0).epsilon(0.01));
        CHECK(c.cos_pi_q == doctest::Approx(-0.5).epsilon(0.03));
        CHECK(c.rho1 == doctest::Approx(-0.5).epsilon(0.03));
    }

    CHECK_THROWS_AS(estimate::spectral_centroid_check(std::vector<double>{1, 2}),
                    InvalidInputError);
}
