/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

#include <qnas/errors.hpp>
#include <qnas/planner.hpp>
#include <qnas/qn_model.hpp>
#include <qnas/workload.hpp>

#include <doctest.h>
#include <oracles.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace qnas;

TEST_CASE("generated demands respect the per-class bound")
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto d = workload::gen_demands({5, 10, seed});
        CHECK(d.classes() == 5);
        CHECK(d.stations() == 10);
        for (std::size_t c = 0; c < 5; ++c) {
            const double bound = static_cast<double>(c + 1) / 5.0;
            for (const double v : d.row(c)) {
                CHECK(v >= 0.0);
                CHECK(v <= bound);
            }
        }
        const auto row0 = d.row(0);
        CHECK(*std::max_element(row0.begin(), row0.end()) <= 0.2);
    }
    const auto single = workload::gen_demands({1, 7, 3});
    for (const double v : single.values().data()) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    CHECK(workload::gen_demands({4, 6, 99}) == workload::gen_demands({4, 6, 99}));
    CHECK_FALSE(workload::gen_demands({4, 6, 99}) == workload::gen_demands({4, 6, 100}));
    CHECK_THROWS_AS(workload::gen_demands({0, 6, 1}), UsageError);
}

TEST_CASE("degenerate laws give constant and exact sinusoidal series")
{
    workload::WorkloadLaw flat{{{1.5, 0.0, 10.0, 0.0, 0.0, 0.0}, {0.25, 0.0, 3.0, 1.0, 0.0, 0.5}}};
    const auto constant = workload::gen_arrival_series(flat, 50, 4);
    REQUIRE(constant.size() == 50);
    for (const auto& step : constant) {
        CHECK(step[0] == 1.5);
        CHECK(step[1] == 0.25);
    }

    constexpr double base = 2.0;
    constexpr double amplitude = 0.6;
    constexpr double period = 20.0;
    workload::WorkloadLaw wave{{{base, amplitude, period, 0.3, 0.0, 0.0}}};
    const auto series = workload::gen_arrival_series(wave, 200, 4);
    double lo = 1e9;
    double hi = -1e9;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double t = static_cast<double>(i + 1);
        const double expected =
            base * (1.0 + amplitude * std::sin(2.0 * std::numbers::pi * t / period + 0.3));
        CHECK(series[i][0] == doctest::Approx(expected).epsilon(1e-12));
        lo = std::min(lo, series[i][0]);
        hi = std::max(hi, series[i][0]);
    }
    CHECK(lo >= base * (1.0 - amplitude) - 1e-12);
    CHECK(hi <= base * (1.0 + amplitude) + 1e-12);
    CHECK(lo == doctest::Approx(base * (1.0 - amplitude)).epsilon(0.01));
    CHECK(hi == doctest::Approx(base * (1.0 + amplitude)).epsilon(0.01));
}

TEST_CASE("law validation")
{
    CHECK_THROWS_AS(workload::validate({{{1.0, 1.0, 10.0, 0.0, 0.0, 0.0}}}), UsageError);
    CHECK_THROWS_AS(workload::validate({{{-1.0, 0.0, 10.0, 0.0, 0.0, 0.0}}}), UsageError);
    CHECK_THROWS_AS(workload::validate({{{1.0, 0.0, 0.0, 0.0, 0.0, 0.0}}}), UsageError);
    CHECK_THROWS_AS(workload::validate({{{1.0, 0.0, 5.0, 0.0, 0.1, 1.0}}}), UsageError);
    CHECK_THROWS_AS(workload::gen_arrival_series(workload::default_law(2, 10, 1), 0, 1),
                    UsageError);
}

TEST_CASE("default law periods are distinct divisors of the horizon")
{
    const auto law = workload::default_law(5, 200, 8);
    REQUIRE(law.classes.size() == 5);
    for (std::size_t c = 0; c < 5; ++c) {
        CHECK(law.classes[c].period == doctest::Approx(200.0 / static_cast<double>(c + 2)));
        CHECK(law.classes[c].phase >= 0.0);
        CHECK(law.classes[c].phase < 2.0 * std::numbers::pi);
    }
}

TEST_CASE("property: each class's periodogram peaks at its own frequency")
{
    constexpr std::size_t horizon = 200;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto law = workload::default_law(5, horizon, seed);
        const auto series = workload::gen_arrival_series(law, horizon, seed + 1000);
        for (std::size_t c = 0; c < 5; ++c) {
            std::vector<double> x(horizon);
            for (std::size_t t = 0; t < horizon; ++t) {
                x[t] = series[t][c];
            }
            const auto power = oracle::periodogram(x);
            const auto peak = static_cast<std::size_t>(
                std::max_element(power.begin() + 1, power.end()) - power.begin());
            // period horizon / (c + 2) for 0-based c completes c + 2 cycles
            CHECK(peak == c + 2);
        }
    }
}

TEST_CASE("property: rates are nonnegative and reproducible")
{
    workload::DefaultLawParams wild;
    wild.amplitude = 0.95;
    wild.perturbation_sd = 1.5;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto law = workload::default_law(4, 120, seed, wild);
        const auto a = workload::gen_arrival_series(law, 120, seed);
        const auto b = workload::gen_arrival_series(law, 120, seed);
        CHECK(a == b);
        for (const auto& step : a) {
            for (const double v : step.values()) {
                CHECK(v >= 0.0);
            }
        }
    }
}

TEST_CASE("perturbation source is pluggable")
{
    struct Fixed final : workload::PerturbationSource {
        std::vector<double> generate(const workload::ClassLaw&, std::size_t horizon,
                                     std::mt19937_64&) const override
        {
            return std::vector<double>(horizon, 0.5);
        }
    };
    workload::WorkloadLaw law{{{2.0, 0.0, 10.0, 0.0, 0.0, 0.0}}};
    for (const auto& step : workload::gen_arrival_series(law, 5, 1, Fixed{})) {
        CHECK(step[0] == doctest::Approx(3.0));
    }
}

TEST_CASE("AR(1) perturbation has the requested stationary spread")
{
    workload::ClassLaw cl;
    cl.perturbation_sd = 0.1;
    cl.perturbation_persistence = 0.8;
    std::mt19937_64 rng(5);
    const auto eps = workload::Ar1Perturbation{}.generate(cl, 200000, rng);
    double mean = 0.0;
    for (const double v : eps) {
        mean += v;
    }
    mean /= static_cast<double>(eps.size());
    double var = 0.0;
    double lag = 0.0;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        var += (eps[i] - mean) * (eps[i] - mean);
        if (i > 0) {
            lag += (eps[i] - mean) * (eps[i - 1] - mean);
        }
    }
    CHECK(std::sqrt(var / static_cast<double>(eps.size())) == doctest::Approx(0.1).epsilon(0.03));
    CHECK(lag / var == doctest::Approx(0.8).epsilon(0.02));
}

TEST_CASE("default_thresholds")
{
    CHECK(workload::default_thresholds(DemandMatrix{{0.5, 1.5}}, 3.0)[0] == doctest::Approx(6.0));
    const auto fixture = oracle::bottleneck_fixture();
    const auto sla = workload::default_thresholds(fixture.demands_ref(), 3.0);
    CHECK(sla[0] == doctest::Approx(4.0));
    CHECK(sla[1] == doctest::Approx(3.0));
    CHECK_THROWS_AS(workload::default_thresholds(fixture.demands_ref(), 1.0), UsageError);
}

TEST_CASE("property: default thresholds are always attainable")
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto d = workload::gen_demands({1 + seed % 5, 1 + seed % 10, seed});
        const auto base = BaselineSnapshot::from_demands(
            Configuration::ones(d.stations()), ArrivalRates(std::vector<double>(d.classes(), 1.0)),
            d);
        for (const double multiplier : {1.01, 1.5, 3.0}) {
            CHECK_NOTHROW(planner::check_attainable(base, workload::default_thresholds(d, multiplier)));
        }
    }
}

TEST_CASE("acquire succeeds just above the attainability boundary")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto d = workload::gen_demands({5, 10, seed});
        const auto base = BaselineSnapshot::from_demands(
            Configuration::ones(10), ArrivalRates{1.0, 0.5, 1.5, 0.8, 1.2}, d);
        const auto sla = workload::default_thresholds(d, 1.01);
        const auto result = planner::acquire(base, sla);
        const auto r = qn::predict_response(base, result.config).per_class;
        for (std::size_t c = 0; c < 5; ++c) {
            CHECK(r[c] <= sla[c]);
        }
        CHECK(result.config.total() > 100);
    }
}
