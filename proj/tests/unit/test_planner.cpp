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

#include <doctest.h>
#include <oracles.hpp>

#include <algorithm>
#include <cmath>
#include <random>

using namespace qnas;
using planner::SlaThresholds;

namespace {

std::vector<std::int64_t> as_vector(const Configuration& n)
{
    return {n.counts().begin(), n.counts().end()};
}

/// True if no single instance can be removed without overload or a threshold breach.
bool pareto_certified(const BaselineSnapshot& base, const Configuration& n,
                      const SlaThresholds& sla)
{
    for (std::size_t k = 0; k < n.size(); ++k) {
        if (n[k] < 2) {
            continue;
        }
        auto neighbour = as_vector(n);
        --neighbour[k];
        const auto r = oracle::direct_response(base, neighbour);
        if (r && oracle::meets(*r, sla)) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("acquire on the fixture fixture")
{
    const auto fixture = oracle::bottleneck_fixture();

    SUBCASE("loose thresholds need only the capacity lift")
    {
        const auto result = planner::acquire(fixture, SlaThresholds{6.0, 5.0});
        CHECK(result.config == Configuration{2, 1, 2});
        CHECK(result.preconditioning_additions == 2);
        CHECK(result.iterations == 0);
        const auto r = qn::predict_response(fixture, result.config);
        CHECK(r.per_class[0] == doctest::Approx(5.0));
        CHECK(r.per_class[1] == doctest::Approx(4.0));
    }
    SUBCASE("tight class-1 threshold breaks the station tie low")
    {
        const auto result = planner::acquire(fixture, SlaThresholds{4.5, 5.0});
        CHECK(result.config == Configuration{3, 1, 2});
        CHECK(result.iterations == 1);
        CHECK(result.added_stations == std::vector<std::size_t>{0});
        const auto r = qn::predict_response(fixture, result.config);
        CHECK(r.per_class[0] == doctest::Approx(4.0));
        CHECK(r.per_class[1] == doctest::Approx(3.0));
    }
    SUBCASE("already feasible start is returned unchanged")
    {
        const auto base = qn::rescale_snapshot(fixture, Configuration{3, 2, 3});
        const auto result = planner::acquire(base, SlaThresholds{6.0, 5.0});
        CHECK(result.config == Configuration{3, 2, 3});
        CHECK(result.iterations == 0);
        CHECK(result.preconditioning_additions == 0);
    }
}

TEST_CASE("acquire rejects thresholds at or below the demand floor")
{
    const auto fixture = oracle::bottleneck_fixture();
    // class 1 floor is 4/3, class 2 floor is 1
    CHECK_THROWS_AS(planner::acquire(fixture, SlaThresholds{4.0 / 3.0, 5.0}), UnattainableSla);
    CHECK_THROWS_AS(planner::acquire(fixture, SlaThresholds{1.0, 5.0}), UnattainableSla);
    try {
        (void)planner::plan_step(fixture, SlaThresholds{6.0, 0.999});
        FAIL("expected UnattainableSla");
    } catch (const UnattainableSla& e) {
        CHECK(e.workflow_class() == 1);
        CHECK(e.floor() == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(planner::acquire(fixture, SlaThresholds{6.0}), UsageError);
    CHECK_THROWS_AS(SlaThresholds({6.0, 0.0}), UsageError);
}

TEST_CASE("acquire honours the iteration cap")
{
    const auto fixture = oracle::bottleneck_fixture();
    planner::PlannerOptions options;
    options.iteration_cap = 3;
    CHECK_THROWS_AS(planner::acquire(fixture, SlaThresholds{1.34, 1.01}, options), IterationCap);
}

TEST_CASE("release on the fixture fixture")
{
    const auto fixture = oracle::bottleneck_fixture();

    SUBCASE("over-provisioned start shrinks to the optimum")
    {
        const auto base = qn::rescale_snapshot(fixture, Configuration{3, 2, 3});
        const auto result = planner::release(base, SlaThresholds{6.0, 5.0});
        CHECK(result.config == Configuration{2, 1, 2});
        CHECK(result.iterations == 3);
        CHECK(result.removed_stations == std::vector<std::size_t>{1, 0, 2});
    }
    SUBCASE("a removal that breaks class 1 is refused")
    {
        const auto base = qn::rescale_snapshot(fixture, Configuration{3, 1, 2});
        const auto result = planner::release(base, SlaThresholds{4.5, 5.0});
        CHECK(result.config == Configuration{3, 1, 2});
        CHECK(result.iterations == 0);
        CHECK(result.evaluations == 1);
    }
    SUBCASE("empty candidate set")
    {
        const auto base = qn::rescale_snapshot(fixture, Configuration{2, 1, 2});
        const auto result = planner::release(base, SlaThresholds{6.0, 5.0});
        CHECK(result.config == Configuration{2, 1, 2});
        CHECK(result.iterations == 0);
        CHECK(result.evaluations == 0);
    }
}

TEST_CASE("plan_step on the fixture fixture")
{
    const auto fixture = oracle::bottleneck_fixture();
    const auto loose = planner::plan_step(fixture, SlaThresholds{6.0, 5.0});
    CHECK(loose.new_config == Configuration{2, 1, 2});
    CHECK(loose.feasible);
    CHECK(loose.predicted_response.per_class[0] == doctest::Approx(5.0));
    CHECK(loose.predicted_response.per_class[1] == doctest::Approx(4.0));

    const auto tight = planner::plan_step(fixture, SlaThresholds{4.5, 5.0});
    CHECK(tight.new_config == Configuration{3, 1, 2});
    CHECK(tight.acquire_iterations == 1);
    CHECK(tight.release_iterations == 0);

    // fixed point: planning again from the planned configuration changes nothing
    const auto again =
        planner::plan_step(qn::rescale_snapshot(fixture, loose.new_config), SlaThresholds{6.0, 5.0});
    CHECK(again.new_config == loose.new_config);
    CHECK(again.acquire_iterations == 0);
    CHECK(again.release_iterations == 0);

    const auto optimum = oracle::brute_force(fixture, SlaThresholds{6.0, 5.0}, {6, 6, 6});
    CHECK(optimum.best_total == 5);
    REQUIRE(optimum.optima.size() == 1);
    CHECK(optimum.optima.front() == std::vector<std::int64_t>{2, 1, 2});
}

TEST_CASE("property: acquire output meets every threshold")
{
    std::mt19937_64 rng(101);
    for (int i = 0; i < 600; ++i) {
        const std::size_t classes = 1 + i % 5;
        const std::size_t stations = 1 + (i / 5) % 10;
        const auto base = oracle::random_snapshot(rng, classes, stations);
        const auto sla = oracle::random_sla(rng, base);
        const auto result = planner::acquire(base, sla);
        CHECK(base.ref_config().dominated_by(result.config));
        const auto r = oracle::direct_response(base, as_vector(result.config));
        REQUIRE(r.has_value());
        CHECK(oracle::meets(*r, sla));
    }
}

TEST_CASE("property: each greedy addition follows the steepest direction")
{
    std::mt19937_64 rng(103);
    std::size_t steps = 0;
    for (int i = 0; i < 200; ++i) {
        const auto base = oracle::random_snapshot(rng, 1 + i % 4, 2 + i % 8);
        const auto sla = oracle::random_sla(rng, base, 1.05, 1.6);
        const auto result = planner::acquire(base, sla);

        auto n = as_vector(componentwise_max(base.ref_config(), qn::min_feasible_config(base)));
        for (const std::size_t added : result.added_stations) {
            const auto r = *oracle::direct_response(base, n);
            std::size_t worst = 0;
            for (std::size_t c = 1; c < r.size(); ++c) {
                if ((r[c] - sla[c]) / sla[c] > (r[worst] - sla[worst]) / sla[worst]) {
                    worst = c;
                }
            }
            double best = -1.0;
            std::vector<double> reduction(n.size());
            for (std::size_t k = 0; k < n.size(); ++k) {
                auto next = n;
                ++next[k];
                reduction[k] = r[worst] - (*oracle::direct_response(base, next))[worst];
                best = std::max(best, reduction[k]);
            }
            // the two evaluation routes round differently, so accept near-ties
            CHECK(reduction[added] >= best - 1e-9 * std::max(1.0, best));
            ++n[added];
            ++steps;
        }
        CHECK(n == as_vector(result.config));
    }
    CHECK(steps > 200);
}

TEST_CASE("property: release output is Pareto-optimal and still feasible")
{
    std::mt19937_64 rng(107);
    std::uniform_int_distribution<std::int64_t> slack(0, 4);
    for (int i = 0; i < 500; ++i) {
        const auto base = oracle::random_snapshot(rng, 1 + i % 5, 1 + (i / 5) % 10);
        const auto sla = oracle::random_sla(rng, base);
        // start from an over-provisioned feasible point
        auto start = as_vector(planner::acquire(base, sla).config);
        for (auto& v : start) {
            v += slack(rng);
        }
        const auto at_start = qn::rescale_snapshot(base, Configuration(start));
        const auto result = planner::release(at_start, sla);
        CHECK(result.config.dominated_by(Configuration(start)));
        const auto r = oracle::direct_response(at_start, as_vector(result.config));
        REQUIRE(r.has_value());
        CHECK(oracle::meets(*r, sla));
        CHECK(pareto_certified(at_start, result.config, sla));
        CHECK(result.iterations ==
              static_cast<std::size_t>(Configuration(start).total() - result.config.total()));
        CHECK(result.iterations <= static_cast<std::size_t>(
                                       Configuration(start).total() -
                                       static_cast<std::int64_t>(start.size())));
    }
}

TEST_CASE("property: plan_step never violates a threshold under the model")
{
    std::mt19937_64 rng(109);
    for (int i = 0; i < 300; ++i) {
        const auto base = oracle::random_snapshot(rng, 1 + i % 5, 1 + i % 10);
        const auto sla = oracle::random_sla(rng, base);
        const auto outcome = planner::plan_step(base, sla);
        CHECK(outcome.feasible);
        for (std::size_t c = 0; c < base.classes(); ++c) {
            CHECK(outcome.predicted_response.per_class[c] <= sla[c]);
        }
    }
}

TEST_CASE("property: greedy total stays within 1.3x of the exhaustive optimum")
{
    std::mt19937_64 rng(113);
    int compared = 0;
    double worst = 1.0;
    for (int attempt = 0; attempt < 400 && compared < 120; ++attempt) {
        const std::size_t classes = 1 + attempt % 3;
        const std::size_t stations = 1 + (attempt / 3) % 4;
        const auto base = oracle::random_snapshot(rng, classes, stations, 2.5, 2);
        const auto sla = oracle::random_sla(rng, base, 1.15, 2.5);
        const auto outcome = planner::plan_step(base, sla);

        // any optimum has total <= greedy total, which bounds each coordinate
        const std::int64_t greedy = outcome.new_config.total();
        const std::int64_t cap = greedy - static_cast<std::int64_t>(stations) + 1;
        double space = 1.0;
        for (std::size_t k = 0; k < stations; ++k) {
            space *= static_cast<double>(cap);
        }
        if (space > 1e5) {
            continue;
        }
        const auto best = oracle::brute_force(base, sla, std::vector<std::int64_t>(stations, cap));
        REQUIRE(best.best_total <= greedy);
        const double ratio = static_cast<double>(greedy) / static_cast<double>(best.best_total);
        worst = std::max(worst, ratio);
        CHECK(ratio <= 1.3);
        ++compared;
    }
    CHECK(compared >= 100);
    MESSAGE("worst greedy/optimum ratio " << worst << " over " << compared << " instances");
}

TEST_CASE("property: planning is deterministic")
{
    std::mt19937_64 rng(127);
    for (int i = 0; i < 50; ++i) {
        const auto base = oracle::random_snapshot(rng, 3, 6);
        const auto sla = oracle::random_sla(rng, base);
        const auto a = planner::acquire(base, sla);
        const auto b = planner::acquire(base, sla);
        CHECK(a.config == b.config);
        CHECK(a.added_stations == b.added_stations);
        const auto pa = planner::plan_step(base, sla);
        const auto pb = planner::plan_step(base, sla);
        CHECK(pa.new_config == pb.new_config);
        CHECK(pa.release_iterations == pb.release_iterations);
    }
}
