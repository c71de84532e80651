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
#include <qnas/harness.hpp>
#include <qnas/qn_model.hpp>
#include <qnas/seeds.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qnas::sim {

void validate(const ScenarioSpec& spec)
{
    if (spec.classes < 1 || spec.stations < 1) {
        throw UsageError("scenario needs at least one class and one station");
    }
    if (spec.horizon < 1) {
        throw UsageError("scenario horizon must be at least one step");
    }
    if (!(spec.window > 0.0) || !std::isfinite(spec.window)) {
        throw UsageError("scenario window must be positive");
    }
    if (spec.observation_length && !(*spec.observation_length > 0.0)) {
        throw UsageError("observation length must be positive");
    }
    if (spec.workload) {
        if (spec.workload->classes.size() != spec.classes) {
            throw UsageError("workload law has the wrong number of classes");
        }
        workload::validate(*spec.workload);
    }
    if (spec.demands &&
        (spec.demands->classes() != spec.classes || spec.demands->stations() != spec.stations)) {
        throw UsageError("demand matrix does not match C x K");
    }
    if (spec.sla) {
        if (spec.sla->size() != spec.classes) {
            throw UsageError("SLA thresholds do not match the number of classes");
        }
    } else if (!(spec.sla_multiplier > 1.0)) {
        throw UsageError("SLA multiplier must be greater than one");
    }
    if (!(spec.noise_relative_sd >= 0.0) || !std::isfinite(spec.noise_relative_sd)) {
        throw UsageError("noise relative_sd must be finite and nonnegative");
    }
    if (spec.initial_config && spec.initial_config->size() != spec.stations) {
        throw UsageError("initial configuration does not match the number of stations");
    }
}

RunSummary summarize(std::span<const StepRecord> steps, std::size_t classes, std::size_t stations)
{
    RunSummary s;
    s.classes = classes;
    s.stations = stations;
    if (steps.empty()) {
        return s;
    }
    std::size_t acquire_sum = 0;
    std::size_t release_sum = 0;
    s.instances_min = std::numeric_limits<std::int64_t>::max();
    for (const StepRecord& r : steps) {
        s.acquire_max = std::max(s.acquire_max, r.acquire_iterations);
        s.release_max = std::max(s.release_max, r.release_iterations);
        acquire_sum += r.acquire_iterations;
        release_sum += r.release_iterations;
        const std::int64_t total = r.total_instances();
        s.instances_min = std::min(s.instances_min, total);
        s.instances_max = std::max(s.instances_max, total);
        s.instances_total += total;
    }
    const auto n = static_cast<double>(steps.size());
    s.acquire_avg = static_cast<double>(acquire_sum) / n;
    s.release_avg = static_cast<double>(release_sum) / n;
    s.static_total = static_cast<std::int64_t>(steps.size()) * s.instances_max;
    s.ratio = static_cast<double>(s.instances_total) / static_cast<double>(s.static_total);
    return s;
}

namespace {

bool overloaded_at(const BaselineSnapshot& unit_truth, const Configuration& config)
{
    const std::vector<double> floor = qn::capacity_floor(unit_truth);
    for (std::size_t k = 0; k < floor.size(); ++k) {
        if (floor[k] > 0.0 && !(static_cast<double>(config[k]) > floor[k])) {
            return true;
        }
    }
    return false;
}

} // namespace

RunRecord run_scenario(const ScenarioSpec& spec)
{
    validate(spec);
    const std::uint64_t master = spec.master_seed;

    DemandMatrix demands = spec.demands
                               ? *spec.demands
                               : workload::gen_demands({spec.classes, spec.stations,
                                                        derive_seed(master, "demands")});
    planner::SlaThresholds sla = spec.sla ? *spec.sla
                                          : workload::default_thresholds(demands, spec.sla_multiplier);
    const workload::WorkloadLaw law =
        spec.workload ? *spec.workload
                      : workload::default_law(spec.classes, spec.horizon,
                                              derive_seed(master, "workload-law"), spec.default_law);
    const std::vector<ArrivalRates> series =
        workload::gen_arrival_series(law, spec.horizon, derive_seed(master, "workload"));
    const double observation_length = spec.observation_length.value_or(spec.window);
    const Configuration unit = Configuration::ones(spec.stations);

    RunRecord run{demands, sla, {}, {}};
    run.steps.reserve(spec.horizon);
    Configuration current = spec.initial_config.value_or(unit);

    for (std::size_t i = 0; i < spec.horizon; ++i) {
        const std::size_t step = i + 1;
        const ArrivalRates& rates = series[i];

        StepRecord rec;
        rec.step = step;
        rec.rates = rates;
        rec.config_before = current;
        rec.thresholds.assign(sla.values().begin(), sla.values().end());

        const BaselineSnapshot unit_truth = BaselineSnapshot::from_demands(unit, rates, demands);
        rec.observed_config = overloaded_at(unit_truth, current)
                                  ? componentwise_max(current, qn::min_feasible_config(unit_truth))
                                  : current;

        const telemetry::NoiseSpec noise{spec.noise_mode, spec.noise_relative_sd,
                                         derive_seed(master, "noise", step)};
        BaselineSnapshot snapshot = telemetry::observe(rates, demands, rec.observed_config, noise);
        if (spec.sampling == ArrivalSampling::Poisson) {
            std::mt19937_64 rng(derive_seed(master, "arrivals", step));
            const ArrivalRates measured =
                telemetry::measure_rates(telemetry::sample_window(rates, observation_length, rng));
            snapshot = BaselineSnapshot::from_demands(rec.observed_config, measured,
                                                      snapshot.demands_ref());
        }

        planner::PlanOutcome outcome;
        try {
            outcome = planner::plan_step(snapshot, sla, spec.planner);
        } catch (const UnattainableSla& e) {
            throw UnattainableSla(e, step);
        }

        rec.config_after = outcome.new_config;
        rec.predicted_response = outcome.predicted_response.per_class;
        rec.acquire_iterations = outcome.acquire_iterations;
        rec.release_iterations = outcome.release_iterations;
        rec.planned = outcome.feasible;
        current = outcome.new_config;
        run.steps.push_back(std::move(rec));
    }

    run.summary = summarize(run.steps, spec.classes, spec.stations);
    return run;
}

} // namespace qnas::sim
