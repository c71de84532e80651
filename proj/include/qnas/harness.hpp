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

#ifndef QNAS_HARNESS_HPP
#define QNAS_HARNESS_HPP

#include <qnas/planner.hpp>
#include <qnas/telemetry.hpp>
#include <qnas/types.hpp>
#include <qnas/workload.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

/// Stepped MAPE harness: monitor, plan and apply a configuration once per window.
namespace qnas::sim {

enum class ArrivalSampling {
    Expected, ///< the monitor sees the true rates
    Poisson,  ///< the monitor counts Poisson arrivals over the observation window
};

struct ScenarioSpec {
    std::size_t classes = 1;
    std::size_t stations = 1;
    std::size_t horizon = 200;
    double window = 1.0;
    /// Defaults to `window` when unset.
    std::optional<double> observation_length;

    /// Explicit arrival law; otherwise workload::default_law with `default_law`.
    std::optional<workload::WorkloadLaw> workload;
    workload::DefaultLawParams default_law;

    /// Ground-truth unit-referenced demands; otherwise drawn by workload::gen_demands.
    std::optional<DemandMatrix> demands;

    /// Explicit thresholds; otherwise workload::default_thresholds(demands, sla_multiplier).
    std::optional<planner::SlaThresholds> sla;
    double sla_multiplier = 3.0;

    telemetry::NoiseMode noise_mode = telemetry::NoiseMode::None;
    double noise_relative_sd = 0.0;
    ArrivalSampling sampling = ArrivalSampling::Expected;

    /// Defaults to one instance per station.
    std::optional<Configuration> initial_config;
    std::uint64_t master_seed = 1;
    planner::PlannerOptions planner;
};

void validate(const ScenarioSpec& spec);

struct StepRecord {
    std::size_t step = 0; // one-based
    ArrivalRates rates;
    Configuration config_before;
    /// Configuration the monitor observed; lifted above the capacity floor when
    /// `config_before` was overloaded.
    Configuration observed_config;
    Configuration config_after;
    std::vector<double> predicted_response;
    std::vector<double> thresholds;
    std::size_t acquire_iterations = 0;
    std::size_t release_iterations = 0;
    bool planned = false;

    std::int64_t total_instances() const { return config_after.total(); }
};

struct RunSummary {
    std::size_t classes = 0;
    std::size_t stations = 0;
    std::size_t acquire_max = 0;
    double acquire_avg = 0.0;
    std::size_t release_max = 0;
    double release_avg = 0.0;
    std::int64_t instances_min = 0;
    std::int64_t instances_max = 0;
    std::int64_t instances_total = 0;
    /// horizon * max_t S_t
    std::int64_t static_total = 0;
    /// instances_total / static_total
    double ratio = 0.0;
};

struct RunRecord {
    DemandMatrix demands;
    planner::SlaThresholds thresholds;
    std::vector<StepRecord> steps;
    RunSummary summary;
};

RunSummary summarize(std::span<const StepRecord> steps, std::size_t classes, std::size_t stations);

/// Runs the full control loop. UnattainableSla is rethrown tagged with its step.
RunRecord run_scenario(const ScenarioSpec& spec);

} // namespace qnas::sim

#endif // QNAS_HARNESS_HPP
