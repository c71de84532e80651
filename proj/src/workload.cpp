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
#include <qnas/workload.hpp>

#include <cmath>
#include <numbers>
#include <string>

namespace qnas::workload {

WorkloadLaw default_law(std::size_t classes, std::size_t horizon, std::uint64_t seed,
                        const DefaultLawParams& params)
{
    if (horizon < 1) {
        throw UsageError("horizon must be at least one step");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    WorkloadLaw law;
    law.classes.reserve(classes);
    for (std::size_t c = 1; c <= classes; ++c) {
        ClassLaw cl;
        cl.base_rate = params.base_rate;
        cl.amplitude = params.amplitude;
        cl.period = static_cast<double>(horizon) / static_cast<double>(c + 1);
        cl.phase = phase(rng);
        cl.perturbation_sd = params.perturbation_sd;
        cl.perturbation_persistence = params.perturbation_persistence;
        law.classes.push_back(cl);
    }
    validate(law);
    return law;
}

void validate(const WorkloadLaw& law)
{
    for (std::size_t c = 0; c < law.classes.size(); ++c) {
        const ClassLaw& cl = law.classes[c];
        const std::string where = "workload class " + std::to_string(c + 1) + ": ";
        if (!(cl.base_rate >= 0.0) || !std::isfinite(cl.base_rate)) {
            throw UsageError(where + "base_rate must be finite and nonnegative");
        }
        if (!(cl.amplitude >= 0.0 && cl.amplitude < 1.0)) {
            throw UsageError(where + "amplitude must lie in [0, 1)");
        }
        if (!(cl.period > 0.0) || !std::isfinite(cl.period)) {
            throw UsageError(where + "period must be positive");
        }
        if (!std::isfinite(cl.phase)) {
            throw UsageError(where + "phase must be finite");
        }
        if (!(cl.perturbation_sd >= 0.0) || !std::isfinite(cl.perturbation_sd)) {
            throw UsageError(where + "perturbation_sd must be finite and nonnegative");
        }
        if (!(cl.perturbation_persistence >= 0.0 && cl.perturbation_persistence < 1.0)) {
            throw UsageError(where + "perturbation_persistence must lie in [0, 1)");
        }
    }
}

std::vector<double> Ar1Perturbation::generate(const ClassLaw& law, std::size_t horizon,
                                              std::mt19937_64& rng) const
{
    std::vector<double> eps(horizon, 0.0);
    if (law.perturbation_sd == 0.0 || horizon == 0) {
        return eps;
    }
    const double rho = law.perturbation_persistence;
    std::normal_distribution<double> stationary(0.0, law.perturbation_sd);
    std::normal_distribution<double> innovation(0.0,
                                                law.perturbation_sd * std::sqrt(1.0 - rho * rho));
    eps[0] = stationary(rng);
    for (std::size_t t = 1; t < horizon; ++t) {
        eps[t] = rho * eps[t - 1] + innovation(rng);
    }
    return eps;
}

DemandMatrix gen_demands(const DemandLaw& law)
{
    if (law.classes < 1 || law.stations < 1) {
        throw UsageError("demand law needs at least one class and one station");
    }
    std::mt19937_64 rng(law.seed);
    Matrix d(law.classes, law.stations);
    const double classes = static_cast<double>(law.classes);
    for (std::size_t c = 0; c < law.classes; ++c) {
        std::uniform_real_distribution<double> demand(0.0, static_cast<double>(c + 1) / classes);
        for (std::size_t k = 0; k < law.stations; ++k) {
            d(c, k) = demand(rng);
        }
    }
    return DemandMatrix(std::move(d));
}

std::vector<ArrivalRates> gen_arrival_series(const WorkloadLaw& law, std::size_t horizon,
                                             std::uint64_t seed)
{
    return gen_arrival_series(law, horizon, seed, Ar1Perturbation{});
}

std::vector<ArrivalRates> gen_arrival_series(const WorkloadLaw& law, std::size_t horizon,
                                             std::uint64_t seed,
                                             const PerturbationSource& perturbation)
{
    if (horizon < 1) {
        throw UsageError("horizon must be at least one step");
    }
    validate(law);
    std::mt19937_64 rng(seed);
    const std::size_t classes = law.classes.size();
    std::vector<std::vector<double>> rates(horizon, std::vector<double>(classes, 0.0));
    for (std::size_t c = 0; c < classes; ++c) {
        const ClassLaw& cl = law.classes[c];
        const std::vector<double> eps = perturbation.generate(cl, horizon, rng);
        for (std::size_t i = 0; i < horizon; ++i) {
            const double t = static_cast<double>(i + 1);
            const double wave = 1.0 + cl.amplitude * std::sin(2.0 * std::numbers::pi * t / cl.period +
                                                              cl.phase);
            rates[i][c] = std::max(0.0, cl.base_rate * wave * (1.0 + eps[i]));
        }
    }
    std::vector<ArrivalRates> series;
    series.reserve(horizon);
    for (auto& step : rates) {
        series.emplace_back(std::move(step));
    }
    return series;
}

planner::SlaThresholds default_thresholds(const DemandMatrix& demands, double multiplier)
{
    if (!(multiplier > 1.0) || !std::isfinite(multiplier)) {
        throw UsageError("SLA multiplier must be finite and greater than one");
    }
    std::vector<double> thresholds(demands.classes(), 0.0);
    for (std::size_t c = 0; c < demands.classes(); ++c) {
        for (const double d : demands.row(c)) {
            thresholds[c] += d;
        }
        thresholds[c] *= multiplier;
    }
    return planner::SlaThresholds(std::move(thresholds));
}

} // namespace qnas::workload
