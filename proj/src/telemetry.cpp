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
#include <qnas/qn_model.hpp>
#include <qnas/telemetry.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace qnas::telemetry {

ArrivalRates measure_rates(const ObservationWindow& window)
{
    if (!(window.length > 0.0) || !std::isfinite(window.length)) {
        throw UsageError("observation window length must be positive");
    }
    std::vector<double> rates(window.arrival_counts.size());
    for (std::size_t c = 0; c < rates.size(); ++c) {
        rates[c] = static_cast<double>(window.arrival_counts[c]) / window.length;
    }
    return ArrivalRates(std::move(rates));
}

ObservationWindow sample_window(const ArrivalRates& true_rates, double length,
                                std::mt19937_64& rng)
{
    if (!(length > 0.0)) {
        throw UsageError("observation window length must be positive");
    }
    ObservationWindow window{length, std::vector<std::uint64_t>(true_rates.size(), 0)};
    for (std::size_t c = 0; c < true_rates.size(); ++c) {
        const double mean = true_rates[c] * length;
        if (mean > 0.0) {
            std::poisson_distribution<std::uint64_t> counts(mean);
            window.arrival_counts[c] = counts(rng);
        }
    }
    return window;
}

double lognormal_sigma(double relative_sd)
{
    return std::sqrt(std::log1p(relative_sd * relative_sd));
}

BaselineSnapshot observe(const ArrivalRates& true_rates, const DemandMatrix& true_unit_demands,
                         const Configuration& config, const NoiseSpec& noise)
{
    const std::size_t classes = true_unit_demands.classes();
    const std::size_t stations = true_unit_demands.stations();
    if (true_rates.size() != classes || config.size() != stations) {
        throw UsageError("observe: dimensions of rates, demands and configuration disagree");
    }
    if (!(noise.relative_sd >= 0.0) || !std::isfinite(noise.relative_sd)) {
        throw UsageError("noise relative_sd must be finite and nonnegative");
    }

    // Ground truth at `config`: per-instance demands are the unit demands spread over N_k.
    Matrix per_instance(classes, stations);
    for (std::size_t c = 0; c < classes; ++c) {
        for (std::size_t k = 0; k < stations; ++k) {
            per_instance(c, k) = true_unit_demands(c, k) / static_cast<double>(config[k]);
        }
    }
    const DemandMatrix true_demands(per_instance);
    const UtilizationVector true_u = qn::utilization(true_rates, true_demands);

    std::vector<std::size_t> overloaded;
    for (std::size_t k = 0; k < stations; ++k) {
        bool used = false;
        for (std::size_t c = 0; c < classes; ++c) {
            used = used || true_demands(c, k) > 0.0;
        }
        if (used && true_u[k] >= 1.0) {
            overloaded.push_back(k);
        }
    }
    if (!overloaded.empty()) {
        throw OverloadedStation(std::move(overloaded),
                                "OverloadedStation: no steady state at the observed configuration");
    }

    std::mt19937_64 rng(noise.seed);
    const bool sampled = noise.mode == NoiseMode::Sampled && noise.relative_sd > 0.0;
    std::normal_distribution<double> log_factor(0.0, sampled ? lognormal_sigma(noise.relative_sd)
                                                             : 1.0);

    std::vector<double> measured_u(true_u.values().begin(), true_u.values().end());
    if (sampled) {
        for (double& u : measured_u) {
            u = std::min(u * std::exp(log_factor(rng)), max_measured_utilization);
        }
    }

    Matrix recovered(classes, stations);
    for (std::size_t c = 0; c < classes; ++c) {
        for (std::size_t k = 0; k < stations; ++k) {
            double residence = qn::residence_time(true_demands(c, k), true_u[k]);
            if (sampled) {
                residence *= std::exp(log_factor(rng));
            }
            recovered(c, k) = qn::estimate_demand(residence, measured_u[k]);
        }
    }
    return BaselineSnapshot::from_demands(config, true_rates, DemandMatrix(std::move(recovered)));
}

} // namespace qnas::telemetry
