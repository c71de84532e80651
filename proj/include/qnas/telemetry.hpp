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

#ifndef QNAS_TELEMETRY_HPP
#define QNAS_TELEMETRY_HPP

#include <qnas/types.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace qnas::telemetry {

/// Arrival counts A_c observed over a window of the given length.
struct ObservationWindow {
    double length = 1.0;
    std::vector<std::uint64_t> arrival_counts;
};

enum class NoiseMode { None, Sampled };

/// Multiplicative lognormal measurement noise (median one) on residence times
/// and utilizations. `relative_sd` is the standard deviation of the factor
/// divided by its mean.
struct NoiseSpec {
    NoiseMode mode = NoiseMode::None;
    double relative_sd = 0.0;
    std::uint64_t seed = 0;
};

/// Utilization values are clamped to this after noise so demand estimation stays defined.
inline constexpr double max_measured_utilization = 1.0 - 1e-6;

/// rate_c = A_c / length.
ArrivalRates measure_rates(const ObservationWindow& window);

/// Draws Poisson arrival counts for a window of the given length.
ObservationWindow sample_window(const ArrivalRates& true_rates, double length,
                                std::mt19937_64& rng);

/// Log-scale standard deviation of a median-one lognormal with the given relative sd.
double lognormal_sigma(double relative_sd);

/**
 * Synthesizes what the monitor would see at `config` and turns it into a snapshot.
 *
 * `true_unit_demands` are the ground-truth demands with one instance per
 * station (the total per-workflow service time at each Web Service). The
 * monitor measures per-instance utilizations and residence times at `config`,
 * optionally perturbs them, and recovers demands as R * (1 - U). The snapshot's
 * utilizations are recomputed from the recovered demands.
 *
 * Throws OverloadedStation if some used station has utilization >= 1 at `config`.
 */
BaselineSnapshot observe(const ArrivalRates& true_rates, const DemandMatrix& true_unit_demands,
                         const Configuration& config, const NoiseSpec& noise);

} // namespace qnas::telemetry

#endif // QNAS_TELEMETRY_HPP
