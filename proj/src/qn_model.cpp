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

#include <cmath>
#include <string>

namespace qnas::qn {

namespace {

void require_same_stations(const BaselineSnapshot& base, const Configuration& config)
{
    if (config.size() != base.stations()) {
        throw UsageError("configuration has " + std::to_string(config.size()) +
                         " stations, snapshot has " + std::to_string(base.stations()));
    }
}

// Aggregate load M_k * U_k(M); invariant under re-referencing.
double station_load(const BaselineSnapshot& base, std::size_t k)
{
    return static_cast<double>(base.ref_config()[k]) * base.utilizations_ref()[k];
}

bool station_used(const BaselineSnapshot& base, std::size_t k)
{
    for (std::size_t c = 0; c < base.classes(); ++c) {
        if (base.demands_ref()(c, k) > 0.0) {
            return true;
        }
    }
    return false;
}

} // namespace

UtilizationVector utilization(const ArrivalRates& rates, const DemandMatrix& demands)
{
    if (rates.size() != demands.classes()) {
        throw UsageError("utilization: " + std::to_string(rates.size()) + " rates for " +
                         std::to_string(demands.classes()) + " demand rows");
    }
    std::vector<double> u(demands.stations(), 0.0);
    for (std::size_t c = 0; c < demands.classes(); ++c) {
        for (std::size_t k = 0; k < demands.stations(); ++k) {
            u[k] += rates[c] * demands(c, k);
        }
    }
    return UtilizationVector(std::move(u));
}

double residence_time(double demand, double utilization)
{
    if (!(demand >= 0.0) || !(utilization >= 0.0)) {
        throw UsageError("residence_time: demand and utilization must be nonnegative");
    }
    if (utilization >= 1.0) {
        throw OverloadedStation("OverloadedStation: utilization " + std::to_string(utilization) +
                                " >= 1, residence time undefined");
    }
    return demand / (1.0 - utilization);
}

double response_time(const Configuration& config, std::span<const double> per_instance_residence)
{
    if (config.size() != per_instance_residence.size()) {
        throw UsageError("response_time: configuration and residence sizes differ");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < config.size(); ++k) {
        total += static_cast<double>(config[k]) * per_instance_residence[k];
    }
    return total;
}

double estimate_demand(double residence, double utilization)
{
    if (!(residence >= 0.0) || !(utilization >= 0.0)) {
        throw UsageError("estimate_demand: residence and utilization must be nonnegative");
    }
    if (utilization >= 1.0) {
        throw OverloadedStation("OverloadedStation: measured utilization " +
                                std::to_string(utilization) + " >= 1, demand not estimable");
    }
    return residence * (1.0 - utilization);
}

BaselineSnapshot rescale_snapshot(const BaselineSnapshot& base, const Configuration& target)
{
    require_same_stations(base, target);
    const std::size_t classes = base.classes();
    const std::size_t stations = base.stations();

    Matrix demands(classes, stations);
    std::vector<double> u(stations);
    for (std::size_t k = 0; k < stations; ++k) {
        const double ratio =
            static_cast<double>(base.ref_config()[k]) / static_cast<double>(target[k]);
        u[k] = ratio * base.utilizations_ref()[k];
        for (std::size_t c = 0; c < classes; ++c) {
            demands(c, k) = ratio * base.demands_ref()(c, k);
        }
    }
    return BaselineSnapshot(target, base.rates(), DemandMatrix(std::move(demands)),
                            UtilizationVector(std::move(u)));
}

double station_term(const BaselineSnapshot& base, std::size_t workflow_class, std::size_t station,
                    double instances)
{
    const double m = static_cast<double>(base.ref_config()[station]);
    const double d = base.demands_ref()(workflow_class, station);
    if (d == 0.0) {
        return 0.0;
    }
    return d * m * instances / (instances - base.utilizations_ref()[station] * m);
}

ResponseTimes predict_response(const BaselineSnapshot& base, const Configuration& target)
{
    require_same_stations(base, target);
    std::vector<std::size_t> infeasible;
    for (std::size_t k = 0; k < base.stations(); ++k) {
        if (station_used(base, k) && !(static_cast<double>(target[k]) > station_load(base, k))) {
            infeasible.push_back(k);
        }
    }
    if (!infeasible.empty()) {
        throw InfeasibleConfiguration(std::move(infeasible));
    }

    ResponseTimes out{std::vector<double>(base.classes(), 0.0),
                      Matrix(base.classes(), base.stations())};
    for (std::size_t c = 0; c < base.classes(); ++c) {
        double total = 0.0;
        for (std::size_t k = 0; k < base.stations(); ++k) {
            const double term = station_term(base, c, k, static_cast<double>(target[k]));
            out.per_station(c, k) = term;
            total += term;
        }
        out.per_class[c] = total;
    }
    return out;
}

std::vector<double> capacity_floor(const BaselineSnapshot& base)
{
    std::vector<double> floor(base.stations());
    for (std::size_t k = 0; k < base.stations(); ++k) {
        floor[k] = station_load(base, k);
    }
    return floor;
}

Configuration min_feasible_config(const BaselineSnapshot& base)
{
    const std::vector<double> floor = capacity_floor(base);
    std::vector<Configuration::value_type> counts(floor.size());
    for (std::size_t k = 0; k < floor.size(); ++k) {
        // strictly above the floor: utilization must stay below one
        const auto above = static_cast<Configuration::value_type>(std::floor(floor[k])) + 1;
        counts[k] = std::max<Configuration::value_type>(1, above);
    }
    return Configuration(std::move(counts));
}

std::vector<double> demand_floor(const BaselineSnapshot& base)
{
    std::vector<double> floor(base.classes(), 0.0);
    for (std::size_t c = 0; c < base.classes(); ++c) {
        for (std::size_t k = 0; k < base.stations(); ++k) {
            floor[c] += static_cast<double>(base.ref_config()[k]) * base.demands_ref()(c, k);
        }
    }
    return floor;
}

double response_relaxed(const BaselineSnapshot& base, std::size_t workflow_class,
                        std::span<const double> instances)
{
    if (instances.size() != base.stations()) {
        throw UsageError("response_relaxed: wrong number of stations");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < instances.size(); ++k) {
        total += station_term(base, workflow_class, k, instances[k]);
    }
    return total;
}

double response_partial(const BaselineSnapshot& base, std::size_t workflow_class,
                        std::size_t station, double instances)
{
    const double m = static_cast<double>(base.ref_config()[station]);
    const double u = base.utilizations_ref()[station];
    const double gap = instances - u * m;
    return -m * m * u * base.demands_ref()(workflow_class, station) / (gap * gap);
}

} // namespace qnas::qn
