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

#include <algorithm>
#include <cmath>
#include <string>

namespace qnas::planner {

SlaThresholds::SlaThresholds(std::vector<double> max_response) : max_(std::move(max_response))
{
    detail::require_positive_finite(max_, "response-time threshold");
}

namespace {

void require_classes(const BaselineSnapshot& base, const SlaThresholds& sla)
{
    if (sla.size() != base.classes()) {
        throw UsageError("SLA has " + std::to_string(sla.size()) + " thresholds for " +
                         std::to_string(base.classes()) + " classes");
    }
}

bool violates_any(const std::vector<double>& response, const SlaThresholds& sla)
{
    for (std::size_t c = 0; c < response.size(); ++c) {
        if (response[c] > sla[c]) {
            return true;
        }
    }
    return false;
}

// Class with the largest (R_c - R_c^+) / R_c^+; ties go to the lowest index.
std::size_t most_violating_class(const std::vector<double>& response, const SlaThresholds& sla)
{
    std::size_t best = 0;
    double best_value = (response[0] - sla[0]) / sla[0];
    for (std::size_t c = 1; c < response.size(); ++c) {
        const double value = (response[c] - sla[c]) / sla[c];
        if (value > best_value) {
            best = c;
            best_value = value;
        }
    }
    return best;
}

// Class with the smallest (R_c^+ - R_c) / R_c^+; ties go to the lowest index.
std::size_t least_slack_class(const std::vector<double>& response, const SlaThresholds& sla)
{
    std::size_t best = 0;
    double best_value = (sla[0] - response[0]) / sla[0];
    for (std::size_t c = 1; c < response.size(); ++c) {
        const double value = (sla[c] - response[c]) / sla[c];
        if (value < best_value) {
            best = c;
            best_value = value;
        }
    }
    return best;
}

} // namespace

void check_attainable(const BaselineSnapshot& base, const SlaThresholds& sla)
{
    require_classes(base, sla);
    const std::vector<double> floor = qn::demand_floor(base);
    for (std::size_t c = 0; c < floor.size(); ++c) {
        if (!(sla[c] - floor[c] > 1e-9 * std::max(1.0, floor[c]))) {
            throw UnattainableSla(c, sla[c], floor[c]);
        }
    }
}

AcquireResult acquire(const BaselineSnapshot& base, const SlaThresholds& sla,
                      const PlannerOptions& options)
{
    check_attainable(base, sla);

    AcquireResult result;
    const Configuration lifted = componentwise_max(base.ref_config(), qn::min_feasible_config(base));
    result.preconditioning_additions =
        static_cast<std::size_t>(lifted.total() - base.ref_config().total());
    Configuration n = lifted;

    std::vector<double> response = qn::predict_response(base, n).per_class;
    while (violates_any(response, sla)) {
        if (result.iterations >= options.iteration_cap) {
            throw IterationCap(options.iteration_cap);
        }
        const std::size_t b = most_violating_class(response, sla);

        // Increments are additive across stations, so the reduction from N + 1_k
        // only involves station k's own term.
        std::size_t j = 0;
        double best_reduction = -1.0;
        for (std::size_t k = 0; k < base.stations(); ++k) {
            const double now = static_cast<double>(n[k]);
            const double reduction =
                qn::station_term(base, b, k, now) - qn::station_term(base, b, k, now + 1.0);
            if (reduction > best_reduction) {
                best_reduction = reduction;
                j = k;
            }
        }

        n.increment(j);
        result.added_stations.push_back(j);
        ++result.iterations;
        response = qn::predict_response(base, n).per_class;
    }
    result.config = std::move(n);
    return result;
}

ReleaseResult release(const BaselineSnapshot& base, const SlaThresholds& sla)
{
    require_classes(base, sla);

    const std::vector<double> floor = qn::capacity_floor(base);
    Configuration n = base.ref_config();
    ReleaseResult result;

    // Candidates are kept in index order so the argmin scan breaks ties low.
    std::vector<std::size_t> candidates;
    for (std::size_t k = 0; k < base.stations(); ++k) {
        if (static_cast<double>(n[k] - 1) > floor[k]) {
            candidates.push_back(k);
        }
    }

    std::vector<double> response = qn::predict_response(base, n).per_class;
    while (!candidates.empty()) {
        ++result.evaluations;
        const std::size_t d = least_slack_class(response, sla);

        auto chosen = candidates.begin();
        double best_increase = 0.0;
        for (auto it = candidates.begin(); it != candidates.end(); ++it) {
            const double now = static_cast<double>(n[*it]);
            const double increase =
                qn::station_term(base, d, *it, now - 1.0) - qn::station_term(base, d, *it, now);
            if (it == candidates.begin() || increase < best_increase) {
                best_increase = increase;
                chosen = it;
            }
        }
        const std::size_t j = *chosen;

        const Configuration trial = n.minus_one(j);
        std::vector<double> trial_response = qn::predict_response(base, trial).per_class;
        if (violates_any(trial_response, sla)) {
            candidates.erase(chosen);
            continue;
        }
        n = trial;
        response = std::move(trial_response);
        result.removed_stations.push_back(j);
        ++result.iterations;
        if (!(static_cast<double>(n[j] - 1) > floor[j])) {
            candidates.erase(chosen);
        }
    }
    result.config = std::move(n);
    return result;
}

PlanOutcome plan_step(const BaselineSnapshot& base, const SlaThresholds& sla,
                      const PlannerOptions& options)
{
    AcquireResult acquired = acquire(base, sla, options);
    const BaselineSnapshot at_acquired = qn::rescale_snapshot(base, acquired.config);
    ReleaseResult released = release(at_acquired, sla);

    PlanOutcome outcome;
    outcome.predicted_response = qn::predict_response(at_acquired, released.config);
    outcome.feasible = !violates_any(outcome.predicted_response.per_class, sla);
    outcome.new_config = std::move(released.config);
    outcome.acquire_iterations = acquired.iterations;
    outcome.release_iterations = released.iterations;
    return outcome;
}

} // namespace qnas::planner
