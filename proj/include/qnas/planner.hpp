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

#ifndef QNAS_PLANNER_HPP
#define QNAS_PLANNER_HPP

#include <qnas/types.hpp>

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace qnas::planner {

/// Per-class maximum mean response time.
class SlaThresholds {
  public:
    SlaThresholds() = default;
    explicit SlaThresholds(std::vector<double> max_response);
    SlaThresholds(std::initializer_list<double> max_response)
        : SlaThresholds(std::vector<double>(max_response))
    {
    }

    std::size_t size() const noexcept { return max_.size(); }
    double operator[](std::size_t c) const { return max_.at(c); }
    std::span<const double> values() const noexcept { return max_; }

  private:
    std::vector<double> max_;
};

struct PlannerOptions {
    std::size_t iteration_cap = 1'000'000;
};

struct AcquireResult {
    Configuration config;
    /// Greedy loop iterations, excluding the preconditioning lift.
    std::size_t iterations = 0;
    /// Instances added to bring the start above the capacity floor.
    std::size_t preconditioning_additions = 0;
    /// Station chosen at each greedy iteration, in order.
    std::vector<std::size_t> added_stations;
};

struct ReleaseResult {
    Configuration config;
    /// Accepted removals (instances released).
    std::size_t iterations = 0;
    /// Loop passes, including candidates rejected because a threshold would break.
    std::size_t evaluations = 0;
    /// Station removed at each accepted step, in order.
    std::vector<std::size_t> removed_stations;
};

struct PlanOutcome {
    Configuration new_config;
    std::size_t acquire_iterations = 0;
    std::size_t release_iterations = 0;
    ResponseTimes predicted_response;
    bool feasible = false;
};

/// Throws UnattainableSla for the first class whose threshold does not exceed
/// its asymptotic demand floor (with a 1e-9 margin).
void check_attainable(const BaselineSnapshot& base, const SlaThresholds& sla);

/// Greedy instance acquisition starting from base.ref_config().
AcquireResult acquire(const BaselineSnapshot& base, const SlaThresholds& sla,
                      const PlannerOptions& options = {});

/// Greedy Pareto release starting from base.ref_config(), which must satisfy `sla`.
ReleaseResult release(const BaselineSnapshot& base, const SlaThresholds& sla);

/// One planning step: acquire, re-reference at the acquired configuration, release.
PlanOutcome plan_step(const BaselineSnapshot& base, const SlaThresholds& sla,
                      const PlannerOptions& options = {});

} // namespace qnas::planner

#endif // QNAS_PLANNER_HPP
