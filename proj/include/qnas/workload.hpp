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

#ifndef QNAS_WORKLOAD_HPP
#define QNAS_WORKLOAD_HPP

#include <qnas/planner.hpp>
#include <qnas/types.hpp>

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

namespace qnas::workload {

/// Arrival-rate law for one workflow class.
struct ClassLaw {
    double base_rate = 1.0;
    double amplitude = 0.0;   // in [0, 1)
    double period = 1.0;      // steps
    double phase = 0.0;       // radians
    double perturbation_sd = 0.0;
    double perturbation_persistence = 0.0; // AR(1) coefficient in [0, 1)
};

struct WorkloadLaw {
    std::vector<ClassLaw> classes;
};

/// Knobs of the default experiment law.
struct DefaultLawParams {
    double base_rate = 1.0;
    double amplitude = 0.8;
    double perturbation_sd = 0.1;
    double perturbation_persistence = 0.8;
};

/// Default experiment law: class c (1-based) has period horizon / (c + 1) and a
/// phase drawn uniformly in [0, 2 pi) from `seed`.
WorkloadLaw default_law(std::size_t classes, std::size_t horizon, std::uint64_t seed,
                        const DefaultLawParams& params = {});

void validate(const WorkloadLaw& law);

/// Source of the multiplicative perturbation eps_c(t).
class PerturbationSource {
  public:
    virtual ~PerturbationSource() = default;
    /// Returns `horizon` perturbation values for one class.
    virtual std::vector<double> generate(const ClassLaw& law, std::size_t horizon,
                                         std::mt19937_64& rng) const = 0;
};

/// Stationary Gaussian AR(1): eps(t) = rho eps(t-1) + eta(t), with the innovation
/// sd chosen so eps has stationary sd `perturbation_sd`.
class Ar1Perturbation final : public PerturbationSource {
  public:
    std::vector<double> generate(const ClassLaw& law, std::size_t horizon,
                                 std::mt19937_64& rng) const override;
};

struct DemandLaw {
    std::size_t classes = 1;
    std::size_t stations = 1;
    std::uint64_t seed = 0;
};

/// D(c, k) uniform on [0, c / C] for 1-based class c; unit-referenced demands.
DemandMatrix gen_demands(const DemandLaw& law);

/**
 * rate_c(t) = max(0, base_c (1 + a_c sin(2 pi t / P_c + phi_c)) (1 + eps_c(t)))
 * for t = 1..horizon. Returns one ArrivalRates per step.
 */
std::vector<ArrivalRates> gen_arrival_series(const WorkloadLaw& law, std::size_t horizon,
                                             std::uint64_t seed);
std::vector<ArrivalRates> gen_arrival_series(const WorkloadLaw& law, std::size_t horizon,
                                             std::uint64_t seed,
                                             const PerturbationSource& perturbation);

/// R_c^+ = multiplier * sum_k D(c, k). Requires multiplier > 1.
planner::SlaThresholds default_thresholds(const DemandMatrix& demands, double multiplier);

} // namespace qnas::workload

#endif // QNAS_WORKLOAD_HPP
