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

#ifndef QNAS_QN_MODEL_HPP
#define QNAS_QN_MODEL_HPP

#include <qnas/types.hpp>

#include <span>
#include <vector>

/**
 * Open multiclass queueing-network model.
 *
 * Each Web Service k is represented by N_k single-server stations sharing the
 * load evenly. Every function here is pure.
 */
namespace qnas::qn {

/// U_k = sum_c rate_c * D(c, k). Overload (U_k >= 1) is representable.
UtilizationVector utilization(const ArrivalRates& rates, const DemandMatrix& demands);

/// Per-instance residence time D / (1 - U). Throws OverloadedStation when U >= 1.
double residence_time(double demand, double utilization);

/// End-to-end class response: sum_k N_k * residence_k.
double response_time(const Configuration& config, std::span<const double> per_instance_residence);

/// Inverts residence_time: D = R * (1 - U). Throws OverloadedStation when U >= 1.
double estimate_demand(double residence, double utilization);

/// Re-references a snapshot at `target`, scaling demands and utilizations by M_k / N_k.
BaselineSnapshot rescale_snapshot(const BaselineSnapshot& base, const Configuration& target);

/**
 * Response times at `target` predicted from the snapshot:
 * R_c(N) = sum_k D(c, k) M_k N_k / (N_k - U_k M_k).
 *
 * Throws InfeasibleConfiguration listing every station with N_k <= U_k M_k.
 */
ResponseTimes predict_response(const BaselineSnapshot& base, const Configuration& target);

/// Real-valued instance lower bound M_k * U_k(M), unrounded.
std::vector<double> capacity_floor(const BaselineSnapshot& base);

/// Smallest configuration strictly above the capacity floor (and at least one everywhere).
Configuration min_feasible_config(const BaselineSnapshot& base);

/// Per-class asymptotic response sum_k M_k D(c, k): the limit as every N_k grows.
std::vector<double> demand_floor(const BaselineSnapshot& base);

/// Contribution of station k to class c at n instances (n may be fractional).
/// Requires n > M_k U_k; the caller is responsible for feasibility.
double station_term(const BaselineSnapshot& base, std::size_t workflow_class, std::size_t station,
                    double instances);

/// Class response under the continuous relaxation of the instance counts.
double response_relaxed(const BaselineSnapshot& base, std::size_t workflow_class,
                        std::span<const double> instances);

/// Closed-form dR_c / dN_k = -M_k^2 U_k D(c, k) / (N_k - U_k M_k)^2.
double response_partial(const BaselineSnapshot& base, std::size_t workflow_class,
                        std::size_t station, double instances);

} // namespace qnas::qn

#endif // QNAS_QN_MODEL_HPP
