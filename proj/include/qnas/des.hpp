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

#ifndef QNAS_DES_HPP
#define QNAS_DES_HPP

#include <qnas/types.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

/**
 * Event-level simulation of the open network, used as an oracle for the
 * analytic model.
 *
 * Class-c jobs arrive as a Poisson stream and visit every station they have
 * demand at, in index order. At station k a job picks one of the N_k instances
 * uniformly at random and requires an exponential amount of work with mean
 * N_k * D(c, k) at `config` (the per-visit service time; per-instance demand
 * is that divided by the N_k-way split).
 */
namespace qnas::des {

enum class Discipline { ProcessorSharing, Fcfs };

std::string_view to_string(Discipline d) noexcept;
/// Accepts "processor-sharing"/"ps" and "fcfs".
Discipline parse_discipline(std::string_view name);

struct Options {
    Discipline discipline = Discipline::ProcessorSharing;
    double run_length = 0.0;
    double warmup_fraction = 0.2;
    std::size_t batches = 10;
    std::uint64_t seed = 1;
    /// Minimum expected post-warmup completions of the rarest active class.
    double min_completions = 1e4;
};

/// Point estimate with a 95% batch-means half-width.
struct Estimate {
    double mean = 0.0;
    double half_width = 0.0;
    std::size_t observations = 0;
};

struct Result {
    /// End-to-end response per class.
    std::vector<Estimate> response;
    /// [c][k]: time a class-c job spends at station k (comparable to ResponseTimes::per_station).
    std::vector<std::vector<Estimate>> residence;
    /// [k]: busy fraction averaged over the station's instances.
    std::vector<Estimate> utilization;
    /// [k][i]: busy fraction of instance i.
    std::vector<std::vector<double>> instance_utilization;
    /// [k][i][c]: class-c arrival rate seen by instance i of station k.
    std::vector<std::vector<std::vector<double>>> instance_arrival_rate;
    /// Post-warmup end-to-end completions per class.
    std::vector<std::size_t> completions;
    double observed_time = 0.0;
};

/// Run length whose post-warmup part yields `completions` jobs of the rarest active class.
double run_length_for(const BaselineSnapshot& base, double completions, double warmup_fraction);

/// Throws InfeasibleConfiguration when `config` is at or below the capacity floor.
Result des_validate(const BaselineSnapshot& base, const Configuration& config,
                    const Options& options);

} // namespace qnas::des

#endif // QNAS_DES_HPP
