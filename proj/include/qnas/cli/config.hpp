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

#ifndef QNAS_CLI_CONFIG_HPP
#define QNAS_CLI_CONFIG_HPP

#include <qnas/des.hpp>
#include <qnas/errors.hpp>
#include <qnas/harness.hpp>
#include <qnas/types.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qnas::cli {

/// Invalid or unreadable configuration file.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Receives "defaulted" notices while parsing.
using NoticeSink = std::function<void(const std::string&)>;

nlohmann::json load_json(const std::filesystem::path& path);

struct RunConfig {
    sim::ScenarioSpec scenario;
    std::optional<std::string> output_dir;
};

enum class SeedPolicy {
    Shared,  ///< replicate r of every cell uses master_seed + r
    PerCell, ///< replicate r of cell (C, K) uses a seed derived from (master_seed, C, K) + r
};

struct SweepConfig {
    RunConfig base;
    std::vector<std::size_t> classes;
    std::vector<std::size_t> stations;
    std::size_t seeds_per_cell = 1;
    SeedPolicy seed_policy = SeedPolicy::Shared;
};

std::uint64_t cell_seed(const SweepConfig& sweep, std::uint64_t master, std::size_t classes,
                        std::size_t stations, std::size_t replicate);

struct ValidateConfig {
    BaselineSnapshot baseline;
    std::vector<Configuration> configs;
    std::vector<des::Discipline> disciplines;
    std::optional<double> run_length;
    double completions = 1e5;
    double warmup_fraction = 0.2;
    std::size_t batches = 10;
    std::uint64_t master_seed = 1;
    double tolerance = 0.05;
    std::optional<std::string> output_dir;
};

RunConfig parse_run_config(const nlohmann::json& doc, const NoticeSink& notice);
SweepConfig parse_sweep_config(const nlohmann::json& doc, const NoticeSink& notice);
ValidateConfig parse_validate_config(const nlohmann::json& doc, const NoticeSink& notice);

} // namespace qnas::cli

#endif // QNAS_CLI_CONFIG_HPP
