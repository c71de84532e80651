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

#ifndef QNAS_CLI_COMMANDS_HPP
#define QNAS_CLI_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace qnas::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,
    exit_config_error = 2,
    exit_unattainable_sla = 3,
    exit_validation_failed = 4,
};

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    bool quiet = false;
};

/// Writes timeseries.csv and summary.csv.
int cmd_run(const CommonOptions& options);
/// Writes sweep.csv; failing cells become ERROR rows.
int cmd_sweep(const CommonOptions& options);
/// Writes validation.csv comparing simulated and analytic residence times.
int cmd_validate(const CommonOptions& options);

} // namespace qnas::cli

#endif // QNAS_CLI_COMMANDS_HPP
