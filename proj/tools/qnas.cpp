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

#include <qnas/cli/commands.hpp>

#include <CLI11.hpp>

#include <functional>
#include <string>

namespace {

void add_common(CLI::App* cmd, qnas::cli::CommonOptions& options)
{
    cmd->add_option("--config", options.config_path, "JSON config file")->required();
    cmd->add_option("--seed", options.seed, "override master_seed");
    cmd->add_option("--out", options.out, "output directory (default: config output_dir, $QNAS_OUT, .)");
    cmd->add_flag("--quiet", options.quiet, "suppress notices");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"qnas: queueing-network driven autoscaling experiments"};
    app.require_subcommand(1);

    qnas::cli::CommonOptions options;
    std::function<int(const qnas::cli::CommonOptions&)> command;

    auto* run = app.add_subcommand("run", "simulate one scenario; writes timeseries.csv and summary.csv");
    add_common(run, options);
    run->callback([&] { command = qnas::cli::cmd_run; });

    auto* sweep = app.add_subcommand("sweep", "run a C x K grid of scenarios; writes sweep.csv");
    add_common(sweep, options);
    sweep->callback([&] { command = qnas::cli::cmd_sweep; });

    auto* validate =
        app.add_subcommand("validate", "check the analytic model against event simulation; writes validation.csv");
    add_common(validate, options);
    validate->callback([&] { command = qnas::cli::cmd_validate; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qnas::cli::exit_config_error;
    }
    return command(options);
}
