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
#include <qnas/cli/config.hpp>
#include <qnas/cli/csv.hpp>
#include <qnas/des.hpp>
#include <qnas/harness.hpp>
#include <qnas/qn_model.hpp>
#include <qnas/seeds.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace qnas::cli {

namespace fs = std::filesystem;

namespace {

NoticeSink make_sink(const CommonOptions& options)
{
    if (options.quiet) {
        return {};
    }
    return [](const std::string& line) { std::cerr << "notice: " << line << '\n'; };
}

fs::path resolve_output_dir(const CommonOptions& options, const std::optional<std::string>& from_config)
{
    if (options.out) {
        return *options.out;
    }
    if (from_config) {
        return *from_config;
    }
    if (const char* env = std::getenv("QNAS_OUT"); env != nullptr && *env != '\0') {
        return env;
    }
    return ".";
}

std::string run_metadata(const sim::ScenarioSpec& s, const char* what)
{
    std::ostringstream out;
    out << "qnas " << what << " C=" << s.classes << " K=" << s.stations << " T=" << s.horizon
        << " seed=" << s.master_seed;
    return out.str();
}

std::vector<std::string> summary_header()
{
    return {"C",       "K",        "acq_max",    "acq_avg",      "rel_max", "rel_avg",
            "inst_min", "inst_max", "inst_total", "static_total", "ratio"};
}

CsvTable::Row summary_row(const sim::RunSummary& s)
{
    CsvTable::Row row;
    row.add(static_cast<std::uint64_t>(s.classes))
        .add(static_cast<std::uint64_t>(s.stations))
        .add(static_cast<std::uint64_t>(s.acquire_max))
        .add(s.acquire_avg)
        .add(static_cast<std::uint64_t>(s.release_max))
        .add(s.release_avg)
        .add(s.instances_min)
        .add(s.instances_max)
        .add(s.instances_total)
        .add(s.static_total)
        .add(s.ratio);
    return row;
}

CsvTable timeseries_table(const sim::ScenarioSpec& spec, const sim::RunRecord& run)
{
    std::vector<std::string> header{"step"};
    for (const char* prefix : {"lambda_", "R_", "Rmax_"}) {
        for (std::size_t c = 1; c <= spec.classes; ++c) {
            header.push_back(prefix + std::to_string(c));
        }
    }
    for (std::size_t k = 1; k <= spec.stations; ++k) {
        header.push_back("N_" + std::to_string(k));
    }
    header.insert(header.end(), {"total_instances", "acquire_iters", "release_iters"});

    CsvTable table(run_metadata(spec, "run"), std::move(header));
    for (const sim::StepRecord& r : run.steps) {
        CsvTable::Row row;
        row.add(static_cast<std::uint64_t>(r.step));
        for (const double v : r.rates.values()) {
            row.add(v);
        }
        for (const double v : r.predicted_response) {
            row.add(v);
        }
        for (const double v : r.thresholds) {
            row.add(v);
        }
        for (const auto n : r.config_after.counts()) {
            row.add(n);
        }
        row.add(r.total_instances())
            .add(static_cast<std::uint64_t>(r.acquire_iterations))
            .add(static_cast<std::uint64_t>(r.release_iterations));
        table.push(std::move(row));
    }
    return table;
}

void prepare_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
    }
}

void report(const char* what, const std::exception& e)
{
    std::cerr << "error: " << what << e.what() << '\n';
}

} // namespace

int cmd_run(const CommonOptions& options)
{
    RunConfig cfg;
    try {
        cfg = parse_run_config(load_json(options.config_path), make_sink(options));
    } catch (const ConfigError& e) {
        report("", e);
        return exit_config_error;
    }
    if (options.seed) {
        cfg.scenario.master_seed = *options.seed;
    }

    try {
        const sim::RunRecord run = sim::run_scenario(cfg.scenario);
        const fs::path dir = resolve_output_dir(options, cfg.output_dir);
        prepare_dir(dir);

        CsvTable summary(run_metadata(cfg.scenario, "summary"), summary_header());
        summary.push(summary_row(run.summary));
        write_atomically(dir / "timeseries.csv", timeseries_table(cfg.scenario, run).str());
        write_atomically(dir / "summary.csv", summary.str());
        if (!options.quiet) {
            std::cerr << "wrote " << (dir / "timeseries.csv").string() << " and "
                      << (dir / "summary.csv").string() << " (ratio "
                      << format_real(run.summary.ratio) << ")\n";
        }
        return exit_ok;
    } catch (const UnattainableSla& e) {
        report("", e);
        return exit_unattainable_sla;
    } catch (const UsageError& e) {
        report("", e);
        return exit_config_error;
    } catch (const std::exception& e) {
        report("", e);
        return exit_failure;
    }
}

int cmd_sweep(const CommonOptions& options)
{
    SweepConfig cfg;
    try {
        cfg = parse_sweep_config(load_json(options.config_path), make_sink(options));
    } catch (const ConfigError& e) {
        report("", e);
        return exit_config_error;
    }
    const std::uint64_t master = options.seed.value_or(cfg.base.scenario.master_seed);

    std::vector<std::string> header = summary_header();
    header.insert(header.end(), {"seed", "status"});
    std::ostringstream meta;
    meta << "qnas sweep cells=" << cfg.classes.size() * cfg.stations.size()
         << " seeds_per_cell=" << cfg.seeds_per_cell << " T=" << cfg.base.scenario.horizon
         << " master_seed=" << master;
    CsvTable table(meta.str(), std::move(header));

    std::size_t warnings = 0;
    for (const std::size_t classes : cfg.classes) {
        for (const std::size_t stations : cfg.stations) {
            for (std::size_t r = 0; r < cfg.seeds_per_cell; ++r) {
                sim::ScenarioSpec spec = cfg.base.scenario;
                spec.classes = classes;
                spec.stations = stations;
                spec.master_seed = cell_seed(cfg, master, classes, stations, r);
                try {
                    const sim::RunRecord run = sim::run_scenario(spec);
                    CsvTable::Row row = summary_row(run.summary);
                    row.add(spec.master_seed).add("ok");
                    table.push(std::move(row));
                } catch (const std::exception& e) {
                    ++warnings;
                    if (!options.quiet) {
                        std::cerr << "warning: cell C=" << classes << " K=" << stations
                                  << " seed=" << spec.master_seed << ": " << e.what() << '\n';
                    }
                    CsvTable::Row row;
                    row.add(static_cast<std::uint64_t>(classes))
                        .add(static_cast<std::uint64_t>(stations))
                        .empty(9)
                        .add(spec.master_seed)
                        .add("ERROR");
                    table.push(std::move(row));
                }
            }
        }
    }

    try {
        const fs::path dir = resolve_output_dir(options, cfg.base.output_dir);
        prepare_dir(dir);
        write_atomically(dir / "sweep.csv", table.str());
        if (!options.quiet) {
            std::cerr << "wrote " << (dir / "sweep.csv").string() << " with " << warnings
                      << " warning(s)\n";
        }
    } catch (const std::exception& e) {
        report("", e);
        return exit_failure;
    }
    return exit_ok;
}

int cmd_validate(const CommonOptions& options)
{
    ValidateConfig cfg;
    try {
        cfg = parse_validate_config(load_json(options.config_path), make_sink(options));
        // every target must be analyzable before any simulation starts
        for (const Configuration& config : cfg.configs) {
            (void)qn::predict_response(cfg.baseline, config);
        }
    } catch (const ConfigError& e) {
        report("", e);
        return exit_config_error;
    } catch (const InfeasibleConfiguration& e) {
        report("", e);
        return exit_config_error;
    }
    if (options.seed) {
        cfg.master_seed = *options.seed;
    }

    const BaselineSnapshot& base = cfg.baseline;
    std::ostringstream meta;
    meta << "qnas validate C=" << base.classes() << " K=" << base.stations()
         << " configs=" << cfg.configs.size() << " seed=" << cfg.master_seed;
    CsvTable table(meta.str(), {"config", "discipline", "station", "class", "analytic_R",
                                "simulated_R", "rel_error", "ci_halfwidth", "utilization"});

    bool all_pass = true;
    std::size_t run_index = 0;
    try {
        for (std::size_t i = 0; i < cfg.configs.size(); ++i) {
            const Configuration& config = cfg.configs[i];
            const ResponseTimes analytic = qn::predict_response(base, config);
            for (const des::Discipline discipline : cfg.disciplines) {
                des::Options opts;
                opts.discipline = discipline;
                opts.warmup_fraction = cfg.warmup_fraction;
                opts.batches = cfg.batches;
                opts.seed = derive_seed(cfg.master_seed, "des", run_index++);
                opts.run_length = cfg.run_length.value_or(
                    des::run_length_for(base, cfg.completions, cfg.warmup_fraction));
                opts.min_completions = std::min(opts.min_completions, cfg.completions);
                const des::Result sim = des::des_validate(base, config, opts);
                const bool gated = discipline == des::Discipline::ProcessorSharing;

                auto emit = [&](const std::string& station, std::size_t c, double expected,
                                const des::Estimate& measured, std::optional<double> util) {
                    const double rel = std::fabs(measured.mean - expected) / expected;
                    if (gated && !(rel <= cfg.tolerance)) {
                        all_pass = false;
                    }
                    CsvTable::Row row;
                    row.add(static_cast<std::uint64_t>(i + 1))
                        .add(des::to_string(discipline))
                        .add(station)
                        .add(static_cast<std::uint64_t>(c + 1))
                        .add(expected)
                        .add(measured.mean)
                        .add(rel)
                        .add(measured.half_width);
                    if (util) {
                        row.add(*util);
                    } else {
                        row.empty();
                    }
                    table.push(std::move(row));
                };

                for (std::size_t c = 0; c < base.classes(); ++c) {
                    if (base.rates()[c] == 0.0) {
                        continue;
                    }
                    for (std::size_t k = 0; k < base.stations(); ++k) {
                        if (base.demands_ref()(c, k) > 0.0) {
                            emit(std::to_string(k + 1), c, analytic.per_station(c, k),
                                 sim.residence[c][k], sim.utilization[k].mean);
                        }
                    }
                    emit("all", c, analytic.per_class[c], sim.response[c], std::nullopt);
                }
            }
        }
        const fs::path dir = resolve_output_dir(options, cfg.output_dir);
        prepare_dir(dir);
        write_atomically(dir / "validation.csv", table.str());
        if (!options.quiet) {
            std::cerr << "wrote " << (dir / "validation.csv").string() << ": "
                      << (all_pass ? "all processor-sharing rows within tolerance"
                                   : "some processor-sharing rows exceed tolerance")
                      << '\n';
        }
    } catch (const UsageError& e) {
        report("", e);
        return exit_config_error;
    } catch (const std::exception& e) {
        report("", e);
        return exit_failure;
    }
    return all_pass ? exit_ok : exit_validation_failed;
}

} // namespace qnas::cli
