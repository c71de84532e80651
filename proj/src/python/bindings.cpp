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

#include <qnas/des.hpp>
#include <qnas/errors.hpp>
#include <qnas/harness.hpp>
#include <qnas/planner.hpp>
#include <qnas/qn_model.hpp>
#include <qnas/telemetry.hpp>
#include <qnas/workload.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

using Counts = std::vector<qnas::Configuration::value_type>;
using Rows = std::vector<std::vector<double>>;

qnas::Configuration to_config(const Counts& counts)
{
    return qnas::Configuration(counts);
}

Counts from_config(const qnas::Configuration& config)
{
    return Counts(config.counts().begin(), config.counts().end());
}

std::vector<double> to_vector(std::span<const double> values)
{
    return {values.begin(), values.end()};
}

py::dict response_dict(const qnas::ResponseTimes& r)
{
    py::dict d;
    d["per_class"] = r.per_class;
    d["per_station"] = r.per_station.to_rows();
    return d;
}

py::dict estimate_dict(const qnas::des::Estimate& e)
{
    py::dict d;
    d["mean"] = e.mean;
    d["half_width"] = e.half_width;
    d["observations"] = e.observations;
    return d;
}

qnas::BaselineSnapshot make_snapshot(const Counts& ref_config, const std::vector<double>& rates,
                                     const Rows& demands)
{
    return qnas::BaselineSnapshot::from_demands(
        to_config(ref_config), qnas::ArrivalRates(rates),
        qnas::DemandMatrix(qnas::Matrix::from_rows(demands)));
}

} // namespace

PYBIND11_MODULE(_qnas, m)
{
    m.doc() = "Queueing-network model, autoscaling planner and simulators";

    auto base_error = py::register_exception<qnas::Error>(m, "QnasError");
    py::register_exception<qnas::UsageError>(m, "UsageError", base_error.ptr());
    py::register_exception<qnas::OverloadedStation>(m, "OverloadedStation", base_error.ptr());
    py::register_exception<qnas::InfeasibleConfiguration>(m, "InfeasibleConfiguration",
                                                          base_error.ptr());
    py::register_exception<qnas::UnattainableSla>(m, "UnattainableSla", base_error.ptr());
    py::register_exception<qnas::IterationCap>(m, "IterationCap", base_error.ptr());

    py::class_<qnas::BaselineSnapshot>(m, "BaselineSnapshot")
        .def(py::init(&make_snapshot), py::arg("ref_config"), py::arg("rates"), py::arg("demands"),
             "Snapshot with per-instance demands at ref_config; utilizations are derived.")
        .def_property_readonly("ref_config",
                               [](const qnas::BaselineSnapshot& s) { return from_config(s.ref_config()); })
        .def_property_readonly("rates",
                               [](const qnas::BaselineSnapshot& s) { return to_vector(s.rates().values()); })
        .def_property_readonly("demands",
                               [](const qnas::BaselineSnapshot& s) { return s.demands_ref().values().to_rows(); })
        .def_property_readonly("utilizations", [](const qnas::BaselineSnapshot& s) {
            return to_vector(s.utilizations_ref().values());
        });

    m.def(
        "utilization",
        [](const std::vector<double>& rates, const Rows& demands) {
            return to_vector(qnas::qn::utilization(qnas::ArrivalRates(rates),
                                                   qnas::DemandMatrix(qnas::Matrix::from_rows(demands)))
                                 .values());
        },
        py::arg("rates"), py::arg("demands"));
    m.def("residence_time", &qnas::qn::residence_time, py::arg("demand"), py::arg("utilization"));
    m.def("estimate_demand", &qnas::qn::estimate_demand, py::arg("residence"),
          py::arg("utilization"));
    m.def(
        "response_time",
        [](const Counts& config, const std::vector<double>& residences) {
            return qnas::qn::response_time(to_config(config), residences);
        },
        py::arg("config"), py::arg("residences"));
    m.def(
        "rescale_snapshot",
        [](const qnas::BaselineSnapshot& base, const Counts& target) {
            return qnas::qn::rescale_snapshot(base, to_config(target));
        },
        py::arg("base"), py::arg("target"));
    m.def(
        "predict_response",
        [](const qnas::BaselineSnapshot& base, const Counts& target) {
            return response_dict(qnas::qn::predict_response(base, to_config(target)));
        },
        py::arg("base"), py::arg("target"));
    m.def("capacity_floor", &qnas::qn::capacity_floor, py::arg("base"));
    m.def(
        "min_feasible_config",
        [](const qnas::BaselineSnapshot& base) { return from_config(qnas::qn::min_feasible_config(base)); },
        py::arg("base"));

    m.def(
        "acquire",
        [](const qnas::BaselineSnapshot& base, const std::vector<double>& sla) {
            const auto r = qnas::planner::acquire(base, qnas::planner::SlaThresholds(sla));
            return py::make_tuple(from_config(r.config), r.iterations);
        },
        py::arg("base"), py::arg("sla"), "Returns (config, greedy_iterations).");
    m.def(
        "release",
        [](const qnas::BaselineSnapshot& base, const std::vector<double>& sla) {
            const auto r = qnas::planner::release(base, qnas::planner::SlaThresholds(sla));
            return py::make_tuple(from_config(r.config), r.iterations);
        },
        py::arg("base"), py::arg("sla"), "Returns (config, iterations).");
    m.def(
        "plan_step",
        [](const qnas::BaselineSnapshot& base, const std::vector<double>& sla) {
            const auto r = qnas::planner::plan_step(base, qnas::planner::SlaThresholds(sla));
            py::dict d;
            d["new_config"] = from_config(r.new_config);
            d["acquire_iterations"] = r.acquire_iterations;
            d["release_iterations"] = r.release_iterations;
            d["predicted_response"] = response_dict(r.predicted_response);
            d["feasible"] = r.feasible;
            return d;
        },
        py::arg("base"), py::arg("sla"));

    m.def(
        "observe",
        [](const std::vector<double>& rates, const Rows& unit_demands, const Counts& config,
           double relative_sd, std::uint64_t seed) {
            const qnas::telemetry::NoiseSpec noise{relative_sd > 0.0 ? qnas::telemetry::NoiseMode::Sampled
                                                                    : qnas::telemetry::NoiseMode::None,
                                                   relative_sd, seed};
            return qnas::telemetry::observe(qnas::ArrivalRates(rates),
                                            qnas::DemandMatrix(qnas::Matrix::from_rows(unit_demands)),
                                            to_config(config), noise);
        },
        py::arg("rates"), py::arg("unit_demands"), py::arg("config"), py::arg("relative_sd") = 0.0,
        py::arg("seed") = 0);

    m.def(
        "gen_demands",
        [](std::size_t classes, std::size_t stations, std::uint64_t seed) {
            return qnas::workload::gen_demands({classes, stations, seed}).values().to_rows();
        },
        py::arg("classes"), py::arg("stations"), py::arg("seed"));
    m.def(
        "gen_arrival_series",
        [](std::size_t classes, std::size_t horizon, std::uint64_t seed) {
            const auto law = qnas::workload::default_law(classes, horizon, seed);
            Rows out;
            for (const auto& rates : qnas::workload::gen_arrival_series(law, horizon, seed)) {
                out.push_back(to_vector(rates.values()));
            }
            return out;
        },
        py::arg("classes"), py::arg("horizon"), py::arg("seed"),
        "Arrival rates under the default experiment law, one row per step.");
    m.def(
        "default_thresholds",
        [](const Rows& demands, double multiplier) {
            return to_vector(qnas::workload::default_thresholds(
                                 qnas::DemandMatrix(qnas::Matrix::from_rows(demands)), multiplier)
                                 .values());
        },
        py::arg("demands"), py::arg("multiplier"));

    m.def(
        "run_scenario",
        [](std::size_t classes, std::size_t stations, std::size_t horizon, std::uint64_t seed,
           double sla_multiplier, double noise_sd) {
            qnas::sim::ScenarioSpec spec;
            spec.classes = classes;
            spec.stations = stations;
            spec.horizon = horizon;
            spec.master_seed = seed;
            spec.sla_multiplier = sla_multiplier;
            if (noise_sd > 0.0) {
                spec.noise_mode = qnas::telemetry::NoiseMode::Sampled;
                spec.noise_relative_sd = noise_sd;
            }
            const auto run = qnas::sim::run_scenario(spec);
            py::dict summary;
            summary["acq_max"] = run.summary.acquire_max;
            summary["acq_avg"] = run.summary.acquire_avg;
            summary["rel_max"] = run.summary.release_max;
            summary["rel_avg"] = run.summary.release_avg;
            summary["inst_min"] = run.summary.instances_min;
            summary["inst_max"] = run.summary.instances_max;
            summary["inst_total"] = run.summary.instances_total;
            summary["static_total"] = run.summary.static_total;
            summary["ratio"] = run.summary.ratio;
            py::list totals;
            py::list responses;
            for (const auto& step : run.steps) {
                totals.append(step.total_instances());
                responses.append(step.predicted_response);
            }
            py::dict d;
            d["summary"] = summary;
            d["total_instances"] = totals;
            d["predicted_response"] = responses;
            d["thresholds"] = to_vector(run.thresholds.values());
            return d;
        },
        py::arg("classes"), py::arg("stations"), py::arg("horizon") = 200, py::arg("seed") = 1,
        py::arg("sla_multiplier") = 3.0, py::arg("noise_sd") = 0.0);

    m.def(
        "des_validate",
        [](const qnas::BaselineSnapshot& base, const Counts& config, double run_length,
           const std::string& discipline, double warmup_fraction, std::size_t batches,
           std::uint64_t seed) {
            qnas::des::Options opts;
            opts.discipline = qnas::des::parse_discipline(discipline);
            opts.run_length = run_length;
            opts.warmup_fraction = warmup_fraction;
            opts.batches = batches;
            opts.seed = seed;
            const auto r = qnas::des::des_validate(base, to_config(config), opts);
            py::list response;
            for (const auto& e : r.response) {
                response.append(estimate_dict(e));
            }
            py::list utilization;
            for (const auto& e : r.utilization) {
                utilization.append(estimate_dict(e));
            }
            py::dict d;
            d["response"] = response;
            d["utilization"] = utilization;
            d["completions"] = r.completions;
            return d;
        },
        py::arg("base"), py::arg("config"), py::arg("run_length"),
        py::arg("discipline") = "processor-sharing", py::arg("warmup_fraction") = 0.2, py::arg("batches") = 10,
        py::arg("seed") = 1);
}
