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

#include <qnas/cli/config.hpp>
#include <qnas/seeds.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace qnas::cli {

using nlohmann::json;

nlohmann::json load_json(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path.string() + ": " + e.what());
    }
}

namespace {

// Reads one JSON object, tracking which keys were consumed so leftovers can be rejected.
class ObjectReader {
  public:
    ObjectReader(const json& object, std::string where, const NoticeSink& notice)
        : object_(object), where_(std::move(where)), notice_(notice)
    {
        if (!object_.is_object()) {
            throw ConfigError(where_ + " must be a JSON object");
        }
    }

    bool has(const std::string& key) const { return object_.contains(key); }

    const json& require(const std::string& key)
    {
        if (!object_.contains(key)) {
            throw ConfigError(where_ + ": missing required key '" + key + "'");
        }
        used_.insert(key);
        return object_.at(key);
    }

    const json* optional(const std::string& key)
    {
        if (!object_.contains(key)) {
            return nullptr;
        }
        used_.insert(key);
        return &object_.at(key);
    }

    template <typename T>
    T get(const std::string& key)
    {
        return convert<T>(require(key), key);
    }

    template <typename T>
    T get_or(const std::string& key, T fallback, const std::string& shown)
    {
        if (const json* value = optional(key)) {
            return convert<T>(*value, key);
        }
        if (notice_) {
            notice_(where_ + ": '" + key + "' not set, defaulting to " + shown);
        }
        return fallback;
    }

    template <typename T>
    T convert(const json& value, const std::string& key) const
    {
        try {
            if constexpr (std::is_same_v<T, std::size_t> || std::is_same_v<T, std::uint64_t>) {
                if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
                    throw ConfigError(where_ + ": '" + key + "' must be a nonnegative integer");
                }
            }
            return value.get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(where_ + ": '" + key + "' has the wrong type (" + e.what() + ")");
        }
    }

    void note(const std::string& message) const
    {
        if (notice_) {
            notice_(where_ + ": " + message);
        }
    }

    void finish() const
    {
        for (const auto& item : object_.items()) {
            if (!used_.contains(item.key())) {
                throw ConfigError(where_ + ": unknown key '" + item.key() + "'");
            }
        }
    }

    const std::string& where() const { return where_; }

  private:
    const json& object_;
    std::string where_;
    const NoticeSink& notice_;
    std::set<std::string> used_;
};

std::vector<double> real_vector(const json& value, const std::string& what)
{
    if (!value.is_array()) {
        throw ConfigError(what + " must be an array of numbers");
    }
    std::vector<double> out;
    for (const json& v : value) {
        if (!v.is_number()) {
            throw ConfigError(what + " must contain only numbers");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<std::size_t> count_vector(const json& value, const std::string& what)
{
    if (!value.is_array() || value.empty()) {
        throw ConfigError(what + " must be a nonempty array of positive integers");
    }
    std::vector<std::size_t> out;
    for (const json& v : value) {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
            throw ConfigError(what + " must contain only positive integers");
        }
        out.push_back(v.get<std::size_t>());
    }
    return out;
}

Configuration configuration(const json& value, const std::string& what)
{
    if (!value.is_array()) {
        throw ConfigError(what + " must be an array of instance counts");
    }
    std::vector<Configuration::value_type> counts;
    for (const json& v : value) {
        if (!v.is_number_integer()) {
            throw ConfigError(what + " must contain only integers");
        }
        counts.push_back(v.get<Configuration::value_type>());
    }
    try {
        return Configuration(std::move(counts));
    } catch (const UsageError& e) {
        throw ConfigError(what + ": " + e.what());
    }
}

Matrix matrix(const json& value, const std::string& what)
{
    if (!value.is_array()) {
        throw ConfigError(what + " must be an array of rows");
    }
    std::vector<std::vector<double>> rows;
    for (const json& row : value) {
        rows.push_back(real_vector(row, what + " row"));
    }
    try {
        return Matrix::from_rows(rows);
    } catch (const UsageError& e) {
        throw ConfigError(what + ": " + e.what());
    }
}

workload::ClassLaw class_law(const json& value, const std::string& where, const NoticeSink& notice)
{
    ObjectReader r(value, where, notice);
    workload::ClassLaw law;
    law.base_rate = r.get<double>("base_rate");
    law.amplitude = r.get_or<double>("amplitude", 0.0, "0");
    law.period = r.get_or<double>("period", 1.0, "1");
    law.phase = r.get_or<double>("phase", 0.0, "0");
    law.perturbation_sd = r.get_or<double>("perturbation_sd", 0.0, "0");
    law.perturbation_persistence = r.get_or<double>("perturbation_persistence", 0.0, "0");
    r.finish();
    return law;
}

// Everything in a run config except C and K, which the caller resolves.
void parse_scenario_body(ObjectReader& top, RunConfig& cfg, const NoticeSink& notice)
{
    sim::ScenarioSpec& s = cfg.scenario;
    s.horizon = top.get<std::size_t>("horizon");
    if (s.horizon < 1) {
        throw ConfigError("horizon must be at least 1");
    }
    s.window = top.get_or<double>("window", 1.0, "1");
    if (const json* v = top.optional("observation_length")) {
        s.observation_length = top.convert<double>(*v, "observation_length");
    }
    s.master_seed = top.get_or<std::uint64_t>("master_seed", 1, "1");
    if (const json* v = top.optional("output_dir")) {
        cfg.output_dir = top.convert<std::string>(*v, "output_dir");
    }
    if (const json* v = top.optional("initial_config")) {
        s.initial_config = configuration(*v, "initial_config");
    } else {
        top.note("'initial_config' not set, defaulting to one instance per station");
    }
    s.planner.iteration_cap =
        top.get_or<std::size_t>("acquire_iteration_cap", s.planner.iteration_cap, "1000000");

    if (const json* w = top.optional("workload")) {
        ObjectReader r(*w, "workload", notice);
        if (const json* classes = r.optional("classes")) {
            if (!classes->is_array()) {
                throw ConfigError("workload.classes must be an array");
            }
            workload::WorkloadLaw law;
            for (std::size_t c = 0; c < classes->size(); ++c) {
                law.classes.push_back(
                    class_law((*classes)[c], "workload.classes[" + std::to_string(c) + "]", notice));
            }
            s.workload = std::move(law);
        } else {
            s.default_law.base_rate = r.get_or<double>("base_rate", s.default_law.base_rate, "1");
            s.default_law.amplitude = r.get_or<double>("amplitude", s.default_law.amplitude, "0.8");
            s.default_law.perturbation_sd =
                r.get_or<double>("perturbation_sd", s.default_law.perturbation_sd, "0.1");
            s.default_law.perturbation_persistence = r.get_or<double>(
                "perturbation_persistence", s.default_law.perturbation_persistence, "0.8");
        }
        const std::string sampling = r.get_or<std::string>("sampling", "expected", "expected");
        if (sampling == "expected") {
            s.sampling = sim::ArrivalSampling::Expected;
        } else if (sampling == "poisson") {
            s.sampling = sim::ArrivalSampling::Poisson;
        } else {
            throw ConfigError("workload.sampling must be 'expected' or 'poisson'");
        }
        r.finish();
    } else {
        top.note("'workload' not set, using the default sinusoidal law");
    }

    if (const json* d = top.optional("demands")) {
        ObjectReader r(*d, "demands", notice);
        if (const json* m = r.optional("matrix")) {
            try {
                s.demands = DemandMatrix(matrix(*m, "demands.matrix"));
            } catch (const UsageError& e) {
                throw ConfigError(std::string("demands.matrix: ") + e.what());
            }
        }
        r.finish();
    } else {
        top.note("'demands' not set, drawing uniform random demands");
    }

    if (const json* sla = top.optional("sla")) {
        ObjectReader r(*sla, "sla", notice);
        if (const json* t = r.optional("thresholds")) {
            try {
                s.sla = planner::SlaThresholds(real_vector(*t, "sla.thresholds"));
            } catch (const UsageError& e) {
                throw ConfigError(std::string("sla.thresholds: ") + e.what());
            }
            if (r.has("multiplier")) {
                throw ConfigError("sla: give either 'thresholds' or 'multiplier', not both");
            }
        } else {
            s.sla_multiplier = r.get_or<double>("multiplier", s.sla_multiplier, "3");
        }
        r.finish();
    } else {
        top.note("'sla' not set, using thresholds of 3x the unit-configuration demand sums");
    }

    if (const json* n = top.optional("noise")) {
        ObjectReader r(*n, "noise", notice);
        const std::string mode = r.get_or<std::string>("mode", "none", "none");
        if (mode == "none") {
            s.noise_mode = telemetry::NoiseMode::None;
        } else if (mode == "sampled") {
            s.noise_mode = telemetry::NoiseMode::Sampled;
        } else {
            throw ConfigError("noise.mode must be 'none' or 'sampled'");
        }
        s.noise_relative_sd = r.get_or<double>("relative_sd", 0.0, "0");
        r.finish();
    } else {
        top.note("'noise' not set, measurements are exact");
    }
}

void check_scenario(const sim::ScenarioSpec& s)
{
    try {
        sim::validate(s);
    } catch (const UsageError& e) {
        throw ConfigError(e.what());
    }
}

} // namespace

RunConfig parse_run_config(const json& doc, const NoticeSink& notice)
{
    ObjectReader top(doc, "config", notice);
    RunConfig cfg;
    cfg.scenario.classes = top.get<std::size_t>("C");
    cfg.scenario.stations = top.get<std::size_t>("K");
    parse_scenario_body(top, cfg, notice);
    top.finish();
    check_scenario(cfg.scenario);
    return cfg;
}

SweepConfig parse_sweep_config(const json& doc, const NoticeSink& notice)
{
    ObjectReader top(doc, "config", notice);
    SweepConfig cfg;
    {
        ObjectReader grid(top.require("sweep"), "sweep", notice);
        cfg.classes = count_vector(grid.require("C"), "sweep.C");
        cfg.stations = count_vector(grid.require("K"), "sweep.K");
        cfg.seeds_per_cell = grid.get_or<std::size_t>("seeds_per_cell", 1, "1");
        if (cfg.seeds_per_cell < 1) {
            throw ConfigError("sweep.seeds_per_cell must be at least 1");
        }
        const std::string policy = grid.get_or<std::string>("seed_policy", "shared", "shared");
        if (policy == "shared") {
            cfg.seed_policy = SeedPolicy::Shared;
        } else if (policy == "per_cell") {
            cfg.seed_policy = SeedPolicy::PerCell;
        } else {
            throw ConfigError("sweep.seed_policy must be 'shared' or 'per_cell'");
        }
        grid.finish();
    }
    parse_scenario_body(top, cfg.base, notice);
    top.finish();

    const sim::ScenarioSpec& s = cfg.base.scenario;
    if (s.demands || s.sla || s.workload || s.initial_config) {
        // explicit shapes only make sense for one grid cell of matching size
        if (cfg.classes.size() != 1 || cfg.stations.size() != 1) {
            throw ConfigError("explicit demands, thresholds, workload classes or initial_config "
                              "require a 1x1 sweep grid");
        }
    }
    for (const std::size_t c : cfg.classes) {
        for (const std::size_t k : cfg.stations) {
            sim::ScenarioSpec cell = s;
            cell.classes = c;
            cell.stations = k;
            check_scenario(cell);
        }
    }
    return cfg;
}

std::uint64_t cell_seed(const SweepConfig& sweep, std::uint64_t master, std::size_t classes,
                        std::size_t stations, std::size_t replicate)
{
    if (sweep.seed_policy == SeedPolicy::Shared) {
        return master + replicate;
    }
    return derive_seed(master, "cell", classes * 1'000'003ULL + stations) + replicate;
}

ValidateConfig parse_validate_config(const json& doc, const NoticeSink& notice)
{
    ObjectReader top(doc, "config", notice);
    ValidateConfig cfg;
    {
        ObjectReader b(top.require("baseline"), "baseline", notice);
        const Configuration ref = configuration(b.require("ref_config"), "baseline.ref_config");
        try {
            ArrivalRates rates(real_vector(b.require("rates"), "baseline.rates"));
            DemandMatrix demands(matrix(b.require("demands"), "baseline.demands"));
            cfg.baseline = BaselineSnapshot::from_demands(ref, std::move(rates), std::move(demands));
        } catch (const UsageError& e) {
            throw ConfigError(std::string("baseline: ") + e.what());
        }
        b.finish();
    }
    const json& configs = top.require("configs");
    if (!configs.is_array() || configs.empty()) {
        throw ConfigError("configs must be a nonempty array of configurations");
    }
    for (std::size_t i = 0; i < configs.size(); ++i) {
        cfg.configs.push_back(configuration(configs[i], "configs[" + std::to_string(i) + "]"));
        if (cfg.configs.back().size() != cfg.baseline.stations()) {
            throw ConfigError("configs[" + std::to_string(i) + "] has the wrong number of stations");
        }
    }
    if (const json* d = top.optional("disciplines")) {
        if (!d->is_array() || d->empty()) {
            throw ConfigError("disciplines must be a nonempty array");
        }
        for (const json& name : *d) {
            try {
                cfg.disciplines.push_back(
                    des::parse_discipline(top.convert<std::string>(name, "disciplines")));
            } catch (const UsageError& e) {
                throw ConfigError(e.what());
            }
        }
    } else {
        top.note("'disciplines' not set, defaulting to processor-sharing");
        cfg.disciplines.push_back(des::Discipline::ProcessorSharing);
    }
    if (const json* v = top.optional("run_length")) {
        cfg.run_length = top.convert<double>(*v, "run_length");
        if (!(*cfg.run_length > 0.0)) {
            throw ConfigError("run_length must be positive");
        }
    } else {
        cfg.completions = top.get_or<double>("completions", cfg.completions, "100000");
        if (!(cfg.completions >= 1.0)) {
            throw ConfigError("completions must be at least 1");
        }
    }
    cfg.warmup_fraction = top.get_or<double>("warmup_fraction", cfg.warmup_fraction, "0.2");
    if (!(cfg.warmup_fraction >= 0.0 && cfg.warmup_fraction < 1.0)) {
        throw ConfigError("warmup_fraction must lie in [0, 1)");
    }
    cfg.batches = top.get_or<std::size_t>("batches", cfg.batches, "10");
    if (cfg.batches < 2) {
        throw ConfigError("batches must be at least 2");
    }
    cfg.master_seed = top.get_or<std::uint64_t>("master_seed", cfg.master_seed, "1");
    cfg.tolerance = top.get_or<double>("tolerance", cfg.tolerance, "0.05");
    if (const json* v = top.optional("output_dir")) {
        cfg.output_dir = top.convert<std::string>(*v, "output_dir");
    }
    top.finish();
    return cfg;
}

} // namespace qnas::cli
