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

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <random>

namespace qnas::des {

std::string_view to_string(Discipline d) noexcept
{
    return d == Discipline::ProcessorSharing ? "processor-sharing" : "fcfs";
}

Discipline parse_discipline(std::string_view name)
{
    if (name == "processor-sharing" || name == "ps") {
        return Discipline::ProcessorSharing;
    }
    if (name == "fcfs") {
        return Discipline::Fcfs;
    }
    throw UsageError("unknown discipline '" + std::string(name) +
                     "' (expected processor-sharing or fcfs)");
}

namespace {

enum class EventKind { Arrival, Completion, Boundary };

struct Event {
    double time;
    std::uint64_t seq;
    EventKind kind;
    std::size_t target;    // class, instance, or boundary index
    std::uint64_t version; // completion events are stale once the instance changed

    bool operator>(const Event& o) const
    {
        return time != o.time ? time > o.time : seq > o.seq;
    }
};

struct Job {
    std::size_t workflow_class = 0;
    std::size_t hop = 0;
    std::size_t instance = 0;
    double entered_station = 0.0;
    double entered_system = 0.0;
    double work = 0.0;
};

struct Instance {
    std::size_t station = 0;
    std::size_t jobs = 0;
    std::uint64_t version = 0;
    double busy_mark = 0.0;
    // processor sharing: attained service per job, advanced at rate 1 / jobs
    double virtual_time = 0.0;
    double last_update = 0.0;
    std::priority_queue<std::pair<double, std::size_t>, std::vector<std::pair<double, std::size_t>>,
                        std::greater<>>
        finish;
    std::deque<std::size_t> fifo;
};

// Running sums for one metric split into batches.
class BatchedMean {
  public:
    explicit BatchedMean(std::size_t batches = 0) : sums_(batches, 0.0), counts_(batches, 0) {}

    void add(std::size_t batch, double value)
    {
        sums_[batch] += value;
        ++counts_[batch];
    }

    Estimate estimate(double t_quantile) const
    {
        Estimate e;
        double total = 0.0;
        std::vector<double> means;
        for (std::size_t b = 0; b < sums_.size(); ++b) {
            total += sums_[b];
            e.observations += counts_[b];
            if (counts_[b] > 0) {
                means.push_back(sums_[b] / static_cast<double>(counts_[b]));
            }
        }
        if (e.observations == 0) {
            return e;
        }
        e.mean = total / static_cast<double>(e.observations);
        e.half_width = half_width(means, t_quantile);
        return e;
    }

    static double half_width(const std::vector<double>& means, double t_quantile)
    {
        if (means.size() < 2) {
            return std::numeric_limits<double>::infinity();
        }
        double avg = 0.0;
        for (const double m : means) {
            avg += m;
        }
        avg /= static_cast<double>(means.size());
        double ss = 0.0;
        for (const double m : means) {
            ss += (m - avg) * (m - avg);
        }
        const double n = static_cast<double>(means.size());
        return t_quantile * std::sqrt(ss / (n - 1.0) / n);
    }

  private:
    std::vector<double> sums_;
    std::vector<std::size_t> counts_;
};

class Simulator {
  public:
    Simulator(const BaselineSnapshot& base, const Configuration& config, const Options& options)
        : options_(options), classes_(base.classes()), stations_(base.stations()),
          rates_(base.rates().values().begin(), base.rates().values().end()),
          visit_work_(classes_, std::vector<double>(stations_, 0.0)), routes_(classes_),
          rng_(options.seed)
    {
        for (std::size_t k = 0; k < stations_; ++k) {
            first_instance_.push_back(instances_.size());
            instance_count_.push_back(static_cast<std::size_t>(config[k]));
            for (std::int64_t i = 0; i < config[k]; ++i) {
                Instance inst;
                inst.station = k;
                instances_.push_back(std::move(inst));
            }
        }
        for (std::size_t c = 0; c < classes_; ++c) {
            for (std::size_t k = 0; k < stations_; ++k) {
                // total service per visit is invariant under re-referencing
                visit_work_[c][k] =
                    static_cast<double>(base.ref_config()[k]) * base.demands_ref()(c, k);
                if (visit_work_[c][k] > 0.0) {
                    routes_[c].push_back(k);
                }
            }
        }

        warmup_end_ = options.warmup_fraction * options.run_length;
        batch_length_ = (options.run_length - warmup_end_) / static_cast<double>(options.batches);

        const std::size_t b = options.batches;
        response_.assign(classes_, BatchedMean(b));
        residence_.assign(classes_, std::vector<BatchedMean>(stations_, BatchedMean(b)));
        busy_.assign(instances_.size(), std::vector<double>(b, 0.0));
        arrivals_.assign(instances_.size(), std::vector<std::size_t>(classes_, 0));
    }

    Result run()
    {
        for (std::size_t c = 0; c < classes_; ++c) {
            schedule_arrival(c, 0.0);
        }
        for (std::size_t b = 0; b <= options_.batches; ++b) {
            push(warmup_end_ + static_cast<double>(b) * batch_length_, EventKind::Boundary, b, 0);
        }

        while (!calendar_.empty()) {
            const Event ev = calendar_.top();
            calendar_.pop();
            now_ = ev.time;
            switch (ev.kind) {
            case EventKind::Arrival:
                on_external_arrival(ev.target);
                break;
            case EventKind::Completion:
                if (instances_[ev.target].version == ev.version) {
                    on_completion(ev.target);
                }
                break;
            case EventKind::Boundary:
                on_boundary(ev.target);
                break;
            }
            if (finished_) {
                break;
            }
        }
        return collect();
    }

  private:
    void push(double time, EventKind kind, std::size_t target, std::uint64_t version)
    {
        calendar_.push(Event{time, seq_++, kind, target, version});
    }

    void schedule_arrival(std::size_t c, double from)
    {
        if (rates_[c] > 0.0) {
            std::exponential_distribution<double> gap(rates_[c]);
            push(from + gap(rng_), EventKind::Arrival, c, 0);
        }
    }

    // Batch index for a post-warmup timestamp, or npos during warmup.
    std::size_t batch_of(double t) const
    {
        if (t < warmup_end_) {
            return npos;
        }
        const auto b = static_cast<std::size_t>((t - warmup_end_) / batch_length_);
        return std::min(b, options_.batches - 1);
    }

    void on_external_arrival(std::size_t c)
    {
        schedule_arrival(c, now_);
        if (routes_[c].empty()) {
            const std::size_t b = batch_of(now_);
            if (b != npos) {
                response_[c].add(b, 0.0);
            }
            return;
        }
        const std::size_t id = allocate_job();
        jobs_[id].workflow_class = c;
        jobs_[id].hop = 0;
        jobs_[id].entered_system = now_;
        enter_station(id);
    }

    std::size_t allocate_job()
    {
        if (!free_jobs_.empty()) {
            const std::size_t id = free_jobs_.back();
            free_jobs_.pop_back();
            return id;
        }
        jobs_.emplace_back();
        return jobs_.size() - 1;
    }

    void enter_station(std::size_t id)
    {
        Job& job = jobs_[id];
        const std::size_t k = routes_[job.workflow_class][job.hop];
        std::uniform_int_distribution<std::size_t> pick(0, instance_count_[k] - 1);
        job.instance = first_instance_[k] + pick(rng_);
        job.entered_station = now_;
        std::exponential_distribution<double> work(1.0 / visit_work_[job.workflow_class][k]);
        job.work = work(rng_);

        if (now_ >= warmup_end_) {
            ++arrivals_[job.instance][job.workflow_class];
        }

        Instance& inst = instances_[job.instance];
        if (inst.jobs == 0) {
            inst.busy_mark = now_;
        }
        if (options_.discipline == Discipline::ProcessorSharing) {
            advance_virtual_time(inst);
            inst.finish.emplace(inst.virtual_time + job.work, id);
            ++inst.jobs;
            reschedule_ps(job.instance);
        } else {
            inst.fifo.push_back(id);
            ++inst.jobs;
            if (inst.jobs == 1) {
                ++inst.version;
                push(now_ + job.work, EventKind::Completion, job.instance, inst.version);
            }
        }
    }

    void advance_virtual_time(Instance& inst)
    {
        if (inst.jobs > 0) {
            inst.virtual_time += (now_ - inst.last_update) / static_cast<double>(inst.jobs);
        }
        inst.last_update = now_;
    }

    void reschedule_ps(std::size_t index)
    {
        Instance& inst = instances_[index];
        ++inst.version;
        if (inst.jobs == 0) {
            return;
        }
        const double remaining = std::max(0.0, inst.finish.top().first - inst.virtual_time);
        push(now_ + remaining * static_cast<double>(inst.jobs), EventKind::Completion, index,
             inst.version);
    }

    void on_completion(std::size_t index)
    {
        Instance& inst = instances_[index];
        std::size_t id = 0;
        if (options_.discipline == Discipline::ProcessorSharing) {
            advance_virtual_time(inst);
            id = inst.finish.top().second;
            inst.finish.pop();
            --inst.jobs;
            reschedule_ps(index);
        } else {
            id = inst.fifo.front();
            inst.fifo.pop_front();
            --inst.jobs;
            ++inst.version;
            if (inst.jobs > 0) {
                push(now_ + jobs_[inst.fifo.front()].work, EventKind::Completion, index,
                     inst.version);
            }
        }
        if (inst.jobs == 0) {
            add_busy(index, now_);
        }
        leave_station(id);
    }

    void add_busy(std::size_t index, double until)
    {
        const std::size_t b = batch_of(instances_[index].busy_mark);
        if (b != npos) {
            busy_[index][b] += until - instances_[index].busy_mark;
        }
        instances_[index].busy_mark = until;
    }

    void leave_station(std::size_t id)
    {
        Job& job = jobs_[id];
        const std::size_t c = job.workflow_class;
        const std::size_t k = routes_[c][job.hop];
        const std::size_t b = batch_of(now_);
        if (b != npos) {
            residence_[c][k].add(b, now_ - job.entered_station);
        }
        ++job.hop;
        if (job.hop < routes_[c].size()) {
            enter_station(id);
            return;
        }
        if (b != npos) {
            response_[c].add(b, now_ - job.entered_system);
        }
        free_jobs_.push_back(id);
    }

    // Busy intervals are cut at every boundary so each lands in one batch.
    void on_boundary(std::size_t boundary)
    {
        for (std::size_t i = 0; i < instances_.size(); ++i) {
            if (instances_[i].jobs > 0) {
                // attribute the interval before the boundary to the previous batch
                const std::size_t b = boundary == 0 ? npos : boundary - 1;
                if (b != npos) {
                    busy_[i][b] += now_ - instances_[i].busy_mark;
                }
                instances_[i].busy_mark = now_;
            }
        }
        if (boundary == options_.batches) {
            finished_ = true;
        }
    }

    Result collect() const
    {
        const double t = boost::math::quantile(
            boost::math::students_t(static_cast<double>(options_.batches - 1)), 0.975);
        const double observed = options_.run_length - warmup_end_;

        Result r;
        r.observed_time = observed;
        for (std::size_t c = 0; c < classes_; ++c) {
            r.response.push_back(response_[c].estimate(t));
            r.completions.push_back(r.response.back().observations);
            std::vector<Estimate> row;
            for (std::size_t k = 0; k < stations_; ++k) {
                row.push_back(residence_[c][k].estimate(t));
            }
            r.residence.push_back(std::move(row));
        }
        for (std::size_t k = 0; k < stations_; ++k) {
            std::vector<double> batch_means(options_.batches, 0.0);
            std::vector<double> per_instance;
            std::vector<std::vector<double>> rates;
            for (std::size_t i = 0; i < instance_count_[k]; ++i) {
                const std::size_t index = first_instance_[k] + i;
                double busy = 0.0;
                for (std::size_t b = 0; b < options_.batches; ++b) {
                    busy += busy_[index][b];
                    batch_means[b] += busy_[index][b] / batch_length_ /
                                      static_cast<double>(instance_count_[k]);
                }
                per_instance.push_back(busy / observed);
                std::vector<double> class_rates;
                for (std::size_t c = 0; c < classes_; ++c) {
                    class_rates.push_back(static_cast<double>(arrivals_[index][c]) / observed);
                }
                rates.push_back(std::move(class_rates));
            }
            Estimate u;
            for (const double m : batch_means) {
                u.mean += m / static_cast<double>(options_.batches);
            }
            u.half_width = BatchedMean::half_width(batch_means, t);
            u.observations = options_.batches;
            r.utilization.push_back(u);
            r.instance_utilization.push_back(std::move(per_instance));
            r.instance_arrival_rate.push_back(std::move(rates));
        }
        return r;
    }

    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    Options options_;
    std::size_t classes_;
    std::size_t stations_;
    std::vector<double> rates_;
    std::vector<std::vector<double>> visit_work_;
    std::vector<std::vector<std::size_t>> routes_;
    std::vector<std::size_t> first_instance_;
    std::vector<std::size_t> instance_count_;
    std::vector<Instance> instances_;
    std::vector<Job> jobs_;
    std::vector<std::size_t> free_jobs_;
    std::priority_queue<Event, std::vector<Event>, std::greater<>> calendar_;
    std::mt19937_64 rng_;
    std::uint64_t seq_ = 0;
    double now_ = 0.0;
    double warmup_end_ = 0.0;
    double batch_length_ = 0.0;
    bool finished_ = false;

    std::vector<BatchedMean> response_;
    std::vector<std::vector<BatchedMean>> residence_;
    std::vector<std::vector<double>> busy_;
    std::vector<std::vector<std::size_t>> arrivals_;
};

// Per-station aggregate load sum_c rate_c * M_k * D(c, k), computed without the model code.
std::vector<double> aggregate_load(const BaselineSnapshot& base)
{
    std::vector<double> load(base.stations(), 0.0);
    for (std::size_t c = 0; c < base.classes(); ++c) {
        for (std::size_t k = 0; k < base.stations(); ++k) {
            load[k] += base.rates()[c] * static_cast<double>(base.ref_config()[k]) *
                       base.demands_ref()(c, k);
        }
    }
    return load;
}

} // namespace

double run_length_for(const BaselineSnapshot& base, double completions, double warmup_fraction)
{
    double rarest = std::numeric_limits<double>::infinity();
    for (const double rate : base.rates().values()) {
        if (rate > 0.0) {
            rarest = std::min(rarest, rate);
        }
    }
    if (!std::isfinite(rarest)) {
        throw UsageError("no class has a positive arrival rate");
    }
    return completions / rarest / (1.0 - warmup_fraction);
}

Result des_validate(const BaselineSnapshot& base, const Configuration& config,
                    const Options& options)
{
    if (config.size() != base.stations()) {
        throw UsageError("configuration does not match the snapshot's stations");
    }
    if (!(options.warmup_fraction >= 0.0 && options.warmup_fraction < 1.0)) {
        throw UsageError("warmup fraction must lie in [0, 1)");
    }
    if (options.batches < 2) {
        throw UsageError("batch means need at least two batches");
    }
    if (!(options.run_length > 0.0) || !std::isfinite(options.run_length)) {
        throw UsageError("run length must be positive");
    }

    const std::vector<double> load = aggregate_load(base);
    std::vector<std::size_t> infeasible;
    for (std::size_t k = 0; k < load.size(); ++k) {
        if (load[k] > 0.0 && !(static_cast<double>(config[k]) > load[k])) {
            infeasible.push_back(k);
        }
    }
    if (!infeasible.empty()) {
        throw InfeasibleConfiguration(std::move(infeasible));
    }

    for (std::size_t c = 0; c < base.classes(); ++c) {
        const double expected =
            base.rates()[c] * options.run_length * (1.0 - options.warmup_fraction);
        if (base.rates()[c] > 0.0 && expected < options.min_completions) {
            throw UsageError("run length yields only " + std::to_string(expected) +
                             " expected completions of class " + std::to_string(c + 1) +
                             "; need " + std::to_string(options.min_completions));
        }
    }

    return Simulator(base, config, options).run();
}

} // namespace qnas::des
