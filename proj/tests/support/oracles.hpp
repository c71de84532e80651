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

// Independent reference computations for tests. Nothing here calls into the
// model or planner code paths it is used to check.

#ifndef QNAS_TESTS_ORACLES_HPP
#define QNAS_TESTS_ORACLES_HPP

#include <qnas/planner.hpp>
#include <qnas/types.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

namespace qnas::oracle {

/// Class response at `n` evaluated step by step: rescale demands to n (total
/// demand M_k D conserved), utilization by summing rates * demands, residence
/// D / (1 - U), then sum n_k * residence. Returns nullopt if some used station
/// has U >= 1.
inline std::optional<std::vector<double>> direct_response(const BaselineSnapshot& base,
                                                          const std::vector<std::int64_t>& n)
{
    const std::size_t classes = base.classes();
    const std::size_t stations = base.stations();
    std::vector<double> out(classes, 0.0);
    for (std::size_t k = 0; k < stations; ++k) {
        const double scale = static_cast<double>(base.ref_config()[k]) / static_cast<double>(n[k]);
        double u = 0.0;
        bool used = false;
        for (std::size_t c = 0; c < classes; ++c) {
            u += base.rates()[c] * base.demands_ref()(c, k) * scale;
            used = used || base.demands_ref()(c, k) > 0.0;
        }
        if (used && u >= 1.0) {
            return std::nullopt;
        }
        for (std::size_t c = 0; c < classes; ++c) {
            const double d = base.demands_ref()(c, k) * scale;
            out[c] += static_cast<double>(n[k]) * d / (1.0 - u);
        }
    }
    return out;
}

inline bool meets(const std::vector<double>& r, const planner::SlaThresholds& sla)
{
    for (std::size_t c = 0; c < r.size(); ++c) {
        if (r[c] > sla[c]) {
            return false;
        }
    }
    return true;
}

struct BruteForceResult {
    std::int64_t best_total = std::numeric_limits<std::int64_t>::max();
    std::vector<std::vector<std::int64_t>> optima;
    std::size_t searched = 0;
};

/// Exhaustive search of 1 <= n_k <= upper_k for feasible configurations of minimum total.
inline BruteForceResult brute_force(const BaselineSnapshot& base, const planner::SlaThresholds& sla,
                                    const std::vector<std::int64_t>& upper)
{
    BruteForceResult result;
    std::vector<std::int64_t> n(upper.size(), 1);
    while (true) {
        ++result.searched;
        const auto r = direct_response(base, n);
        if (r && meets(*r, sla)) {
            std::int64_t total = 0;
            for (const auto v : n) {
                total += v;
            }
            if (total < result.best_total) {
                result.best_total = total;
                result.optima.clear();
            }
            if (total == result.best_total) {
                result.optima.push_back(n);
            }
        }
        std::size_t k = 0;
        while (k < n.size() && n[k] == upper[k]) {
            n[k] = 1;
            ++k;
        }
        if (k == n.size()) {
            break;
        }
        ++n[k];
    }
    return result;
}

/// |DFT|^2 of the demeaned series at integer frequency bins 1..len/2.
inline std::vector<double> periodogram(const std::vector<double>& x)
{
    const std::size_t len = x.size();
    double mean = 0.0;
    for (const double v : x) {
        mean += v;
    }
    mean /= static_cast<double>(len);
    std::vector<double> power(len / 2 + 1, 0.0);
    for (std::size_t j = 1; j <= len / 2; ++j) {
        std::complex<double> acc = 0.0;
        for (std::size_t t = 0; t < len; ++t) {
            const double angle = -2.0 * std::numbers::pi * static_cast<double>(j * t) /
                                 static_cast<double>(len);
            acc += (x[t] - mean) * std::polar(1.0, angle);
        }
        power[j] = std::norm(acc);
    }
    return power;
}

inline double correlation(const std::vector<double>& a, const std::vector<double>& b)
{
    const auto n = static_cast<double>(a.size());
    double ma = 0.0;
    double mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0;
    double saa = 0.0;
    double sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

/// Two classes over three stations with capacities 2, 3, 2 req/s; class 2 skips station 2.
inline BaselineSnapshot bottleneck_fixture()
{
    return BaselineSnapshot::from_demands(Configuration{1, 1, 1}, ArrivalRates{2.0, 1.0},
                                          DemandMatrix{{0.5, 1.0 / 3.0, 0.5}, {0.5, 0.0, 0.5}});
}

/// Random snapshot with per-station aggregate load in (0, max_load): a random
/// reference configuration, random sparse demands, rates scaled to hit the load.
inline BaselineSnapshot random_snapshot(std::mt19937_64& rng, std::size_t classes,
                                        std::size_t stations, double max_load = 4.0,
                                        std::int64_t max_ref = 4)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::int64_t> ref_count(1, max_ref);
    std::vector<std::int64_t> ref(stations);
    for (auto& m : ref) {
        m = ref_count(rng);
    }
    std::vector<double> rates(classes);
    for (auto& r : rates) {
        r = 0.2 + unit(rng);
    }
    // total (unit) demands first, then scale each station so its load is below max_load
    Matrix total(classes, stations);
    for (std::size_t c = 0; c < classes; ++c) {
        for (std::size_t k = 0; k < stations; ++k) {
            total(c, k) = unit(rng) < 0.2 ? 0.0 : unit(rng);
        }
    }
    Matrix per_instance(classes, stations);
    for (std::size_t k = 0; k < stations; ++k) {
        double load = 0.0;
        for (std::size_t c = 0; c < classes; ++c) {
            load += rates[c] * total(c, k);
        }
        const double target = (0.05 + 0.95 * unit(rng)) * max_load;
        const double scale = load > 0.0 ? target / load : 0.0;
        for (std::size_t c = 0; c < classes; ++c) {
            per_instance(c, k) = total(c, k) * scale / static_cast<double>(ref[k]);
        }
    }
    return BaselineSnapshot::from_demands(Configuration(ref), ArrivalRates(rates),
                                          DemandMatrix(per_instance));
}

/// Thresholds between the asymptotic floor and a few times it, computed inline.
inline planner::SlaThresholds random_sla(std::mt19937_64& rng, const BaselineSnapshot& base,
                                         double low = 1.2, double high = 3.0)
{
    std::uniform_real_distribution<double> factor(low, high);
    std::vector<double> sla(base.classes());
    for (std::size_t c = 0; c < base.classes(); ++c) {
        double floor = 0.0;
        for (std::size_t k = 0; k < base.stations(); ++k) {
            floor += static_cast<double>(base.ref_config()[k]) * base.demands_ref()(c, k);
        }
        sla[c] = (floor > 0.0 ? floor : 1.0) * factor(rng);
    }
    return planner::SlaThresholds(sla);
}

} // namespace qnas::oracle

#endif // QNAS_TESTS_ORACLES_HPP
