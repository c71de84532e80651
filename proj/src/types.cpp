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

#include <qnas/errors.hpp>
#include <qnas/qn_model.hpp>
#include <qnas/types.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qnas {

Configuration::Configuration(std::vector<value_type> counts) : counts_(std::move(counts))
{
    for (std::size_t k = 0; k < counts_.size(); ++k) {
        if (counts_[k] < 1) {
            throw UsageError("configuration entry " + std::to_string(k + 1) + " is " +
                             std::to_string(counts_[k]) + "; every station needs at least one instance");
        }
    }
}

Configuration::Configuration(std::initializer_list<value_type> counts)
    : Configuration(std::vector<value_type>(counts))
{
}

Configuration Configuration::ones(std::size_t stations)
{
    return Configuration(std::vector<value_type>(stations, 1));
}

Configuration::value_type Configuration::total() const noexcept
{
    return std::accumulate(counts_.begin(), counts_.end(), value_type{0});
}

void Configuration::increment(std::size_t k)
{
    ++counts_.at(k);
}

void Configuration::decrement(std::size_t k)
{
    if (counts_.at(k) <= 1) {
        throw UsageError("cannot remove the last instance of station " + std::to_string(k + 1));
    }
    --counts_[k];
}

Configuration Configuration::plus_one(std::size_t k) const
{
    Configuration next = *this;
    next.increment(k);
    return next;
}

Configuration Configuration::minus_one(std::size_t k) const
{
    Configuration next = *this;
    next.decrement(k);
    return next;
}

bool Configuration::dominated_by(const Configuration& other) const
{
    if (other.size() != size()) {
        throw UsageError("configuration sizes differ");
    }
    for (std::size_t k = 0; k < size(); ++k) {
        if (counts_[k] > other.counts_[k]) {
            return false;
        }
    }
    return true;
}

Configuration componentwise_max(const Configuration& a, const Configuration& b)
{
    if (a.size() != b.size()) {
        throw UsageError("configuration sizes differ");
    }
    std::vector<Configuration::value_type> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        out[k] = std::max(a[k], b[k]);
    }
    return Configuration(std::move(out));
}

namespace detail {

void require_nonnegative_finite(std::span<const double> values, const char* what)
{
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]) || values[i] < 0.0) {
            throw UsageError(std::string(what) + " at index " + std::to_string(i + 1) +
                             " must be finite and nonnegative");
        }
    }
}

void require_positive_finite(std::span<const double> values, const char* what)
{
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]) || values[i] <= 0.0) {
            throw UsageError(std::string(what) + " at index " + std::to_string(i + 1) +
                             " must be finite and positive");
        }
    }
}

} // namespace detail

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill)
{
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw UsageError("ragged matrix rows");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows)
{
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_) {
            throw UsageError("ragged matrix rows");
        }
        std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + r * m.cols_);
    }
    return m;
}

std::vector<std::vector<double>> Matrix::to_rows() const
{
    std::vector<std::vector<double>> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        auto span = row(r);
        out[r].assign(span.begin(), span.end());
    }
    return out;
}

DemandMatrix::DemandMatrix(Matrix values) : values_(std::move(values))
{
    detail::require_nonnegative_finite(values_.data(), "service demand");
}

BaselineSnapshot::BaselineSnapshot(Configuration ref_config, ArrivalRates rates,
                                   DemandMatrix demands_ref, UtilizationVector utilizations_ref)
    : ref_(std::move(ref_config)), rates_(std::move(rates)), demands_(std::move(demands_ref)),
      utilizations_(std::move(utilizations_ref))
{
    if (ref_.size() != demands_.stations() || utilizations_.size() != demands_.stations()) {
        throw UsageError("snapshot station counts disagree");
    }
    if (rates_.size() != demands_.classes()) {
        throw UsageError("snapshot class counts disagree");
    }
    const UtilizationVector implied = qn::utilization(rates_, demands_);
    for (std::size_t k = 0; k < implied.size(); ++k) {
        if (!nearly_equal(implied[k], utilizations_[k])) {
            throw UsageError("snapshot utilization at station " + std::to_string(k + 1) +
                             " disagrees with rates and demands");
        }
    }
}

BaselineSnapshot BaselineSnapshot::from_demands(Configuration ref_config, ArrivalRates rates,
                                                DemandMatrix demands_ref)
{
    UtilizationVector u = qn::utilization(rates, demands_ref);
    return BaselineSnapshot(std::move(ref_config), std::move(rates), std::move(demands_ref),
                            std::move(u));
}

bool nearly_equal(double a, double b, double tol) noexcept
{
    const double diff = std::fabs(a - b);
    return diff <= tol || diff <= tol * std::max(std::fabs(a), std::fabs(b));
}

} // namespace qnas
