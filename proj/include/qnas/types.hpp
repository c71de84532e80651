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

#ifndef QNAS_TYPES_HPP
#define QNAS_TYPES_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace qnas {

/**
 * Number of instances allocated to each Web Service (station).
 *
 * Every entry is at least one. Stations are indexed from zero.
 */
class Configuration {
  public:
    using value_type = std::int64_t;

    Configuration() = default;
    explicit Configuration(std::vector<value_type> counts);
    Configuration(std::initializer_list<value_type> counts);

    static Configuration ones(std::size_t stations);

    std::size_t size() const noexcept { return counts_.size(); }
    value_type operator[](std::size_t k) const { return counts_.at(k); }
    std::span<const value_type> counts() const noexcept { return counts_; }
    value_type total() const noexcept;

    /// Adds one instance to station k.
    void increment(std::size_t k);
    /// Removes one instance from station k; throws UsageError if it would drop below one.
    void decrement(std::size_t k);

    Configuration plus_one(std::size_t k) const;
    Configuration minus_one(std::size_t k) const;

    /// Componentwise <=.
    bool dominated_by(const Configuration& other) const;

    friend bool operator==(const Configuration&, const Configuration&) = default;

  private:
    std::vector<value_type> counts_;
};

Configuration componentwise_max(const Configuration& a, const Configuration& b);

namespace detail {
void require_nonnegative_finite(std::span<const double> values, const char* what);
void require_positive_finite(std::span<const double> values, const char* what);
} // namespace detail

/// Vector of nonnegative finite reals tagged by meaning.
template <typename Tag>
class NonNegativeVector {
  public:
    NonNegativeVector() = default;
    explicit NonNegativeVector(std::vector<double> values) : values_(std::move(values))
    {
        detail::require_nonnegative_finite(values_, Tag::name);
    }
    NonNegativeVector(std::initializer_list<double> values)
        : NonNegativeVector(std::vector<double>(values))
    {
    }

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_.at(i); }
    std::span<const double> values() const noexcept { return values_; }

    friend bool operator==(const NonNegativeVector&, const NonNegativeVector&) = default;

  private:
    std::vector<double> values_;
};

struct ArrivalRatesTag {
    static constexpr const char* name = "arrival rate";
};
struct UtilizationTag {
    static constexpr const char* name = "utilization";
};

/// Per-class arrival rates (workflows per unit time).
using ArrivalRates = NonNegativeVector<ArrivalRatesTag>;
/// Per-station, per-instance utilization. Values >= 1 mean overload.
using UtilizationVector = NonNegativeVector<UtilizationTag>;

/// Dense row-major matrix of doubles.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);
    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const
    {
        return std::span<const double>(data_).subspan(r * cols_, cols_);
    }
    std::span<const double> data() const noexcept { return data_; }
    std::vector<std::vector<double>> to_rows() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Service demands D(c, k): classes by rows, stations by columns. Zero means unused.
class DemandMatrix {
  public:
    DemandMatrix() = default;
    explicit DemandMatrix(Matrix values);
    DemandMatrix(std::initializer_list<std::initializer_list<double>> rows)
        : DemandMatrix(Matrix(rows))
    {
    }

    std::size_t classes() const noexcept { return values_.rows(); }
    std::size_t stations() const noexcept { return values_.cols(); }
    double operator()(std::size_t c, std::size_t k) const { return values_(c, k); }
    std::span<const double> row(std::size_t c) const { return values_.row(c); }
    const Matrix& values() const noexcept { return values_; }

    friend bool operator==(const DemandMatrix&, const DemandMatrix&) = default;

  private:
    Matrix values_;
};

/**
 * Predicted response times.
 *
 * `per_station(c, k)` is the contribution of station k to the class-c response,
 * i.e. N_k times the per-instance residence time; each row sums to `per_class[c]`.
 */
struct ResponseTimes {
    std::vector<double> per_class;
    Matrix per_station;
};

/**
 * Monitored state from which every prediction is made.
 *
 * Demands and utilizations are per instance at `ref_config`. The constructor
 * checks that utilizations agree with sum_c rate_c * demand(c, k).
 */
class BaselineSnapshot {
  public:
    BaselineSnapshot() = default;
    BaselineSnapshot(Configuration ref_config, ArrivalRates rates, DemandMatrix demands_ref,
                     UtilizationVector utilizations_ref);

    /// Builds a snapshot whose utilizations are computed from rates and demands.
    static BaselineSnapshot from_demands(Configuration ref_config, ArrivalRates rates,
                                         DemandMatrix demands_ref);

    std::size_t classes() const noexcept { return demands_.classes(); }
    std::size_t stations() const noexcept { return demands_.stations(); }

    const Configuration& ref_config() const noexcept { return ref_; }
    const ArrivalRates& rates() const noexcept { return rates_; }
    const DemandMatrix& demands_ref() const noexcept { return demands_; }
    const UtilizationVector& utilizations_ref() const noexcept { return utilizations_; }

  private:
    Configuration ref_;
    ArrivalRates rates_;
    DemandMatrix demands_;
    UtilizationVector utilizations_;
};

/// Absolute-or-relative closeness with the library-wide 1e-9 default.
bool nearly_equal(double a, double b, double tol = 1e-9) noexcept;

} // namespace qnas

#endif // QNAS_TYPES_HPP
