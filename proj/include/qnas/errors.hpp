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

#ifndef QNAS_ERRORS_HPP
#define QNAS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qnas {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Caller broke a precondition: dimension mismatch, negative value, bad option.
class UsageError : public Error {
  public:
    using Error::Error;
};

/// Per-instance utilization is at or above one, so residence times are undefined.
/// `stations` holds zero-based station indices (empty for scalar evaluations).
class OverloadedStation : public Error {
  public:
    explicit OverloadedStation(std::vector<std::size_t> stations, const std::string& what);
    explicit OverloadedStation(const std::string& what) : Error(what) {}

    const std::vector<std::size_t>& stations() const noexcept { return stations_; }

  private:
    std::vector<std::size_t> stations_;
};

/// Target configuration does not exceed the capacity floor at some used station.
class InfeasibleConfiguration : public Error {
  public:
    explicit InfeasibleConfiguration(std::vector<std::size_t> stations);

    const std::vector<std::size_t>& stations() const noexcept { return stations_; }

  private:
    std::vector<std::size_t> stations_;
};

/// A response-time threshold is at or below the class's asymptotic demand floor.
class UnattainableSla : public Error {
  public:
    UnattainableSla(std::size_t workflow_class, double threshold, double floor);
    /// Same failure, tagged with the (one-based) simulation step where it happened.
    UnattainableSla(const UnattainableSla& cause, std::size_t step);

    std::size_t workflow_class() const noexcept { return class_; }
    /// One-based step index, or zero when raised outside a simulation run.
    std::size_t step() const noexcept { return step_; }
    double threshold() const noexcept { return threshold_; }
    double floor() const noexcept { return floor_; }

  private:
    std::size_t class_;
    double threshold_;
    double floor_;
    std::size_t step_ = 0;
};

class IterationCap : public Error {
  public:
    explicit IterationCap(std::size_t cap);

    std::size_t cap() const noexcept { return cap_; }

  private:
    std::size_t cap_;
};

/// Formats zero-based indices as a one-based list, e.g. "{1, 3}".
std::string format_indices(const std::vector<std::size_t>& indices);

} // namespace qnas

#endif // QNAS_ERRORS_HPP
