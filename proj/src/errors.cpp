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

#include <sstream>

namespace qnas {

std::string format_indices(const std::vector<std::size_t>& indices)
{
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (i > 0) {
            out << ", ";
        }
        out << indices[i] + 1;
    }
    out << '}';
    return out.str();
}

OverloadedStation::OverloadedStation(std::vector<std::size_t> stations, const std::string& what)
    : Error(what + " (stations " + format_indices(stations) + ")"), stations_(std::move(stations))
{
}

InfeasibleConfiguration::InfeasibleConfiguration(std::vector<std::size_t> stations)
    : Error("InfeasibleConfiguration: instance count at or below the capacity floor at stations " +
            format_indices(stations)),
      stations_(std::move(stations))
{
}

namespace {
std::string unattainable_message(std::size_t c, double threshold, double floor)
{
    std::ostringstream out;
    out << "UnattainableSla: class " << c + 1 << " threshold " << threshold
        << " does not exceed its asymptotic response floor " << floor;
    return out.str();
}
} // namespace

UnattainableSla::UnattainableSla(std::size_t workflow_class, double threshold, double floor)
    : Error(unattainable_message(workflow_class, threshold, floor)), class_(workflow_class),
      threshold_(threshold), floor_(floor)
{
}

UnattainableSla::UnattainableSla(const UnattainableSla& cause, std::size_t step)
    : Error("step " + std::to_string(step) + ": " + cause.what()), class_(cause.class_),
      threshold_(cause.threshold_), floor_(cause.floor_), step_(step)
{
}

IterationCap::IterationCap(std::size_t cap)
    : Error("IterationCap: acquire exceeded " + std::to_string(cap) + " iterations"), cap_(cap)
{
}

} // namespace qnas
