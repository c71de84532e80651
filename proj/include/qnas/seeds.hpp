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

#ifndef QNAS_SEEDS_HPP
#define QNAS_SEEDS_HPP

#include <cstdint>
#include <string_view>

namespace qnas {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Sub-seed for a named component ("workload", "demands", "noise", "des", ...).
/// Stable across platforms and builds.
std::uint64_t derive_seed(std::uint64_t master, std::string_view component) noexcept;

/// Sub-seed for an indexed stream of a component, e.g. per-step noise.
std::uint64_t derive_seed(std::uint64_t master, std::string_view component,
                          std::uint64_t index) noexcept;

} // namespace qnas

#endif // QNAS_SEEDS_HPP
