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

#ifndef QNAS_CLI_CSV_HPP
#define QNAS_CLI_CSV_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace qnas::cli {

/// Floating values are written with 9 significant digits.
std::string format_real(double value);

/**
 * CSV document: one `#`-prefixed metadata line, a header row, then data rows.
 */
class CsvTable {
  public:
    CsvTable(std::string metadata, std::vector<std::string> header);

    class Row {
      public:
        Row& add(std::string_view text);
        Row& add(double value);
        Row& add(std::int64_t value);
        Row& add(std::uint64_t value);
        Row& add(int value) { return add(static_cast<std::int64_t>(value)); }
        Row& empty(std::size_t count = 1);

      private:
        friend class CsvTable;
        std::vector<std::string> cells_;
    };

    void push(Row row);
    std::size_t columns() const noexcept { return header_.size(); }
    std::string str() const;

  private:
    std::string metadata_;
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Writes to a sibling temporary file and renames it into place.
void write_atomically(const std::filesystem::path& path, const std::string& contents);

} // namespace qnas::cli

#endif // QNAS_CLI_CSV_HPP
