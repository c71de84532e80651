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

#include <qnas/cli/csv.hpp>
#include <qnas/errors.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qnas::cli {

std::string format_real(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

CsvTable::CsvTable(std::string metadata, std::vector<std::string> header)
    : metadata_(std::move(metadata)), header_(std::move(header))
{
}

CsvTable::Row& CsvTable::Row::add(std::string_view text)
{
    cells_.emplace_back(text);
    return *this;
}

CsvTable::Row& CsvTable::Row::add(double value)
{
    cells_.push_back(format_real(value));
    return *this;
}

CsvTable::Row& CsvTable::Row::add(std::int64_t value)
{
    cells_.push_back(std::to_string(value));
    return *this;
}

CsvTable::Row& CsvTable::Row::add(std::uint64_t value)
{
    cells_.push_back(std::to_string(value));
    return *this;
}

CsvTable::Row& CsvTable::Row::empty(std::size_t count)
{
    cells_.insert(cells_.end(), count, std::string{});
    return *this;
}

void CsvTable::push(Row row)
{
    if (row.cells_.size() != header_.size()) {
        throw Error("CSV row has " + std::to_string(row.cells_.size()) + " cells, header has " +
                    std::to_string(header_.size()));
    }
    rows_.push_back(std::move(row.cells_));
}

namespace {
void write_line(std::ostringstream& out, const std::vector<std::string>& cells)
{
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) {
            out << ',';
        }
        out << cells[i];
    }
    out << '\n';
}
} // namespace

std::string CsvTable::str() const
{
    std::ostringstream out;
    out << "# " << metadata_ << '\n';
    write_line(out, header_);
    for (const auto& row : rows_) {
        write_line(out, row);
    }
    return out.str();
}

void write_atomically(const std::filesystem::path& path, const std::string& contents)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot open " + tmp.string() + " for writing");
        }
        out << contents;
        if (!out.flush()) {
            throw Error("failed writing " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

} // namespace qnas::cli
