#include "moela/io.hpp"

#include "moela/types.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace moela::io {

std::size_t CsvTable::column(std::string_view name) const
{
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return i;
        }
    }
    throw Error(ErrorCode::Schema, "missing CSV column '" + std::string(name) + "'");
}

bool CsvTable::has_column(std::string_view name) const
{
    for (auto const& h : header) {
        if (h == name) {
            return true;
        }
    }
    return false;
}

std::string format_double(double value)
{
    if (std::isnan(value)) {
        return "NA";
    }
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) {
        throw Error(ErrorCode::Contract, "cannot format double");
    }
    return std::string(buf.data(), ptr);
}

double parse_double(std::string_view text)
{
    if (text == "NA" || text == "nan") {
        return std::nan("");
    }
    if (text == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (text == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    double value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(ErrorCode::Schema, "not a number: '" + std::string(text) + "'");
    }
    return value;
}

long long parse_int(std::string_view text)
{
    long long value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(ErrorCode::Schema, "not an integer: '" + std::string(text) + "'");
    }
    return value;
}

namespace {
    void append_row(std::string& out, const std::vector<std::string>& cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            if (cells[i].find_first_of(",\"\r\n") != std::string::npos) {
                throw Error(ErrorCode::Contract, "CSV cell needs quoting, which is not supported: '" + cells[i] + "'");
            }
            out += cells[i];
        }
        out += '\n';
    }

    std::vector<std::string> split_line(std::string_view line)
    {
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            auto pos = line.find(',', start);
            if (pos == std::string_view::npos) {
                cells.emplace_back(line.substr(start));
                break;
            }
            cells.emplace_back(line.substr(start, pos - start));
            start = pos + 1;
        }
        return cells;
    }
} // namespace

std::string to_csv_string(const CsvTable& table)
{
    std::string out;
    append_row(out, table.header);
    for (auto const& row : table.rows) {
        append_row(out, row);
    }
    return out;
}

CsvTable parse_csv(std::string_view text)
{
    CsvTable table;
    bool first = true;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        auto line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        start = end + 1;
        if (line.empty()) {
            continue;
        }
        auto cells = split_line(line);
        if (first) {
            table.header = std::move(cells);
            first = false;
            continue;
        }
        if (cells.size() != table.header.size()) {
            throw Error(ErrorCode::Schema, "CSV row has " + std::to_string(cells.size()) + " cells, header has "
                    + std::to_string(table.header.size()));
        }
        table.rows.push_back(std::move(cells));
    }
    if (first) {
        throw Error(ErrorCode::Schema, "empty CSV input");
    }
    return table;
}

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text)
{
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

CsvTable read_csv(const std::filesystem::path& path)
{
    return parse_csv(read_text(path));
}

void write_csv(const std::filesystem::path& path, const CsvTable& table)
{
    write_text(path, to_csv_string(table));
}

nlohmann::json read_json(const std::filesystem::path& path)
{
    auto text = read_text(path);
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Schema, "invalid JSON in '" + path.string() + "': " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const nlohmann::json& value)
{
    write_text(path, value.dump(2) + "\n");
}

} // namespace moela::io
