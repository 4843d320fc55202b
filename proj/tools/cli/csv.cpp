#include "csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cpjoint/error.hpp"

namespace cpjoint::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(std::string_view field) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    if (field.empty()) return std::nullopt;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) return std::nullopt;
    return value;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

Dataset parse_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split(line);

        std::vector<double> row;
        row.reserve(fields.size());
        std::optional<std::size_t> bad_column;
        for (std::size_t c = 0; c < fields.size(); ++c) {
            const auto v = parse_number(fields[c]);
            if (!v) {
                bad_column = c;
                break;
            }
            row.push_back(*v);
        }
        if (bad_column) {
            if (first_content) {  // header row
                first_content = false;
                continue;
            }
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ", column " +
                                                   std::to_string(*bad_column + 1) +
                                                   ": not a number: '" +
                                                   std::string(trim(fields[*bad_column])) + "'");
        }
        first_content = false;
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + " has " +
                                                   std::to_string(row.size()) +
                                                   " fields, expected " +
                                                   std::to_string(rows.front().size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error(ErrorCode::ParseError, "no numeric rows found");
    return dataset_from_matrix(rows);
}

Dataset read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    return parse_csv(in);
}

void write_csv(std::ostream& out, const Dataset& data) {
    char buf[64];
    for (std::size_t i = 0; i < data.n(); ++i) {
        for (std::size_t l = 0; l < data.p(); ++l) {
            if (l) out << ',';
            const auto res = std::to_chars(buf, buf + sizeof buf, data(i, l));
            out.write(buf, res.ptr - buf);
        }
        out << '\n';
    }
}

}  // namespace cpjoint::cli
