#include "tracelab/csv.hpp"

#include <charconv>
#include <cstdio>

#include "tracelab/errors.hpp"

namespace tracelab {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::ofstream open_csv(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

CcdfTable read_ccdf_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    std::string line;
    std::size_t line_no = 0;
    CcdfTable table;
    auto parse_double = [&](const std::string& field) {
        double v = 0.0;
        const char* begin = field.data();
        const char* end = begin + field.size();
        auto [p, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc{} || p != end)
            throw MalformedLine("line " + std::to_string(line_no) + ": bad number '" + field + "'");
        return v;
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1) {
            if (line != "x,prob")
                throw MalformedLine("line 1: expected header 'x,prob', got '" + line + "'");
            continue;
        }
        auto fields = split_csv_line(line);
        if (fields.size() != 2)
            throw MalformedLine("line " + std::to_string(line_no) + ": expected 2 fields");
        table.points.push_back({parse_double(fields[0]), parse_double(fields[1])});
    }
    if (table.points.empty()) throw EmptyInput("no data rows in " + path.string());
    return table;
}

}  // namespace tracelab
