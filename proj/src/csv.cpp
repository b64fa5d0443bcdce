#include "jlg/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace jlg {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\n\r") != std::string::npos) {
            out << '"';
            for (const char c : f) {
                if (c == '"') out << '"';
                out << c;
            }
            out << '"';
        } else {
            out << f;
        }
    }
    out << '\n';
}

std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false, any = false;
    char c;
    while (in.get(c)) {
        if (quoted) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    field += '"';
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                quoted = true;
                any = true;
                break;
            case ',':
                row.push_back(std::move(field));
                field.clear();
                any = true;
                break;
            case '\r':
                break;
            case '\n':
                if (any || !field.empty() || !row.empty()) {
                    row.push_back(std::move(field));
                    field.clear();
                    rows.push_back(std::move(row));
                    row.clear();
                    any = false;
                }
                break;
            default:
                field += c;
                any = true;
                break;
        }
    }
    if (any || !field.empty() || !row.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

double parse_double_strict(const std::string& s, const char* what) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    double value = 0.0;
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last)
        throw std::invalid_argument(std::string(what) + ": bad number '" + s + "'");
    return value;
}

std::vector<std::string> split(const std::string& s, char delim) {
    std::vector<std::string> parts;
    std::string cur;
    for (const char c : s) {
        if (c == delim) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

} // namespace

std::vector<double> parse_grid(const std::string& descriptor) {
    if (descriptor.empty())
        throw std::invalid_argument("grid: empty descriptor");

    const auto expand = [](const std::string& desc, bool log_scale) {
        const auto parts = split(desc, ':');
        if (parts.size() != 4)
            throw std::invalid_argument("grid: expected <kind>:<a>:<b>:<count>");
        const double a = parse_double_strict(parts[1], "grid");
        const double b = parse_double_strict(parts[2], "grid");
        const long count = std::lround(parse_double_strict(parts[3], "grid"));
        if (count < 1)
            throw std::invalid_argument("grid: count must be at least 1");
        std::vector<double> vals(static_cast<std::size_t>(count));
        for (long i = 0; i < count; ++i) {
            const double t =
                count == 1 ? a : a + (b - a) * static_cast<double>(i) / (count - 1);
            vals[static_cast<std::size_t>(i)] = log_scale ? std::pow(10.0, t) : t;
        }
        return vals;
    };

    if (descriptor.rfind("linspace:", 0) == 0) return expand(descriptor, false);
    if (descriptor.rfind("logspace:", 0) == 0) return expand(descriptor, true);

    std::vector<double> vals;
    for (const std::string& part : split(descriptor, ','))
        vals.push_back(parse_double_strict(part, "grid"));
    if (vals.empty()) throw std::invalid_argument("grid: no values");
    return vals;
}

PointSet parse_points(std::istream& in) {
    PointSet ps;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;

        std::istringstream ls(line);
        std::vector<double> coords;
        std::string token;
        while (ls >> token) coords.push_back(parse_double_strict(token, "dataset"));
        if (coords.empty()) continue;

        if (ps.d == 0) {
            ps.d = static_cast<int>(coords.size());
        } else if (static_cast<int>(coords.size()) != ps.d) {
            throw std::invalid_argument(
                "dataset: ragged row (dimension differs from the first point)");
        }
        ps.coords.insert(ps.coords.end(), coords.begin(), coords.end());
        ++ps.n;
    }
    if (ps.n < 2)
        throw std::invalid_argument("dataset: need at least two points");
    return ps;
}

} // namespace jlg
