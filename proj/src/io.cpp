#include "adiavac/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "adiavac/errors.hpp"

namespace adiavac {

std::string fmt_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_shortest(double x) {
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

double parse_double(const std::string& s, const std::string& what) {
    if (s.empty()) throw Error(ErrorKind::ParseError, "empty number for " + what);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size())
        throw Error(ErrorKind::ParseError, "bad number '" + s + "' for " + what);
    return v;
}

namespace {

std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

std::map<std::string, std::string> read_key_value_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = strip(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::ParseError,
                        path + ":" + std::to_string(lineno) + ": expected key=value");
        kv[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
    }
    return kv;
}

std::pair<std::vector<double>, std::vector<double>> read_two_column_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
    std::vector<double> c0, c1;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = strip(line);
        if (s.empty() || s[0] == '#') continue;
        const auto cells = split_csv_line(s);
        if (cells.size() != 2)
            throw Error(ErrorKind::ParseError,
                        path + ":" + std::to_string(lineno) + ": expected two columns");
        char* e0 = nullptr;
        char* e1 = nullptr;
        const std::string a = strip(cells[0]), b = strip(cells[1]);
        const double v0 = std::strtod(a.c_str(), &e0);
        const double v1 = std::strtod(b.c_str(), &e1);
        const bool numeric = !a.empty() && !b.empty() && e0 == a.c_str() + a.size() &&
                             e1 == b.c_str() + b.size();
        if (!numeric) {
            if (c0.empty()) continue;  // header line
            throw Error(ErrorKind::ParseError,
                        path + ":" + std::to_string(lineno) + ": non-numeric row");
        }
        c0.push_back(v0);
        c1.push_back(v1);
    }
    return {std::move(c0), std::move(c1)};
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    size_t start = 0;
    while (true) {
        const size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return cells;
}

} // namespace adiavac
