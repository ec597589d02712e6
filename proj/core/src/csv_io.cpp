#include "noma/csv_io.hpp"

#include "noma/errors.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace noma {
namespace {

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

mc::Scheme scheme_from(const std::string& s, int line) {
    if (s == "fpa") return mc::Scheme::FPA;
    if (s == "fpa_isic") return mc::Scheme::FPA_ISIC;
    if (s == "dpa") return mc::Scheme::DPA;
    if (s == "oma") return mc::Scheme::OMA;
    throw validation_error("parse_csv: line " + std::to_string(line) + ": unknown scheme '" + s + "'");
}

Method method_from(const std::string& s, int line) {
    if (s == "analytic") return Method::CLOSED_FORM;
    if (s == "quadrature") return Method::QUADRATURE_ORACLE;
    if (s == "mc") return Method::MONTE_CARLO;
    throw validation_error("parse_csv: line " + std::to_string(line) + ": unknown method '" + s + "'");
}

double parse_field_double(const std::string& s, int line, const char* what) {
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size())
        throw validation_error("parse_csv: line " + std::to_string(line) + ": bad " + what +
                               " '" + s + "'");
    return x;
}

std::uint64_t parse_field_u64(const std::string& s, int line, const char* what) {
    char* end = nullptr;
    errno = 0;
    const unsigned long long x = std::strtoull(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE)
        throw validation_error("parse_csv: line " + std::to_string(line) + ": bad " + what +
                               " '" + s + "'");
    return static_cast<std::uint64_t>(x);
}

} // namespace

const char* const kCsvHeader = "sweep_param,value,scheme,user,method,outage,stderr,trials,seed,J";

std::string format_csv(const std::vector<ResultRow>& rows) {
    if (rows.empty()) throw validation_error("format_csv: no rows");
    std::string out = kCsvHeader;
    out += '\n';
    for (const ResultRow& r : rows) {
        out += r.sweep_param;
        out += ',';
        out += fmt_double(r.value);
        out += ',';
        out += scheme_name(r.scheme);
        out += ',';
        out += std::to_string(r.user);
        out += ',';
        out += method_name(r.method);
        out += ',';
        if (r.error.empty()) out += fmt_double(r.outage); // error rows leave outage empty
        out += ',';
        if (r.method == Method::MONTE_CARLO) out += fmt_double(r.std_err);
        out += ',';
        if (r.method == Method::MONTE_CARLO) out += std::to_string(r.trials);
        out += ',';
        if (r.method == Method::MONTE_CARLO) out += std::to_string(r.seed);
        out += ',';
        out += std::to_string(r.j);
        out += '\n';
    }
    return out;
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
    const std::string text = format_csv(rows);
    std::ofstream out(path, std::ios::binary); // binary: LF endings everywhere
    if (!out) throw validation_error("emit_csv: cannot open for writing: " + path);
    out << text;
    out.flush();
    if (!out) throw validation_error("emit_csv: write failed: " + path);
}

std::vector<ResultRow> parse_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("parse_csv: cannot open: " + path);

    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw validation_error("parse_csv: missing or wrong header in " + path);

    std::vector<ResultRow> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::string::size_type pos = 0;
        while (pos <= line.size()) {
            const auto comma = line.find(',', pos);
            const auto end = (comma == std::string::npos) ? line.size() : comma;
            f.push_back(line.substr(pos, end - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (f.size() != 10)
            throw validation_error("parse_csv: line " + std::to_string(lineno) + ": expected 10 fields, got " +
                                   std::to_string(f.size()));
        ResultRow r;
        r.sweep_param = f[0];
        r.value = parse_field_double(f[1], lineno, "value");
        r.scheme = scheme_from(f[2], lineno);
        r.user = static_cast<int>(parse_field_u64(f[3], lineno, "user"));
        r.method = method_from(f[4], lineno);
        if (f[5].empty()) {
            r.outage = std::numeric_limits<double>::quiet_NaN();
            r.error = "unsupported";
        } else {
            r.outage = parse_field_double(f[5], lineno, "outage");
        }
        r.std_err = f[6].empty() ? 0.0 : parse_field_double(f[6], lineno, "stderr");
        r.trials = f[7].empty() ? 0 : parse_field_u64(f[7], lineno, "trials");
        r.seed = f[8].empty() ? 0 : parse_field_u64(f[8], lineno, "seed");
        r.j = static_cast<int>(parse_field_u64(f[9], lineno, "J"));
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw validation_error("parse_csv: no data rows in " + path);
    return rows;
}

} // namespace noma
