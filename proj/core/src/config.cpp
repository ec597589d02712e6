#include "noma/config.hpp"

#include "noma/errors.hpp"

#include <cerrno>
#include <climits>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace noma {
namespace {

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

std::string trim(const std::string& s) {
    const char* ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string::size_type pos = 0;
    while (pos <= s.size()) {
        const auto comma = s.find(',', pos);
        const auto end = (comma == std::string::npos) ? s.size() : comma;
        out.push_back(trim(s.substr(pos, end - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    std::ostringstream os;
    os << origin << ":" << line << ": " << msg;
    throw validation_error(os.str());
}

// One parsed section: keys are consumed by name; whatever is left unused at
// the end is an unknown key and is reported with its line number.
struct Section {
    std::string name;
    const std::string* origin = nullptr;
    std::map<std::string, Entry> entries;

    bool has(const std::string& key) const { return entries.count(key) != 0; }

    const Entry* take(const std::string& key) {
        auto it = entries.find(key);
        if (it == entries.end()) return nullptr;
        it->second.used = true;
        return &it->second;
    }

    const Entry& require(const std::string& key) {
        const Entry* e = take(key);
        if (!e) fail(*origin, 0, "missing required key '" + key + "' in [" + name + "]");
        return *e;
    }

    void reject_unknown() const {
        const Entry* first = nullptr;
        std::string first_key;
        for (const auto& [key, e] : entries) {
            if (e.used) continue;
            if (!first || e.line < first->line) {
                first = &e;
                first_key = key;
            }
        }
        if (first)
            fail(*origin, first->line, "unknown key '" + first_key + "' in [" + name + "]");
    }
};

double parse_double(const Entry& e, const std::string& origin, const std::string& key) {
    const std::string v = e.value;
    if (v.empty()) fail(origin, e.line, "empty value for '" + key + "'");
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end != v.c_str() + v.size()) fail(origin, e.line, "'" + key + "' is not a number: '" + v + "'");
    if (!std::isfinite(x)) fail(origin, e.line, "'" + key + "' must be finite");
    return x;
}

std::uint64_t parse_u64(const Entry& e, const std::string& origin, const std::string& key) {
    const std::string v = e.value;
    if (v.empty() || v[0] == '-' || v[0] == '+')
        fail(origin, e.line, "'" + key + "' must be an unsigned integer");
    char* end = nullptr;
    errno = 0;
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (end != v.c_str() + v.size() || errno == ERANGE)
        fail(origin, e.line, "'" + key + "' must be an unsigned integer: '" + v + "'");
    return static_cast<std::uint64_t>(x);
}

int parse_int(const Entry& e, const std::string& origin, const std::string& key) {
    const std::string v = e.value;
    char* end = nullptr;
    errno = 0;
    const long x = v.empty() ? 0 : std::strtol(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE || x < INT_MIN || x > INT_MAX)
        fail(origin, e.line, "'" + key + "' must be an integer: '" + v + "'");
    return static_cast<int>(x);
}

void read_params(Section& s, const std::string& origin, SystemParams& p, std::ostream* log) {
    p.ps_lin = db_to_linear(parse_double(s.require("p_s_db"), origin, "p_s_db"));
    p.sigma2_lin = db_to_linear(parse_double(s.require("noise_db"), origin, "noise_db"));
    p.delta = parse_double(s.require("delta"), origin, "delta");
    p.r1 = parse_double(s.require("r1"), origin, "r1");
    p.r2 = parse_double(s.require("r2"), origin, "r2");

    if (const Entry* e = s.take("eta")) {
        p.eta = parse_double(*e, origin, "eta");
    } else if (log) {
        *log << "notice: " << origin << ": eta not set; using default 0.7\n";
    }
    if (const Entry* e = s.take("xi")) p.xi = parse_double(*e, origin, "xi");
    if (const Entry* e = s.take("m")) p.m = parse_int(*e, origin, "m");
    if (const Entry* e = s.take("d")) p.d = parse_double(*e, origin, "d");
    if (const Entry* e = s.take("d1")) p.d1 = parse_double(*e, origin, "d1");
    if (const Entry* e = s.take("d2")) p.d2 = parse_double(*e, origin, "d2");
    if (const Entry* e = s.take("alpha")) p.alpha = parse_double(*e, origin, "alpha");
    if (const Entry* e = s.take("sigma_e2")) p.sigma_e2 = parse_double(*e, origin, "sigma_e2");
    if (const Entry* e = s.take("sigma_ic2")) p.sigma_ic2 = parse_double(*e, origin, "sigma_ic2");
    s.reject_unknown();
}

std::vector<double> resolve_grid(Section& s, const std::string& origin, bool& log_axis) {
    log_axis = false;
    const bool has_explicit = s.has("grid");
    const bool has_from = s.has("from"), has_to = s.has("to");
    const bool has_step = s.has("step"), has_points = s.has("points"), has_scale = s.has("scale");

    if (has_explicit) {
        const Entry& e = *s.take("grid");
        if (has_from || has_to || has_step || has_points || has_scale)
            fail(origin, e.line, "'grid' cannot be combined with from/to/step/points/scale");
        std::vector<double> grid;
        for (const std::string& tok : split_list(e.value)) {
            Entry v{tok, e.line, true};
            grid.push_back(parse_double(v, origin, "grid"));
        }
        if (grid.empty()) fail(origin, e.line, "'grid' must list at least one value");
        return grid;
    }

    if (!has_from || !has_to)
        fail(origin, 0, "[sweep] needs 'grid' or a from/to range");
    const Entry& ef = *s.take("from");
    const double from = parse_double(ef, origin, "from");
    const double to = parse_double(*s.take("to"), origin, "to");
    if (has_step == has_points)
        fail(origin, ef.line, "give exactly one of 'step' or 'points'");

    std::string scale = "linear";
    int scale_line = ef.line;
    if (const Entry* e = s.take("scale")) {
        scale = e->value;
        scale_line = e->line;
        if (scale != "linear" && scale != "log")
            fail(origin, e->line, "'scale' must be 'linear' or 'log'");
    }

    std::vector<double> grid;
    if (has_step) {
        const Entry& es = *s.take("step");
        if (scale == "log") fail(origin, scale_line, "'step' implies a linear grid");
        const double step = parse_double(es, origin, "step");
        if (!(step > 0.0)) fail(origin, es.line, "'step' must be > 0");
        if (to < from) fail(origin, es.line, "'to' must be >= 'from'");
        const auto n = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
        for (std::size_t i = 0; i < n; ++i) grid.push_back(from + static_cast<double>(i) * step);
    } else {
        const Entry& ep = *s.take("points");
        const int points = parse_int(ep, origin, "points");
        if (points < 2) fail(origin, ep.line, "'points' must be >= 2");
        if (!(from < to)) fail(origin, ep.line, "'from' must be < 'to'");
        if (scale == "log") {
            if (!(from > 0.0)) fail(origin, ep.line, "log scale needs 'from' > 0");
            log_axis = true;
            const double lf = std::log(from), lt = std::log(to);
            for (int i = 0; i < points; ++i)
                grid.push_back(std::exp(lf + (lt - lf) * i / (points - 1)));
        } else {
            for (int i = 0; i < points; ++i)
                grid.push_back(from + (to - from) * i / (points - 1));
        }
        grid.front() = from; // exact endpoints regardless of rounding
        grid.back() = to;
    }
    return grid;
}

void read_sweep(Section& s, const std::string& origin, SweepSpec& sw) {
    const Entry& ep = s.require("param");
    sw.param = ep.value;
    if (!is_sweepable_param(sw.param))
        fail(origin, ep.line,
             "'" + sw.param +
                 "' is not sweepable (use p_s_db, noise_db, delta, eta, sigma_e2, "
                 "sigma_ic2, d2, or alpha)");

    sw.grid = resolve_grid(s, origin, sw.log_axis);

    const Entry& es = s.require("schemes");
    sw.schemes.clear();
    unsigned seen = 0;
    for (const std::string& tok : split_list(es.value)) {
        mc::Scheme sc;
        if (tok == "fpa") sc = mc::Scheme::FPA;
        else if (tok == "fpa_isic") sc = mc::Scheme::FPA_ISIC;
        else if (tok == "dpa") sc = mc::Scheme::DPA;
        else if (tok == "oma") sc = mc::Scheme::OMA;
        else fail(origin, es.line, "unknown scheme '" + tok + "' (fpa, fpa_isic, dpa, oma)");
        seen |= mc::scheme_bit(sc);
    }
    if (seen == 0) fail(origin, es.line, "'schemes' must list at least one scheme");
    for (mc::Scheme sc : {mc::Scheme::FPA, mc::Scheme::FPA_ISIC, mc::Scheme::DPA, mc::Scheme::OMA})
        if (seen & mc::scheme_bit(sc)) sw.schemes.push_back(sc);

    sw.users = {1, 2};
    if (const Entry* e = s.take("users")) {
        bool u1 = false, u2 = false;
        for (const std::string& tok : split_list(e->value)) {
            if (tok == "1") u1 = true;
            else if (tok == "2") u2 = true;
            else fail(origin, e->line, "unknown user '" + tok + "' (1 or 2)");
        }
        sw.users.clear();
        if (u1) sw.users.push_back(1);
        if (u2) sw.users.push_back(2);
        if (sw.users.empty()) fail(origin, e->line, "'users' must list at least one user");
    }

    if (const Entry* e = s.take("methods")) {
        sw.method_analytic = sw.method_mc = false;
        for (const std::string& tok : split_list(e->value)) {
            if (tok == "analytic") sw.method_analytic = true;
            else if (tok == "mc") sw.method_mc = true;
            else fail(origin, e->line, "unknown method '" + tok + "' (analytic or mc)");
        }
        if (!sw.method_analytic && !sw.method_mc)
            fail(origin, e->line, "'methods' must list at least one method");
    }

    if (const Entry* e = s.take("trials")) {
        sw.trials = parse_u64(*e, origin, "trials");
        if (sw.trials == 0) fail(origin, e->line, "'trials' must be >= 1");
    }
    if (const Entry* e = s.take("seed")) sw.seed = parse_u64(*e, origin, "seed");
    if (const Entry* e = s.take("j")) {
        sw.j = parse_int(*e, origin, "j");
        if (sw.j < 1 || sw.j > 65536) fail(origin, e->line, "'j' must be in [1, 65536]");
    }
    s.reject_unknown();
}

} // namespace

RunConfig parse_config(std::istream& in, const std::string& origin, std::ostream* log) {
    Section params{"params", &origin, {}};
    Section sweep{"sweep", &origin, {}};
    Section* current = nullptr;
    bool saw_params = false, saw_sweep = false;

    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string text = trim(raw);
        if (text.empty()) continue;

        if (text.front() == '[') {
            if (text == "[params]") {
                current = &params;
                saw_params = true;
            } else if (text == "[sweep]") {
                current = &sweep;
                saw_sweep = true;
            } else {
                fail(origin, line, "unknown section " + text + " (expected [params] or [sweep])");
            }
            continue;
        }

        const auto eq = text.find('=');
        if (eq == std::string::npos) fail(origin, line, "expected 'key = value', got '" + text + "'");
        if (!current) fail(origin, line, "key outside of any section (add [params] or [sweep])");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty()) fail(origin, line, "empty key");
        auto [it, inserted] = current->entries.emplace(key, Entry{value, line, false});
        if (!inserted)
            fail(origin, line,
                 "duplicate key '" + key + "' in [" + current->name + "] (first set on line " +
                     std::to_string(it->second.line) + ")");
    }

    if (!saw_params) fail(origin, 0, "missing [params] section");
    if (!saw_sweep) fail(origin, 0, "missing [sweep] section");

    RunConfig cfg;
    read_params(params, origin, cfg.params, log);
    read_sweep(sweep, origin, cfg.sweep);
    validate(cfg.params);
    return cfg;
}

RunConfig load_config(const std::string& path, std::ostream* log) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open config file: " + path);
    return parse_config(in, path, log);
}

} // namespace noma
