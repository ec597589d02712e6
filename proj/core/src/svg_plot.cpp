#include "noma/svg_plot.hpp"

#include "noma/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace noma {
namespace {

constexpr double kYFloor = 1e-8; // log-axis clamp for outage values
constexpr double kW = 880, kH = 560;
constexpr double kL = 80, kR = 650, kT = 46, kB = 500; // plot box edges

const char* const kPalette[8] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

struct Pt {
    double px, py;
    bool clamped;
};

struct Series {
    mc::Scheme scheme;
    int user;
    Method method;
    int idx;
    std::vector<Pt> pts;
};

double nice_step(double range) {
    const double raw = range / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    const double step = norm < 1.5 ? 1.0 : norm < 3.0 ? 2.0 : norm < 7.0 ? 5.0 : 10.0;
    return step * mag;
}

void marker(std::ostringstream& os, int shape, double x, double y, const char* color, bool hollow) {
    const std::string fill = hollow ? "none" : color;
    const std::string stroke = hollow ? std::string("stroke=\"") + color + "\" stroke-width=\"1.4\" " : "";
    switch (shape % 4) {
        case 0:
            os << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"4\" fill=\"" << fill
               << "\" " << stroke << "/>\n";
            break;
        case 1:
            os << "<rect x=\"" << fmt(x - 3.6) << "\" y=\"" << fmt(y - 3.6)
               << "\" width=\"7.2\" height=\"7.2\" fill=\"" << fill << "\" " << stroke << "/>\n";
            break;
        case 2:
            os << "<path d=\"M" << fmt(x) << " " << fmt(y - 5) << " L" << fmt(x + 5) << " " << fmt(y)
               << " L" << fmt(x) << " " << fmt(y + 5) << " L" << fmt(x - 5) << " " << fmt(y)
               << " Z\" fill=\"" << fill << "\" " << stroke << "/>\n";
            break;
        default:
            os << "<path d=\"M" << fmt(x) << " " << fmt(y - 4.8) << " L" << fmt(x + 4.4) << " "
               << fmt(y + 3.8) << " L" << fmt(x - 4.4) << " " << fmt(y + 3.8) << " Z\" fill=\""
               << fill << "\" " << stroke << "/>\n";
    }
}

} // namespace

std::string format_plot(const std::vector<ResultRow>& rows, const SweepSpec& sweep,
                        const std::string& title) {
    if (rows.empty()) throw validation_error("format_plot: no rows");

    // x range over all rows (error rows still carry a grid value)
    double xmin = rows.front().value, xmax = rows.front().value;
    bool log_ok = true;
    for (const ResultRow& r : rows) {
        xmin = std::min(xmin, r.value);
        xmax = std::max(xmax, r.value);
        if (!(r.value > 0.0)) log_ok = false;
    }
    const bool logx = sweep.log_axis && log_ok;
    double txmin = logx ? std::log10(xmin) : xmin;
    double txmax = logx ? std::log10(xmax) : xmax;
    if (txmax - txmin < 1e-12) { // degenerate single-value axis
        txmin -= 0.5;
        txmax += 0.5;
    }

    const auto px = [&](double x) {
        const double t = logx ? std::log10(x) : x;
        return kL + (t - txmin) / (txmax - txmin) * (kR - kL);
    };
    const auto py = [&](double y) {
        const double ly = std::log10(std::min(std::max(y, kYFloor), 1.0));
        return kB + ly / 8.0 * (kB - kT); // ly in [-8, 0]
    };

    // Group rows into series keyed by (scheme, user, method), first-seen order.
    std::vector<Series> series;
    std::map<std::tuple<int, int, int>, std::size_t> index;
    for (const ResultRow& r : rows) {
        if (!r.error.empty() || !(r.outage == r.outage)) continue; // skip error/NaN rows
        const auto key = std::make_tuple(static_cast<int>(r.scheme), r.user, static_cast<int>(r.method));
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, series.size()).first;
            series.push_back({r.scheme, r.user, r.method, static_cast<int>(series.size()), {}});
        }
        const bool clamped = r.outage < kYFloor;
        series[it->second].pts.push_back({px(r.value), py(r.outage), clamped});
    }

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
       << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n";
    os << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << (kL + kR) / 2 << "\" y=\"26\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"16\" fill=\"#222\">"
       << escape_xml(title) << "</text>\n";

    // y grid: one line per decade, labeled 1 .. 1e-8
    os << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#444\">\n";
    for (int k = 0; k >= -8; --k) {
        const double y = py(std::pow(10.0, k));
        os << "<line x1=\"" << kL << "\" y1=\"" << fmt(y) << "\" x2=\"" << kR << "\" y2=\"" << fmt(y)
           << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
        os << "<text x=\"" << kL - 8 << "\" y=\"" << fmt(y + 4) << "\" text-anchor=\"end\">"
           << (k == 0 ? std::string("1") : "1e" + std::to_string(k)) << "</text>\n";
    }
    // x ticks: decades when log, nice steps otherwise
    if (logx) {
        for (int k = static_cast<int>(std::ceil(txmin - 1e-9)); k <= std::floor(txmax + 1e-9); ++k) {
            const double x = kL + (k - txmin) / (txmax - txmin) * (kR - kL);
            os << "<line x1=\"" << fmt(x) << "\" y1=\"" << kT << "\" x2=\"" << fmt(x) << "\" y2=\""
               << kB << "\" stroke=\"#eee\" stroke-width=\"1\"/>\n";
            os << "<text x=\"" << fmt(x) << "\" y=\"" << kB + 18 << "\" text-anchor=\"middle\">"
               << (k == 0 ? std::string("1") : "1e" + std::to_string(k)) << "</text>\n";
        }
    } else {
        const double step = nice_step(txmax - txmin);
        for (double t = std::ceil(txmin / step - 1e-9) * step; t <= txmax + 1e-9 * step; t += step) {
            const double x = kL + (t - txmin) / (txmax - txmin) * (kR - kL);
            os << "<line x1=\"" << fmt(x) << "\" y1=\"" << kT << "\" x2=\"" << fmt(x) << "\" y2=\""
               << kB << "\" stroke=\"#eee\" stroke-width=\"1\"/>\n";
            os << "<text x=\"" << fmt(x) << "\" y=\"" << kB + 18 << "\" text-anchor=\"middle\">"
               << fmt(std::abs(t) < step * 1e-9 ? 0.0 : t) << "</text>\n";
        }
    }
    os << "</g>\n";

    os << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kR - kL << "\" height=\""
       << kB - kT << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";
    os << "<text x=\"" << (kL + kR) / 2 << "\" y=\"" << kB + 40
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#222\">"
       << escape_xml(sweep.param) << "</text>\n";
    os << "<text x=\"24\" y=\"" << (kT + kB) / 2
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#222\" "
          "transform=\"rotate(-90 24 "
       << (kT + kB) / 2 << ")\">outage probability</text>\n";

    // series: analytic = solid polyline (hollow marks on clamped points);
    // mc = markers only, hollow when clamped
    for (const Series& s : series) {
        const char* color = kPalette[s.idx % 8];
        if (s.pts.empty()) continue;
        if (s.method == Method::MONTE_CARLO || s.pts.size() == 1) {
            for (const Pt& p : s.pts) marker(os, s.idx, p.px, p.py, color, p.clamped);
        } else {
            os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"";
            for (const Pt& p : s.pts) os << fmt(p.px) << "," << fmt(p.py) << " ";
            os << "\"/>\n";
            for (const Pt& p : s.pts)
                if (p.clamped) marker(os, s.idx, p.px, p.py, color, true);
        }
    }

    // legend
    os << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#222\">\n";
    double ly = kT + 14;
    for (const Series& s : series) {
        const char* color = kPalette[s.idx % 8];
        if (s.method == Method::MONTE_CARLO) {
            marker(os, s.idx, kR + 22, ly - 4, color, false);
        } else {
            os << "<line x1=\"" << kR + 10 << "\" y1=\"" << fmt(ly - 4) << "\" x2=\"" << kR + 34
               << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"1.8\"/>\n";
        }
        os << "<text x=\"" << kR + 42 << "\" y=\"" << fmt(ly) << "\">" << scheme_name(s.scheme)
           << " u" << s.user << " " << method_name(s.method) << "</text>\n";
        ly += 20;
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

void emit_plot(const std::vector<ResultRow>& rows, const SweepSpec& sweep,
               const std::string& title, const std::string& path) {
    const std::string text = format_plot(rows, sweep, title);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error("emit_plot: cannot open for writing: " + path);
    out << text;
    out.flush();
    if (!out) throw validation_error("emit_plot: write failed: " + path);
}

} // namespace noma
