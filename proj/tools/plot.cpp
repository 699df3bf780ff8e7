#include "artifacts.hpp"
#include "cli.hpp"
#include "commands.hpp"

#include <amerta/errors.hpp>
#include <amerta/instance_io.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <ostream>

namespace amerta::cli {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 480;
constexpr int kLeft = 90;
constexpr int kRight = 170;
constexpr int kTop = 40;
constexpr int kBottom = 60;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string f2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }

    // 5% margin each side; a single value gets a margin from its magnitude.
    void pad() {
        double span = hi - lo;
        if (span <= 0.0) span = std::max(1.0, std::abs(lo) * 0.1);
        lo -= 0.05 * span;
        hi += 0.05 * span;
    }
};

} // namespace

std::string render_svg(const std::vector<PlotSeries>& series, const std::string& title) {
    Range rx;
    Range ry;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            rx.add(x);
            ry.add(y);
        }
    }
    if (rx.lo > rx.hi) throw ConfigError("plot: no points to draw");
    rx.pad();
    ry.pad();

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + (x - rx.lo) / (rx.hi - rx.lo) * pw; };
    auto sy = [&](double y) { return kTop + ph - (y - ry.lo) / (ry.hi - ry.lo) * ph; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kWidth) +
           "\" height=\"" + std::to_string(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty()) {
        svg += "<text x=\"" + f2(kLeft + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" +
               escape(title) + "</text>\n";
    }
    svg += "<rect x=\"" + std::to_string(kLeft) + "\" y=\"" + std::to_string(kTop) + "\" width=\"" +
           f2(pw) + "\" height=\"" + f2(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

    constexpr int ticks = 5;
    for (int t = 0; t <= ticks; ++t) {
        const double vx = rx.lo + (rx.hi - rx.lo) * t / ticks;
        const double vy = ry.lo + (ry.hi - ry.lo) * t / ticks;
        const double px = sx(vx);
        const double py = sy(vy);
        svg += "<line x1=\"" + f2(px) + "\" y1=\"" + f2(kTop + ph) + "\" x2=\"" + f2(px) +
               "\" y2=\"" + f2(kTop + ph + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + f2(px) + "\" y=\"" + f2(kTop + ph + 18) +
               "\" text-anchor=\"middle\">" + tick_label(vx) + "</text>\n";
        svg += "<line x1=\"" + f2(kLeft - 5) + "\" y1=\"" + f2(py) + "\" x2=\"" +
               std::to_string(kLeft) + "\" y2=\"" + f2(py) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + f2(kLeft - 8) + "\" y=\"" + f2(py + 4) +
               "\" text-anchor=\"end\">" + tick_label(vy) + "</text>\n";
    }
    svg += "<text x=\"" + f2(kLeft + pw / 2) + "\" y=\"" + std::to_string(kHeight - 15) +
           "\" text-anchor=\"middle\">T_max (s)</text>\n";
    svg += "<text transform=\"translate(20," + f2(kTop + ph / 2) +
           ") rotate(-90)\" text-anchor=\"middle\">E_total (kJ)</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % std::size(kPalette)];
        svg += "<g fill=\"" + std::string(color) + "\">\n";
        for (const auto& [x, y] : series[i].points) {
            svg += "<circle cx=\"" + f2(sx(x)) + "\" cy=\"" + f2(sy(y)) + "\" r=\"4\"/>\n";
        }
        svg += "</g>\n";
        const double ly = kTop + 10 + 20.0 * static_cast<double>(i);
        const double lx = kLeft + pw + 15;
        svg += "<circle cx=\"" + f2(lx) + "\" cy=\"" + f2(ly) + "\" r=\"4\" fill=\"" + color +
               "\"/>\n";
        svg += "<text x=\"" + f2(lx + 10) + "\" y=\"" + f2(ly + 4) + "\">" +
               escape(series[i].label) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

int cmd_plot(const PlotArgs& args, std::ostream& out, std::ostream& err) {
    std::vector<PlotSeries> series;
    for (const auto& file : args.fronts) {
        PlotSeries s;
        s.label = std::filesystem::path(file).stem().string();
        for (const auto& row : read_front_csv(file)) s.points.emplace_back(row.makespan, row.energy);
        series.push_back(std::move(s));
    }
    const std::string svg = render_svg(series, args.title);
    if (args.out.empty()) {
        out << svg;
    } else {
        write_text_file(args.out, svg);
        err << "plot: " << series.size() << " series -> " << args.out << "\n";
    }
    return ok;
}

} // namespace amerta::cli
