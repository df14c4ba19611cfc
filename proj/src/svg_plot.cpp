#include "relayser/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>

namespace relayser {
namespace {

constexpr double W = 860, H = 600;
constexpr double ML = 80, MR = 30, MT = 50, MB = 60;  // margins

struct Series {
    std::string label;
    std::string color;
    bool dashed = false;
    bool markers = false;
    std::vector<std::pair<double, double>> pts;  // (snr_db, ser), ser > 0
};

std::string num(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.6g", v);
    return b;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string render(const std::vector<Series>& series, const std::string& title,
                   const std::string& ylabel) {
    double xmin = 1e300, xmax = -1e300, lymin = 0.0, lymax = -300.0;
    for (const auto& s : series)
        for (auto [x, y] : s.pts) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            lymin = std::min(lymin, std::log10(y));
            lymax = std::max(lymax, std::log10(y));
        }
    if (xmax <= xmin) xmax = xmin + 1.0;
    double lo = std::floor(std::max(lymin, -16.0));
    double hi = std::ceil(std::min(std::max(lymax, lo + 1.0), 1.0));

    auto px = [&](double x) { return ML + (x - xmin) / (xmax - xmin) * (W - ML - MR); };
    auto py = [&](double y) {
        double ly = std::clamp(std::log10(y), lo, hi);
        return MT + (hi - ly) / (hi - lo) * (H - MT - MB);
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(W) + "\" height=\"" +
           num(H) + "\" viewBox=\"0 0 " + num(W) + " " + num(H) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + num(W / 2) + "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" +
           xml_escape(title) + "</text>\n";

    // decade gridlines and y tick labels
    for (double d = lo; d <= hi + 1e-9; d += 1.0) {
        double y = py(std::pow(10.0, d));
        svg += "<line x1=\"" + num(ML) + "\" y1=\"" + num(y) + "\" x2=\"" + num(W - MR) +
               "\" y2=\"" + num(y) + "\" stroke=\"#ddd\"/>\n";
        svg += "<text x=\"" + num(ML - 8) + "\" y=\"" + num(y + 4) +
               "\" text-anchor=\"end\" font-size=\"12\">1e" + num(d) + "</text>\n";
    }
    // x ticks every 5 dB
    double tick0 = std::ceil(xmin / 5.0) * 5.0;
    for (double x = tick0; x <= xmax + 1e-9; x += 5.0) {
        svg += "<line x1=\"" + num(px(x)) + "\" y1=\"" + num(MT) + "\" x2=\"" + num(px(x)) +
               "\" y2=\"" + num(H - MB) + "\" stroke=\"#eee\"/>\n";
        svg += "<text x=\"" + num(px(x)) + "\" y=\"" + num(H - MB + 18) +
               "\" text-anchor=\"middle\" font-size=\"12\">" + num(x) + "</text>\n";
    }
    svg += "<rect x=\"" + num(ML) + "\" y=\"" + num(MT) + "\" width=\"" + num(W - ML - MR) +
           "\" height=\"" + num(H - MT - MB) + "\" fill=\"none\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(W / 2) + "\" y=\"" + num(H - 16) +
           "\" text-anchor=\"middle\" font-size=\"13\">total SNR P/N0 [dB]</text>\n";
    svg += "<text x=\"20\" y=\"" + num(H / 2) + "\" font-size=\"13\" transform=\"rotate(-90 20 " +
           num(H / 2) + ")\" text-anchor=\"middle\">" + ylabel + "</text>\n";

    double ly = MT + 14;
    for (const auto& s : series) {
        if (s.pts.empty()) continue;
        std::string path;
        for (auto [x, y] : s.pts) path += (path.empty() ? "M" : " L") + num(px(x)) + " " + num(py(y));
        svg += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.8\"" +
               (s.dashed ? " stroke-dasharray=\"7 4\"" : "") + "/>\n";
        if (s.markers)
            for (auto [x, y] : s.pts)
                svg += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) +
                       "\" r=\"3\" fill=\"" + s.color + "\"/>\n";
        svg += "<line x1=\"" + num(W - MR - 150) + "\" y1=\"" + num(ly) + "\" x2=\"" +
               num(W - MR - 120) + "\" y2=\"" + num(ly) + "\" stroke=\"" + s.color +
               "\" stroke-width=\"2\"" + (s.dashed ? " stroke-dasharray=\"7 4\"" : "") + "/>\n";
        svg += "<text x=\"" + num(W - MR - 112) + "\" y=\"" + num(ly + 4) +
               "\" font-size=\"12\">" + s.label + "</text>\n";
        ly += 18;
    }
    svg += "</svg>\n";
    return svg;
}

void push_point(Series& s, double x, const std::optional<double>& v) {
    if (v && *v > 0.0) s.pts.emplace_back(x, *v);
}

}  // namespace

std::string sweep_to_svg(const std::vector<SweepRow>& rows, const std::string& title) {
    Series exact{"exact", "#1f77b4", false, false, {}};
    Series asym{"asymptotic", "#d62728", true, false, {}};
    Series mc{"monte carlo", "#2ca02c", false, true, {}};
    for (const auto& r : rows) {
        push_point(exact, r.snr_db, r.ser_exact);
        push_point(asym, r.snr_db, r.ser_asymptotic);
        push_point(mc, r.snr_db, r.ser_mc);
    }
    return render({exact, asym, mc}, title, "SER");
}

std::string opa_to_svg(const std::vector<OpaRow>& rows, const std::string& title) {
    Series epa_s{"EPA exact", "#1f77b4", false, false, {}};
    Series opa_s{"OPA exact", "#d62728", false, false, {}};
    for (const auto& r : rows) {
        if (r.ser_exact_epa > 0.0) epa_s.pts.emplace_back(r.snr_db, r.ser_exact_epa);
        if (r.ser_exact_opa > 0.0) opa_s.pts.emplace_back(r.snr_db, r.ser_exact_opa);
    }
    return render({epa_s, opa_s}, title, "SER");
}

}  // namespace relayser
