#include "adjpair/figure.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <vector>

#include "adjpair/error.hpp"
#include "adjpair/format.hpp"

namespace adjpair {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 40.0;

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

struct Frame {
    double x0, x1, y0, y1;

    double px(double x) const { return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin); }
    double py(double y) const { return kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin); }
};

void pad(double& lo, double& hi) {
    const double extent = hi - lo;
    const double p = extent > 0.0 ? 0.08 * extent : std::max(1.0, 0.5 * std::abs(lo));
    lo -= p;
    hi += p;
}

std::string line_label(const LineParams& line) {
    if (line.t.is_infinite()) return "line y = " + format_real(-line.s);
    const double t = line.t.value();
    std::string lhs = "x";
    if (t != 0.0) {
        const std::string mag = std::abs(t) == 1.0 ? "" : format_real(std::abs(t));
        lhs += (t > 0.0 ? " - " : " + ") + mag + "y";
    }
    return "line " + lhs + " = " + format_real(line.s);
}

}  // namespace

std::string render_figure(const DiscreteModel& model, const Classification& c, std::size_t count) {
    count = std::max<std::size_t>(count, 2);
    const auto& gen = model.generator();
    std::vector<cplx> atoms;
    std::vector<bool> support;
    for (std::size_t k = 1; k <= count; ++k) {
        const cplx z = gen.atom(k);
        atoms.push_back(z);
        support.push_back(model.xi().entry(k, z) != cplx{});
    }
    Frame f{atoms[0].real(), atoms[0].real(), atoms[0].imag(), atoms[0].imag()};
    for (const cplx& z : atoms) {
        f.x0 = std::min(f.x0, z.real());
        f.x1 = std::max(f.x1, z.real());
        f.y0 = std::min(f.y0, z.imag());
        f.y1 = std::max(f.y1, z.imag());
    }
    pad(f.x0, f.x1);
    pad(f.y0, f.y1);

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
           "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
    svg += "<defs><clipPath id=\"plot\"><rect x=\"" + num(kMargin) + "\" y=\"" + num(kMargin) + "\" width=\"" +
           num(kWidth - 2 * kMargin) + "\" height=\"" + num(kHeight - 2 * kMargin) + "\"/></clipPath></defs>\n";
    svg += "<rect x=\"" + num(kMargin) + "\" y=\"" + num(kMargin) + "\" width=\"" + num(kWidth - 2 * kMargin) +
           "\" height=\"" + num(kHeight - 2 * kMargin) + "\" fill=\"none\" stroke=\"#888\"/>\n";
    if (f.y0 < 0.0 && f.y1 > 0.0)
        svg += "<line x1=\"" + num(f.px(f.x0)) + "\" y1=\"" + num(f.py(0.0)) + "\" x2=\"" + num(f.px(f.x1)) +
               "\" y2=\"" + num(f.py(0.0)) + "\" stroke=\"#ccc\"/>\n";
    if (f.x0 < 0.0 && f.x1 > 0.0)
        svg += "<line x1=\"" + num(f.px(0.0)) + "\" y1=\"" + num(f.py(f.y0)) + "\" x2=\"" + num(f.px(0.0)) +
               "\" y2=\"" + num(f.py(f.y1)) + "\" stroke=\"#ccc\"/>\n";

    std::string label = "canonical only (no line)";
    if (c.kind == Classification::Kind::LineFamily && c.line) {
        const LineParams& line = *c.line;
        double ax, ay, bx, by;
        if (line.t.is_infinite()) {
            ax = f.x0, bx = f.x1, ay = by = -line.s;
        } else {
            const double t = line.t.value();
            ay = f.y0, by = f.y1;
            ax = line.s + t * ay, bx = line.s + t * by;
        }
        svg += "<line clip-path=\"url(#plot)\" x1=\"" + num(f.px(ax)) + "\" y1=\"" + num(f.py(ay)) + "\" x2=\"" +
               num(f.px(bx)) + "\" y2=\"" + num(f.py(by)) + "\" stroke=\"#c33\" stroke-width=\"1.5\"/>\n";
        label = line_label(line);
    }
    for (std::size_t i = 0; i < atoms.size(); ++i)
        svg += "<circle cx=\"" + num(f.px(atoms[i].real())) + "\" cy=\"" + num(f.py(atoms[i].imag())) +
               "\" r=\"3.000\" fill=\"" + (support[i] ? "#235" : "none") + "\" stroke=\"#235\"/>\n";
    svg += "<text x=\"" + num(kMargin) + "\" y=\"" + num(kMargin - 12.0) + "\" font-family=\"sans-serif\" font-size=\"14\">" +
           label + "</text>\n";
    svg += "</svg>\n";
    return svg;
}

void emit_figure(const DiscreteModel& model, const Classification& c, const std::filesystem::path& path,
                 std::size_t count) {
    const std::string svg = render_figure(model, c, count);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cli", "cannot write " + path.string());
    out << svg;
    if (!out) throw Error(ErrorKind::IoError, "cli", "write failed for " + path.string());
}

}  // namespace adjpair
