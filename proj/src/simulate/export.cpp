#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "repulse/simulate.hpp"

namespace repulse {

namespace {

std::string num(double v, const char* fmt = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << body;
    if (!out.flush()) throw std::runtime_error("write failed for " + path);
}

}  // namespace

void write_csv(const Configuration& cfg, const std::string& path) {
    std::string body = "position\n";
    for (double p : cfg.positions) body += num(p, "%.17g") + "\n";
    write_file(path, body);
}

std::vector<double> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != "position") throw std::runtime_error(path + ": expected header 'position'");
    std::vector<double> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t used = 0;
        double v = std::stod(line, &used);
        if (used != line.size()) throw std::runtime_error(path + ": bad number '" + line + "'");
        out.push_back(v);
    }
    return out;
}

std::string render_svg(const Configuration& cfg, const ClusterReport& report) {
    const double L = cfg.L > 0.0 ? cfg.L : 1.0;
    const double half = L / 2.0;
    const double x0 = -half, w = L;
    const double h = w * 120.0 / 900.0;
    const double y0 = -h / 2.0;
    const double stroke = L / 900.0;
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"120\" viewBox=\"" << num(x0) << ' '
      << num(y0) << ' ' << num(w) << ' ' << num(h) << "\">\n";
    s << "<line x1=\"" << num(-half) << "\" y1=\"0\" x2=\"" << num(half) << "\" y2=\"0\" stroke=\"black\" stroke-width=\""
      << num(stroke) << "\"/>\n";

    // ticks at a 1-2-5 step giving about ten labels
    double raw = L / 10.0, mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = raw / mag < 1.5 ? mag : raw / mag < 3.5 ? 2 * mag : raw / mag < 7.5 ? 5 * mag : 10 * mag;
    const double tick = h * 0.06, font = h * 0.12;
    for (double t = std::ceil(-half / step) * step; t <= half + 1e-9 * L; t += step) {
        double v = std::fabs(t) < 1e-12 * L ? 0.0 : t;
        s << "<line x1=\"" << num(v) << "\" y1=\"" << num(-tick) << "\" x2=\"" << num(v) << "\" y2=\"" << num(tick)
          << "\" stroke=\"black\" stroke-width=\"" << num(stroke) << "\"/>\n";
        s << "<text x=\"" << num(v) << "\" y=\"" << num(tick + font) << "\" font-size=\"" << num(font)
          << "\" text-anchor=\"middle\">" << num(v) << "</text>\n";
    }
    for (const Cluster& c : report.clusters) {
        double r = 0.1 * std::sqrt(static_cast<double>(c.count));
        s << "<circle cx=\"" << num(c.center - half, "%.9g") << "\" cy=\"0\" r=\"" << num(r) << "\" fill=\"black\"/>\n";
    }
    s << "</svg>\n";
    return s.str();
}

void export_files(const Configuration& cfg, const ClusterReport& report, const std::string& path_csv,
                  const std::string& path_svg) {
    if (!path_csv.empty()) write_csv(cfg, path_csv);
    if (!path_svg.empty()) write_file(path_svg, render_svg(cfg, report));
}

}  // namespace repulse
