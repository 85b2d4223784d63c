#include "basmajian/locus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "basmajian/errors.hpp"
#include "basmajian/holo_ifs.hpp"
#include "basmajian/io.hpp"
#include "basmajian/kernels.hpp"
#include "basmajian/thermo.hpp"

namespace basmajian {

double locus_lambda(Complex c, int depth) {
    try {
        QuadraticIFS ifs(c);
        auto levels = parallel::gap_series_levels(ifs, depth);
        std::vector<double> sums;
        for (const auto& l : levels) sums.push_back(l.abs_sum.value());
        double est = level_lambda1(sums).estimate;
        return std::isfinite(est) ? est : INFINITY;
    } catch (const Error&) {
        return INFINITY;
    }
}

LocusPoint trace_ray(double theta, const LocusConfig& cfg) {
    LocusPoint p;
    p.theta = theta;
    const Complex dir = std::polar(1.0, theta);
    auto lam = [&](double r) { return locus_lambda(r * dir, cfg.depth); };
    // Scan inward from r_max; the first radius with estimate >= 1 closes the bracket.
    double r_out = cfg.r_max, l_out = lam(r_out);
    if (!(l_out < 1.0)) return p;
    double r_in = 0.0, l_in = 0.0;
    const double step = std::log(cfg.r_max / cfg.r_min) / (cfg.grid - 1);
    bool bracketed = false;
    for (int k = 1; k < cfg.grid; ++k) {
        double r = cfg.r_max * std::exp(-step * k);
        double l = lam(r);
        if (l >= 1.0) {
            r_in = r;
            l_in = l;
            bracketed = true;
            break;
        }
        r_out = r;
        l_out = l;
    }
    if (!bracketed) return p;
    while (r_out - r_in > cfg.tol) {
        double mid = 0.5 * (r_in + r_out);
        double l = lam(mid);
        if (l >= 1.0) {
            r_in = mid;
            l_in = l;
        } else {
            r_out = mid;
            l_out = l;
        }
    }
    p.found = true;
    p.r_lo = r_in;
    p.r_hi = r_out;
    p.r_star = 0.5 * (r_in + r_out);
    p.lambda_low = l_out;
    p.lambda_high = l_in;
    return p;
}

std::vector<LocusPoint> trace_locus(const LocusConfig& cfg) {
    if (cfg.rays < 1 || !(cfg.r_min > 0.0) || !(cfg.r_min < cfg.r_max) || !(cfg.tol > 0.0) ||
        cfg.grid < 2 || cfg.depth < 6)
        throw std::invalid_argument("invalid locus configuration");
    std::vector<LocusPoint> out(cfg.rays);
#pragma omp parallel for schedule(dynamic, 1)
    for (int k = 0; k < cfg.rays; ++k)
        out[k] = trace_ray(2.0 * std::numbers::pi * k / cfg.rays, cfg);
    return out;
}

std::string locus_csv(const std::vector<LocusPoint>& points) {
    std::ostringstream s;
    s << "theta,r_star,r_lo,r_hi,lambda_low,lambda_high\n";
    for (const auto& p : points) {
        if (!p.found) {
            s << format_double(p.theta) << ",,,,,\n";
            continue;
        }
        s << format_double(p.theta) << ',' << format_double(p.r_star) << ',' << format_double(p.r_lo)
          << ',' << format_double(p.r_hi) << ',' << format_double(p.lambda_low) << ','
          << format_double(p.lambda_high) << '\n';
    }
    return s.str();
}

std::vector<LocusPoint> parse_locus_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<LocusPoint> out;
    std::getline(in, line);
    if (line.rfind("theta,r_star", 0) != 0) throw std::invalid_argument("not a locus CSV");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) f.push_back(field);
        while (f.size() < 6) f.emplace_back();
        LocusPoint p;
        p.theta = std::stod(f[0]);
        if (!f[1].empty()) {
            p.found = true;
            p.r_star = std::stod(f[1]);
            p.r_lo = std::stod(f[2]);
            p.r_hi = std::stod(f[3]);
            p.lambda_low = std::stod(f[4]);
            p.lambda_high = std::stod(f[5]);
        }
        out.push_back(p);
    }
    return out;
}

std::string locus_svg(const std::vector<LocusPoint>& points) {
    double extent = 2.5;
    for (const auto& p : points)
        if (p.found) extent = std::max(extent, 1.1 * p.r_star);
    const double size = 600.0, half = size / 2.0, scale = half / extent;
    auto X = [&](double x) { return format_double(half + scale * x); };
    auto Y = [&](double y) { return format_double(half - scale * y); };
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<line x1=\"0\" y1=\"" << half << "\" x2=\"" << size << "\" y2=\"" << half
      << "\" stroke=\"#ccc\"/>\n";
    s << "<line x1=\"" << half << "\" y1=\"0\" x2=\"" << half << "\" y2=\"" << size
      << "\" stroke=\"#ccc\"/>\n";
    for (double r : {1.0, 2.0})
        s << "<circle cx=\"" << half << "\" cy=\"" << half << "\" r=\"" << format_double(scale * r)
          << "\" fill=\"none\" stroke=\"#999\" stroke-dasharray=\"4 4\"/>\n";
    for (const auto& p : points) {
        if (!p.found) continue;
        s << "<circle cx=\"" << X(p.r_star * std::cos(p.theta)) << "\" cy=\""
          << Y(p.r_star * std::sin(p.theta)) << "\" r=\"1.5\" fill=\"black\"/>\n";
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace basmajian
