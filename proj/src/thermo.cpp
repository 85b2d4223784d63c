#include "basmajian/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "basmajian/errors.hpp"

namespace basmajian {

const char* to_string(DimClass cls) {
    switch (cls) {
        case DimClass::Below: return "dim<1";
        case DimClass::AtLeast: return "dim>=1";
        case DimClass::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

const char* to_string(DimMethod method) {
    switch (method) {
        case DimMethod::Levelsum: return "levelsum";
        case DimMethod::Pressure: return "pressure";
        case DimMethod::Cutout: return "cutout";
    }
    return "unknown";
}

LambdaEstimate level_lambda1(const std::vector<double>& level_sums, double delta) {
    if (level_sums.size() < 6) throw std::invalid_argument("level_lambda1 needs at least 6 levels");
    double est = geometric_mean(last_ratios(level_sums, 5));
    DimClass cls = DimClass::Inconclusive;
    if (est < 1.0 - delta) cls = DimClass::Below;
    else if (est > 1.0 + delta) cls = DimClass::AtLeast;
    return {est, cls};
}

std::vector<PeriodicPoint> periodic_points(const HoloIFS& ifs, int n) {
    if (n < 1) throw std::invalid_argument("period must be at least 1");
    return parallel::periodic_points(ifs, n);
}

double pressure(const std::vector<PeriodicPoint>& points, double t, int n) {
    // log-sum-exp in word order, so the value is reproducible.
    std::vector<double> logs;
    logs.reserve(points.size());
    for (const auto& p : points) logs.push_back(-t * std::log(std::abs(p.multiplier)));
    double m = *std::max_element(logs.begin(), logs.end());
    NeumaierSum s;
    for (double x : logs) s.add(std::exp(x - m));
    return (m + std::log(s.value())) / n;
}

double pressure(const HoloIFS& ifs, double t, int n) { return pressure(periodic_points(ifs, n), t, n); }

PressureCurve pressure_curve(const HoloIFS& ifs, const std::vector<double>& ts, int n) {
    auto pts = periodic_points(ifs, n);
    PressureCurve curve;
    for (double t : ts) curve.samples.push_back({t, pressure(pts, t, n), n});
    return curve;
}

void to_json(nlohmann::json& j, const DimEstimate& d) {
    j = nlohmann::json{{"method", to_string(d.method)},
                       {"value", d.value},
                       {"bracket", {d.bracket.first, d.bracket.second}},
                       {"depth", d.depth}};
    if (d.inconclusive) j["inconclusive"] = true;
}

namespace {

template <class F>
std::pair<double, double> bisect_decreasing(F f, double lo, double hi, double tol) {
    double flo = f(lo), fhi = f(hi);
    if (!(flo > 0.0 && fhi < 0.0))
        throw Error(ErrorKind::NoSignChange, "function does not change sign on (0.01, 1.99)");
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) lo = mid;
        else hi = mid;
    }
    return {lo, hi};
}

}  // namespace

DimEstimate bowen_dimension(const HoloIFS& ifs, int n, double tol) {
    auto pts = periodic_points(ifs, n);
    auto br = bisect_decreasing([&](double t) { return pressure(pts, t, n); }, 0.01, 1.99, tol);
    return {0.5 * (br.first + br.second), DimMethod::Pressure, br, n};
}

DimEstimate levelsum_dimension(const HoloIFS& ifs, int depth, double tol) {
    if (depth < 5) throw std::invalid_argument("levelsum dimension needs depth >= 5");
    auto f = [&](double t) {
        auto levels = parallel::gap_series_levels(ifs, depth, t);
        std::vector<double> sums;
        for (const auto& l : levels) sums.push_back(l.abs_sum.value());
        return level_lambda1(sums).estimate - 1.0;
    };
    auto br = bisect_decreasing(f, 0.01, 1.99, tol);
    return {0.5 * (br.first + br.second), DimMethod::Levelsum, br, depth};
}

GapSequence::GapSequence(std::vector<double> lengths) : lengths_(std::move(lengths)) {
    std::sort(lengths_.begin(), lengths_.end(), std::greater<>());
}

GapSequence collect_gaps(const HoloIFS& ifs, int depth) {
    // Gaps below the largest gap one level deeper may interleave with gaps
    // that were not generated; dropping them leaves an exact prefix of the
    // full sorted sequence (branches contract, so deeper levels are smaller).
    std::vector<double> out;
    double next_level_max = 0.0;
    serial::gap_series_levels(ifs, depth + 1, 1.0,
                              [&](const Word& w, Complex, Complex, Complex diff, int) {
                                  double a = std::abs(diff);
                                  if (w.size() <= depth) out.push_back(a);
                                  else next_level_max = std::max(next_level_max, a);
                              });
    std::erase_if(out, [&](double a) { return a <= next_level_max; });
    return GapSequence(std::move(out));
}

CutoutBounds cutout_bounds(const GapSequence& gaps) {
    const auto& a = gaps.lengths();
    if (a.size() < 1000) throw std::invalid_argument("cutout_bounds needs at least 1000 gaps");
    // Complete dyadic blocks [2^k, 2^(k+1)) in 1-based indexing.
    std::vector<double> xs, ys;
    for (std::size_t start = 1; 2 * start - 1 <= a.size(); start *= 2) {
        NeumaierSum x, y;
        for (std::size_t n = start; n < 2 * start; ++n) {
            x.add(std::log(static_cast<double>(n)));
            y.add(std::log(std::max(a[n - 1], 1e-300)));
        }
        xs.push_back(x.value() / static_cast<double>(start));
        ys.push_back(y.value() / static_cast<double>(start));
    }
    constexpr std::size_t kWindows = 4;
    std::size_t first = xs.size() > kWindows + 1 ? xs.size() - kWindows - 1 : 0;
    double hi_exp = -INFINITY, lo_exp = INFINITY;
    for (std::size_t k = first; k + 1 < xs.size(); ++k) {
        double e = -(ys[k + 1] - ys[k]) / (xs[k + 1] - xs[k]);
        hi_exp = std::max(hi_exp, e);
        lo_exp = std::min(lo_exp, e);
    }
    auto inv = [](double e) { return e > 0.5 ? 1.0 / e : 2.0; };
    return {inv(hi_exp), inv(lo_exp), !(lo_exp > 0.5)};
}

DimEstimate cutout_dimension(const HoloIFS& ifs, int depth) {
    CutoutBounds b = cutout_bounds(collect_gaps(ifs, depth));
    return {0.5 * (b.lower + b.upper), DimMethod::Cutout, {b.lower, b.upper}, depth, b.inconclusive};
}

}  // namespace basmajian
