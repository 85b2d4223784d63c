#pragma once

#include <string>
#include <vector>

#include "basmajian/moebius.hpp"

namespace basmajian {

struct LocusConfig {
    int rays = 360;
    double r_min = 0.3;
    double r_max = 8.0;
    double tol = 1e-3;
    int depth = 16;
    int grid = 48;  // log-spaced radii scanned inward before bisecting
};

struct LocusPoint {
    double theta = 0.0;
    bool found = false;
    double r_star = 0.0;
    double r_lo = 0.0, r_hi = 0.0;            // dim >= 1 at r_lo, dim < 1 at r_hi
    double lambda_low = 0.0, lambda_high = 0.0;  // estimates at r_hi and r_lo
};

// Level-sum ratio estimate of the gap series at c; infinite when the
// branches cannot be evaluated.
double locus_lambda(Complex c, int depth);

// Outermost radius on the ray where the estimate crosses 1.
LocusPoint trace_ray(double theta, const LocusConfig& config);
// Rays theta = 2 pi k / rays, processed in parallel, sorted by theta.
std::vector<LocusPoint> trace_locus(const LocusConfig& config);

std::string locus_csv(const std::vector<LocusPoint>& points);
std::vector<LocusPoint> parse_locus_csv(const std::string& text);
// Static scatter of the crossings with the unit circle and the circle |c| = 2.
std::string locus_svg(const std::vector<LocusPoint>& points);

}  // namespace basmajian
