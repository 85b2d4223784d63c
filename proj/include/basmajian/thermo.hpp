#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "basmajian/holo_ifs.hpp"
#include "basmajian/kernels.hpp"

namespace basmajian {

enum class DimClass { Below, AtLeast, Inconclusive };
const char* to_string(DimClass cls);

struct LambdaEstimate {
    double estimate;
    DimClass classification;
};

// Geometric mean of the last five ratios S_{n+1}/S_n; dim < 1 below 1 - delta,
// dim >= 1 above 1 + delta. Needs at least six level sums.
LambdaEstimate level_lambda1(const std::vector<double>& level_sums, double delta = 0.02);

// One fixed point of T_w per admissible word of length n, with the derivative
// of the n-th iterate of the expanding map there.
std::vector<PeriodicPoint> periodic_points(const HoloIFS& ifs, int n);

// (1/n) log sum |multiplier|^-t.
double pressure(const std::vector<PeriodicPoint>& points, double t, int n);
double pressure(const HoloIFS& ifs, double t, int n);

struct PressureSample {
    double t;
    double pressure;
    int depth;
};

struct PressureCurve {
    std::vector<PressureSample> samples;
};

PressureCurve pressure_curve(const HoloIFS& ifs, const std::vector<double>& ts, int n);

enum class DimMethod { Levelsum, Pressure, Cutout };
const char* to_string(DimMethod method);

struct DimEstimate {
    double value;
    DimMethod method;
    std::pair<double, double> bracket;
    int depth;
    bool inconclusive = false;
};

void to_json(nlohmann::json& j, const DimEstimate& d);

// Root of the pressure on (0.01, 1.99) by bisection. Throws NoSignChange.
DimEstimate bowen_dimension(const HoloIFS& ifs, int n, double tol = 1e-12);

// Root of t -> r_t - 1 where r_t is the level_lambda1 estimate of the sums of
// |gap|^t. Throws NoSignChange.
DimEstimate levelsum_dimension(const HoloIFS& ifs, int depth, double tol = 1e-6);

// Gap lengths sorted in descending order.
class GapSequence {
public:
    explicit GapSequence(std::vector<double> lengths);
    const std::vector<double>& lengths() const { return lengths_; }
    std::size_t size() const { return lengths_.size(); }

private:
    std::vector<double> lengths_;
};

// Primary-gap image lengths for words up to the given length, truncated to
// the part that is complete (larger than every gap one level deeper).
GapSequence collect_gaps(const HoloIFS& ifs, int depth);

struct CutoutBounds {
    double lower;
    double upper;
    bool inconclusive;  // a decay exponent was not positive
};

// Decay exponents of a_n from secant slopes of block means over dyadic
// windows n in [2^k, 2^(k+1)); with a the largest and b the smallest exponent
// over the last windows, returns (1/a, 1/b) clamped to 2.
CutoutBounds cutout_bounds(const GapSequence& gaps);
DimEstimate cutout_dimension(const HoloIFS& ifs, int depth);

}  // namespace basmajian
