// Serial reference kernels against the OpenMP versions on the same inputs.

#include <chrono>
#include <cstdio>
#include <functional>

#include <omp.h>

#include "basmajian/holo_ifs.hpp"
#include "basmajian/kernels.hpp"
#include "basmajian/schottky.hpp"

using namespace basmajian;

static double seconds(const std::function<void()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

static void row(const char* name, double ts, double tp, double a, double b) {
    std::printf("%-28s serial %8.3f s  parallel %8.3f s  speedup %5.2f  level-sum diff %.3g\n", name,
                ts, tp, ts / tp, std::abs(a - b) / std::max(1e-300, std::abs(a)));
}

int main(int argc, char** argv) {
    int gap_depth = argc > 1 ? std::atoi(argv[1]) : 18;
    int word_depth = argc > 2 ? std::atoi(argv[2]) : 11;
    int period = argc > 3 ? std::atoi(argv[3]) : 14;
    std::printf("threads: %d\n", configure_threads());

    QuadraticIFS julia(-3.0);
    std::vector<LevelStats> s, p;
    double ts = seconds([&] { s = serial::gap_series_levels(julia, gap_depth); });
    double tp = seconds([&] { p = parallel::gap_series_levels(julia, gap_depth); });
    row("gap series c=-3", ts, tp, s.back().abs_sum.value(), p.back().abs_sum.value());

    MarkedRep rep = preset(Preset::Gamma, 0.0);
    FixedPair f = rep.boundary_fixed_points(0);
    WordSeriesInput in{compile(rep.language()), rep.letter_maps(), f.attracting, f.repelling,
                       f.attracting, f.repelling};
    ts = seconds([&] { s = serial::word_series_levels(in, word_depth); });
    tp = seconds([&] { p = parallel::word_series_levels(in, word_depth); });
    row("word series torus L=5", ts, tp, s.back().abs_sum.value(), p.back().abs_sum.value());

    std::vector<PeriodicPoint> a, b;
    ts = seconds([&] { a = serial::periodic_points(julia, period); });
    tp = seconds([&] { b = parallel::periodic_points(julia, period); });
    row("periodic points c=-3", ts, tp, std::abs(a.back().point), std::abs(b.back().point));
    return 0;
}
