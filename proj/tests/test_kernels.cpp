#include <doctest.h>

#include <cmath>

#include <omp.h>

#include "basmajian/holo_ifs.hpp"
#include "basmajian/kernels.hpp"
#include "basmajian/schottky.hpp"

using namespace basmajian;

namespace {

double rel(Complex x, Complex y) { return std::abs(x - y) / std::max(1e-300, std::abs(y)); }

void check_levels(const std::vector<LevelStats>& s, const std::vector<LevelStats>& p, double tol) {
    REQUIRE(s.size() == p.size());
    for (std::size_t n = 0; n < s.size(); ++n) {
        CHECK(s[n].count == p[n].count);
        CHECK(rel(s[n].signed_sum.value(), p[n].signed_sum.value()) < tol);
        CHECK(std::abs(s[n].abs_sum.value() - p[n].abs_sum.value()) <= tol * s[n].abs_sum.value());
        if (s[n].count) CHECK(s[n].min_re == doctest::Approx(p[n].min_re).epsilon(tol));
    }
}

bool same_bits(const std::vector<LevelStats>& x, const std::vector<LevelStats>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t n = 0; n < x.size(); ++n)
        if (x[n].signed_sum.value() != y[n].signed_sum.value() || x[n].abs_sum.value() != y[n].abs_sum.value() ||
            x[n].count != y[n].count)
            return false;
    return true;
}

WordSeriesInput torus_input(const MarkedRep& rep) {
    FixedPair f = rep.boundary_fixed_points(0);
    return {compile(rep.language()), rep.letter_maps(), f.attracting, f.repelling, f.attracting, f.repelling};
}

// Runs f with the given thread count and restores the previous one.
template <class F>
auto with_threads(int n, F f) {
    int old = omp_get_max_threads();
    omp_set_num_threads(n);
    auto r = f();
    omp_set_num_threads(old);
    return r;
}

}  // namespace

TEST_CASE("gap series: serial and parallel agree") {
    for (Complex c : {Complex(-3), Complex(0, 5), Complex(-2.2, 0.4)}) {
        QuadraticIFS q(c);
        check_levels(serial::gap_series_levels(q, 14), parallel::gap_series_levels(q, 14), 1e-12);
        check_levels(serial::gap_series_levels(q, 13, 0.7), parallel::gap_series_levels(q, 13, 0.7), 1e-12);
    }
    SimilarityIFS s(Complex(0.2, 0.3));
    check_levels(serial::gap_series_levels(s, 14), parallel::gap_series_levels(s, 14), 1e-12);
}

TEST_CASE("word series: serial and parallel agree") {
    for (double t : {0.0, 0.3}) {
        WordSeriesInput in = torus_input(preset(Preset::Gamma, t));
        check_levels(serial::word_series_levels(in, 9), parallel::word_series_levels(in, 9), 1e-12);
    }
}

TEST_CASE("word terms: serial and parallel agree") {
    MarkedRep rep = preset(Preset::Gamma, 0.15);
    FixedPair f = rep.boundary_fixed_points(0);
    std::vector<MoebiusMap> maps;
    for (const Word& w : enumerate(rep.language(), 7)) maps.push_back(rep.evaluate(w));
    auto s = serial::word_terms(maps, f.attracting, f.repelling, f.attracting, f.repelling);
    auto p = parallel::word_terms(maps, f.attracting, f.repelling, f.attracting, f.repelling);
    REQUIRE(s.size() == p.size());
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(s[i] == p[i]);
}

TEST_CASE("periodic points: serial and parallel agree") {
    for (Complex c : {Complex(-3), Complex(0.3, 0.6)}) {
        QuadraticIFS q(c);
        auto s = serial::periodic_points(q, 10);
        auto p = parallel::periodic_points(q, 10);
        REQUIRE(s.size() == p.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(s[i].word == p[i].word);
            CHECK(std::abs(s[i].point - p[i].point) < 1e-12 * std::max(1.0, std::abs(s[i].point)));
            CHECK(rel(p[i].multiplier, s[i].multiplier) < 1e-9);
        }
    }
}

TEST_CASE("parallel results do not depend on the thread count") {
    QuadraticIFS q(-3.0);
    WordSeriesInput in = torus_input(preset(Preset::Gamma, 0.2));
    auto g1 = with_threads(1, [&] { return parallel::gap_series_levels(q, 15); });
    auto w1 = with_threads(1, [&] { return parallel::word_series_levels(in, 9); });
    for (int n : {2, 3, 8}) {
        CHECK(same_bits(g1, with_threads(n, [&] { return parallel::gap_series_levels(q, 15); })));
        CHECK(same_bits(w1, with_threads(n, [&] { return parallel::word_series_levels(in, 9); })));
    }
}
