#include <doctest.h>

#include <cmath>
#include <random>

#include "basmajian/errors.hpp"
#include "basmajian/io.hpp"
#include "basmajian/moebius.hpp"

using namespace basmajian;

namespace {

std::mt19937_64 rng(20240611);

Complex random_complex(double scale = 2.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(rng), u(rng)};
}

MoebiusMap random_map() {
    for (;;) {
        Complex a = random_complex(), b = random_complex(), c = random_complex(), d = random_complex();
        if (std::abs(a * d - b * c) > 0.1) return MoebiusMap(a, b, c, d);
    }
}

double rel_err(Complex x, Complex y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

}  // namespace

TEST_CASE("apply: identity, infinity and pole") {
    CHECK(std::abs(basmajian::apply(MoebiusMap::identity(), RiemannPoint(Complex(3, 4))).value() - Complex(3, 4)) == 0.0);
    MoebiusMap m(5, 1, -1, 0);
    CHECK(std::abs(basmajian::apply(m, RiemannPoint::infinity()).value() - Complex(-5, 0)) < 1e-15);
    CHECK(basmajian::apply(m, RiemannPoint(0.0)).is_infinite());
    CHECK(basmajian::apply(MoebiusMap(2, 0, 0, 0.5), RiemannPoint::infinity()).is_infinite());
}

TEST_CASE("normalization to determinant one") {
    MoebiusMap m(4, 2, 2, 3);
    CHECK(std::abs(m.det() - 1.0) < 1e-12);
    CHECK_THROWS_AS(MoebiusMap(1, 2, 2, 4), Error);
    for (int i = 0; i < 100; ++i) {
        MoebiusMap x = random_map(), y = random_map();
        CHECK(std::abs(compose(x, y).det() - 1.0) < 1e-12);
    }
}

TEST_CASE("composition is a homomorphism of the action") {
    for (int i = 0; i < 1000; ++i) {
        MoebiusMap x = random_map(), y = random_map();
        Complex z = random_complex();
        Complex lhs = basmajian::apply(compose(x, y), z);
        Complex rhs = basmajian::apply(x, basmajian::apply(y, z));
        if (std::abs(rhs) > 1e6) continue;  // near a pole
        CHECK(rel_err(lhs, rhs) < 1e-9);
    }
    MoebiusMap m = random_map();
    CHECK(projectively_equal(compose(m, m.inverse()), MoebiusMap::identity()));
    CHECK(projectively_equal(MoebiusMap(1, 2, 3, 7), MoebiusMap(-1, -2, -3, -7)));
}

TEST_CASE("trace of the square (Cayley-Hamilton)") {
    for (int i = 0; i < 1000; ++i) {
        MoebiusMap m = random_map();
        MoebiusMap sq = m * m;
        Complex tr = m.trace();
        CHECK(std::abs(sq.trace() - (tr * tr - 2.0)) < 1e-12 * std::max(1.0, std::abs(tr * tr)));
    }
}

TEST_CASE("fixed points") {
    SUBCASE("diagonal") {
        FixedPair f = fixed_points(MoebiusMap(2, 0, 0, 0.5));
        CHECK(f.attracting.is_infinite());
        CHECK(f.repelling.is_finite());
        CHECK(std::abs(f.repelling.value()) < 1e-15);
    }
    SUBCASE("against the quadratic formula") {
        // z^2 + 5z + 1 = 0; the derivative 1/z^2 decides which root attracts.
        double r1 = (-5 + std::sqrt(21.0)) / 2, r2 = (-5 - std::sqrt(21.0)) / 2;
        double att = std::abs(1 / (r1 * r1)) < 1 ? r1 : r2;
        double rep = att == r1 ? r2 : r1;
        FixedPair f = fixed_points(MoebiusMap(5, 1, -1, 0));
        CHECK(std::abs(f.attracting.value() - att) < 1e-12);
        CHECK(std::abs(f.repelling.value() - rep) < 1e-12);
    }
    SUBCASE("parabolic and elliptic inputs") {
        CHECK_THROWS_AS(fixed_points(MoebiusMap(1, 1, 0, 1)), Error);
        double t = 0.7;
        CHECK_THROWS_AS(fixed_points(MoebiusMap(std::cos(t), -std::sin(t), std::sin(t), std::cos(t))),
                        Error);
    }
    SUBCASE("random loxodromic maps") {
        for (int i = 0; i < 300; ++i) {
            MoebiusMap m = random_map();
            Complex tr = m.trace();
            if (std::abs(tr.imag()) < 1e-3 && std::abs(tr.real()) <= 2.0) continue;
            FixedPair f = fixed_points(m);
            for (const RiemannPoint& p : {f.attracting, f.repelling})
                CHECK(chordal_distance(basmajian::apply(m, p), p) < 1e-9);
            if (f.attracting.is_finite()) CHECK(std::abs(m.derivative(f.attracting.value())) < 1.0);
            if (f.repelling.is_finite()) CHECK(std::abs(m.derivative(f.repelling.value())) > 1.0);
        }
    }
}

TEST_CASE("complex length") {
    CHECK(std::abs(complex_length(MoebiusMap(2, 0, 0, 0.5)) - 2 * std::log(2.0)) < 1e-12);
    MoebiusMap m(5, 1, -1, 0);
    // Square by hand: [[24, 5], [-5, -1]], trace 23.
    CHECK(std::abs((m * m).trace() - 23.0) < 1e-12);
    CHECK(std::abs(complex_length(m) - std::acosh(11.5)) < 1e-12);
    CHECK_THROWS_AS(complex_length(MoebiusMap(1, 1, 0, 1)), Error);
    CHECK_THROWS_AS(complex_length(MoebiusMap(-1, 3, 0, -1)), Error);

    std::uniform_real_distribution<double> u(-4, 4);
    for (int i = 0; i < 200; ++i) {
        double a = u(rng), b = u(rng), c = u(rng);
        if (std::abs(a) < 0.1) continue;
        double d = (1 + b * c) / a;
        if (std::abs(a + d) <= 2.0 + 1e-6) continue;
        Complex l = complex_length(MoebiusMap(a, b, c, d));
        CHECK(std::abs(l.imag()) < 1e-12);
        CHECK(l.real() > 0);
        CHECK(std::abs(std::cosh(l.real() / 2) - std::abs(a + d) / 2) < 1e-12 * std::abs(a + d));
    }
    for (int i = 0; i < 200; ++i) {
        MoebiusMap r = random_map();
        Complex l = complex_length(r);
        CHECK(l.real() >= 0);
        CHECK(l.imag() > -M_PI);
        CHECK(l.imag() <= M_PI);
    }
}

TEST_CASE("cross ratio") {
    CHECK(std::abs(cross_ratio(0.0, 1.0, 2.0, 3.0) - 4.0 / 3.0) < 1e-15);
    Complex z3(1.5, -0.5), z4(-2, 0.25);
    CHECK(std::abs(cross_ratio(RiemannPoint::infinity(), 0.0, z3, z4) - z4 / z3) < 1e-15);
    CHECK_THROWS_AS(cross_ratio(0.0, 1.0, 0.0, 3.0), Error);

    for (int i = 0; i < 500; ++i) {
        Complex z[4] = {random_complex(), random_complex(), random_complex(), random_complex()};
        MoebiusMap g = random_map();
        Complex before = cross_ratio(z[0], z[1], z[2], z[3]);
        Complex after = cross_ratio(basmajian::apply(g, RiemannPoint(z[0])), basmajian::apply(g, RiemannPoint(z[1])),
                                    basmajian::apply(g, RiemannPoint(z[2])), basmajian::apply(g, RiemannPoint(z[3])));
        CHECK(rel_err(after, before) < 1e-9 * std::max(1.0, std::abs(before)));
    }
}

TEST_CASE("log of the cross ratio with a mapped pair") {
    for (int i = 0; i < 300; ++i) {
        Complex z[4] = {random_complex(), random_complex(), random_complex(), random_complex()};
        MoebiusMap m = random_map();
        Complex direct = std::log(cross_ratio(z[0], z[1], basmajian::apply(m, RiemannPoint(z[2])),
                                              basmajian::apply(m, RiemannPoint(z[3]))));
        Complex stable = log_cross_ratio_image(z[0], z[1], m, z[2], z[3]);
        CHECK(std::abs(direct - stable) < 1e-8);
    }
    // log(1 + u) keeps full accuracy for tiny u.
    Complex u(1e-17, 2e-17);
    CHECK(std::abs(log1p(u) - u) < 1e-32);
}

TEST_CASE("matrix JSON round trip") {
    MoebiusMap m = random_map();
    MoebiusMap back = matrix_from_json(matrix_to_json(m));
    CHECK(std::abs(back.a() - m.a()) == 0.0);
    CHECK(std::abs(back.d() - m.d()) == 0.0);
}
