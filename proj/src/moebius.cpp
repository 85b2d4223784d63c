#include "basmajian/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "basmajian/errors.hpp"

namespace basmajian {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

constexpr double kPoleGuard = 1e-300;

}  // namespace

Complex RiemannPoint::value() const {
    if (!z_) throw std::logic_error("RiemannPoint::value on infinity");
    return *z_;
}

double chordal_distance(const RiemannPoint& p, const RiemannPoint& q) {
    if (p.is_infinite() && q.is_infinite()) return 0.0;
    if (p.is_infinite()) return 1.0 / std::sqrt(1.0 + std::norm(q.value()));
    if (q.is_infinite()) return 1.0 / std::sqrt(1.0 + std::norm(p.value()));
    Complex x = p.value(), y = q.value();
    return std::abs(x - y) / std::sqrt((1.0 + std::norm(x)) * (1.0 + std::norm(y)));
}

MoebiusMap::MoebiusMap(Complex a, Complex b, Complex c, Complex d) {
    Complex det = a * d - b * c;
    if (!finite(det) || std::abs(det) == 0.0)
        throw Error(ErrorKind::DegenerateConfiguration, "singular Moebius matrix");
    Complex s = std::sqrt(det);
    a_ = a / s;
    b_ = b / s;
    c_ = c / s;
    d_ = d / s;
}

MoebiusMap MoebiusMap::unchecked(Complex a, Complex b, Complex c, Complex d) {
    MoebiusMap m;
    m.a_ = a;
    m.b_ = b;
    m.c_ = c;
    m.d_ = d;
    return m;
}

Complex MoebiusMap::derivative(Complex z) const {
    Complex k = c_ * z + d_;
    return 1.0 / (k * k);
}

RiemannPoint apply(const MoebiusMap& m, const RiemannPoint& z) {
    if (z.is_infinite()) {
        if (std::abs(m.c()) == 0.0) return RiemannPoint::infinity();
        return RiemannPoint(m.a() / m.c());
    }
    Complex x = z.value();
    Complex den = m.c() * x + m.d();
    if (std::abs(den) < kPoleGuard) return RiemannPoint::infinity();
    return RiemannPoint((m.a() * x + m.b()) / den);
}

Complex apply(const MoebiusMap& m, Complex z) {
    Complex den = m.c() * z + m.d();
    if (std::abs(den) < kPoleGuard) return {INFINITY, INFINITY};
    return (m.a() * z + m.b()) / den;
}

MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2) {
    MoebiusMap p = m1 * m2;
    return MoebiusMap(p.a(), p.b(), p.c(), p.d());
}

bool projectively_equal(const MoebiusMap& m1, const MoebiusMap& m2, double tol) {
    double scale = std::max({std::abs(m1.a()), std::abs(m1.b()), std::abs(m1.c()),
                             std::abs(m1.d()), 1.0});
    auto dist = [&](double s) {
        return std::max({std::abs(m1.a() - s * m2.a()), std::abs(m1.b() - s * m2.b()),
                         std::abs(m1.c() - s * m2.c()), std::abs(m1.d() - s * m2.d())});
    };
    return std::min(dist(1.0), dist(-1.0)) <= tol * scale;
}

FixedPair fixed_points(const MoebiusMap& m) {
    const Complex a = m.a(), b = m.b(), c = m.c(), d = m.d();
    RiemannPoint r1, r2;
    double k1, k2;  // |m'| at r1, r2
    if (c == Complex(0.0)) {
        // m(z) = (az + b)/d fixes infinity; multiplier there is d/a.
        if (std::abs(d - a) == 0.0)
            throw Error(ErrorKind::ParabolicOrElliptic, "translation or identity");
        r1 = RiemannPoint::infinity();
        r2 = RiemannPoint(b / (d - a));
        k1 = std::abs(d / a);
        k2 = std::abs(a / d);
    } else {
        // Roots of cz^2 + (d-a)z - b in the cancellation-free Vieta form.
        Complex p = d - a;
        Complex disc = std::sqrt(p * p + 4.0 * b * c);
        if ((std::conj(p) * disc).real() < 0.0) disc = -disc;
        Complex q = -0.5 * (p + disc);
        if (std::abs(q) == 0.0) throw Error(ErrorKind::ParabolicOrElliptic, "double fixed point");
        r1 = RiemannPoint(q / c);
        r2 = RiemannPoint(-b / q);
        k1 = 1.0 / std::norm(q + d);
        k2 = 1.0 / std::norm(d - b * c / q);
    }
    if (std::abs(k1 - 1.0) < 1e-10 && std::abs(k2 - 1.0) < 1e-10)
        throw Error(ErrorKind::ParabolicOrElliptic, "fixed points not separated by |m'|");
    if (k1 < k2) return {r1, r2};
    return {r2, r1};
}

Complex complex_length(const MoebiusMap& m) {
    const Complex a = m.a(), b = m.b(), c = m.c(), d = m.d();
    Complex tr_sq = a * a + 2.0 * b * c + d * d;  // trace of the matrix square
    Complex l = std::acosh(tr_sq / 2.0);
    if (l.real() < 0.0) l = -l;
    if (l.imag() <= -std::numbers::pi) l += Complex(0.0, 2.0 * std::numbers::pi);
    if (!(l.real() >= 1e-10))
        throw Error(ErrorKind::ParabolicOrElliptic, "complex length has no positive real part");
    return l;
}

Complex cross_ratio(const RiemannPoint& z1, const RiemannPoint& z2, const RiemannPoint& z3,
                    const RiemannPoint& z4) {
    int infinite = z1.is_infinite() + z2.is_infinite() + z3.is_infinite() + z4.is_infinite();
    if (infinite > 1) throw Error(ErrorKind::DegenerateConfiguration, "repeated infinite point");
    auto v = [](const RiemannPoint& p) { return p.is_finite() ? p.value() : Complex(0.0); };
    Complex x1 = v(z1), x2 = v(z2), x3 = v(z3), x4 = v(z4);
    Complex num, den;
    if (z1.is_infinite()) {
        num = x2 - x4;
        den = x2 - x3;
    } else if (z2.is_infinite()) {
        num = x1 - x3;
        den = x1 - x4;
    } else if (z3.is_infinite()) {
        num = x2 - x4;
        den = x1 - x4;
    } else if (z4.is_infinite()) {
        num = x1 - x3;
        den = x2 - x3;
    } else {
        num = (x1 - x3) * (x2 - x4);
        den = (x1 - x4) * (x2 - x3);
    }
    Complex r = num / den;
    if (!finite(r) || std::abs(r) == 0.0)
        throw Error(ErrorKind::DegenerateConfiguration, "cross ratio is 0, infinite or NaN");
    return r;
}

Complex log1p(Complex u) {
    Complex r;
    if (std::abs(u) < 0.5) {
        double x = u.real(), y = u.imag();
        r = Complex(0.5 * std::log1p(2.0 * x + x * x + y * y), std::atan2(y, 1.0 + x));
    } else {
        r = std::log(1.0 + u);
    }
    if (r.imag() <= -std::numbers::pi) r.imag(std::numbers::pi);
    return r;
}

Complex log_cross_ratio_image(const RiemannPoint& z1, const RiemannPoint& z2, const MoebiusMap& m,
                              const RiemannPoint& z3, const RiemannPoint& z4) {
    if (z1.is_finite() && z2.is_finite() && z3.is_finite() && z4.is_finite()) {
        Complex k3 = m.c() * z3.value() + m.d();
        Complex k4 = m.c() * z4.value() + m.d();
        if (std::abs(k3) >= kPoleGuard && std::abs(k4) >= kPoleGuard) {
            Complex w3 = (m.a() * z3.value() + m.b()) / k3;
            Complex w4 = (m.a() * z4.value() + m.b()) / k4;
            Complex dw = (z3.value() - z4.value()) / (k3 * k4);
            Complex x1 = z1.value(), x2 = z2.value();
            Complex u = (x1 - x2) * dw / ((x1 - w4) * (x2 - w3));
            if (!finite(u) || std::abs(1.0 + u) == 0.0)
                throw Error(ErrorKind::DegenerateConfiguration, "cross ratio is 0, infinite or NaN");
            return log1p(u);
        }
    }
    Complex r = cross_ratio(z1, z2, apply(m, z3), apply(m, z4));
    Complex l = std::log(r);
    if (l.imag() <= -std::numbers::pi) l.imag(std::numbers::pi);
    return l;
}

}  // namespace basmajian
