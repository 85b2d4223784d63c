#pragma once

#include <complex>
#include <optional>

namespace basmajian {

using Complex = std::complex<double>;

// A point of the Riemann sphere.
class RiemannPoint {
public:
    RiemannPoint() = default;
    RiemannPoint(Complex z) : z_(z) {}
    RiemannPoint(double x) : z_(Complex(x, 0.0)) {}
    static RiemannPoint infinity() { return RiemannPoint(std::nullopt); }

    bool is_infinite() const { return !z_.has_value(); }
    bool is_finite() const { return z_.has_value(); }
    // Throws std::logic_error on the point at infinity.
    Complex value() const;

    friend bool operator==(const RiemannPoint&, const RiemannPoint&) = default;

private:
    explicit RiemannPoint(std::nullopt_t) : z_(std::nullopt) {}
    std::optional<Complex> z_ = Complex(0.0, 0.0);
};

// Chordal distance on the sphere, in [0, 1].
double chordal_distance(const RiemannPoint& p, const RiemannPoint& q);

// Determinant-one representative of an element of PSL(2,C).
class MoebiusMap {
public:
    MoebiusMap() : a_(1), b_(0), c_(0), d_(1) {}
    // Scales the entries to determinant one. Throws DegenerateConfiguration
    // for a singular matrix.
    MoebiusMap(Complex a, Complex b, Complex c, Complex d);

    static MoebiusMap identity() { return {}; }
    // Wraps entries that already have determinant one (no rescaling).
    static MoebiusMap unchecked(Complex a, Complex b, Complex c, Complex d);

    Complex a() const { return a_; }
    Complex b() const { return b_; }
    Complex c() const { return c_; }
    Complex d() const { return d_; }
    Complex trace() const { return a_ + d_; }
    Complex det() const { return a_ * d_ - b_ * c_; }

    MoebiusMap inverse() const { return unchecked(d_, -b_, -c_, a_); }
    // Derivative of the action at a finite non-pole point: 1/(cz+d)^2.
    Complex derivative(Complex z) const;

    // Raw matrix product without renormalization; stays det 1 up to rounding.
    friend MoebiusMap operator*(const MoebiusMap& x, const MoebiusMap& y) {
        return unchecked(x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_,
                         x.c_ * y.a_ + x.d_ * y.c_, x.c_ * y.b_ + x.d_ * y.d_);
    }

private:
    Complex a_, b_, c_, d_;
};

struct FixedPair {
    RiemannPoint attracting;
    RiemannPoint repelling;
};

RiemannPoint apply(const MoebiusMap& m, const RiemannPoint& z);
// Finite-point convenience; returns an infinite value on the pole.
Complex apply(const MoebiusMap& m, Complex z);

// Product renormalized to determinant one.
MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2);

// Equality modulo the global sign.
bool projectively_equal(const MoebiusMap& m1, const MoebiusMap& m2, double tol = 1e-9);

// Loxodromic fixed points classified by |m'|.
FixedPair fixed_points(const MoebiusMap& m);

// Principal arccosh of tr(m^2)/2: Re >= 0, Im in (-pi, pi].
Complex complex_length(const MoebiusMap& m);

// (z1-z3)(z2-z4)/((z1-z4)(z2-z3)), with the factors holding an infinite
// point dropped.
Complex cross_ratio(const RiemannPoint& z1, const RiemannPoint& z2, const RiemannPoint& z3,
                    const RiemannPoint& z4);

// Principal log of the cross ratio [z1, z2; m(z3), m(z4)]. Uses the form
// CR - 1 = (z1-z2)(z3'-z4')/((z1-z4')(z2-z3')) with the image difference
// computed from the preimages, so it stays accurate when m has huge entries.
Complex log_cross_ratio_image(const RiemannPoint& z1, const RiemannPoint& z2, const MoebiusMap& m,
                              const RiemannPoint& z3, const RiemannPoint& z4);

// log(1 + u) without cancellation near u = 0; principal branch.
Complex log1p(Complex u);

}  // namespace basmajian
