#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "basmajian/moebius.hpp"
#include "basmajian/series.hpp"
#include "basmajian/symbolic.hpp"

namespace basmajian {

struct GapPair {
    Complex hi;
    Complex lo;
};

// Contracting conformal IFS with a seed interval [lower, upper] and a primary
// gap. Words act with the first letter outermost. Multivalued branches are
// labelled along an anchor chain: the image of the seed's upper point is
// evaluated directly, every other point takes the value nearest to it.
class HoloIFS {
public:
    virtual ~HoloIFS() = default;

    virtual int branch_count() const = 0;
    // Direct evaluation of branch j.
    virtual Complex branch(int j, Complex z) const = 0;
    // Branch j continued from the anchor: agrees with branch(j, anchor) there.
    virtual Complex branch_near(int j, Complex z, Complex anchor) const = 0;
    // Derivative of branch j at z, given the branch value at z.
    virtual Complex branch_derivative(int j, Complex z, Complex image) const = 0;
    // image_hi - image_lo computed from hi - lo without cancellation.
    virtual Complex image_difference(int j, Complex image_hi, Complex image_lo,
                                     Complex diff) const = 0;
    // +1 if branch j preserves the order of the seed endpoints, -1 if it flips.
    virtual int orientation(int j) const = 0;
    virtual Complex seed_upper() const = 0;
    virtual Complex seed_lower() const = 0;
    virtual GapPair primary_gap() const = 0;
    virtual const ShiftCoding& coding() const = 0;

    // Single-valued expanding map whose inverse branches form the system,
    // when there is one. Used to polish periodic points with Newton steps.
    virtual bool has_forward_map() const { return false; }
    virtual Complex forward(Complex z) const { return z; }
    virtual Complex forward_derivative(Complex) const { return 1.0; }

    Complex seed_length() const { return seed_upper() - seed_lower(); }
    Complex branch_derivative(int j, Complex z) const {
        return branch_derivative(j, z, branch(j, z));
    }
};

// Applies a word to x along the anchor chain started at the seed's upper point.
Complex apply_word(const HoloIFS& ifs, const Word& w, Complex x);
// Same, also returning the derivative of the composition at x.
Complex apply_word(const HoloIFS& ifs, const Word& w, Complex x, Complex& derivative);

// Inverse branches of z^2 + c: branch 0 fixes the anchor fixed point, branch 1
// is its negative. The standard labelling anchors at z1 = (1 + sqrt(1-4c))/2;
// the swapped one anchors at z2 = 1 - z1.
class QuadraticIFS : public HoloIFS {
public:
    // Throws DegenerateConfiguration at c = 1/4.
    explicit QuadraticIFS(Complex c, bool swapped = false);

    Complex c() const { return c_; }
    Complex z1() const { return z1_; }
    Complex z2() const { return z2_; }
    bool swapped() const { return swapped_; }
    Complex anchor() const { return swapped_ ? z2_ : z1_; }

    int branch_count() const override { return 2; }
    Complex branch(int j, Complex z) const override;
    Complex branch_near(int j, Complex z, Complex anchor) const override;
    Complex branch_derivative(int j, Complex z, Complex image) const override;
    Complex image_difference(int j, Complex image_hi, Complex image_lo,
                             Complex diff) const override;
    int orientation(int j) const override { return j == 0 ? 1 : -1; }
    Complex seed_upper() const override { return anchor(); }
    Complex seed_lower() const override { return -anchor(); }
    GapPair primary_gap() const override;
    const ShiftCoding& coding() const override { return coding_; }
    bool has_forward_map() const override { return true; }
    Complex forward(Complex z) const override { return z * z + c_; }
    Complex forward_derivative(Complex z) const override { return 2.0 * z; }
    using HoloIFS::branch_derivative;

private:
    Complex root(Complex z) const;  // principal sqrt(z - c), guarded

    Complex c_, z1_, z2_;
    bool swapped_;
    double sign0_;
    ShiftCoding coding_ = ShiftCoding::full_shift(2);
};

// f(z) = cz and g(z) = c(z-1) + 1 on [0, 1].
class SimilarityIFS : public HoloIFS {
public:
    // Throws DegenerateConfiguration unless 0 < |c| < 1.
    explicit SimilarityIFS(Complex c);

    Complex ratio() const { return c_; }

    int branch_count() const override { return 2; }
    Complex branch(int j, Complex z) const override;
    Complex branch_near(int j, Complex z, Complex) const override { return branch(j, z); }
    Complex branch_derivative(int, Complex, Complex) const override { return c_; }
    Complex image_difference(int, Complex, Complex, Complex diff) const override {
        return c_ * diff;
    }
    int orientation(int) const override { return 1; }
    Complex seed_upper() const override { return 1.0; }
    Complex seed_lower() const override { return 0.0; }
    GapPair primary_gap() const override { return {1.0 - c_, c_}; }
    const ShiftCoding& coding() const override { return coding_; }
    using HoloIFS::branch_derivative;

private:
    Complex c_;
    ShiftCoding coding_ = ShiftCoding::full_shift(2);
};

// Fixed points of z -> z^2 + c: z1 = (1 + sqrt(1-4c))/2 with the principal
// root (so z1 > 0 for real c < 1/4), z2 = 1 - z1.
std::pair<Complex, Complex> julia_fixed_points(Complex c);

// (w(hi), w(lo)) for the primary gap.
GapPair gap_image(const HoloIFS& ifs, const Word& w);

// Escape-time heuristic: true if the critical orbit leaves radius 2.
bool escapes(Complex c, int max_iter = 2000);

// 2 z1 = sum over binary words of (-1)^(#branch-1 letters) (w(hi) - w(lo)).
SeriesReport julia_identity(const QuadraticIFS& ifs, double eps, int max_len);
// Same series on the label-swapped system; the left side is 2 z2.
SeriesReport swapped_identity(const QuadraticIFS& ifs, double eps, int max_len);

// 1 = sum (2c)^n (1 - 2c), evaluated word by word and in closed form.
SimilarityReport similarity_identity(const SimilarityIFS& ifs, int max_len = 20);

enum class LoopOutcome { Identity, LabelSwap, Unmatched };
const char* to_string(LoopOutcome outcome);

// Follows the fixed point and all gap endpoints of words up to a given length
// along a path in the parameter plane.
class GapContinuation {
public:
    GapContinuation(const QuadraticIFS& start, int max_len);

    // Moves to c_next along the straight segment, halving steps until every
    // tracked point moves less than a quarter of its root separation.
    void advance_to(Complex c_next);
    void follow(const std::function<Complex(double)>& path, int base_steps);

    Complex c() const { return c_; }
    Complex anchor() const { return anchor_; }
    int max_len() const { return max_len_; }
    // Endpoints in prepend-tree order (see word_at).
    const std::vector<GapPair>& endpoints() const { return points_; }
    Word word_at(std::size_t index) const;
    // Compares the tracked state with the direct standard and swapped states.
    LoopOutcome outcome(double tol = 1e-8) const;

private:
    bool try_step(Complex c_next);

    int max_len_;
    Complex c_;
    Complex anchor_;
    std::vector<GapPair> points_;
    std::vector<int> parent_;
    std::vector<int> letter_;
    bool start_swapped_;
};

GapContinuation continue_in_c(const std::function<Complex(double)>& path, const QuadraticIFS& start,
                              int max_len = 4, int base_steps = 256);

}  // namespace basmajian
