#include "basmajian/holo_ifs.hpp"

#include <cmath>

#include "basmajian/errors.hpp"
#include "basmajian/kernels.hpp"

namespace basmajian {

namespace {

constexpr double kBranchPointGuard = 1e-14;

bool close(Complex x, Complex y, double tol) { return std::abs(x - y) <= tol * (1.0 + std::abs(y)); }

}  // namespace

std::pair<Complex, Complex> julia_fixed_points(Complex c) {
    Complex z1 = 0.5 * (1.0 + std::sqrt(1.0 - 4.0 * c));
    // Vieta keeps z2 accurate when z1 is close to 1.
    return {z1, c / z1};
}

QuadraticIFS::QuadraticIFS(Complex c, bool swapped) : c_(c), swapped_(swapped) {
    if (std::abs(c - 0.25) < 1e-12)
        throw Error(ErrorKind::DegenerateConfiguration, "c = 1/4 has a double fixed point");
    std::tie(z1_, z2_) = julia_fixed_points(c);
    Complex a = anchor();
    Complex r = root(a);
    sign0_ = std::abs(r - a) <= std::abs(r + a) ? 1.0 : -1.0;
}

Complex QuadraticIFS::root(Complex z) const {
    Complex u = z - c_;
    if (std::abs(u) < kBranchPointGuard)
        throw Error(ErrorKind::BranchAmbiguity, "square root evaluated at its branch point");
    return std::sqrt(u);
}

Complex QuadraticIFS::branch(int j, Complex z) const {
    return (j == 0 ? sign0_ : -sign0_) * root(z);
}

Complex QuadraticIFS::branch_near(int j, Complex z, Complex anchor) const {
    Complex r = branch(j, anchor);
    Complex s = root(z);
    return std::abs(s - r) <= std::abs(s + r) ? s : -s;
}

Complex QuadraticIFS::branch_derivative(int, Complex, Complex image) const {
    return 0.5 / image;
}

Complex QuadraticIFS::image_difference(int, Complex image_hi, Complex image_lo, Complex diff) const {
    // hi'^2 - lo'^2 = hi - lo, so hi' - lo' = (hi - lo) / (hi' + lo').
    Complex s = image_hi + image_lo;
    if (std::abs(s) < 1e-300) return image_hi - image_lo;
    return diff / s;
}

GapPair QuadraticIFS::primary_gap() const {
    Complex a = anchor();
    return {branch_near(0, -a, a), branch_near(1, -a, a)};
}

SimilarityIFS::SimilarityIFS(Complex c) : c_(c) {
    double m = std::abs(c);
    if (!(m > 0.0 && m < 1.0))
        throw Error(ErrorKind::DegenerateConfiguration, "similarity ratio must satisfy 0 < |c| < 1");
}

Complex SimilarityIFS::branch(int j, Complex z) const {
    return j == 0 ? c_ * z : c_ * (z - 1.0) + 1.0;
}

GapPair gap_image(const HoloIFS& ifs, const Word& w) {
    GapPair g = ifs.primary_gap();
    return {apply_word(ifs, w, g.hi), apply_word(ifs, w, g.lo)};
}

bool escapes(Complex c, int max_iter) {
    Complex z = 0.0;
    for (int i = 0; i < max_iter; ++i) {
        z = z * z + c;
        if (std::norm(z) > 4.0) return true;
    }
    return false;
}

SeriesReport julia_identity(const QuadraticIFS& ifs, double eps, int max_len) {
    return sum_by_levels([&](int d) { return parallel::gap_series_levels(ifs, d); }, 0,
                         ifs.seed_length(), false, eps, max_len);
}

SeriesReport swapped_identity(const QuadraticIFS& ifs, double eps, int max_len) {
    return julia_identity(QuadraticIFS(ifs.c(), !ifs.swapped()), eps, max_len);
}

SimilarityReport similarity_identity(const SimilarityIFS& ifs, int max_len) {
    Complex r = 2.0 * ifs.ratio();
    if (std::abs(r) >= 1.0)
        throw Error(ErrorKind::Diverging, "|2c| >= 1, the geometric series does not converge");
    SimilarityReport out;
    out.series = sum_by_levels([&](int d) { return parallel::gap_series_levels(ifs, d); }, 0,
                               ifs.seed_length(), false, 0.0, max_len);
    out.closed_form_partial = 1.0 - std::pow(r, out.series.depth + 1);
    out.closed_form_sum = (1.0 - r) / (1.0 - r);
    return out;
}

const char* to_string(LoopOutcome outcome) {
    switch (outcome) {
        case LoopOutcome::Identity: return "identity";
        case LoopOutcome::LabelSwap: return "label-swap";
        case LoopOutcome::Unmatched: return "unmatched";
    }
    return "unknown";
}

GapContinuation::GapContinuation(const QuadraticIFS& start, int max_len)
    : max_len_(max_len), c_(start.c()), anchor_(start.anchor()), start_swapped_(start.swapped()) {
    // Prepend tree: children of node w are 0w, 1w.
    std::vector<Complex> anchors{start.anchor()};
    points_.push_back(start.primary_gap());
    parent_.push_back(-1);
    letter_.push_back(-1);
    std::size_t begin = 0;
    for (int level = 1; level <= max_len; ++level) {
        std::size_t end = points_.size();
        for (std::size_t i = begin; i < end; ++i)
            for (int j = 0; j < 2; ++j) {
                Complex a = anchors[i];
                points_.push_back({start.branch_near(j, points_[i].hi, a),
                                   start.branch_near(j, points_[i].lo, a)});
                anchors.push_back(start.branch(j, a));
                parent_.push_back(static_cast<int>(i));
                letter_.push_back(j);
            }
        begin = end;
    }
}

Word GapContinuation::word_at(std::size_t index) const {
    Word w;
    for (int i = static_cast<int>(index); parent_[i] >= 0; i = parent_[i]) w.push_back(letter_[i]);
    return w;
}

bool GapContinuation::try_step(Complex c_next) {
    // Nearest of the two roots +-s to the old value; rejects the step when
    // the point moved a quarter of the root separation or more.
    auto follow_root = [](Complex s, Complex old, Complex& out) {
        double dp = std::abs(s - old), dm = std::abs(s + old);
        if (std::abs(dp - dm) < 1e-9) throw Error(ErrorKind::LostTrack, "equidistant roots");
        out = dp < dm ? s : -s;
        return std::abs(out - old) < 0.25 * 2.0 * std::abs(s);
    };
    Complex disc = std::sqrt(1.0 - 4.0 * c_next);
    Complex anchor;
    // Roots (1 +- disc)/2 sit at 1/2 +- disc/2.
    if (!follow_root(0.5 * disc, anchor_ - 0.5, anchor)) return false;
    anchor += 0.5;

    std::vector<GapPair> next(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
        Complex base = parent_[i] < 0 ? -anchor : Complex();
        Complex hi_base = parent_[i] < 0 ? base : next[parent_[i]].hi;
        Complex lo_base = parent_[i] < 0 ? base : next[parent_[i]].lo;
        Complex u_hi = hi_base - c_next, u_lo = lo_base - c_next;
        if (std::abs(u_hi) < kBranchPointGuard || std::abs(u_lo) < kBranchPointGuard)
            throw Error(ErrorKind::BranchAmbiguity, "continuation hit the branch point");
        if (!follow_root(std::sqrt(u_hi), points_[i].hi, next[i].hi)) return false;
        if (!follow_root(std::sqrt(u_lo), points_[i].lo, next[i].lo)) return false;
    }
    c_ = c_next;
    anchor_ = anchor;
    points_.swap(next);
    return true;
}

void GapContinuation::advance_to(Complex c_next) {
    const Complex from = c_;
    double t = 0.0, h = 1.0;
    while (t < 1.0) {
        h = std::min(h, 1.0 - t);
        double target = t + h;
        if (try_step(target >= 1.0 ? c_next : from + target * (c_next - from))) {
            t = target;
            h *= 2.0;
        } else {
            h *= 0.5;
            if (h < 1e-12) throw Error(ErrorKind::LostTrack, "continuation step underflow");
        }
    }
}

void GapContinuation::follow(const std::function<Complex(double)>& path, int base_steps) {
    if (std::abs(path(0.0) - c_) > 0.0) advance_to(path(0.0));
    for (int k = 1; k <= base_steps; ++k) advance_to(path(static_cast<double>(k) / base_steps));
}

LoopOutcome GapContinuation::outcome(double tol) const {
    auto matches = [&](bool swapped) {
        QuadraticIFS direct(c_, swapped);
        if (!close(anchor_, direct.anchor(), tol)) return false;
        for (std::size_t i = 0; i < points_.size(); ++i) {
            GapPair g = gap_image(direct, word_at(i));
            if (!close(points_[i].hi, g.hi, tol) || !close(points_[i].lo, g.lo, tol)) return false;
        }
        return true;
    };
    if (matches(start_swapped_)) return LoopOutcome::Identity;
    if (matches(!start_swapped_)) return LoopOutcome::LabelSwap;
    return LoopOutcome::Unmatched;
}

GapContinuation continue_in_c(const std::function<Complex(double)>& path, const QuadraticIFS& start,
                              int max_len, int base_steps) {
    GapContinuation ctx(start, max_len);
    ctx.follow(path, base_steps);
    return ctx;
}

}  // namespace basmajian
