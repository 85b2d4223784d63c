#include "basmajian/series.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "basmajian/errors.hpp"

namespace basmajian {

double SeriesReport::gap() const {
    Complex d = partial_sum - lhs;
    if (modulo_two_pi_i) {
        double im = std::remainder(d.imag(), 2.0 * std::numbers::pi);
        d = Complex(d.real(), im);
    }
    return std::abs(d);
}

std::vector<double> last_ratios(const std::vector<double>& sums, int count) {
    std::vector<double> r;
    for (std::size_t i = sums.size() - count; i < sums.size(); ++i) {
        double prev = sums[i - 1], cur = sums[i];
        if (prev == 0.0)
            r.push_back(cur == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
        else
            r.push_back(cur / prev);
    }
    return r;
}

double geometric_mean(const std::vector<double>& xs) {
    double acc = 0.0;
    for (double x : xs) {
        if (x == 0.0) return 0.0;
        acc += std::log(x);
    }
    return std::exp(acc / static_cast<double>(xs.size()));
}

SeriesReport sum_by_levels(const std::function<std::vector<LevelStats>(int)>& levels_to,
                           int first_level, Complex lhs, bool modulo_two_pi_i, double eps,
                           int max_len) {
    constexpr int kRatios = 5;
    int depth = std::min(max_len, first_level + 8);
    for (;;) {
        std::vector<LevelStats> stats = levels_to(depth);
        SeriesReport rep;
        rep.first_level = first_level;
        rep.lhs = lhs;
        rep.modulo_two_pi_i = modulo_two_pi_i;
        ComplexNeumaierSum partial;
        double min_re = std::numeric_limits<double>::infinity(), max_im = 0.0;
        for (int n = first_level; n <= depth; ++n) {
            const LevelStats& s = stats[n];
            rep.level_sums.push_back(s.abs_sum.value());
            partial.add(s.signed_sum);
            min_re = std::min(min_re, s.min_re);
            max_im = std::max(max_im, s.max_abs_im);
            rep.depth = n;
            rep.partial_sum = partial.value();
            rep.min_term_re = min_re;
            rep.max_term_abs_im = max_im;
            if (static_cast<int>(rep.level_sums.size()) <= kRatios) continue;
            std::vector<double> r = last_ratios(rep.level_sums, kRatios);
            rep.lambda1_estimate = geometric_mean(r);
            bool growing = true;
            for (double x : r) growing = growing && x >= 1.0;
            if (growing) {
                std::ostringstream msg;
                msg << "level sums grew for " << kRatios << " consecutive lengths up to length " << n
                    << ", ratio estimate " << rep.lambda1_estimate;
                throw Error(ErrorKind::Diverging, msg.str());
            }
            double lam = rep.lambda1_estimate;
            rep.tail_bound = lam < 1.0 ? rep.level_sums.back() * lam / (1.0 - lam)
                                       : std::numeric_limits<double>::infinity();
            if (rep.tail_bound < eps) {
                rep.converged = true;
                return rep;
            }
        }
        if (depth >= max_len) {
            if (static_cast<int>(rep.level_sums.size()) <= kRatios)
                rep.tail_bound = std::numeric_limits<double>::infinity();
            return rep;
        }
        depth = std::min(max_len, depth + 4);
    }
}

}  // namespace basmajian
