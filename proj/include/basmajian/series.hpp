#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "basmajian/moebius.hpp"
#include "basmajian/summation.hpp"

namespace basmajian {

// Per word length accumulators of a series over a word tree.
struct LevelStats {
    ComplexNeumaierSum signed_sum;  // sum of the signed terms
    NeumaierSum abs_sum;            // sum of |term|^exponent
    NeumaierSum piece_sum;          // sum of |piece length|, gap series only
    std::uint64_t count = 0;
    double min_re = std::numeric_limits<double>::infinity();
    double max_abs_im = 0.0;

    void add_term(Complex term, double abs_power) {
        signed_sum.add(term);
        abs_sum.add(abs_power);
        ++count;
        if (term.real() < min_re) min_re = term.real();
        if (std::abs(term.imag()) > max_abs_im) max_abs_im = std::abs(term.imag());
    }
    void merge(const LevelStats& o) {
        signed_sum.add(o.signed_sum);
        abs_sum.add(o.abs_sum);
        piece_sum.add(o.piece_sum);
        count += o.count;
        if (o.min_re < min_re) min_re = o.min_re;
        if (o.max_abs_im > max_abs_im) max_abs_im = o.max_abs_im;
    }
};

struct SeriesReport {
    std::vector<double> level_sums;  // sum of |term| for lengths first_level..depth
    int first_level = 0;
    int depth = 0;                   // last length included
    Complex partial_sum;
    Complex lhs;
    double lambda1_estimate = 0.0;
    double tail_bound = 0.0;         // infinite when the estimate is >= 1
    bool converged = false;          // tail bound fell below eps
    bool modulo_two_pi_i = false;
    double min_term_re = 0.0;
    double max_term_abs_im = 0.0;

    // |partial_sum - lhs|, with the imaginary part reduced to (-pi, pi] when
    // the identity only holds mod 2 pi i.
    double gap() const;
};

struct SimilarityReport {
    SeriesReport series;          // word-by-word evaluation
    Complex closed_form_partial;  // sum_{n <= depth} (2c)^n (1 - 2c)
    Complex closed_form_sum;      // (1 - 2c) / (1 - 2c)
};

// Ratios S_i / S_{i-1} of the last count entries (0/0 counts as 0).
std::vector<double> last_ratios(const std::vector<double>& sums, int count);
// Geometric mean; 0 if any entry is 0.
double geometric_mean(const std::vector<double>& xs);

// Sums a level-structured series with iterative deepening. levels_to(d)
// returns stats for lengths 0..d. Stops at the first length N whose tail
// bound S_N r/(1 - r) is below eps (r from the last five ratios), or at
// max_len. Throws Diverging when the last five ratios are all >= 1.
SeriesReport sum_by_levels(const std::function<std::vector<LevelStats>(int)>& levels_to,
                           int first_level, Complex lhs, bool modulo_two_pi_i, double eps,
                           int max_len);

}  // namespace basmajian
