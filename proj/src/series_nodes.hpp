#pragma once

// Node types shared by the serial and parallel series kernels.

#include <cmath>

#include "basmajian/holo_ifs.hpp"
#include "basmajian/kernels.hpp"

namespace basmajian::detail {

struct GapNode {
    Complex anchor;  // w(upper), evaluated directly
    Complex hi, lo, diff;
    Complex lower, piece;  // w(lower) and w(upper) - w(lower)
    int sign = 1;
    int first = -1;  // outermost letter, -1 for the empty word
};

inline GapNode gap_root(const HoloIFS& ifs) {
    GapPair g = ifs.primary_gap();
    return {ifs.seed_upper(), g.hi, g.lo, g.hi - g.lo, ifs.seed_lower(), ifs.seed_length(), 1, -1};
}

// Children jw in increasing j.
template <class Out>
void gap_children(const HoloIFS& ifs, const GapNode& n, Out&& emit) {
    const ShiftCoding& coding = ifs.coding();
    for (int j = 0; j < ifs.branch_count(); ++j) {
        if (n.first >= 0 && !coding.allowed(j, n.first)) continue;
        GapNode k;
        k.anchor = ifs.branch(j, n.anchor);
        k.hi = ifs.branch_near(j, n.hi, n.anchor);
        k.lo = ifs.branch_near(j, n.lo, n.anchor);
        k.diff = ifs.image_difference(j, k.hi, k.lo, n.diff);
        k.lower = ifs.branch_near(j, n.lower, n.anchor);
        k.piece = ifs.image_difference(j, k.anchor, k.lower, n.piece);
        k.sign = n.sign * ifs.orientation(j);
        k.first = j;
        emit(j, k);
    }
}

inline void gap_measure(const GapNode& n, LevelStats& s, double exponent) {
    double a = std::abs(n.diff);
    s.add_term(static_cast<double>(n.sign) * n.diff, exponent == 1.0 ? a : std::pow(a, exponent));
    s.piece_sum.add(std::abs(n.piece));
}

struct WordNode {
    MoebiusMap map;
    int state;
};

template <class Out>
void word_children(const WordSeriesInput& in, const WordNode& n, Out&& emit) {
    for (int l = 0; l < in.automaton.letter_count(); ++l) {
        int s = in.automaton.next(n.state, l);
        if (s < 0) continue;
        emit(l, WordNode{n.map * in.letter_maps[l], s});
    }
}

inline bool word_measure(const WordSeriesInput& in, const WordNode& n, LevelStats& s,
                         Complex* term_out = nullptr) {
    if (!in.automaton.accepting(n.state)) return false;
    Complex t = log_cross_ratio_image(in.p_att, in.p_rep, n.map, in.q_att, in.q_rep);
    s.add_term(t, std::abs(t));
    if (term_out) *term_out = t;
    return true;
}

inline Complex periodic_seed(const HoloIFS& ifs) { return 0.5 * (ifs.seed_upper() + ifs.seed_lower()); }

}  // namespace basmajian::detail
