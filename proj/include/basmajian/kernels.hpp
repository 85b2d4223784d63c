#pragma once

#include <functional>
#include <vector>

#include "basmajian/moebius.hpp"
#include "basmajian/series.hpp"
#include "basmajian/symbolic.hpp"

namespace basmajian {

class HoloIFS;

// Series of log cross ratios [p_att, p_rep; w q_att, w q_rep] over the words
// accepted by an automaton.
struct WordSeriesInput {
    Automaton automaton;
    std::vector<MoebiusMap> letter_maps;  // one per alphabet letter
    RiemannPoint p_att, p_rep, q_att, q_rep;
};

struct PeriodicPoint {
    Word word;
    Complex point;
    Complex multiplier;  // derivative of the n-th iterate of the expanding map
};

using WordTermVisitor = std::function<void(const Word&, Complex term)>;
using GapVisitor = std::function<void(const Word&, Complex hi, Complex lo, Complex diff, int sign)>;

// Breadth-first reference implementations. Levels are accumulated one word
// at a time in canonical order. Visitors see every word up to the depth.
namespace serial {
std::vector<LevelStats> word_series_levels(const WordSeriesInput& in, int depth,
                                           const WordTermVisitor& visit = {});
std::vector<LevelStats> gap_series_levels(const HoloIFS& ifs, int depth, double exponent = 1.0,
                                          const GapVisitor& visit = {});
std::vector<Complex> word_terms(const std::vector<MoebiusMap>& word_maps, const RiemannPoint& p_att,
                                const RiemannPoint& p_rep, const RiemannPoint& q_att,
                                const RiemannPoint& q_rep);
std::vector<PeriodicPoint> periodic_points(const HoloIFS& ifs, int n);
}  // namespace serial

// OpenMP versions. The tree is cut at a fixed level into subtrees walked
// depth first; per-subtree sums are merged in canonical order, so results do
// not depend on the thread count.
namespace parallel {
std::vector<LevelStats> word_series_levels(const WordSeriesInput& in, int depth);
std::vector<LevelStats> gap_series_levels(const HoloIFS& ifs, int depth, double exponent = 1.0);
std::vector<Complex> word_terms(const std::vector<MoebiusMap>& word_maps, const RiemannPoint& p_att,
                                const RiemannPoint& p_rep, const RiemannPoint& q_att,
                                const RiemannPoint& q_rep);
std::vector<PeriodicPoint> periodic_points(const HoloIFS& ifs, int n);
}  // namespace parallel

// Applies BASMAJIAN_THREADS if set; returns the thread count in use.
int configure_threads();

}  // namespace basmajian
