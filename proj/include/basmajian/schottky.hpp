#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "basmajian/kernels.hpp"
#include "basmajian/moebius.hpp"
#include "basmajian/series.hpp"
#include "basmajian/symbolic.hpp"

namespace basmajian {

// Images of the free generators, the boundary words, and the word language.
// Lower-case letters are the generators in order of appearance in the
// alphabet, upper-case letters their inverses.
class MarkedRep {
public:
    // Throws NonLoxodromic if a generator or boundary word is not loxodromic.
    MarkedRep(std::vector<MoebiusMap> generators, std::vector<Word> boundary_words,
              LanguageSpec language);

    const std::vector<MoebiusMap>& generators() const { return generators_; }
    const std::vector<Word>& boundary_words() const { return boundary_words_; }
    const LanguageSpec& language() const { return language_; }
    const std::vector<MoebiusMap>& letter_maps() const { return letter_maps_; }

    MoebiusMap evaluate(const Word& w) const;
    MoebiusMap boundary(int p) const { return evaluate(boundary_words_.at(p)); }
    FixedPair boundary_fixed_points(int p) const;

private:
    std::vector<MoebiusMap> generators_;
    std::vector<Word> boundary_words_;
    LanguageSpec language_;
    std::vector<MoebiusMap> letter_maps_;
};

void to_json(nlohmann::json& j, const MarkedRep& rep);
MarkedRep rep_from_json(const nlohmann::json& j);

// Principal log of [a_p+, a_p-; w a_q+, w a_q-].
Complex term(const MarkedRep& rep, int p, int q, const Word& w);

// Sum of terms over the language against the complex length of the boundary.
// Supports a single boundary word.
SeriesReport evaluate_identity(const MarkedRep& rep, double eps, int max_len);

// Terms of the identity for every word up to max_len, canonical order.
void for_each_term(const MarkedRep& rep, int max_len,
                   const std::function<void(const Word&, Complex)>& visit);

struct TrackedTerm {
    Word word;
    Complex base_value;
    Complex value;
    double total_change = 0.0;  // accumulated change of Im(value)
    long winding = 0;           // total change in units of 2 pi
};

struct LoopSpec {
    std::function<MarkedRep(double)> path;
    int steps = 512;
    bool adaptive = true;
};

struct MonodromyResult {
    std::vector<TrackedTerm> terms;
    int substeps = 0;  // steps actually taken after subdivision
};

// Continues every term of words up to max_len around the loop. Steps are
// halved until each term changes its argument by less than pi/2.
MonodromyResult continue_along(const LoopSpec& loop, int max_len);

enum class Preset { Gamma, GammaPrime };

struct PresetOptions {
    bool alternate_root = false;  // take the smaller root x of x^2 + Lx + 1
};

// L = 5 exp(2 pi i t), X = [[L, 1], [-1, 0]], Y = [[0, x], [-1/x, L]].
// Gamma marks (X, Y), GammaPrime marks (X^2, X Y^3); the boundary is abAB.
MarkedRep preset(Preset name, double t, PresetOptions options = {});
Complex preset_x(double t, PresetOptions options = {});
LoopSpec preset_loop(Preset name, int steps, PresetOptions options = {});

}  // namespace basmajian
