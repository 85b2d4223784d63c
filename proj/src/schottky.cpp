#include "basmajian/schottky.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "basmajian/errors.hpp"
#include "basmajian/io.hpp"

namespace basmajian {

namespace {

void require_loxodromic(const MoebiusMap& m, const std::string& what) {
    try {
        complex_length(m);
    } catch (const Error&) {
        throw Error(ErrorKind::NonLoxodromic, what + " is not loxodromic");
    }
}

WordSeriesInput series_input(const MarkedRep& rep) {
    FixedPair f = rep.boundary_fixed_points(0);
    return {compile(rep.language()), rep.letter_maps(), f.attracting, f.repelling, f.attracting,
            f.repelling};
}

}  // namespace

MarkedRep::MarkedRep(std::vector<MoebiusMap> generators, std::vector<Word> boundary_words,
                     LanguageSpec language)
    : generators_(std::move(generators)),
      boundary_words_(std::move(boundary_words)),
      language_(std::move(language)) {
    const Alphabet& a = language_.alphabet;
    if (!a.has_involution()) throw std::invalid_argument("rep language needs a group alphabet");
    letter_maps_.resize(a.size());
    std::size_t next = 0;
    for (int i = 0; i < a.size(); ++i) {
        if (!std::islower(static_cast<unsigned char>(a.letter(i)))) continue;
        if (next >= generators_.size()) throw std::invalid_argument("more letters than generators");
        letter_maps_[i] = generators_[next];
        letter_maps_[a.inverse(i)] = generators_[next].inverse();
        ++next;
    }
    if (next != generators_.size()) throw std::invalid_argument("generator count does not match alphabet");
    for (std::size_t g = 0; g < generators_.size(); ++g)
        require_loxodromic(generators_[g], "generator " + std::to_string(g + 1));
    for (const auto& w : boundary_words_) require_loxodromic(evaluate(w), "boundary word " + w.to_string(a));
}

MoebiusMap MarkedRep::evaluate(const Word& w) const {
    MoebiusMap m;
    for (int i = 0; i < w.size(); ++i) m = m * letter_maps_[w[i]];
    return m;
}

FixedPair MarkedRep::boundary_fixed_points(int p) const {
    try {
        return fixed_points(boundary(p));
    } catch (const Error&) {
        throw Error(ErrorKind::NonLoxodromic, "boundary word is not loxodromic");
    }
}

void to_json(nlohmann::json& j, const MarkedRep& rep) {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : rep.generators()) gens.push_back(matrix_to_json(g));
    std::vector<std::string> words;
    for (const auto& w : rep.boundary_words()) words.push_back(w.to_string(rep.language().alphabet));
    j = nlohmann::json{{"generators", gens}, {"boundary_words", words}, {"language", rep.language()}};
}

MarkedRep rep_from_json(const nlohmann::json& j) {
    LanguageSpec lang = j.contains("language") ? j.at("language").get<LanguageSpec>() : LanguageSpec::torus();
    std::vector<MoebiusMap> gens;
    for (const auto& g : j.at("generators")) gens.push_back(matrix_from_json(g));
    std::vector<Word> words;
    for (const auto& s : j.value("boundary_words", std::vector<std::string>{"abAB"}))
        words.push_back(Word::parse(lang.alphabet, s));
    return MarkedRep(std::move(gens), std::move(words), std::move(lang));
}

Complex term(const MarkedRep& rep, int p, int q, const Word& w) {
    FixedPair fp = rep.boundary_fixed_points(p);
    FixedPair fq = rep.boundary_fixed_points(q);
    return log_cross_ratio_image(fp.attracting, fp.repelling, rep.evaluate(w), fq.attracting,
                                 fq.repelling);
}

SeriesReport evaluate_identity(const MarkedRep& rep, double eps, int max_len) {
    if (rep.boundary_words().size() != 1)
        throw std::invalid_argument("evaluate_identity supports a single boundary word");
    WordSeriesInput in = series_input(rep);
    Complex lhs = complex_length(rep.boundary(0));
    return sum_by_levels([&](int d) { return parallel::word_series_levels(in, d); }, 1, lhs, true,
                         eps, max_len);
}

void for_each_term(const MarkedRep& rep, int max_len,
                   const std::function<void(const Word&, Complex)>& visit) {
    WordSeriesInput in = series_input(rep);
    serial::word_series_levels(in, max_len, visit);
}

namespace {

struct LoopState {
    RiemannPoint att, rep;
    std::vector<Complex> values;
};

double wrap(double x) {
    double r = std::remainder(x, 2.0 * std::numbers::pi);
    return r <= -std::numbers::pi ? r + 2.0 * std::numbers::pi : r;
}

LoopState loop_state(const MarkedRep& rep, const std::vector<Word>& words, const LoopState* prev) {
    FixedPair f = rep.boundary_fixed_points(0);
    LoopState s{f.attracting, f.repelling, {}};
    if (prev) {
        double d1 = chordal_distance(f.attracting, prev->att);
        double d2 = chordal_distance(f.repelling, prev->att);
        if (std::abs(d1 - d2) < 1e-9) throw Error(ErrorKind::LostTrack, "fixed points are equidistant");
        if (d2 < d1) std::swap(s.att, s.rep);
    }
    std::vector<MoebiusMap> maps;
    maps.reserve(words.size());
    for (const auto& w : words) maps.push_back(rep.evaluate(w));
    s.values = parallel::word_terms(maps, s.att, s.rep, s.att, s.rep);
    return s;
}

}  // namespace

MonodromyResult continue_along(const LoopSpec& loop, int max_len) {
    if (loop.steps < 1) throw std::invalid_argument("loop needs at least one step");
    MarkedRep base = loop.path(0.0);
    if (base.boundary_words().size() != 1)
        throw std::invalid_argument("monodromy supports a single boundary word");
    std::vector<Word> words = enumerate(base.language(), max_len);
    LoopState cur = loop_state(base, words, nullptr);
    std::vector<double> total(words.size(), 0.0);
    MonodromyResult out;

    // Advances from t0 to t1, splitting the interval while any argument
    // increment reaches pi/2.
    std::function<void(double, double, int)> advance = [&](double t0, double t1, int level) {
        LoopState next = loop_state(loop.path(t1), words, &cur);
        std::vector<double> inc(words.size());
        bool small = true;
        for (std::size_t i = 0; i < words.size(); ++i) {
            inc[i] = wrap(next.values[i].imag() - cur.values[i].imag());
            if (std::abs(inc[i]) >= 0.5 * std::numbers::pi) small = false;
        }
        if (!small && loop.adaptive) {
            if (level > 40) throw Error(ErrorKind::LostTrack, "step subdivision did not resolve a jump");
            double tm = 0.5 * (t0 + t1);
            advance(t0, tm, level + 1);
            advance(tm, t1, level + 1);
            return;
        }
        for (std::size_t i = 0; i < words.size(); ++i) total[i] += inc[i];
        cur = std::move(next);
        ++out.substeps;
    };
    for (int k = 0; k < loop.steps; ++k)
        advance(static_cast<double>(k) / loop.steps, static_cast<double>(k + 1) / loop.steps, 0);

    LoopState start = loop_state(base, words, nullptr);
    for (std::size_t i = 0; i < words.size(); ++i) {
        TrackedTerm t;
        t.word = words[i];
        t.base_value = start.values[i];
        t.value = Complex(cur.values[i].real(), start.values[i].imag() + total[i]);
        t.total_change = total[i];
        t.winding = std::lround(total[i] / (2.0 * std::numbers::pi));
        out.terms.push_back(std::move(t));
    }
    return out;
}

Complex preset_x(double t, PresetOptions options) {
    Complex L = 5.0 * std::exp(Complex(0.0, 2.0 * std::numbers::pi * t));
    // Roots of x^2 + Lx + 1; their moduli stay apart on |L| = 5, so the
    // larger one is its own continuation around the loop.
    Complex disc = std::sqrt(L * L - 4.0);
    Complex r1 = 0.5 * (-L + disc), r2 = 0.5 * (-L - disc);
    Complex big = std::abs(r1) > std::abs(r2) ? r1 : r2;
    return options.alternate_root ? 1.0 / big : big;
}

MarkedRep preset(Preset name, double t, PresetOptions options) {
    Complex L = 5.0 * std::exp(Complex(0.0, 2.0 * std::numbers::pi * t));
    if (t == 0.0 || t == 1.0) L = 5.0;
    Complex x = preset_x(t, options);
    MoebiusMap X(L, 1.0, -1.0, 0.0);
    MoebiusMap Y(0.0, x, -1.0 / x, L);
    LanguageSpec lang = LanguageSpec::torus();
    std::vector<Word> boundary{Word::parse(lang.alphabet, "abAB")};
    if (name == Preset::Gamma) return MarkedRep({X, Y}, boundary, lang);
    return MarkedRep({compose(X, X), compose(X, compose(Y, compose(Y, Y)))}, boundary, lang);
}

LoopSpec preset_loop(Preset name, int steps, PresetOptions options) {
    return {[name, options](double t) { return preset(name, t, options); }, steps, true};
}

}  // namespace basmajian
