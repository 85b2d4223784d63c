#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "basmajian/errors.hpp"
#include "basmajian/schottky.hpp"

using namespace basmajian;

namespace {

const Alphabet& torus_letters() {
    static const Alphabet g = LanguageSpec::torus().alphabet;
    return g;
}

Word w(const char* text) { return Word::parse(torus_letters(), text); }

// X = [[L, 1], [-1, 0]], Y = [[0, x], [-1/x, L]] with x + 1/x = -L.
MarkedRep torus_rep(Complex L) {
    Complex x = (-L - std::sqrt(L * L - 4.0)) / 2.0;
    return MarkedRep({MoebiusMap(L, 1, -1, 0), MoebiusMap(0, x, -1.0 / x, L)}, {w("abAB")},
                     LanguageSpec::torus());
}

// Roots of c z^2 + (d - a) z - b, attracting first.
std::pair<Complex, Complex> oracle_fixed_points(const MoebiusMap& m) {
    Complex a = m.a(), b = m.b(), c = m.c(), d = m.d();
    Complex disc = std::sqrt((d - a) * (d - a) + 4.0 * b * c);
    Complex r1 = (a - d + disc) / (2.0 * c), r2 = (a - d - disc) / (2.0 * c);
    auto deriv = [&](Complex z) { return std::abs(1.0 / ((c * z + d) * (c * z + d))); };
    return deriv(r1) < 1 ? std::make_pair(r1, r2) : std::make_pair(r2, r1);
}

Complex mobius(const MoebiusMap& m, Complex z) { return (m.a() * z + m.b()) / (m.c() * z + m.d()); }

double wrapped_distance(Complex x, Complex y) {
    Complex d = x - y;
    return std::abs(Complex(d.real(), std::remainder(d.imag(), 2 * M_PI)));
}

std::map<std::string, long> windings(const MonodromyResult& r) {
    std::map<std::string, long> out;
    for (const TrackedTerm& t : r.terms) out[t.word.to_string(torus_letters())] = t.winding;
    return out;
}

}  // namespace

TEST_CASE("terms at the Fuchsian base point") {
    MarkedRep rep = preset(Preset::Gamma, 0.0);
    int count = 0;
    for_each_term(rep, 6, [&](const Word&, Complex t) {
        CHECK(std::abs(t.imag()) < 1e-12);
        CHECK(t.real() > 0.0);
        ++count;
    });
    CHECK(count > 1000);
}

TEST_CASE("single term by direct evaluation") {
    MarkedRep rep = preset(Preset::Gamma, 0.0);
    MoebiusMap X = rep.generators()[0], Y = rep.generators()[1];
    MoebiusMap boundary = X * Y * X.inverse() * Y.inverse();
    auto [att, repl] = oracle_fixed_points(boundary);
    Complex p = mobius(X, att), q = mobius(X, repl);
    Complex cr = (att - p) * (repl - q) / ((att - q) * (repl - p));
    Complex expected = std::log(cr);
    CHECK(std::abs(expected.imag()) < 1e-12);
    CHECK(std::abs(term(rep, 0, 0, w("a")) - expected) < 1e-10 * std::abs(expected));
}

TEST_CASE("normalized form log(w(0) / w(inf))") {
    MarkedRep rep = preset(Preset::Gamma, 0.3);
    FixedPair f = rep.boundary_fixed_points(0);
    Complex att = f.attracting.value(), repl = f.repelling.value();
    // h sends the attracting fixed point to infinity and the repelling one to 0.
    MoebiusMap h(1.0, -repl, 1.0, -att);
    std::vector<MoebiusMap> conj;
    for (const MoebiusMap& g : rep.generators()) conj.push_back(compose(h, compose(g, h.inverse())));
    MarkedRep normal(conj, rep.boundary_words(), rep.language());
    for (const char* text : {"a", "b", "aB", "Ab", "aab", "bAAB"}) {
        MoebiusMap m = normal.evaluate(w(text));
        Complex direct = std::log((m.b() / m.d()) / (m.a() / m.c()));
        CHECK(wrapped_distance(term(normal, 0, 0, w(text)), direct) < 1e-9);
        CHECK(wrapped_distance(term(rep, 0, 0, w(text)), direct) < 1e-9);
    }
}

TEST_CASE("conjugation invariance") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    MarkedRep rep = preset(Preset::Gamma, 0.2);
    for (int k = 0; k < 5; ++k) {
        MoebiusMap h(Complex(u(rng), u(rng)) + 2.0, Complex(u(rng), u(rng)), Complex(u(rng), u(rng)),
                     Complex(u(rng), u(rng)) + 2.0);
        std::vector<MoebiusMap> conj;
        for (const MoebiusMap& g : rep.generators()) conj.push_back(compose(h, compose(g, h.inverse())));
        MarkedRep moved(conj, rep.boundary_words(), rep.language());
        std::vector<Complex> before, after;
        for_each_term(rep, 4, [&](const Word&, Complex t) { before.push_back(t); });
        for_each_term(moved, 4, [&](const Word&, Complex t) { after.push_back(t); });
        REQUIRE(before.size() == after.size());
        for (std::size_t i = 0; i < before.size(); ++i)
            CHECK(wrapped_distance(before[i], after[i]) < 1e-9 * std::max(1.0, std::abs(before[i])));
    }
}

TEST_CASE("identity for the presets") {
    SUBCASE("gamma at the base point") {
        MarkedRep rep = preset(Preset::Gamma, 0.0);
        SeriesReport r = evaluate_identity(rep, 1e-4, 30);
        MoebiusMap X = rep.generators()[0], Y = rep.generators()[1];
        Complex lhs = complex_length(X * Y * X.inverse() * Y.inverse());
        CHECK(std::abs(r.lhs - lhs) < 1e-12);
        CHECK(r.converged);
        CHECK(r.gap() < r.tail_bound + 1e-8);
        CHECK(r.min_term_re > 0.0);
        CHECK(r.max_term_abs_im < 1e-12);
        // Ratios settle down geometrically.
        std::vector<double> ratios = last_ratios(r.level_sums, 3);
        double lo = *std::min_element(ratios.begin(), ratios.end());
        double hi = *std::max_element(ratios.begin(), ratios.end());
        CHECK(hi - lo < 0.05);
    }
    SUBCASE("re-marked generators") {
        SeriesReport r = evaluate_identity(preset(Preset::GammaPrime, 0.0), 1e-6, 30);
        CHECK(r.converged);
        // Terms for these generators carry rounding near 1e-8 (nearly coincident
        // fixed points), which puts a floor under the gap.
        CHECK(r.gap() < r.tail_bound + 1e-7);
        CHECK(r.min_term_re > 0.0);
    }
    SUBCASE("complex point, mod 2 pi i") {
        SeriesReport r = evaluate_identity(preset(Preset::Gamma, 0.25), 1e-4, 30);
        CHECK(r.modulo_two_pi_i);
        CHECK(r.gap() < r.tail_bound + 1e-8);
    }
    SUBCASE("a non-discrete representation diverges") {
        try {
            evaluate_identity(torus_rep(Complex(2.1, 0.3)), 1e-4, 16);
            FAIL("expected Diverging");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Diverging);
        }
    }
    SUBCASE("a degenerate boundary is rejected") {
        CHECK_THROWS_AS(torus_rep(2.5), Error);
    }
}

TEST_CASE("presets") {
    MarkedRep base = preset(Preset::Gamma, 0.0);
    for (const MoebiusMap& g : base.generators())
        for (Complex e : {g.a(), g.b(), g.c(), g.d()}) CHECK(e.imag() == 0.0);
    CHECK(std::abs(base.generators()[0].trace() - 5.0) < 1e-14);
    CHECK(std::abs(preset_x(0.0) - (-5 - std::sqrt(21.0)) / 2) < 1e-13);
    CHECK(std::abs(preset_x(0.0, {true}) - (-5 + std::sqrt(21.0)) / 2) < 1e-13);
    // Around the loop the larger root stays larger, so it returns to itself.
    CHECK(std::abs(preset_x(1.0) - preset_x(0.0)) < 1e-12);
    MarkedRep end = preset(Preset::Gamma, 1.0);
    for (int i = 0; i < 2; ++i) CHECK(projectively_equal(end.generators()[i], base.generators()[i], 1e-12));

    MarkedRep prime = preset(Preset::GammaPrime, 0.0);
    MoebiusMap X = base.generators()[0], Y = base.generators()[1];
    CHECK(projectively_equal(prime.generators()[0], X * X));
    CHECK(projectively_equal(prime.generators()[1], X * Y * Y * Y));
}

TEST_CASE("representation JSON") {
    MarkedRep rep = preset(Preset::GammaPrime, 0.4);
    nlohmann::json j = rep;
    MarkedRep back = rep_from_json(j);
    CHECK(back.boundary_words() == rep.boundary_words());
    for (int i = 0; i < 2; ++i) CHECK(projectively_equal(back.generators()[i], rep.generators()[i], 0.0));
    CHECK(std::abs(term(back, 0, 0, w("ab")) - term(rep, 0, 0, w("ab"))) == 0.0);
}

TEST_CASE("monodromy") {
    SUBCASE("gamma") {
        auto m = windings(continue_along(preset_loop(Preset::Gamma, 512), 4));
        for (const auto& [word, k] : m) {
            bool moves = word == "a" || word == "b" || word == "A" || word == "B" || word == "ab" || word == "AB";
            CHECK(k == (moves ? 1 : 0));
        }
        CHECK(m.at("aB") == 0);
        CHECK(m.at("Ab") == 0);
    }
    SUBCASE("gamma prime") {
        auto m = windings(continue_along(preset_loop(Preset::GammaPrime, 512), 4));
        long total = 0;
        for (const auto& [word, k] : m) total += 2 * k;
        CHECK(total == 36);
        CHECK(m.at("a") == 5);
        CHECK(m.at("A") == 5);
        CHECK(m.at("b") == 3);
        CHECK(m.at("B") == 3);
        CHECK(m.at("ab") == 0);
        CHECK(m.at("AB") == 0);
        CHECK(m.at("aB") == 1);
        CHECK(m.at("bA") == 1);
    }
    SUBCASE("step doubling changes nothing") {
        for (Preset p : {Preset::Gamma, Preset::GammaPrime})
            CHECK(windings(continue_along(preset_loop(p, 128), 4)) ==
                  windings(continue_along(preset_loop(p, 256), 4)));
    }
    SUBCASE("constant loop") {
        LoopSpec still{[](double) { return preset(Preset::Gamma, 0.1); }, 16, true};
        for (const TrackedTerm& t : continue_along(still, 4).terms) {
            CHECK(t.winding == 0);
            CHECK(std::abs(t.total_change) < 1e-12);
        }
    }
}
