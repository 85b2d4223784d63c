#include <algorithm>
#include <cmath>

#include "basmajian/errors.hpp"
#include "basmajian/kernels.hpp"
#include "series_nodes.hpp"

namespace basmajian {

Complex apply_word(const HoloIFS& ifs, const Word& w, Complex x, Complex& derivative) {
    Complex anchor = ifs.seed_upper();
    derivative = 1.0;
    for (int i = w.size() - 1; i >= 0; --i) {
        int j = w[i];
        Complex y = ifs.branch_near(j, x, anchor);
        derivative *= ifs.branch_derivative(j, x, y);
        anchor = ifs.branch(j, anchor);
        x = y;
    }
    return x;
}

Complex apply_word(const HoloIFS& ifs, const Word& w, Complex x) {
    Complex d;
    return apply_word(ifs, w, x, d);
}

namespace detail {

namespace {

// Newton on F(z) = f^n(z) - z with the forward map; no branch choices.
double max_residual(const HoloIFS& ifs, const std::vector<Complex>& u) {
    const std::size_t n = u.size();
    double r = 0.0;
    for (std::size_t k = 0; k < n; ++k) r = std::max(r, std::abs(ifs.forward(u[k]) - u[(k + 1) % n]));
    return r;
}

// Newton on the whole cycle u_{k+1} = f(u_k). The linear system is solved by
// backward recursion, which divides by the expanding derivatives.
bool newton_cycle(const HoloIFS& ifs, std::vector<Complex>& u, Complex& multiplier) {
    const std::size_t n = u.size();
    std::vector<Complex> a(n + 1), b(n + 1), d(n);
    double res = max_residual(ifs, u);
    for (int it = 0; it < 100; ++it) {
        for (std::size_t k = 0; k < n; ++k) d[k] = ifs.forward_derivative(u[k]);
        a[n] = 1.0;
        b[n] = 0.0;
        for (std::size_t k = n; k-- > 0;) {
            Complex f = ifs.forward(u[k]) - u[(k + 1) % n];
            a[k] = a[k + 1] / d[k];
            b[k] = (b[k + 1] - f) / d[k];
        }
        Complex d0 = b[0] / (1.0 - a[0]);
        double size = 0.0;
        std::vector<Complex> delta(n);
        for (std::size_t k = 0; k < n; ++k) {
            delta[k] = a[k] * d0 + b[k];
            size = std::max(size, std::abs(delta[k]));
        }
        if (!std::isfinite(size)) return false;
        double scale = 1.0;
        std::vector<Complex> trial(n);
        for (int h = 0; h < 30; ++h, scale *= 0.5) {
            for (std::size_t k = 0; k < n; ++k) trial[k] = u[k] + scale * delta[k];
            double r = max_residual(ifs, trial);
            if (r < res || r <= 1e-14) {
                res = r;
                break;
            }
        }
        u = trial;
        if (size <= 1e-14 * std::max(1.0, std::abs(u[0]))) {
            Complex m = 1.0;
            for (std::size_t k = 0; k < n; ++k) m *= ifs.forward_derivative(u[k]);
            multiplier = m;
            return true;
        }
    }
    return false;
}

}  // namespace

// With a forward map: T_w(upper) lies in the limit set inside the cylinder of
// w, which holds exactly one period-n point; Newton on f^n(z) - z from there
// needs no branch choices. Newton runs on the whole cycle (multiple shooting). Otherwise: contraction iteration of T_w from the
// seed midpoint.
PeriodicPoint solve_periodic(const HoloIFS& ifs, const Word& w) {
    if (ifs.has_forward_map()) {
        std::vector<Complex> u(w.size());
        u[0] = apply_word(ifs, w, ifs.seed_upper());
        for (std::size_t k = 1; k < u.size(); ++k) u[k] = ifs.forward(u[k - 1]);
        Complex m;
        if (newton_cycle(ifs, u, m)) return {w, u[0], m};
        // Left for repair_periodic to recover.
        return {w, u[0], Complex(NAN, NAN)};
    }
    Complex x = periodic_seed(ifs);
    for (int it = 0; it < 300; ++it) {
        Complex y = apply_word(ifs, w, x);
        if (!std::isfinite(y.real()) || !std::isfinite(y.imag())) break;
        bool done = std::abs(y - x) <= 1e-13 * std::max(1.0, std::abs(y));
        x = y;
        if (done) {
            Complex d;
            Complex z = apply_word(ifs, w, x, d);
            return {w, z, 1.0 / d};
        }
    }
    throw Error(ErrorKind::NoConvergence, "periodic point iteration did not settle");
}

// Newton from a cylinder point occasionally lands on a neighbouring cycle.
// Every word owns exactly one root of f^n(z) - z, so duplicated or failed
// entries are exactly the missing roots; recover them by Aberth iteration
// with all accepted roots deflated.
void repair_periodic(const HoloIFS& ifs, int n, std::vector<PeriodicPoint>& pts) {
    if (!ifs.has_forward_map()) return;
    auto finite = [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
    auto find_duplicates = [&](std::vector<char>& missing) {
        std::vector<std::size_t> order;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (!missing[i]) order.push_back(i);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return pts[a].point.real() < pts[b].point.real(); });
        bool any = false;
        for (std::size_t p = 0; p < order.size(); ++p) {
            std::size_t i = order[p];
            if (missing[i]) continue;
            for (std::size_t q = p + 1; q < order.size(); ++q) {
                std::size_t j = order[q];
                if (pts[j].point.real() - pts[i].point.real() > 1e-3) break;
                double scale = std::max(std::abs(pts[i].multiplier), std::abs(pts[j].multiplier));
                if (!missing[j] && std::abs(pts[i].point - pts[j].point) < 1e-3 / scale + 1e-13) {
                    missing[std::max(i, j)] = 1;
                    any = true;
                }
            }
        }
        return any;
    };

    std::vector<char> missing(pts.size(), 0);
    for (std::size_t i = 0; i < pts.size(); ++i) missing[i] = !finite(pts[i].multiplier);
    find_duplicates(missing);
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (missing[i]) todo.push_back(i);
    if (todo.empty()) return;

    std::vector<Complex> known;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (!missing[i]) known.push_back(pts[i].point);
    std::vector<Complex> z(todo.size());
    for (std::size_t k = 0; k < todo.size(); ++k) z[k] = apply_word(ifs, pts[todo[k]].word, ifs.seed_upper());

    bool settled = false;
    for (int it = 0; it < 500 && !settled; ++it) {
        settled = true;
        for (std::size_t k = 0; k < z.size(); ++k) {
            Complex x = z[k], d = 1.0;
            for (int i = 0; i < n; ++i) {
                d *= ifs.forward_derivative(x);
                x = ifs.forward(x);
            }
            Complex ratio = (x - z[k]) / (d - 1.0);
            Complex pull = 0.0;
            for (Complex r : known) pull += 1.0 / (z[k] - r);
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != k) pull += 1.0 / (z[k] - z[j]);
            Complex step = ratio / (1.0 - ratio * pull);
            if (!finite(step)) throw Error(ErrorKind::NoConvergence, "periodic point recovery failed");
            z[k] -= step;
            if (std::abs(step) > 1e-14 * std::max(1.0, std::abs(z[k]))) settled = false;
        }
    }
    if (!settled) throw Error(ErrorKind::NoConvergence, "periodic point recovery did not settle");
    for (std::size_t k = 0; k < z.size(); ++k) {
        Complex m = 1.0, x = z[k];
        for (int i = 0; i < n; ++i) {
            m *= ifs.forward_derivative(x);
            x = ifs.forward(x);
        }
        pts[todo[k]].point = z[k];
        pts[todo[k]].multiplier = m;
    }
    std::vector<char> none(pts.size(), 0);
    if (find_duplicates(none)) throw Error(ErrorKind::NoConvergence, "periodic points are not distinct");
}

}  // namespace detail

namespace serial {

std::vector<LevelStats> word_series_levels(const WordSeriesInput& in, int depth,
                                           const WordTermVisitor& visit) {
    struct Item {
        detail::WordNode node;
        Word word;
    };
    std::vector<LevelStats> levels(depth + 1);
    std::vector<Item> cur{{detail::WordNode{MoebiusMap::identity(), in.automaton.start()}, Word{}}};
    for (int l = 1; l <= depth; ++l) {
        std::vector<Item> next;
        for (const auto& it : cur)
            detail::word_children(in, it.node, [&](int letter, const detail::WordNode& k) {
                Word w = it.word;
                w.push_back(letter);
                next.push_back({k, std::move(w)});
            });
        for (const auto& it : next) {
            Complex t;
            if (detail::word_measure(in, it.node, levels[l], &t) && visit) visit(it.word, t);
        }
        cur.swap(next);
    }
    return levels;
}

std::vector<LevelStats> gap_series_levels(const HoloIFS& ifs, int depth, double exponent,
                                          const GapVisitor& visit) {
    struct Item {
        detail::GapNode node;
        Word word;
    };
    std::vector<LevelStats> levels(depth + 1);
    std::vector<Item> cur{{detail::gap_root(ifs), Word{}}};
    detail::gap_measure(cur[0].node, levels[0], exponent);
    if (visit) visit(cur[0].word, cur[0].node.hi, cur[0].node.lo, cur[0].node.diff, 1);
    for (int l = 1; l <= depth; ++l) {
        std::vector<Item> next;
        for (const auto& it : cur)
            detail::gap_children(ifs, it.node, [&](int letter, const detail::GapNode& k) {
                std::vector<std::uint8_t> v{static_cast<std::uint8_t>(letter)};
                v.insert(v.end(), it.word.letters().begin(), it.word.letters().end());
                next.push_back({k, Word(std::move(v))});
            });
        for (const auto& it : next) {
            detail::gap_measure(it.node, levels[l], exponent);
            if (visit) visit(it.word, it.node.hi, it.node.lo, it.node.diff, it.node.sign);
        }
        cur.swap(next);
    }
    return levels;
}

std::vector<Complex> word_terms(const std::vector<MoebiusMap>& word_maps, const RiemannPoint& p_att,
                                const RiemannPoint& p_rep, const RiemannPoint& q_att,
                                const RiemannPoint& q_rep) {
    std::vector<Complex> out;
    out.reserve(word_maps.size());
    for (const auto& m : word_maps) out.push_back(log_cross_ratio_image(p_att, p_rep, m, q_att, q_rep));
    return out;
}

std::vector<PeriodicPoint> periodic_points(const HoloIFS& ifs, int n) {
    std::vector<PeriodicPoint> out;
    shift_words(ifs.coding(), n, [&](const Word& w) { out.push_back(detail::solve_periodic(ifs, w)); });
    detail::repair_periodic(ifs, n, out);
    return out;
}

}  // namespace serial
}  // namespace basmajian
