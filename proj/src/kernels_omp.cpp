#include <cstdlib>
#include <exception>
#include <string>

#include <omp.h>

#include "basmajian/errors.hpp"
#include "basmajian/kernels.hpp"
#include "series_nodes.hpp"

namespace basmajian {

namespace detail {
PeriodicPoint solve_periodic(const HoloIFS& ifs, const Word& w);
void repair_periodic(const HoloIFS& ifs, int n, std::vector<PeriodicPoint>& pts);
}

namespace {

// Subtrees handed to the thread pool; fixed so the reduction order is too.
constexpr std::size_t kFrontierTarget = 512;

// Keeps the exception of the lowest failing index so errors are reproducible.
class FirstError {
public:
    void capture(std::size_t index) {
#pragma omp critical(basmajian_first_error)
        if (!error_ || index < index_) {
            error_ = std::current_exception();
            index_ = index;
        }
    }
    void rethrow() const {
        if (error_) std::rethrow_exception(error_);
    }

private:
    std::exception_ptr error_;
    std::size_t index_ = 0;
};

template <class Node, class Children, class Measure>
void walk(const Node& node, int level, int depth, std::vector<LevelStats>& stats,
          std::vector<std::vector<Node>>& buffers, const Children& children, const Measure& measure) {
    if (level == depth) return;
    auto& kids = buffers[level + 1];
    kids.clear();
    children(node, [&](int, const Node& k) { kids.push_back(k); });
    // Recursion reuses deeper buffers only, so iterating this one is safe.
    for (std::size_t i = 0; i < kids.size(); ++i) {
        Node k = kids[i];
        measure(k, stats[level + 1]);
        walk(k, level + 1, depth, stats, buffers, children, measure);
    }
}

template <class Node, class Children, class Measure>
std::vector<LevelStats> tree_levels(const Node& root, bool measure_root, int depth,
                                    const Children& children, const Measure& measure) {
    std::vector<LevelStats> levels(depth + 1);
    if (measure_root) measure(root, levels[0]);
    std::vector<Node> frontier{root}, next;
    int split = 0;
    while (split < depth && frontier.size() < kFrontierTarget) {
        next.clear();
        for (const auto& n : frontier) children(n, [&](int, const Node& k) { next.push_back(k); });
        ++split;
        for (const auto& n : next) measure(n, levels[split]);
        frontier.swap(next);
    }
    if (split == depth) return levels;

    std::vector<std::vector<LevelStats>> partial(frontier.size());
    FirstError failure;
    const long count = static_cast<long>(frontier.size());
#pragma omp parallel
    {
        std::vector<std::vector<Node>> buffers(depth + 1);
#pragma omp for schedule(dynamic, 1)
        for (long i = 0; i < count; ++i) {
            try {
                partial[i].assign(depth + 1, LevelStats{});
                walk(frontier[i], split, depth, partial[i], buffers, children, measure);
            } catch (...) {
                failure.capture(static_cast<std::size_t>(i));
            }
        }
    }
    failure.rethrow();
    for (const auto& p : partial)
        for (int l = split + 1; l <= depth; ++l) levels[l].merge(p[l]);
    return levels;
}

}  // namespace

int configure_threads() {
    if (const char* env = std::getenv("BASMAJIAN_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }
    return omp_get_max_threads();
}

namespace parallel {

std::vector<LevelStats> word_series_levels(const WordSeriesInput& in, int depth) {
    detail::WordNode root{MoebiusMap::identity(), in.automaton.start()};
    auto children = [&](const detail::WordNode& n, auto&& emit) { detail::word_children(in, n, emit); };
    auto measure = [&](const detail::WordNode& n, LevelStats& s) { detail::word_measure(in, n, s); };
    return tree_levels(root, false, depth, children, measure);
}

std::vector<LevelStats> gap_series_levels(const HoloIFS& ifs, int depth, double exponent) {
    auto children = [&](const detail::GapNode& n, auto&& emit) { detail::gap_children(ifs, n, emit); };
    auto measure = [&](const detail::GapNode& n, LevelStats& s) { detail::gap_measure(n, s, exponent); };
    return tree_levels(detail::gap_root(ifs), true, depth, children, measure);
}

std::vector<Complex> word_terms(const std::vector<MoebiusMap>& word_maps, const RiemannPoint& p_att,
                                const RiemannPoint& p_rep, const RiemannPoint& q_att,
                                const RiemannPoint& q_rep) {
    std::vector<Complex> out(word_maps.size());
    FirstError failure;
    const long count = static_cast<long>(word_maps.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < count; ++i) {
        try {
            out[i] = log_cross_ratio_image(p_att, p_rep, word_maps[i], q_att, q_rep);
        } catch (...) {
            failure.capture(static_cast<std::size_t>(i));
        }
    }
    failure.rethrow();
    return out;
}

std::vector<PeriodicPoint> periodic_points(const HoloIFS& ifs, int n) {
    std::vector<Word> words = shift_words(ifs.coding(), n);
    std::vector<PeriodicPoint> out(words.size());
    FirstError failure;
    const long count = static_cast<long>(words.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (long i = 0; i < count; ++i) {
        try {
            out[i] = detail::solve_periodic(ifs, words[i]);
        } catch (...) {
            failure.capture(static_cast<std::size_t>(i));
        }
    }
    failure.rethrow();
    detail::repair_periodic(ifs, n, out);
    return out;
}

}  // namespace parallel
}  // namespace basmajian
