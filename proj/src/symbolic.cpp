#include "basmajian/symbolic.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <stdexcept>

namespace basmajian {

namespace {

char swap_case(char ch) {
    unsigned char u = static_cast<unsigned char>(ch);
    return static_cast<char>(std::islower(u) ? std::toupper(u) : std::tolower(u));
}

}  // namespace

Alphabet Alphabet::group(std::string_view ordered_letters) {
    Alphabet a = plain(ordered_letters);
    for (int i = 0; i < a.size(); ++i) {
        char ch = a.letters_[i];
        if (!std::isalpha(static_cast<unsigned char>(ch)))
            throw std::invalid_argument("group alphabet letters must be alphabetic");
        auto pos = a.letters_.find(swap_case(ch));
        if (pos == std::string::npos)
            throw std::invalid_argument(std::string("letter without inverse: ") + ch);
        a.inverse_[i] = static_cast<int>(pos);
    }
    a.has_involution_ = true;
    return a;
}

Alphabet Alphabet::plain(std::string_view ordered_letters) {
    Alphabet a;
    a.letters_ = std::string(ordered_letters);
    for (std::size_t i = 0; i < a.letters_.size(); ++i)
        if (a.letters_.find(a.letters_[i]) != i)
            throw std::invalid_argument("repeated letter in alphabet");
    a.inverse_.assign(a.letters_.size(), -1);
    return a;
}

int Alphabet::index(char ch) const {
    auto pos = letters_.find(ch);
    if (pos == std::string::npos) throw std::invalid_argument(std::string("unknown letter: ") + ch);
    return static_cast<int>(pos);
}

Word Word::parse(const Alphabet& alphabet, std::string_view text) {
    Word w;
    for (char ch : text) w.push_back(alphabet.index(ch));
    return w;
}

int Word::count(int letter) const {
    return static_cast<int>(std::count(letters_.begin(), letters_.end(), letter));
}

bool Word::starts_with(const Word& prefix) const {
    return prefix.size() <= size() &&
           std::equal(prefix.letters_.begin(), prefix.letters_.end(), letters_.begin());
}

bool Word::ends_with(const Word& suffix) const {
    return suffix.size() <= size() &&
           std::equal(suffix.letters_.rbegin(), suffix.letters_.rend(), letters_.rbegin());
}

Word Word::inverse(const Alphabet& alphabet) const {
    if (!alphabet.has_involution()) throw std::invalid_argument("alphabet has no inverses");
    Word w;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.push_back(alphabet.inverse(*it));
    return w;
}

std::string Word::to_string(const Alphabet& alphabet) const {
    std::string s;
    for (auto l : letters_) s.push_back(alphabet.letter(l));
    return s;
}

std::strong_ordering operator<=>(const Word& x, const Word& y) {
    if (auto c = x.size() <=> y.size(); c != 0) return c;
    return x.letters_ <=> y.letters_;
}

LanguageSpec LanguageSpec::torus() {
    LanguageSpec s;
    s.alphabet = Alphabet::group("abAB");
    s.reduced = true;
    s.forbidden_prefixes = {Word::parse(s.alphabet, "abA"), Word::parse(s.alphabet, "ba")};
    s.forbidden_suffixes = {Word::parse(s.alphabet, "BA"), Word::parse(s.alphabet, "bAB")};
    return s;
}

LanguageSpec LanguageSpec::free_reduced(std::string_view ordered_letters) {
    LanguageSpec s;
    s.alphabet = Alphabet::group(ordered_letters);
    s.reduced = true;
    return s;
}

bool LanguageSpec::viable_prefix(const Word& w) const {
    if (reduced)
        for (int i = 0; i + 1 < w.size(); ++i)
            if (alphabet.inverse(w[i]) == w[i + 1]) return false;
    for (const auto& p : forbidden_prefixes)
        if (w.starts_with(p)) return false;
    return true;
}

bool LanguageSpec::accepts(const Word& w) const {
    if (w.empty() || !viable_prefix(w)) return false;
    for (const auto& s : forbidden_suffixes)
        if (w.ends_with(s)) return false;
    return true;
}

void to_json(nlohmann::json& j, const LanguageSpec& spec) {
    std::string order;
    for (int i = 0; i < spec.alphabet.size(); ++i) {
        if (i) order += '>';
        order += spec.alphabet.letter(i);
    }
    auto words = [&](const std::vector<Word>& ws) {
        std::vector<std::string> out;
        for (const auto& w : ws) out.push_back(w.to_string(spec.alphabet));
        return out;
    };
    j = nlohmann::json{{"alphabet", spec.alphabet.letters()},
                       {"order", order},
                       {"reduced", spec.reduced},
                       {"forbidden_prefixes", words(spec.forbidden_prefixes)},
                       {"forbidden_suffixes", words(spec.forbidden_suffixes)}};
}

void from_json(const nlohmann::json& j, LanguageSpec& spec) {
    std::string letters = j.at("alphabet").get<std::string>();
    std::string ordered;
    if (j.contains("order")) {
        for (char ch : j.at("order").get<std::string>())
            if (ch != '>' && ch != ' ') ordered += ch;
        std::string a = letters, b = ordered;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) throw std::invalid_argument("order does not list the alphabet letters");
    } else {
        ordered = letters;
    }
    spec.reduced = j.value("reduced", false);
    bool paired = std::all_of(ordered.begin(), ordered.end(), [&](char ch) {
        return std::isalpha(static_cast<unsigned char>(ch)) &&
               ordered.find(swap_case(ch)) != std::string::npos;
    });
    spec.alphabet = paired ? Alphabet::group(ordered) : Alphabet::plain(ordered);
    if (spec.reduced && !paired) throw std::invalid_argument("reduced language needs inverses");
    spec.forbidden_prefixes.clear();
    spec.forbidden_suffixes.clear();
    for (const auto& s : j.value("forbidden_prefixes", std::vector<std::string>{}))
        spec.forbidden_prefixes.push_back(Word::parse(spec.alphabet, s));
    for (const auto& s : j.value("forbidden_suffixes", std::vector<std::string>{}))
        spec.forbidden_suffixes.push_back(Word::parse(spec.alphabet, s));
}

namespace {

void extend(const LanguageSpec& spec, Word& w, int target,
            const std::function<void(const Word&)>& visit) {
    if (w.size() == target) {
        if (spec.accepts(w)) visit(w);
        return;
    }
    for (int l = 0; l < spec.alphabet.size(); ++l) {
        if (spec.reduced && !w.empty() && spec.alphabet.inverse(w[w.size() - 1]) == l) continue;
        w.push_back(l);
        bool viable = true;
        for (const auto& p : spec.forbidden_prefixes)
            if (p.size() == w.size() && w.starts_with(p)) viable = false;
        if (viable) extend(spec, w, target, visit);
        w.pop_back();
    }
}

}  // namespace

void for_each_word(const LanguageSpec& spec, int max_len,
                   const std::function<void(const Word&)>& visit) {
    Word w;
    for (int n = 1; n <= max_len; ++n) extend(spec, w, n, visit);
}

std::vector<Word> enumerate(const LanguageSpec& spec, int max_len) {
    std::vector<Word> out;
    for_each_word(spec, max_len, [&](const Word& w) { out.push_back(w); });
    return out;
}

int Automaton::add_state(bool accepting) {
    accept_.push_back(accepting);
    edges_.resize(accept_.size() * letter_count_, -1);
    return state_count() - 1;
}

void Automaton::add_edge(int from, int letter, int to) {
    int& slot = edges_[from * letter_count_ + letter];
    if (slot != -1 && slot != to) throw std::logic_error("automaton is not deterministic");
    slot = to;
}

bool Automaton::accepts(const Word& w) const {
    int s = start_;
    for (int i = 0; i < w.size() && s >= 0; ++i) s = next(s, w[i]);
    return s >= 0 && accepting(s);
}

std::uint64_t Automaton::count_accepted(int n) const {
    std::vector<std::uint64_t> ways(state_count(), 0), nxt;
    ways[start_] = 1;
    for (int step = 0; step < n; ++step) {
        nxt.assign(state_count(), 0);
        for (int s = 0; s < state_count(); ++s)
            if (ways[s])
                for (int l = 0; l < letter_count_; ++l)
                    if (int t = next(s, l); t >= 0) nxt[t] += ways[s];
        ways.swap(nxt);
    }
    std::uint64_t total = 0;
    for (int s = 0; s < state_count(); ++s)
        if (accepting(s)) total += ways[s];
    return total;
}

Automaton compile(const LanguageSpec& spec) {
    // A state remembers the whole word while prefix rules can still fire,
    // afterwards only the last k letters (enough for suffixes and reduction).
    int p = 0, k = spec.reduced ? 1 : 0;
    for (const auto& w : spec.forbidden_prefixes) p = std::max(p, w.size());
    for (const auto& w : spec.forbidden_suffixes) k = std::max(k, w.size());
    const int letters = spec.alphabet.size();

    struct Key {
        bool long_word;
        Word tail;
        auto operator<=>(const Key&) const = default;
    };
    auto accepting = [&](const Key& key) {
        if (!key.long_word && key.tail.empty()) return false;
        for (const auto& s : spec.forbidden_suffixes)
            if (key.tail.ends_with(s)) return false;
        return true;
    };

    Automaton a(letters, 0);
    std::map<Key, int> ids;
    std::deque<Key> queue;
    Key start{false, Word{}};
    ids[start] = a.add_state(false);
    queue.push_back(start);
    while (!queue.empty()) {
        Key key = queue.front();
        queue.pop_front();
        int from = ids[key];
        for (int l = 0; l < letters; ++l) {
            const Word& t = key.tail;
            if (spec.reduced && !t.empty() && spec.alphabet.inverse(t[t.size() - 1]) == l) continue;
            Word w = t;
            w.push_back(l);
            Key next{key.long_word, w};
            if (!key.long_word) {
                bool dead = false;
                for (const auto& pre : spec.forbidden_prefixes)
                    if (w.starts_with(pre)) dead = true;
                if (dead) continue;
                next.long_word = w.size() > p;
            }
            if (next.long_word && next.tail.size() > k) {
                std::vector<std::uint8_t> v(w.letters().end() - k, w.letters().end());
                next.tail = Word(std::move(v));
            }
            auto it = ids.find(next);
            if (it == ids.end()) {
                it = ids.emplace(next, a.add_state(accepting(next))).first;
                queue.push_back(next);
            }
            a.add_edge(from, l, it->second);
        }
    }
    return a;
}

ShiftCoding::ShiftCoding(int symbol_count, std::vector<std::uint8_t> matrix)
    : n_(symbol_count), matrix_(std::move(matrix)) {
    if (n_ < 1 || static_cast<int>(matrix_.size()) != n_ * n_)
        throw std::invalid_argument("transition matrix has wrong size");
    if (!is_aperiodic()) throw std::invalid_argument("transition matrix is not aperiodic");
}

ShiftCoding ShiftCoding::full_shift(int symbol_count) {
    return ShiftCoding(symbol_count, std::vector<std::uint8_t>(symbol_count * symbol_count, 1));
}

ShiftCoding ShiftCoding::reduced_rank2() {
    return ShiftCoding(4, {1, 1, 0, 1,
                           1, 1, 1, 0,
                           0, 1, 1, 1,
                           1, 0, 1, 1});
}

bool ShiftCoding::admissible(const Word& w) const {
    for (int i = 0; i < w.size(); ++i) {
        if (w[i] >= n_) return false;
        if (i + 1 < w.size() && !allowed(w[i], w[i + 1])) return false;
    }
    return true;
}

bool ShiftCoding::is_aperiodic() const {
    // Boolean powers; Wielandt's bound (n-1)^2 + 1 suffices for primitivity.
    std::vector<std::uint8_t> power = matrix_, next(matrix_.size());
    int limit = (n_ - 1) * (n_ - 1) + 1;
    for (int e = 1; e <= limit; ++e) {
        if (std::all_of(power.begin(), power.end(), [](auto x) { return x != 0; })) return true;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                std::uint8_t v = 0;
                for (int m = 0; m < n_ && !v; ++m) v = power[i * n_ + m] && matrix_[m * n_ + j];
                next[i * n_ + j] = v;
            }
        power.swap(next);
    }
    return false;
}

namespace {

void extend_shift(const ShiftCoding& coding, Word& w, int n,
                  const std::function<void(const Word&)>& visit) {
    if (w.size() == n) {
        visit(w);
        return;
    }
    for (int s = 0; s < coding.symbol_count(); ++s) {
        if (!w.empty() && !coding.allowed(w[w.size() - 1], s)) continue;
        w.push_back(s);
        extend_shift(coding, w, n, visit);
        w.pop_back();
    }
}

}  // namespace

void shift_words(const ShiftCoding& coding, int n, const std::function<void(const Word&)>& visit) {
    Word w;
    extend_shift(coding, w, n, visit);
}

std::vector<Word> shift_words(const ShiftCoding& coding, int n) {
    std::vector<Word> out;
    shift_words(coding, n, [&](const Word& w) { out.push_back(w); });
    return out;
}

Word swap_labels(const Word& w) {
    Word out;
    for (int i = 0; i < w.size(); ++i) {
        if (w[i] > 1) throw std::invalid_argument("swap_labels needs a binary word");
        out.push_back(1 - w[i]);
    }
    return out;
}

}  // namespace basmajian
