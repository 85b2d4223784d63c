#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace basmajian {

// Letters listed in their total order (index 0 comes first), with an optional
// fixed-point-free involution pairing each letter with its inverse.
class Alphabet {
public:
    // Letters in order; upper/lower case of the same character are inverses.
    static Alphabet group(std::string_view ordered_letters);
    // Letters in order, no inverses (symbolic codings such as the binary shift).
    static Alphabet plain(std::string_view ordered_letters);

    int size() const { return static_cast<int>(letters_.size()); }
    char letter(int i) const { return letters_[i]; }
    // Throws std::invalid_argument for a letter outside the alphabet.
    int index(char ch) const;
    // -1 when the alphabet has no involution.
    int inverse(int i) const { return inverse_[i]; }
    bool has_involution() const { return has_involution_; }
    const std::string& letters() const { return letters_; }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::string letters_;
    std::vector<int> inverse_;
    bool has_involution_ = false;
};

class Word {
public:
    Word() = default;
    explicit Word(std::vector<std::uint8_t> letters) : letters_(std::move(letters)) {}
    static Word parse(const Alphabet& alphabet, std::string_view text);

    int size() const { return static_cast<int>(letters_.size()); }
    bool empty() const { return letters_.empty(); }
    int operator[](int i) const { return letters_[i]; }
    const std::vector<std::uint8_t>& letters() const { return letters_; }
    void push_back(int letter) { letters_.push_back(static_cast<std::uint8_t>(letter)); }
    void pop_back() { letters_.pop_back(); }
    int count(int letter) const;

    bool starts_with(const Word& prefix) const;
    bool ends_with(const Word& suffix) const;
    // Group inverse; requires an alphabet with an involution.
    Word inverse(const Alphabet& alphabet) const;
    std::string to_string(const Alphabet& alphabet) const;

    // Length first, then lexicographic in alphabet order.
    friend std::strong_ordering operator<=>(const Word& x, const Word& y);
    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<std::uint8_t> letters_;
};

struct LanguageSpec {
    Alphabet alphabet = Alphabet::plain("");
    bool reduced = false;
    std::vector<Word> forbidden_prefixes;
    std::vector<Word> forbidden_suffixes;

    // Representatives for the one-holed torus: reduced over a>b>A>B, no
    // prefix abA or ba, no suffix BA or bAB.
    static LanguageSpec torus();
    // All reduced words in a free group on the given ordered letters.
    static LanguageSpec free_reduced(std::string_view ordered_letters);

    bool accepts(const Word& w) const;
    // Whether some extension of w can still be accepted.
    bool viable_prefix(const Word& w) const;
};

void to_json(nlohmann::json& j, const LanguageSpec& spec);
void from_json(const nlohmann::json& j, LanguageSpec& spec);

// Calls visit for every accepted word with 1 <= length <= max_len, length
// ascending, lexicographic within a length. Memory is O(max_len).
void for_each_word(const LanguageSpec& spec, int max_len,
                   const std::function<void(const Word&)>& visit);
std::vector<Word> enumerate(const LanguageSpec& spec, int max_len);

class Automaton {
public:
    Automaton(int letter_count, int start) : letter_count_(letter_count), start_(start) {}

    int add_state(bool accepting);
    void add_edge(int from, int letter, int to);

    int state_count() const { return static_cast<int>(accept_.size()); }
    int letter_count() const { return letter_count_; }
    int start() const { return start_; }
    bool accepting(int state) const { return accept_[state]; }
    // -1 when there is no edge.
    int next(int state, int letter) const { return edges_[state * letter_count_ + letter]; }

    bool accepts(const Word& w) const;
    // Number of accepted words of exactly length n.
    std::uint64_t count_accepted(int n) const;

private:
    int letter_count_;
    int start_;
    std::vector<bool> accept_;
    std::vector<int> edges_;
};

// Prefix/suffix-tracking automaton for the spec's language (not minimized).
Automaton compile(const LanguageSpec& spec);

class ShiftCoding {
public:
    ShiftCoding(int symbol_count, std::vector<std::uint8_t> matrix);
    static ShiftCoding full_shift(int symbol_count);
    // Reduced words in rank 2 over the symbol order a, b, A, B.
    static ShiftCoding reduced_rank2();

    int symbol_count() const { return n_; }
    bool allowed(int from, int to) const { return matrix_[from * n_ + to] != 0; }
    bool admissible(const Word& w) const;
    // Some power of the matrix is strictly positive.
    bool is_aperiodic() const;

private:
    int n_;
    std::vector<std::uint8_t> matrix_;
};

// Admissible length-n symbol strings in lexicographic order.
void shift_words(const ShiftCoding& coding, int n, const std::function<void(const Word&)>& visit);
std::vector<Word> shift_words(const ShiftCoding& coding, int n);

// Exchanges the two symbols of a binary word.
Word swap_labels(const Word& w);

}  // namespace basmajian
