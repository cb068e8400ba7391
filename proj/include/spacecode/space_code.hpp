#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "spacecode/one_to_one.hpp"
#include "spacecode/radix.hpp"
#include "spacecode/source_model.hpp"

namespace spacecode {

/// One codeword of a prefix-free code whose space mark may appear only as
/// the final letter. digits is never empty.
struct SpaceCodeword {
    std::string digits;
    bool has_space = false;

    std::size_t total_length() const noexcept { return digits.size() + (has_space ? 1 : 0); }

    std::string rendered() const {
        std::string s = digits;
        if (has_space) s.push_back(kSpaceMark);
        return s;
    }
};

struct SpaceCodebook {
    std::vector<SpaceCodeword> entries;  // symbol i -> entries[i-1]
    int k = 2;

    std::size_t n() const noexcept { return entries.size(); }

    std::size_t space_count() const noexcept {
        std::size_t c = 0;
        for (const auto& e : entries) c += e.has_space ? 1 : 0;
        return c;
    }
};

// Largest heap index that is a proper prefix of another index <= n; equals
// ceil(n/k) - 1, the internal-node count of the first-n-strings tree.
inline HeapIndex last_internal_index(std::size_t n, int k) {
    return static_cast<HeapIndex>((n - 1) / static_cast<std::size_t>(k));
}

/// Builds the prefix-free code of Lemma-style construction: take the optimal
/// one-to-one codewords (reverse-lex within each level) and append the space
/// mark exactly to those that are a proper prefix of another chosen string,
/// i.e. whose heap index x satisfies k*x + 1 <= n. O(n) index arithmetic.
inline SpaceCodebook build_space_code(std::size_t n, int k) {
    if (n < 1) {
        throw InvalidDistribution("need at least one symbol");
    }
    SpaceCodebook book;
    book.k = k;
    book.entries.reserve(n);
    const HeapIndex internal_last = last_internal_index(n, k);
    for (std::size_t i = 1; i <= n; ++i) {
        const HeapIndex x = symbol_to_heap(i, n, k, /*uses_epsilon=*/false);
        book.entries.push_back(SpaceCodeword{heap_to_string(x, k), x <= internal_last});
    }
    return book;
}

inline SpaceCodebook build_space_code(const SourceDistribution& dist) {
    return build_space_code(dist.n(), dist.k());
}

inline double average_length_space(const SpaceCodebook& book, const SourceDistribution& dist) {
    if (book.n() != dist.n() || book.k != dist.k()) {
        throw InvalidPairing("codebook was not built for this distribution");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < book.n(); ++i) {
        sum += dist.probs()[i] * static_cast<double>(book.entries[i].total_length());
    }
    return sum;
}

/// Drops the space marks. For any prefix-free input the result is injective
/// (a one-to-one code); duplicates therefore signal a non-prefix-free input.
inline OneToOneCode strip_spaces(const SpaceCodebook& book) {
    OneToOneCode code;
    code.uses_epsilon = false;
    code.k = book.k;
    code.codewords.reserve(book.n());
    std::unordered_set<std::string> seen;
    for (const auto& e : book.entries) {
        if (!seen.insert(e.digits).second) {
            throw InvalidCodebook("stripping spaces produced duplicate codeword \"" + e.digits +
                                  "\"; input was not prefix-free");
        }
        code.codewords.push_back(e.digits);
    }
    return code;
}

namespace detail {

// Trie over the rendered (k+1)-letter codewords. Terminals are leaves in
// any prefix-free book.
struct CodebookTrie {
    std::vector<std::vector<std::int32_t>> next;  // node -> (k+1) children
    std::vector<std::int32_t> symbol;             // terminal symbol or 0
    int k = 2;

    explicit CodebookTrie(int alphabet_k) : k(alphabet_k) { add_node(); }

    std::int32_t add_node() {
        next.emplace_back(static_cast<std::size_t>(k) + 1, -1);
        symbol.push_back(0);
        return static_cast<std::int32_t>(next.size() - 1);
    }

    // Letter slot: digits at 0..k-1, the space mark at k.
    int slot(char c) const {
        if (c == kSpaceMark) return k;
        const int d = char_digit(c);
        return (d >= 0 && d < k) ? d : -1;
    }

    // False when the insertion violates prefix-freeness or duplicates.
    bool insert(const std::string& rendered, std::int32_t sym) {
        std::int32_t node = 0;
        for (char c : rendered) {
            if (symbol[static_cast<std::size_t>(node)] != 0) return false;  // passes a terminal
            const int s = slot(c);
            if (s < 0) throw InvalidCodebook("codeword contains invalid letter");
            auto& edge = next[static_cast<std::size_t>(node)][static_cast<std::size_t>(s)];
            if (edge < 0) edge = add_node();
            node = edge;
        }
        auto& mark = symbol[static_cast<std::size_t>(node)];
        if (mark != 0) return false;  // duplicate
        for (auto child : next[static_cast<std::size_t>(node)]) {
            if (child >= 0) return false;  // prefix of an earlier codeword
        }
        mark = sym;
        return true;
    }
};

}  // namespace detail

/// Pairwise prefix-freeness of the rendered codewords over the (k+1)-letter
/// alphabet, via trie insertion.
inline bool is_prefix_free(const SpaceCodebook& book) {
    detail::CodebookTrie trie(book.k);
    for (std::size_t i = 0; i < book.n(); ++i) {
        if (book.entries[i].digits.empty()) return false;
        if (!trie.insert(book.entries[i].rendered(), static_cast<std::int32_t>(i + 1))) {
            return false;
        }
    }
    return true;
}

/// True when the book is exactly the canonical construction for (n, k),
/// which is the precondition for the O(1)-state decoder.
inline bool is_canonical_space_code(const SpaceCodebook& book) {
    if (book.n() == 0) return false;
    const HeapIndex internal_last = last_internal_index(book.n(), book.k);
    for (std::size_t i = 1; i <= book.n(); ++i) {
        const SpaceCodeword& e = book.entries[i - 1];
        HeapIndex x = 0;
        try {
            x = string_to_heap(e.digits, book.k);
        } catch (const InvalidIndex&) {
            return false;
        }
        if (x != symbol_to_heap(i, book.n(), book.k, false)) return false;
        if (e.has_space != (x <= internal_last)) return false;
    }
    return true;
}

inline std::string encode(const SpaceCodebook& book, std::span<const std::uint32_t> message) {
    std::string out;
    for (std::uint32_t sym : message) {
        if (sym < 1 || sym > book.n()) {
            throw UnknownSymbol("symbol " + std::to_string(sym) + " outside 1.." +
                                std::to_string(book.n()));
        }
        out += book.entries[sym - 1].rendered();
    }
    return out;
}

namespace detail {

// Streaming decoder for the canonical construction: O(1) state, one heap
// index. Digits descend (x -> k*x + 1 + d), leaves emit immediately, a
// space emits at an internal index and is illegal anywhere else.
inline std::vector<std::uint32_t> decode_canonical(std::size_t n, int k,
                                                   std::string_view stream) {
    std::vector<std::uint32_t> out;
    const HeapIndex internal_last = last_internal_index(n, k);
    HeapIndex x = 0;
    for (std::size_t pos = 0; pos < stream.size(); ++pos) {
        const char c = stream[pos];
        if (c == kSpaceMark) {
            if (x == 0) {
                throw MalformedStream("space mark at codeword boundary", pos);
            }
            if (x > internal_last) {
                throw MalformedStream("space mark after a complete codeword", pos);
            }
            out.push_back(static_cast<std::uint32_t>(heap_to_symbol(x, n, k, false)));
            x = 0;
            continue;
        }
        const int d = char_digit(c);
        if (d < 0 || d >= k) {
            throw MalformedStream(std::string("invalid character '") + c + "'", pos);
        }
        const HeapIndex child = heap_child(x, k, d);
        if (child > static_cast<HeapIndex>(n)) {
            throw MalformedStream("no codeword along this digit path", pos);
        }
        if (heap_child(child, k, 0) > static_cast<HeapIndex>(n)) {
            out.push_back(static_cast<std::uint32_t>(heap_to_symbol(child, n, k, false)));
            x = 0;
        } else {
            x = child;
        }
    }
    if (x != 0) {
        throw MalformedStream("stream ends inside a codeword", stream.size());
    }
    return out;
}

inline std::vector<std::uint32_t> decode_trie(const SpaceCodebook& book,
                                              std::string_view stream) {
    CodebookTrie trie(book.k);
    for (std::size_t i = 0; i < book.n(); ++i) {
        if (!trie.insert(book.entries[i].rendered(), static_cast<std::int32_t>(i + 1))) {
            throw InvalidCodebook("codebook is not prefix-free");
        }
    }
    std::vector<std::uint32_t> out;
    std::int32_t node = 0;
    for (std::size_t pos = 0; pos < stream.size(); ++pos) {
        const int s = trie.slot(stream[pos]);
        if (s < 0) {
            throw MalformedStream(std::string("invalid character '") + stream[pos] + "'", pos);
        }
        const std::int32_t child = trie.next[static_cast<std::size_t>(node)]
                                            [static_cast<std::size_t>(s)];
        if (child < 0) {
            throw MalformedStream(stream[pos] == kSpaceMark
                                      ? "space mark off any codeword path"
                                      : "no codeword along this digit path",
                                  pos);
        }
        node = child;
        if (trie.symbol[static_cast<std::size_t>(node)] != 0) {
            out.push_back(
                static_cast<std::uint32_t>(trie.symbol[static_cast<std::size_t>(node)]));
            node = 0;
        }
    }
    if (node != 0) {
        throw MalformedStream("stream ends inside a codeword", stream.size());
    }
    return out;
}

}  // namespace detail

/// Single-pass strict decoder: every valid stream ends exactly on a codeword
/// boundary, so a trailing fragment is an error, not a silent drop. Uses the
/// O(1)-state automaton for canonical books and a trie walk otherwise.
inline std::vector<std::uint32_t> decode(const SpaceCodebook& book, std::string_view stream) {
    if (is_canonical_space_code(book)) {
        return detail::decode_canonical(book.n(), book.k, stream);
    }
    return detail::decode_trie(book, stream);
}

/// Closed-form total-length profile computed from the nominal tree height
/// h = ceil(log_k(n - ceil(n/k))). The height mis-states the final level for
/// some n (n = 7, k = 2 among them), so callers compare against the
/// construction and report disagreement instead of trusting this profile.
struct PiecewiseLengths {
    bool well_formed = false;
    std::vector<int> lengths;
};

inline PiecewiseLengths piecewise_total_lengths(std::size_t n, int k) {
    PiecewiseLengths result;
    const std::size_t ceil_nk = (n + static_cast<std::size_t>(k) - 1) / static_cast<std::size_t>(k);
    if (n < 2 || n <= ceil_nk) {
        return result;  // height log of a non-positive count
    }
    const std::size_t m = n - ceil_nk;
    int h = 0;  // ceil(log_k(m))
    std::size_t pow_h = 1;
    while (pow_h < m) {
        pow_h *= static_cast<std::size_t>(k);
        ++h;
    }
    if (h < 1) {
        return result;  // first range end (k^(h-1)-1)/(k-1) - 1 needs h >= 1
    }
    const std::size_t pow_h1 = pow_h / static_cast<std::size_t>(k);  // k^(h-1)
    const std::size_t km1 = static_cast<std::size_t>(k) - 1;
    // Symbols 1 .. head_end and mid_start .. mid_end carry the space.
    const std::int64_t head_end = static_cast<std::int64_t>((pow_h1 - 1) / km1) - 1;
    const std::int64_t mid_start =
        static_cast<std::int64_t>((pow_h + pow_h1 - 2) / km1) - static_cast<std::int64_t>(ceil_nk);
    const std::int64_t mid_end = static_cast<std::int64_t>((pow_h - 1) / km1) - 1;
    result.well_formed = true;
    result.lengths.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        const auto si = static_cast<std::int64_t>(i);
        const bool spaced = si <= head_end || (si >= mid_start && si <= mid_end);
        result.lengths.push_back(heap_level(static_cast<HeapIndex>(i), k) + (spaced ? 1 : 0));
    }
    return result;
}

/// True when the closed-form profile exists and matches the construction.
inline bool piecewise_profile_agrees(std::size_t n, int k) {
    const PiecewiseLengths closed = piecewise_total_lengths(n, k);
    if (!closed.well_formed) return false;
    const SpaceCodebook book = build_space_code(n, k);
    for (std::size_t i = 0; i < n; ++i) {
        if (static_cast<std::size_t>(closed.lengths[i]) != book.entries[i].total_length()) {
            return false;
        }
    }
    return true;
}

}  // namespace spacecode
