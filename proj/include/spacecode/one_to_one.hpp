#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "spacecode/radix.hpp"
#include "spacecode/source_model.hpp"

namespace spacecode {

/// Injective symbol -> string map. The optimal variants pair non-decreasing
/// codeword lengths with the descending probabilities; with uses_epsilon the
/// first codeword is the empty string.
struct OneToOneCode {
    std::vector<std::string> codewords;  // symbol i -> codewords[i-1]
    bool uses_epsilon = false;
    int k = 2;

    std::size_t n() const noexcept { return codewords.size(); }
};

/// Optimal codeword lengths: floor(log_k((k-1)i + 1)), or with the empty
/// word allowed floor(log_k((k-1)i)) so that l_1 = 0.
inline std::vector<int> one_to_one_lengths(std::size_t n, int k, bool uses_epsilon) {
    std::vector<int> lengths;
    lengths.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        const HeapIndex x = uses_epsilon ? static_cast<HeapIndex>(i - 1)
                                         : static_cast<HeapIndex>(i);
        lengths.push_back(heap_level(x, k));
    }
    return lengths;
}

/// Heap index of the string assigned to symbol i: the first n strings in
/// radix order are used, and inside each length level the used strings (the
/// lexicographically first ones) go to symbols in reverse lexicographic
/// order. The map i <-> a + m - i is an involution per level.
inline HeapIndex symbol_to_heap(std::size_t i, std::size_t n, int k, bool uses_epsilon) {
    if (i < 1 || i > n) {
        throw InvalidIndex("symbol index out of 1..n");
    }
    if (uses_epsilon) {
        if (i == 1) return 0;
        const HeapIndex pos = static_cast<HeapIndex>(i - 1);  // radix position, epsilon = 0
        const LevelRange range = level_range(heap_level(pos, k), k);
        const HeapIndex m = std::min<HeapIndex>(range.last, static_cast<HeapIndex>(n - 1));
        return range.first + m - pos;
    }
    const LevelRange range = level_range(heap_level(static_cast<HeapIndex>(i), k), k);
    const HeapIndex m = std::min<HeapIndex>(range.last, static_cast<HeapIndex>(n));
    return range.first + m - static_cast<HeapIndex>(i);
}

/// Symbol that owns heap index x under the same assignment.
inline std::size_t heap_to_symbol(HeapIndex x, std::size_t n, int k, bool uses_epsilon) {
    if (uses_epsilon) {
        if (x == 0) return 1;
        const LevelRange range = level_range(heap_level(x, k), k);
        const HeapIndex m = std::min<HeapIndex>(range.last, static_cast<HeapIndex>(n - 1));
        return static_cast<std::size_t>(range.first + m - x) + 1;
    }
    const LevelRange range = level_range(heap_level(x, k), k);
    const HeapIndex m = std::min<HeapIndex>(range.last, static_cast<HeapIndex>(n));
    return static_cast<std::size_t>(range.first + m - x);
}

inline OneToOneCode assign_one_to_one(const SourceDistribution& dist, bool uses_epsilon) {
    OneToOneCode code;
    code.uses_epsilon = uses_epsilon;
    code.k = dist.k();
    code.codewords.reserve(dist.n());
    for (std::size_t i = 1; i <= dist.n(); ++i) {
        const HeapIndex x = symbol_to_heap(i, dist.n(), dist.k(), uses_epsilon);
        code.codewords.push_back(x == 0 ? std::string() : heap_to_string(x, dist.k()));
    }
    return code;
}

inline double average_length(const OneToOneCode& code, const SourceDistribution& dist) {
    if (code.n() != dist.n() || code.k != dist.k()) {
        throw InvalidPairing("code was not built for this distribution");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < code.n(); ++i) {
        sum += dist.probs()[i] * static_cast<double>(code.codewords[i].size());
    }
    return sum;
}

/// L_plus (no empty word) or L_eps without materializing the codewords.
inline double one_to_one_average(const SourceDistribution& dist, bool uses_epsilon) {
    double sum = 0.0;
    for (std::size_t i = 1; i <= dist.n(); ++i) {
        const HeapIndex x = uses_epsilon ? static_cast<HeapIndex>(i - 1)
                                         : static_cast<HeapIndex>(i);
        sum += dist.probs()[i - 1] * heap_level(x, dist.k());
    }
    return sum;
}

/// L_plus - L_eps. The two length profiles differ by exactly one digit at
/// the first index of each length level, i.e. the indices (k^j - 1)/(k - 1),
/// so the gap is the probability mass sitting on those indices.
inline double epsilon_gap_exact(const SourceDistribution& dist) {
    double gap = 0.0;
    const std::size_t n = dist.n();
    std::size_t idx = 1;
    while (idx <= n) {
        gap += dist.probs()[idx - 1];
        if (idx > (n - 1) / static_cast<std::size_t>(dist.k())) break;  // overflow guard
        idx = idx * static_cast<std::size_t>(dist.k()) + 1;
    }
    return gap;
}

/// The same sum with its upper limit taken from the printed closed form
/// floor(log_k(ceil((n-1)/k))), which undercounts for some n (n = 4, k = 2
/// misses index 3). Reported next to epsilon_gap_exact, never substituted.
inline double epsilon_gap_printed(const SourceDistribution& dist) {
    const std::size_t n = dist.n();
    const std::size_t k = static_cast<std::size_t>(dist.k());
    if (n < 2) return 0.0;
    const std::size_t m = (n - 2) / k + 1;  // ceil((n-1)/k)
    double gap = 0.0;
    std::size_t power = 1;  // k^j
    std::size_t idx = 0;    // (k^j - 1)/(k - 1)
    while (power * k <= m) {
        power *= k;
        idx = idx * k + 1;
        gap += dist.probs()[idx - 1];
    }
    return gap;
}

}  // namespace spacecode
