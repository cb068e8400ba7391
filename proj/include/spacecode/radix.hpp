#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>

#include "spacecode/errors.hpp"

namespace spacecode {

// Non-empty k-ary strings in radix order (shorter first, lexicographic
// within a length) are numbered from 1. Index 0 is the empty string. The
// numbering is heap-shaped: index x has children k*x+1 .. k*x+k carrying
// digits 0 .. k-1, so parent, child and level moves are pure arithmetic
// and "x is a proper prefix of some index <= n" reduces to k*x+1 <= n.
using HeapIndex = std::uint64_t;

// Guard for string_to_heap on untrusted input; indices stay well below
// 2^63 so child arithmetic cannot overflow.
inline constexpr HeapIndex kMaxHeapIndex = (HeapIndex{1} << 56);

inline constexpr char kSpaceMark = '_';

inline char digit_char(int d) {
    return d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + d - 10);
}

// -1 when c is not a serialized digit.
inline int char_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return c - 'a' + 10;
    return -1;
}

inline HeapIndex heap_parent(HeapIndex x, int k) { return (x - 1) / static_cast<HeapIndex>(k); }

inline HeapIndex heap_child(HeapIndex x, int k, int digit) {
    return x * static_cast<HeapIndex>(k) + 1 + static_cast<HeapIndex>(digit);
}

/// Length of the string at heap index x; equals floor(log_k((k-1)x + 1)).
inline int heap_level(HeapIndex x, int k) {
    int level = 0;
    HeapIndex last = 0;   // last index of the current level
    HeapIndex width = 1;  // number of strings on the next level
    while (x > last) {
        width *= static_cast<HeapIndex>(k);
        last += width;
        ++level;
    }
    return level;
}

struct LevelRange {
    HeapIndex first = 0;
    HeapIndex last = 0;
};

/// Inclusive heap-index range occupied by strings of the given length >= 1.
inline LevelRange level_range(int level, int k) {
    if (level < 1) {
        throw InvalidIndex("level must be >= 1");
    }
    HeapIndex first = 1;
    for (int l = 1; l < level; ++l) {
        first = first * static_cast<HeapIndex>(k) + 1;
    }
    return LevelRange{first, first * static_cast<HeapIndex>(k)};
}

/// The x-th non-empty k-ary string in radix order.
inline std::string heap_to_string(HeapIndex x, int k) {
    if (x < 1) {
        throw InvalidIndex("heap index must be >= 1");
    }
    std::string s;
    while (x > 0) {
        s.push_back(digit_char(static_cast<int>((x - 1) % static_cast<HeapIndex>(k))));
        x = heap_parent(x, k);
    }
    std::reverse(s.begin(), s.end());
    return s;
}

/// Inverse of heap_to_string; the empty string maps to 0.
inline HeapIndex string_to_heap(std::string_view s, int k) {
    HeapIndex x = 0;
    for (char c : s) {
        const int d = char_digit(c);
        if (d < 0 || d >= k) {
            throw InvalidIndex(std::string("invalid digit '") + c + "' for alphabet size " +
                               std::to_string(k));
        }
        if (x >= kMaxHeapIndex / static_cast<HeapIndex>(k)) {
            throw InvalidIndex("string too long for heap indexing");
        }
        x = heap_child(x, k, d);
    }
    return x;
}

}  // namespace spacecode
