#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_set>
#include <vector>

#include "spacecode/radix.hpp"
#include "spacecode/source_model.hpp"
#include "spacecode/space_code.hpp"

namespace spacecode {

struct OracleOptions {
    // Candidate strings are capped at this length; 0 means l_n + 1, which
    // empirically never loses the optimum (cap sensitivity is probed by
    // tests, not assumed).
    int max_len = 0;
    // Abort with BudgetExceeded after this many search nodes.
    std::uint64_t node_budget = std::uint64_t{500} * 1000 * 1000;
    // Restrict the search to prefix-closed string sets (every proper prefix
    // of a member is a member). Used to probe the normal-form existence
    // property; the unrestricted optimum must match.
    bool closed_only = false;
};

struct OracleResult {
    double optimal_length = 0.0;
    SpaceCodebook witness;
    std::uint64_t instances_searched = 0;
};

namespace detail {

// Exhaustive minimum over all sets of n distinct non-empty strings, with two
// sound reductions baked in:
//   - a chosen string is space-marked iff it is a proper prefix of another
//     chosen string (an unforced space only adds cost, a missing forced one
//     breaks prefix-freeness), and
//   - symbols are paired with sorted total lengths (rearrangement), which
//     removes the n! assignment factor.
// Sets are visited in increasing lexicographic order of their sorted heap
// indices and only strict improvements are kept, so the reported witness is
// the lexicographically smallest optimal set regardless of pruning.
class SetSearch {
public:
    SetSearch(const SourceDistribution& dist, const OracleOptions& opts)
        : probs_(dist.probs()), n_(dist.n()), k_(dist.k()), opts_(opts) {
        int cap = opts.max_len;
        if (cap <= 0) {
            cap = heap_level(static_cast<HeapIndex>(n_), k_) + 1;
        }
        if (cap < heap_level(static_cast<HeapIndex>(n_), k_)) {
            throw InvalidSpec("max_len " + std::to_string(cap) + " leaves fewer than " +
                              std::to_string(n_) + " candidate strings");
        }
        universe_ = level_range(cap, k_).last;
        levels_.resize(universe_ + 1, 0);
        for (HeapIndex x = 1; x <= universe_; ++x) {
            levels_[x] = heap_level(x, k_);
        }
        chosen_flag_.assign(universe_ + 1, 0);
        marked_.assign(universe_ + 1, 0);
    }

    OracleResult run() {
        best_cost_ = std::numeric_limits<double>::infinity();
        chosen_.clear();
        nodes_ = 0;
        extend(1);
        OracleResult result;
        result.optimal_length = best_cost_;
        result.witness = build_witness();
        result.instances_searched = nodes_;
        return result;
    }

private:
    // Cost of pairing sorted total lengths against the descending probs.
    double cost_of(std::vector<int>& totals) const {
        std::sort(totals.begin(), totals.end());
        double cost = 0.0;
        for (std::size_t i = 0; i < totals.size(); ++i) {
            cost += probs_[i] * static_cast<double>(totals[i]);
        }
        return cost;
    }

    // Lower bound for the current partial set extended from `next` on: keep
    // the current marks (marks only ever grow) and hand the remaining slots
    // the cheapest unused indices, which are consecutive because levels are
    // non-decreasing in the heap index.
    double lower_bound(HeapIndex next) {
        scratch_.clear();
        for (std::size_t j = 0; j < chosen_.size(); ++j) {
            scratch_.push_back(levels_[chosen_[j]] + (marked_[chosen_[j]] ? 1 : 0));
        }
        HeapIndex x = next;
        for (std::size_t j = chosen_.size(); j < n_; ++j, ++x) {
            scratch_.push_back(levels_[x]);
        }
        return cost_of(scratch_);
    }

    void extend(HeapIndex start) {
        const std::size_t need = n_ - chosen_.size();
        if (need == 0) {
            scratch_.clear();
            for (HeapIndex x : chosen_) {
                scratch_.push_back(levels_[x] + (marked_[x] ? 1 : 0));
            }
            const double cost = cost_of(scratch_);
            if (cost < best_cost_) {
                best_cost_ = cost;
                best_set_.assign(chosen_.begin(), chosen_.end());
                best_marks_.clear();
                for (HeapIndex x : chosen_) best_marks_.push_back(marked_[x] != 0);
            }
            return;
        }
        for (HeapIndex x = start; x + need - 1 <= universe_; ++x) {
            // Levels are monotone in x, so once the optimistic bound is no
            // better than the incumbent no later x can be either.
            if (lower_bound(x) >= best_cost_) break;
            if (opts_.closed_only && x > static_cast<HeapIndex>(k_) &&
                !chosen_flag_[heap_parent(x, k_)]) {
                continue;
            }
            if (++nodes_ > opts_.node_budget) {
                throw BudgetExceeded(nodes_);
            }
            push(x);
            extend(x + 1);
            pop(x);
        }
    }

    void push(HeapIndex x) {
        chosen_.push_back(x);
        chosen_flag_[x] = 1;
        undo_.push_back(0);  // sentinel: number of marks added by x
        // Every chosen ancestor of x becomes a proper prefix; an already
        // marked ancestor means the ones above it are marked too.
        for (HeapIndex a = heap_parent(x, k_); a >= 1; a = heap_parent(a, k_)) {
            if (chosen_flag_[a]) {
                if (marked_[a]) break;
                marked_[a] = 1;
                marked_stack_.push_back(a);
                ++undo_.back();
            }
        }
    }

    void pop(HeapIndex x) {
        for (std::uint32_t i = 0; i < undo_.back(); ++i) {
            marked_[marked_stack_.back()] = 0;
            marked_stack_.pop_back();
        }
        undo_.pop_back();
        chosen_flag_[x] = 0;
        chosen_.pop_back();
    }

    SpaceCodebook build_witness() const {
        // Ties in total length break toward the smaller heap index so the
        // witness codebook is deterministic.
        std::vector<std::pair<int, HeapIndex>> order;
        for (std::size_t j = 0; j < best_set_.size(); ++j) {
            order.emplace_back(levels_[best_set_[j]] + (best_marks_[j] ? 1 : 0),
                               best_set_[j]);
        }
        std::sort(order.begin(), order.end());
        SpaceCodebook book;
        book.k = k_;
        book.entries.reserve(order.size());
        std::unordered_set<HeapIndex> marked_set;
        for (std::size_t j = 0; j < best_set_.size(); ++j) {
            if (best_marks_[j]) marked_set.insert(best_set_[j]);
        }
        for (const auto& [total, x] : order) {
            book.entries.push_back(
                SpaceCodeword{heap_to_string(x, k_), marked_set.count(x) > 0});
        }
        return book;
    }

    const std::vector<double>& probs_;
    std::size_t n_;
    int k_;
    OracleOptions opts_;
    HeapIndex universe_ = 0;

    std::vector<int> levels_;
    std::vector<std::uint8_t> chosen_flag_;
    std::vector<std::uint8_t> marked_;
    std::vector<HeapIndex> chosen_;
    std::vector<HeapIndex> marked_stack_;
    std::vector<std::uint32_t> undo_;
    std::vector<int> scratch_;

    double best_cost_ = 0.0;
    std::vector<HeapIndex> best_set_;
    std::vector<bool> best_marks_;
    std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Exact minimum average length over all space-terminated prefix-free
/// codebooks for dist, by exhaustive search. Exponential: meant for n up to
/// about 10.
inline OracleResult exact_optimum(const SourceDistribution& dist,
                                  const OracleOptions& opts = {}) {
    detail::SetSearch search(dist, opts);
    return search.run();
}

/// Constructed average length minus the exact optimum; provably in [0, 1).
inline double gap_certificate(const SourceDistribution& dist, const OracleOptions& opts = {}) {
    const double constructed = average_length_space(build_space_code(dist), dist);
    return constructed - exact_optimum(dist, opts).optimal_length;
}

/// Normal-form check: the space-marked codewords must be exactly the proper
/// prefixes realized inside the codebook, i.e. every internal node of the
/// code tree appears as a codeword with the space mark and no space mark
/// hangs on a non-prefix codeword. Optimal codes can always be rearranged
/// into this form; arbitrary optimal witnesses need not satisfy it.
inline bool verify_lemma2_closure(const SpaceCodebook& book) {
    std::unordered_set<std::string> internal;
    for (const auto& e : book.entries) {
        for (std::size_t len = 1; len < e.digits.size(); ++len) {
            internal.insert(e.digits.substr(0, len));
        }
    }
    std::unordered_set<std::string> spaced;
    for (const auto& e : book.entries) {
        if (e.has_space) spaced.insert(e.digits);
    }
    for (const auto& w : internal) {
        if (spaced.count(w) == 0) return false;
    }
    for (const auto& w : spaced) {
        if (internal.count(w) == 0) return false;
    }
    return true;
}

}  // namespace spacecode
