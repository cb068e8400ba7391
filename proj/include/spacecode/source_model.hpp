#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "spacecode/errors.hpp"

namespace spacecode {

// Digits serialize as 0-9a-z, which caps the code alphabet.
inline constexpr int kMaxAlphabet = 36;

// |sum(probs) - 1| must stay below this for a distribution to be accepted.
inline constexpr double kSumTolerance = 1e-9;

/// Validated source distribution: p1 >= ... >= pn > 0 summing to 1, paired
/// with the size k of the code alphabet. Immutable after construction.
class SourceDistribution {
public:
    static SourceDistribution from_probs(std::vector<double> probs, int k) {
        check_alphabet(k);
        if (probs.empty()) {
            throw InvalidDistribution("distribution needs at least one symbol");
        }
        double sum = 0.0;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            const double p = probs[i];
            if (!(p > 0.0) || p > 1.0 + kSumTolerance) {
                throw InvalidDistribution("probability out of (0, 1] at position " +
                                          std::to_string(i + 1));
            }
            if (i > 0 && probs[i - 1] < p) {
                throw InvalidDistribution("probabilities must be non-increasing");
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > kSumTolerance) {
            throw InvalidDistribution("probabilities sum to " + std::to_string(sum) +
                                      ", expected 1");
        }
        return SourceDistribution(std::move(probs), k);
    }

    const std::vector<double>& probs() const noexcept { return probs_; }
    std::size_t n() const noexcept { return probs_.size(); }
    int k() const noexcept { return k_; }

    /// Probability of the 1-based symbol i.
    double prob(std::size_t i) const { return probs_.at(i - 1); }
    double p1() const noexcept { return probs_.front(); }

private:
    SourceDistribution(std::vector<double> probs, int k) : probs_(std::move(probs)), k_(k) {}

    static void check_alphabet(int k) {
        if (k < 2 || k > kMaxAlphabet) {
            throw InvalidAlphabet("alphabet size must be in [2, " +
                                  std::to_string(kMaxAlphabet) + "], got " + std::to_string(k));
        }
    }

    std::vector<double> probs_;
    int k_;
};

/// What to do with zero-weight entries: reject the input or silently drop
/// them before sorting.
enum class ZeroPolicy { reject, drop };

struct NormalizeResult {
    SourceDistribution dist;
    // permutation[j] = 1-based position of sorted entry j in the raw input.
    std::vector<std::size_t> permutation;
};

/// Scales non-negative weights to sum 1 and sorts them descending (stable,
/// so ties keep their input order). Weights already summing to 1 are passed
/// through unscaled, which makes the operation idempotent.
inline NormalizeResult normalize(const std::vector<double>& raw, int k,
                                 ZeroPolicy policy = ZeroPolicy::reject) {
    if (k < 2 || k > kMaxAlphabet) {
        throw InvalidAlphabet("alphabet size must be in [2, " + std::to_string(kMaxAlphabet) +
                              "], got " + std::to_string(k));
    }
    if (raw.empty()) {
        throw InvalidDistribution("empty weight list");
    }
    std::vector<std::pair<double, std::size_t>> entries;
    entries.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const double w = raw[i];
        if (std::isnan(w) || w < 0.0) {
            throw InvalidDistribution("negative or NaN weight at position " +
                                      std::to_string(i + 1));
        }
        if (w == 0.0) {
            if (policy == ZeroPolicy::reject) {
                throw InvalidDistribution("zero weight at position " + std::to_string(i + 1) +
                                          " (drop zeros explicitly to accept)");
            }
            continue;
        }
        entries.emplace_back(w, i + 1);
    }
    if (entries.empty()) {
        throw InvalidDistribution("all weights are zero");
    }
    double sum = 0.0;
    for (const auto& [w, idx] : entries) sum += w;
    if (!std::isfinite(sum) || sum <= 0.0) {
        throw InvalidDistribution("weights do not sum to a positive finite value");
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });

    const bool already_normalized = std::abs(sum - 1.0) <= 1e-12;
    std::vector<double> probs;
    std::vector<std::size_t> perm;
    probs.reserve(entries.size());
    perm.reserve(entries.size());
    for (const auto& [w, idx] : entries) {
        probs.push_back(already_normalized ? w : w / sum);
        perm.push_back(idx);
    }
    return NormalizeResult{SourceDistribution::from_probs(std::move(probs), k),
                           std::move(perm)};
}

/// Entropy of a distribution in the given base, in base-ary digits per symbol.
struct EntropyValue {
    double value = 0.0;
    int base = 2;
};

inline EntropyValue entropy(const SourceDistribution& dist, int base) {
    if (base < 2) {
        throw InvalidAlphabet("entropy base must be >= 2");
    }
    const double log_base = std::log(static_cast<double>(base));
    double h = 0.0;
    for (double p : dist.probs()) {
        h -= p * std::log(p);
    }
    return EntropyValue{h / log_base, base};
}

/// Two-point entropy of (p1, 1-p1) in base k; 0 at p1 = 1 by the usual
/// 0 log 0 = 0 convention.
inline double binary_entropy_base_k(double p1, int k) {
    if (!(p1 > 0.0) || p1 > 1.0) {
        throw InvalidProbability("p1 must lie in (0, 1], got " + std::to_string(p1));
    }
    if (k < 2) {
        throw InvalidAlphabet("alphabet size must be >= 2");
    }
    if (p1 == 1.0) {
        return 0.0;
    }
    const double log_k = std::log(static_cast<double>(k));
    return (-p1 * std::log(p1) - (1.0 - p1) * std::log(1.0 - p1)) / log_k;
}

}  // namespace spacecode
