#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "spacecode/bounds.hpp"
#include "spacecode/one_to_one.hpp"
#include "spacecode/oracle.hpp"
#include "spacecode/source_model.hpp"
#include "spacecode/space_code.hpp"

namespace spacecode {

namespace detail {

// splitmix64: tiny, stateless across platforms, good enough for generating
// benchmark distributions reproducibly.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 bits; bit-identical everywhere.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace detail

enum class Family { uniform, zipf, geometric, custom };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::uniform: return "uniform";
        case Family::zipf: return "zipf";
        case Family::geometric: return "geometric";
        case Family::custom: return "custom-file";
    }
    return "?";
}

/// Parametric source families. zipf: p_i proportional to i^-param (param >= 0);
/// geometric: p_i proportional to (1-param) param^(i-1) with param in (0,1);
/// uniform ignores param. All are already descending, so normalization keeps
/// the identity permutation.
inline SourceDistribution generate(Family family, std::size_t n, int k, double param) {
    if (n < 1) throw InvalidSpec("need n >= 1");
    std::vector<double> weights(n);
    switch (family) {
        case Family::uniform:
            for (auto& w : weights) w = 1.0;
            break;
        case Family::zipf:
            if (!(param >= 0.0)) throw InvalidSpec("zipf exponent must be >= 0");
            for (std::size_t i = 0; i < n; ++i) {
                weights[i] = std::max(std::pow(static_cast<double>(i + 1), -param),
                                      std::numeric_limits<double>::min());
            }
            break;
        case Family::geometric:
            if (!(param > 0.0) || !(param < 1.0)) {
                throw InvalidSpec("geometric ratio must lie in (0, 1)");
            }
            // deep tails underflow for small ratios; clamp at the smallest
            // normal so the distribution stays strictly positive
            for (std::size_t i = 0; i < n; ++i) {
                weights[i] = std::max((1.0 - param) * std::pow(param, static_cast<double>(i)),
                                      std::numeric_limits<double>::min());
            }
            break;
        case Family::custom:
            throw InvalidSpec("custom family takes its distribution from a file");
    }
    return normalize(weights, k).dist;
}

/// Multiplies each weight by a factor in [1-magnitude, 1+magnitude] drawn
/// from the trial RNG, then re-normalizes. magnitude 0 is the identity.
inline SourceDistribution perturb(const SourceDistribution& dist, double magnitude,
                                  detail::SplitMix64& rng) {
    if (magnitude < 0.0 || magnitude >= 1.0) {
        throw InvalidSpec("perturbation magnitude must lie in [0, 1)");
    }
    std::vector<double> weights = dist.probs();
    for (auto& w : weights) {
        w *= 1.0 + magnitude * (2.0 * rng.next_double() - 1.0);
    }
    return normalize(weights, dist.k()).dist;
}

/// Average length of the optimal unrestricted prefix code over the
/// (k+1)-letter alphabet, by (k+1)-ary Huffman merging with zero-weight
/// fillers so that (n-1) is a multiple of k. Merge ties break toward the
/// earliest-created node. The single-symbol source gets one codeword of
/// length 1, mirroring the space-code convention that codewords are
/// non-empty.
inline double huffman_kplus1(const SourceDistribution& dist) {
    const std::size_t n = dist.n();
    if (n == 1) return 1.0;
    const std::size_t arity = static_cast<std::size_t>(dist.k()) + 1;
    using Node = std::pair<double, std::uint64_t>;  // weight, creation order
    std::priority_queue<Node, std::vector<Node>, std::greater<Node>> heap;
    std::uint64_t created = 0;
    for (double p : dist.probs()) heap.emplace(p, created++);
    const std::size_t fillers = (arity - 1 - (n - 1) % (arity - 1)) % (arity - 1);
    for (std::size_t i = 0; i < fillers; ++i) heap.emplace(0.0, created++);
    // Every merge pushes its subtree one level down, so the average length
    // is the sum of merged weights.
    double average = 0.0;
    while (heap.size() > 1) {
        double weight = 0.0;
        for (std::size_t i = 0; i < arity && !heap.empty(); ++i) {
            weight += heap.top().first;
            heap.pop();
        }
        average += weight;
        heap.emplace(weight, created++);
    }
    return average;
}

struct BenchSpec {
    Family family = Family::uniform;
    std::size_t n = 1;
    int k = 2;
    double param = 0.0;
    std::uint64_t seed = 0;
    std::size_t trials = 1;
    double perturb_magnitude = 0.0;
    // Oracle columns are filled only for n at or below this.
    std::size_t oracle_max_n = 8;
    std::optional<std::vector<double>> custom_weights;
};

struct BenchRow {
    std::size_t trial = 0;
    Family family = Family::uniform;
    double param = 0.0;
    std::size_t n = 0;
    int k = 2;
    double H_k = 0.0;
    double L_plus = 0.0;
    double L_eps = 0.0;
    double L_space = 0.0;
    std::optional<double> oracle_opt;
    double huffman = 0.0;
    double lb_space_v = 0.0;
    double th_lb_plain = 0.0;
    double th_lb_p1 = 0.0;
    double ub_th_plain_exact = 0.0;
    double ub_th_plain_loose = 0.0;
    double ub_th_p1 = 0.0;
    double remark_gap = 0.0;
    std::optional<double> gap_cert;
};

inline std::vector<BenchRow> run(const BenchSpec& spec) {
    if (spec.trials < 1) throw InvalidSpec("need at least one trial");
    SourceDistribution base =
        spec.family == Family::custom
            ? normalize(spec.custom_weights.value(), spec.k).dist
            : generate(spec.family, spec.n, spec.k, spec.param);
    std::vector<BenchRow> rows;
    rows.reserve(spec.trials);
    for (std::size_t trial = 1; trial <= spec.trials; ++trial) {
        detail::SplitMix64 rng(spec.seed + trial);
        const SourceDistribution dist = spec.perturb_magnitude > 0.0
                                            ? perturb(base, spec.perturb_magnitude, rng)
                                            : base;
        BenchRow row;
        row.trial = trial;
        row.family = spec.family;
        row.param = spec.param;
        row.n = dist.n();
        row.k = dist.k();
        row.H_k = entropy(dist, dist.k()).value;
        row.L_plus = one_to_one_average(dist, false);
        row.L_eps = one_to_one_average(dist, true);
        const SpaceCodebook book = build_space_code(dist);
        row.L_space = average_length_space(book, dist);
        row.huffman = huffman_kplus1(dist);
        row.lb_space_v = lb_space(dist, row.L_plus);
        row.th_lb_plain = theorem_lb_space(dist, BoundVariant::plain);
        row.th_lb_p1 = theorem_lb_space(dist, BoundVariant::p1);
        row.ub_th_plain_exact = theorem_ub_space(dist, BoundVariant::plain, UbForm::exact);
        row.ub_th_plain_loose = theorem_ub_space(dist, BoundVariant::plain, UbForm::loose);
        row.ub_th_p1 = theorem_ub_space(dist, BoundVariant::p1, UbForm::loose);
        row.remark_gap = remark_gap_bound(dist);
        if (dist.n() <= spec.oracle_max_n) {
            const OracleResult oracle = exact_optimum(dist);
            row.oracle_opt = oracle.optimal_length;
            row.gap_cert = row.L_space - oracle.optimal_length;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace spacecode
