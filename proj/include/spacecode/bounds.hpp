#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "spacecode/one_to_one.hpp"
#include "spacecode/source_model.hpp"
#include "spacecode/space_code.hpp"

namespace spacecode {

namespace detail {

inline double log_base(double x, int k) { return std::log(x) / std::log(static_cast<double>(k)); }

// z * log_k(1 + 1/z), extended by its limit 0 at z = 0.
inline double z_log_term(double z, int k) {
    if (z <= 0.0) return 0.0;
    return z * log_base(1.0 + 1.0 / z, k);
}

// -log_k(1 - (1/(kn))^e) with e = log_k(1 + 1/(1 - p1)); 0 at p1 = 1 where
// the exponent diverges. Always non-negative.
inline double largest_mass_correction(double p1, std::size_t n, int k) {
    if (p1 >= 1.0) return 0.0;
    const double e = log_base(1.0 + 1.0 / (1.0 - p1), k);
    const double pow_term = std::pow(1.0 / (static_cast<double>(k) * static_cast<double>(n)), e);
    return -log_base(1.0 - pow_term, k);
}

// Sum of the ceil(n/k)-1 smallest probabilities.
inline double tail_internal_sum(const SourceDistribution& dist) {
    const std::size_t n = dist.n();
    const std::size_t count = (n + static_cast<std::size_t>(dist.k()) - 1) /
                                  static_cast<std::size_t>(dist.k()) - 1;
    double sum = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        sum += dist.probs()[n - 1 - i];
    }
    return sum;
}

// Sum of the ceil(n/k)-1 largest probabilities.
inline double head_internal_sum(const SourceDistribution& dist) {
    const std::size_t count = (dist.n() + static_cast<std::size_t>(dist.k()) - 1) /
                                  static_cast<std::size_t>(dist.k()) - 1;
    double sum = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        sum += dist.probs()[i];
    }
    return sum;
}

// Probability mass on the symbols whose constructed codeword carries the
// space mark, i.e. whose heap index is at most ceil(n/k)-1.
inline double marked_mass(const SourceDistribution& dist) {
    const HeapIndex internal_last = last_internal_index(dist.n(), dist.k());
    double sum = 0.0;
    for (std::size_t i = 1; i <= dist.n(); ++i) {
        if (symbol_to_heap(i, dist.n(), dist.k(), false) <= internal_last) {
            sum += dist.probs()[i - 1];
        }
    }
    return sum;
}

}  // namespace detail

/// Entropy-only strict lower bound on L_eps. The expression degenerates when
/// H + log_k(k-1) = 0 (point mass, k = 2); there L_eps = 0 and the bound is
/// pinned to 0 to stay valid.
inline double lb_eps_plain(EntropyValue H, int k) {
    const double c = H.value + detail::log_base(static_cast<double>(k - 1), k);
    if (c <= 0.0) return 0.0;
    return H.value - detail::z_log_term(c, k) - detail::log_base(c + 1.0, k);
}

/// Lower bound on L_eps refined by the largest mass p1; branches at
/// p1 = 0.5 (the boundary itself uses the small-p1 expression).
inline double lb_eps_p1(const SourceDistribution& dist) {
    const int k = dist.k();
    const double p1 = dist.p1();
    const double H = entropy(dist, k).value;
    const double log_km1 = detail::log_base(static_cast<double>(k - 1), k);
    double a;  // the L_eps upper bound substituted into the self-referential term
    if (p1 <= 0.5) {
        a = H - p1 * detail::log_base(1.0 / p1, k) + (1.0 - p1) * log_km1;
    } else {
        a = H - binary_entropy_base_k(p1, k) + (1.0 - p1) * (1.0 + log_km1);
    }
    const double main = H - detail::z_log_term(a, k) -
                        (a > 0.0 ? detail::log_base(a + 1.0, k) : 0.0);
    // the correction helper already carries the leading minus sign
    return main + detail::largest_mass_correction(p1, dist.n(), k);
}

/// Entropy-only upper bound on L_eps: H + log_k(k-1).
inline double ub_eps_plain(EntropyValue H, int k) {
    return H.value + detail::log_base(static_cast<double>(k - 1), k);
}

/// Upper bound on L_eps refined by the largest mass p1.
inline double ub_eps_p1(const SourceDistribution& dist) {
    const int k = dist.k();
    const double p1 = dist.p1();
    const double H = entropy(dist, k).value;
    const double log_km1 = detail::log_base(static_cast<double>(k - 1), k);
    if (p1 <= 0.5) {
        return H - p1 * detail::log_base(1.0 / p1, k) + (1.0 - p1) * log_km1;
    }
    return H - binary_entropy_base_k(p1, k) +
           (1.0 - p1) * detail::log_base(2.0 * static_cast<double>(k - 1), k);
}

/// Lower bound on the optimal space-terminated prefix code: L_plus plus the
/// ceil(n/k)-1 smallest probabilities.
inline double lb_space(const SourceDistribution& dist, double L_plus) {
    return L_plus + detail::tail_internal_sum(dist);
}

enum class BoundVariant { plain, p1 };
enum class UbForm { exact, loose };

/// Lower bound on L(C) assembled from an L_eps lower bound, the smallest-mass
/// sum and the exact eps-gap (L_plus = L_eps + gap holds identically, so the
/// composition stays a valid bound).
inline double theorem_lb_space(const SourceDistribution& dist, BoundVariant variant) {
    const double base = variant == BoundVariant::plain
                            ? lb_eps_plain(entropy(dist, dist.k()), dist.k())
                            : lb_eps_p1(dist);
    return base + detail::tail_internal_sum(dist) + epsilon_gap_exact(dist);
}

/// Upper bound on L(C): an L_eps upper bound plus the exact eps-gap plus
/// either the mass actually carrying spaces (exact) or the ceil(n/k)-1
/// largest probabilities (loose).
inline double theorem_ub_space(const SourceDistribution& dist, BoundVariant variant,
                               UbForm form) {
    const double base = variant == BoundVariant::plain
                            ? ub_eps_plain(entropy(dist, dist.k()), dist.k())
                            : ub_eps_p1(dist);
    const double spaces = form == UbForm::exact ? detail::marked_mass(dist)
                                                : detail::head_internal_sum(dist);
    return base + epsilon_gap_exact(dist) + spaces;
}

/// Upper bound on how much the end-of-word restriction can cost versus an
/// unrestricted optimal prefix code over the (k+1)-letter alphabet:
/// H_k(p) (1 - 1/log_k(k+1)) + 1. Decays to 1 as k grows.
inline double remark_gap_bound(const SourceDistribution& dist) {
    const double H = entropy(dist, dist.k()).value;
    return H * (1.0 - 1.0 / detail::log_base(static_cast<double>(dist.k() + 1), dist.k())) + 1.0;
}

enum class BoundKind { lower, upper, value };

struct BoundRecord {
    std::string formula_id;
    BoundKind kind = BoundKind::value;
    std::string target;  // L_eps | L_plus | L_space
    double value = 0.0;
    bool strict = false;  // printed as a strict inequality
};

struct BoundsReport {
    std::size_t n = 0;
    int k = 2;
    double H_k = 0.0;
    double p1 = 0.0;
    bool eps_gap_disagrees = false;
    std::vector<BoundRecord> records;

    const BoundRecord* find(std::string_view formula_id) const {
        for (const auto& r : records) {
            if (r.formula_id == formula_id) return &r;
        }
        return nullptr;
    }
};

/// Evaluates every bound plus the measured averages for one distribution.
inline BoundsReport full_report(const SourceDistribution& dist) {
    BoundsReport report;
    report.n = dist.n();
    report.k = dist.k();
    const EntropyValue H = entropy(dist, dist.k());
    report.H_k = H.value;
    report.p1 = dist.p1();

    const double L_plus = one_to_one_average(dist, false);
    const double L_eps = one_to_one_average(dist, true);
    const SpaceCodebook book = build_space_code(dist);
    const double L_space = average_length_space(book, dist);
    const double gap_exact = epsilon_gap_exact(dist);
    const double gap_printed = epsilon_gap_printed(dist);
    report.eps_gap_disagrees = std::abs(gap_exact - gap_printed) > 1e-12;

    auto add = [&report](std::string id, BoundKind kind, std::string target, double value,
                         bool strict) {
        report.records.push_back(
            BoundRecord{std::move(id), kind, std::move(target), value, strict});
    };
    add("lb_eps_plain", BoundKind::lower, "L_eps", lb_eps_plain(H, dist.k()), true);
    add("lb_eps_p1", BoundKind::lower, "L_eps", lb_eps_p1(dist), false);
    add("ub_eps_plain", BoundKind::upper, "L_eps", ub_eps_plain(H, dist.k()), false);
    add("ub_eps_p1", BoundKind::upper, "L_eps", ub_eps_p1(dist), false);
    add("lb_space", BoundKind::lower, "L_space", lb_space(dist, L_plus), false);
    add("th_lb_plain", BoundKind::lower, "L_space",
        theorem_lb_space(dist, BoundVariant::plain), true);
    add("th_lb_p1", BoundKind::lower, "L_space", theorem_lb_space(dist, BoundVariant::p1),
        false);
    add("th_ub_plain_exact", BoundKind::upper, "L_space",
        theorem_ub_space(dist, BoundVariant::plain, UbForm::exact), false);
    add("th_ub_plain_loose", BoundKind::upper, "L_space",
        theorem_ub_space(dist, BoundVariant::plain, UbForm::loose), false);
    add("th_ub_p1", BoundKind::upper, "L_space",
        theorem_ub_space(dist, BoundVariant::p1, UbForm::loose), false);
    // bounds L_space minus the unrestricted (k+1)-ary optimum, so it gets
    // its own target to keep per-target sandwich consistency meaningful
    add("remark_gap", BoundKind::upper, "gap_vs_unrestricted", remark_gap_bound(dist), true);
    add("L_plus", BoundKind::value, "L_plus", L_plus, false);
    add("L_eps", BoundKind::value, "L_eps", L_eps, false);
    add("L_space_constructed", BoundKind::value, "L_space", L_space, false);
    add("eps_gap_exact", BoundKind::value, "L_plus", gap_exact, false);
    add("eps_gap_printed", BoundKind::value, "L_plus", gap_printed, false);
    return report;
}

}  // namespace spacecode
