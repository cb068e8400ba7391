#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <vector>

#include "spacecode/bounds.hpp"
#include "support/test_util.hpp"

using namespace spacecode;
using Catch::Matchers::WithinAbs;

namespace {

SourceDistribution uniform(std::size_t n, int k) {
    return SourceDistribution::from_probs(
        std::vector<double>(n, 1.0 / static_cast<double>(n)), k);
}

// All frozen constants below come from an independent arbitrary-precision
// evaluation of the closed forms.

}  // namespace

TEST_CASE("entropy-only lower bound on L_eps") {
    REQUIRE_THAT(lb_eps_plain(EntropyValue{2.0, 2}, 2),
                 WithinAbs(-0.75488750216346854, 1e-12));
    REQUIRE_THAT(lb_eps_plain(EntropyValue{2.0, 4}, 4),
                 WithinAbs(0.42185685957517205, 1e-12));
    // the expression degenerates at H = 0, k = 2; pinned to the true L_eps
    REQUIRE(lb_eps_plain(EntropyValue{0.0, 2}, 2) == 0.0);
    // k > 2 keeps a positive denominator even at H = 0
    REQUIRE(std::isfinite(lb_eps_plain(EntropyValue{0.0, 3}, 3)));
}

TEST_CASE("largest-mass lower bound on L_eps") {
    const auto half = SourceDistribution::from_probs({0.5, 0.5}, 2);
    REQUIRE_THAT(lb_eps_p1(half), WithinAbs(-0.20751874963942191, 1e-12));
    REQUIRE(lb_eps_p1(half) <= one_to_one_average(half, true));

    const auto point = SourceDistribution::from_probs({1.0}, 2);
    REQUIRE(lb_eps_p1(point) == 0.0);

    const auto skew = SourceDistribution::from_probs({0.7, 0.2, 0.1}, 2);
    REQUIRE_THAT(lb_eps_p1(skew), WithinAbs(-0.30221204294773831, 1e-12));
    REQUIRE(lb_eps_p1(skew) <= one_to_one_average(skew, true));
}

TEST_CASE("entropy-only upper bound on L_eps") {
    const auto u4 = uniform(4, 2);
    REQUIRE_THAT(ub_eps_plain(entropy(u4, 2), 2), WithinAbs(2.0, 1e-12));
    REQUIRE(ub_eps_plain(entropy(u4, 2), 2) >= one_to_one_average(u4, true));
    // binary case reduces to H
    testutil::Rng rng(61);
    for (int rep = 0; rep < 20; ++rep) {
        const auto dist = testutil::random_dist(rng, 2 + rng.next() % 50, 2);
        REQUIRE(ub_eps_plain(entropy(dist, 2), 2) == entropy(dist, 2).value);
    }
    REQUIRE_THAT(ub_eps_plain(entropy(uniform(9, 3), 3), 3),
                 WithinAbs(2.6309297535714574, 1e-12));
}

TEST_CASE("largest-mass upper bound on L_eps") {
    const auto boundary = SourceDistribution::from_probs({0.5, 0.25, 0.25}, 2);
    REQUIRE_THAT(ub_eps_p1(boundary), WithinAbs(1.0, 1e-12));
    REQUIRE(one_to_one_average(boundary, true) <= ub_eps_p1(boundary));

    const auto point = SourceDistribution::from_probs({1.0}, 2);
    REQUIRE_THAT(ub_eps_p1(point), WithinAbs(0.0, 1e-12));

    const auto skew = SourceDistribution::from_probs({0.9, 0.1}, 2);
    REQUIRE_THAT(ub_eps_p1(skew), WithinAbs(0.1, 1e-12));
    REQUIRE_THAT(one_to_one_average(skew, true), WithinAbs(0.1, 1e-15));
}

TEST_CASE("one-to-one based lower bound on the space code") {
    const auto u4 = uniform(4, 2);
    REQUIRE_THAT(lb_space(u4, one_to_one_average(u4, false)), WithinAbs(1.75, 1e-12));
    const auto two = SourceDistribution::from_probs({0.6, 0.4}, 2);
    REQUIRE(lb_space(two, one_to_one_average(two, false)) ==
            one_to_one_average(two, false));
    const auto skew = SourceDistribution::from_probs({0.9, 0.05, 0.05}, 2);
    REQUIRE_THAT(lb_space(skew, one_to_one_average(skew, false)), WithinAbs(1.10, 1e-12));
}

TEST_CASE("assembled theorem bounds") {
    const auto u4 = uniform(4, 2);
    REQUIRE_THAT(theorem_lb_space(u4, BoundVariant::plain),
                 WithinAbs(-0.0048875021634685444, 1e-12));
    REQUIRE(theorem_lb_space(u4, BoundVariant::plain) <=
            average_length_space(build_space_code(u4), u4));

    const auto point = SourceDistribution::from_probs({1.0}, 2);
    REQUIRE_THAT(theorem_lb_space(point, BoundVariant::plain), WithinAbs(1.0, 1e-12));
    REQUIRE(average_length_space(build_space_code(point), point) == 1.0);

    // n <= k: the smallest-mass sum is empty
    const auto two = SourceDistribution::from_probs({0.7, 0.3}, 3);
    REQUIRE_THAT(theorem_lb_space(two, BoundVariant::plain),
                 WithinAbs(lb_eps_plain(entropy(two, 3), 3) + epsilon_gap_exact(two), 1e-15));

    REQUIRE_THAT(theorem_ub_space(u4, BoundVariant::plain, UbForm::loose),
                 WithinAbs(2.75, 1e-12));
    const auto pair = SourceDistribution::from_probs({0.8, 0.2}, 2);
    REQUIRE_THAT(theorem_ub_space(pair, BoundVariant::plain, UbForm::exact),
                 WithinAbs(ub_eps_plain(entropy(pair, 2), 2) + epsilon_gap_exact(pair),
                           1e-15));
    REQUIRE_THAT(theorem_ub_space(uniform(10, 2), BoundVariant::plain, UbForm::exact),
                 WithinAbs(4.0219280948873623, 1e-12));
}

TEST_CASE("unrestricted-code comparison bound") {
    REQUIRE_THAT(remark_gap_bound(uniform(4, 2)), WithinAbs(1.7381404928570851, 1e-12));
    const auto point = SourceDistribution::from_probs({1.0}, 2);
    REQUIRE_THAT(remark_gap_bound(point), WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(remark_gap_bound(uniform(16, 16)), WithinAbs(1.0213978315270959, 1e-12));
}

TEST_CASE("bound sandwiches hold on random sources") {
    testutil::Rng rng(67);
    for (int rep = 0; rep < 250; ++rep) {
        const int ks[] = {2, 3, 4, 16};
        const int k = ks[rng.next() % 4];
        const auto dist = testutil::random_dist(rng, 2 + rng.next() % 199, k);
        const double l_eps = one_to_one_average(dist, true);
        const double l_space = average_length_space(build_space_code(dist), dist);
        const EntropyValue H = entropy(dist, k);
        REQUIRE(lb_eps_plain(H, k) < l_eps + 1e-9);
        REQUIRE(l_eps <= ub_eps_plain(H, k) + 1e-9);
        REQUIRE(lb_eps_p1(dist) <= l_eps + 1e-9);
        REQUIRE(l_eps <= ub_eps_p1(dist) + 1e-9);
        REQUIRE(theorem_lb_space(dist, BoundVariant::plain) <= l_space + 1e-9);
        REQUIRE(theorem_lb_space(dist, BoundVariant::p1) <= l_space + 1e-9);
        REQUIRE(l_space <= theorem_ub_space(dist, BoundVariant::plain, UbForm::exact) + 1e-9);
        // the p1 refinement never loosens the plain upper bound
        REQUIRE(ub_eps_p1(dist) <= ub_eps_plain(H, k) + 1e-12);
    }
}

TEST_CASE("bounds stay finite at the branch boundaries") {
    for (double p1 : {0.5, 1.0}) {
        std::vector<double> probs{p1};
        if (p1 < 1.0) {
            probs.assign({p1, 1.0 - p1});
        }
        for (int k : {2, 3, 16}) {
            const auto dist = SourceDistribution::from_probs(probs, k);
            for (double v : {lb_eps_plain(entropy(dist, k), k), lb_eps_p1(dist),
                             ub_eps_plain(entropy(dist, k), k), ub_eps_p1(dist),
                             theorem_lb_space(dist, BoundVariant::plain),
                             theorem_lb_space(dist, BoundVariant::p1),
                             theorem_ub_space(dist, BoundVariant::plain, UbForm::exact),
                             theorem_ub_space(dist, BoundVariant::p1, UbForm::loose),
                             remark_gap_bound(dist)}) {
                REQUIRE(std::isfinite(v));
            }
        }
    }
}

TEST_CASE("full report carries every formula") {
    const auto u4 = uniform(4, 2);
    const auto report = full_report(u4);
    const std::set<std::string> expected{
        "lb_eps_plain",       "lb_eps_p1",  "ub_eps_plain",       "ub_eps_p1",
        "lb_space",           "th_lb_plain", "th_lb_p1",          "th_ub_plain_exact",
        "th_ub_plain_loose",  "th_ub_p1",   "remark_gap",         "L_plus",
        "L_eps",              "L_space_constructed", "eps_gap_exact", "eps_gap_printed"};
    std::set<std::string> got;
    for (const auto& r : report.records) got.insert(r.formula_id);
    REQUIRE(got == expected);
    REQUIRE(report.n == 4);
    REQUIRE(report.k == 2);
    REQUIRE_THAT(report.H_k, WithinAbs(2.0, 1e-12));
    REQUIRE(report.eps_gap_disagrees);  // 0.5 exact vs 0.25 printed
    REQUIRE(report.find("L_space_constructed")->value == 1.75);
    REQUIRE(report.find("eps_gap_exact")->value == 0.5);
    REQUIRE(report.find("eps_gap_printed")->value == 0.25);
    REQUIRE(report.find("lb_eps_plain")->strict);
    REQUIRE_FALSE(report.find("lb_eps_p1")->strict);

    const auto point_report = full_report(SourceDistribution::from_probs({1.0}, 2));
    REQUIRE(point_report.find("L_eps")->value == 0.0);
    REQUIRE(point_report.find("L_plus")->value == 1.0);
    REQUIRE(point_report.find("L_space_constructed")->value == 1.0);
}

TEST_CASE("report sandwich consistency per target") {
    testutil::Rng rng(71);
    for (int rep = 0; rep < 60; ++rep) {
        const int k = 2 + static_cast<int>(rng.next() % 4);
        const auto dist = testutil::random_dist(rng, 2 + rng.next() % 100, k);
        const auto report = full_report(dist);
        for (const auto& lo : report.records) {
            if (lo.kind != BoundKind::lower) continue;
            for (const auto& hi : report.records) {
                if (hi.kind != BoundKind::upper || hi.target != lo.target) continue;
                REQUIRE(lo.value <= hi.value + 1e-9);
            }
        }
    }
}
