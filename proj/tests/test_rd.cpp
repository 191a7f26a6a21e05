#include "doctest.h"

#include <cmath>
#include <random>

#include "gog/rd.hpp"

using namespace gog;

namespace {

GroupFn random_fn(const GroupCatalogEntry& g, BallEnumerator& ball, int r,
                  std::mt19937_64& rng) {
    GroupFn f;
    for (const GroupElement& x : ball.ball(r))
        if (rng() % 2) f.set(x, make_rational((long)(rng() % 9 + 1), (long)(rng() % 4 + 1)));
    if (f.empty()) f.set(g.identity(), 1);
    return f;
}

} // namespace

TEST_CASE("growth classifier separates the four regimes") {
    std::vector<std::pair<double, double>> quad, expo, flat;
    for (int n = 1; n <= 12; ++n) {
        quad.push_back({(double)n, (double)n * n});
        expo.push_back({(double)n, std::pow(2.0, n)});
        flat.push_back({(double)n, 7.0});
    }
    GrowthClassification q = classify_growth(quad);
    CHECK(q.kind == GrowthKind::Polynomial);
    CHECK(q.degree == doctest::Approx(2.0).epsilon(1e-9));
    GrowthClassification e = classify_growth(expo);
    CHECK(e.kind == GrowthKind::AtLeastExponential);
    CHECK(e.rate == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    CHECK(classify_growth(flat).kind == GrowthKind::Bounded);
    CHECK_THROWS_AS(classify_growth({{1, 1}, {2, 2}, {3, 3}, {4, 4}}), TooFewSamples);
}

TEST_CASE("growth classification is scale invariant") {
    std::mt19937_64 rng(23);
    std::vector<std::pair<double, double>> noisy;
    for (int n = 1; n <= 15; ++n)
        noisy.push_back({(double)n, std::pow((double)n, 1.8) * (1.0 + 0.01 * (double)(rng() % 7))});
    GrowthClassification a = classify_growth(noisy);
    for (auto& [n, v] : noisy) v *= 1000.0;
    GrowthClassification b = classify_growth(noisy);
    CHECK(a.kind == b.kind);
    CHECK(a.degree == doctest::Approx(b.degree).epsilon(1e-9));
}

TEST_CASE("free group ball indicators convolve to the known center value") {
    auto f2 = GroupCatalogEntry::free_group(2, {"a", "b"});
    BallEnumerator ball(f2);
    GroupFn chi;
    for (const GroupElement& x : ball.ball(1)) chi.set(x, 1);
    GroupFn conv = group_convolve(f2, chi, chi);
    CHECK(conv.at(f2.identity()) == 5);
    CHECK(chi.support_size() == 5);
}

TEST_CASE("convolution rejects elements from another group") {
    auto f2 = GroupCatalogEntry::free_group(2, {"a", "b"});
    auto z = GroupCatalogEntry::free_abelian(1, {"x"});
    GroupFn f, g;
    f.set(f2.identity(), 1);
    g.set(z.identity(), 1);
    CHECK_THROWS_AS(group_convolve(f2, f, g), ContextMismatch);
}

TEST_CASE("convolution satisfies the l1-l2 Young inequality") {
    auto f2 = GroupCatalogEntry::free_group(2, {"a", "b"});
    BallEnumerator ball(f2);
    std::mt19937_64 rng(29);
    for (int t = 0; t < 30; ++t) {
        GroupFn f = random_fn(f2, ball, 2, rng);
        GroupFn g = random_fn(f2, ball, 2, rng);
        GroupFn conv = group_convolve(f2, f, g);
        CHECK(conv.l2_norm_sq() <= f.l1_norm() * f.l1_norm() * g.l2_norm_sq());
    }
}

TEST_CASE("amenable lower bound in Z matches the exact overlap count") {
    auto z = GroupCatalogEntry::free_abelian(1, {"x"});
    // chi_{B(1)} * chi_{B(8)}: fifteen points of height 3, then 2, 1 tails
    CHECK(amenable_lower_bound(z, 1, 8) == make_rational(145, 17));
    // with a large blow-up the squared bound approaches |B(1)|^2 = 9
    Rational far = amenable_lower_bound(z, 1, 40);
    CHECK(far > make_rational(81, 10)); // (0.9 * 3)^2 = 7.29 < 8.1 < value
    CHECK(far < 9);
}

TEST_CASE("amenable lower bound in Z^2 approaches the ball size") {
    auto z2 = GroupCatalogEntry::free_abelian(2, {"x", "y"});
    Rational bound = amenable_lower_bound(z2, 2, 40);
    // |B(2)| = 13; the bound must sit within ten percent of it
    CHECK(rational_double(bound) >= 0.9 * 0.9 * 13 * 13);
    CHECK(bound <= Rational(13 * 13));
}

TEST_CASE("free group ratios stay below the linear-in-radius bound") {
    auto f2 = GroupCatalogEntry::free_group(2, {"a", "b"});
    RDParams p;
    p.r_max = 4;
    p.strategy = RDStrategy::RandomNonneg;
    p.samples = 10;
    p.seed = 31;
    RDCurve curve = rd_ratio_curve(f2, p);
    REQUIRE(curve.points.size() == 4);
    for (const RDPoint& pt : curve.points) {
        CHECK(pt.samples_used == 10);
        CHECK(pt.worst_ratio_sq <= Rational((pt.r + 1) * (pt.r + 1)));
    }
}

TEST_CASE("folner indicators in Z reproduce the exact interval overlap") {
    auto z = GroupCatalogEntry::free_abelian(1, {"x"});
    RDParams p;
    p.r_max = 2;
    p.strategy = RDStrategy::FolnerIndicator;
    p.samples = 1;
    RDCurve curve = rd_ratio_curve(z, p);
    REQUIRE(curve.points.size() == 2);
    // chi_{B(1)} * chi_{B(4)}: heights 3,3,3,3,3,3,3,2,1 on each side of zero
    CHECK(curve.points[0].worst_ratio_sq == make_rational(73, 27));
}

TEST_CASE("distorted cyclic subgroup drives the folner ratio up fast") {
    auto bs = GroupCatalogEntry::baumslag_solitar(2, {"x", "t"});
    auto zgrp = GroupCatalogEntry::free_abelian(1, {"a"});
    GroupElement x = bs.generator(0);
    SubgroupOracle h(bs, zgrp, {x}, OracleBackend::CyclicRoot);
    RDParams p;
    p.r_max = 5;
    p.strategy = RDStrategy::FolnerIndicator;
    p.samples = 1;
    p.restrict_to = &h;
    RDCurve curve = rd_ratio_curve(bs, p);
    REQUIRE(curve.points.size() == 5);
    for (size_t i = 1; i < curve.points.size(); ++i)
        CHECK(curve.points[i].worst_ratio_sq > curve.points[i - 1].worst_ratio_sq);
    CHECK(curve.points.back().worst_ratio_sq > 4 * curve.points.front().worst_ratio_sq);
}

TEST_CASE("curves are deterministic for a fixed seed") {
    auto f2 = GroupCatalogEntry::free_group(2, {"a", "b"});
    RDParams p;
    p.r_max = 3;
    p.samples = 5;
    p.seed = 77;
    RDCurve a = rd_ratio_curve(f2, p);
    RDCurve b = rd_ratio_curve(f2, p);
    REQUIRE(a.points.size() == b.points.size());
    for (size_t i = 0; i < a.points.size(); ++i)
        CHECK(a.points[i].worst_ratio_sq == b.points[i].worst_ratio_sq);
}

TEST_CASE("strategy names round-trip") {
    for (RDStrategy s : {RDStrategy::RandomNonneg, RDStrategy::FolnerIndicator,
                         RDStrategy::SphereIndicator})
        CHECK(rd_strategy_from_name(rd_strategy_name(s)) == s);
    CHECK_THROWS_AS(rd_strategy_from_name("bogus"), ConfigParse);
}
