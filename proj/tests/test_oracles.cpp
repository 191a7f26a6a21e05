#include "doctest.h"

#include "gog/oracle.hpp"

using namespace gog;

namespace {

GroupElement free_elem(const GroupCatalogEntry& g, Word w) {
    GroupElement e = g.identity();
    e.word = word_reduce(w);
    return e;
}

GroupElement vec_elem(const GroupCatalogEntry& g, Vec v, long long power = 0) {
    GroupElement e = g.identity();
    e.vec = std::move(v);
    e.power = power;
    return e;
}

/// Round-trip check: every claimed member maps back to itself through
/// preimage followed by iota.
void check_roundtrip(const SubgroupOracle& o, const GroupElement& g) {
    GroupElement h = o.preimage(g);
    CHECK(o.iota(h) == g);
}

} // namespace

TEST_CASE("stallings membership for cyclic and index-two subgroups") {
    auto F2 = GroupCatalogEntry::free_group(2, {"a", "b"});
    SubgroupOracle cyc(F2, GroupCatalogEntry::free_group(1, {"h"}),
                       {free_elem(F2, {1})}, OracleBackend::StallingsGraph);
    CHECK(cyc.contains(free_elem(F2, {1, 1, 1})));
    CHECK_FALSE(cyc.contains(free_elem(F2, {2})));

    SubgroupOracle sq(F2, GroupCatalogEntry::free_group(2, {"h1", "h2"}),
                      {free_elem(F2, {1, 1}), free_elem(F2, {2})},
                      OracleBackend::StallingsGraph);
    CHECK_FALSE(sq.contains(free_elem(F2, {1})));
    CHECK(sq.contains(free_elem(F2, {1, 1})));
    CHECK(sq.contains(free_elem(F2, {1, 1, 2})));
    check_roundtrip(sq, free_elem(F2, {1, 1, 2}));
}

TEST_CASE("stallings agrees with bounded product enumeration") {
    auto F2 = GroupCatalogEntry::free_group(2, {"a", "b"});
    auto edge = GroupCatalogEntry::free_group(2, {"h1", "h2"});
    std::vector<GroupElement> gens = {free_elem(F2, {1, 1}), free_elem(F2, {1, 2})};
    SubgroupOracle fast(F2, edge, gens, OracleBackend::StallingsGraph);
    SubgroupOracle brute(F2, edge, gens, OracleBackend::BoundedSearch, 8);
    BallEnumerator ball(F2);
    for (const GroupElement& g : ball.ball(5)) {
        auto b = brute.contains_checked(g);
        if (b && *b) {
            CHECK(fast.contains(g));
            check_roundtrip(fast, g);
        }
        if (fast.contains(g)) check_roundtrip(fast, g);
    }
}

TEST_CASE("integer lattice membership and preimage") {
    auto Z2 = GroupCatalogEntry::free_abelian(2);
    SubgroupOracle diag(Z2, GroupCatalogEntry::free_abelian(2, {"h1", "h2"}),
                        {vec_elem(Z2, {2, 0}), vec_elem(Z2, {0, 3})},
                        OracleBackend::IntegerLattice);
    CHECK(diag.contains(vec_elem(Z2, {4, 3})));
    CHECK_FALSE(diag.contains(vec_elem(Z2, {1, 0})));
    check_roundtrip(diag, vec_elem(Z2, {4, 3}));

    SubgroupOracle skew(Z2, GroupCatalogEntry::free_abelian(2, {"h1", "h2"}),
                        {vec_elem(Z2, {2, 1}), vec_elem(Z2, {0, 5})},
                        OracleBackend::IntegerLattice);
    GroupElement h = skew.preimage(vec_elem(Z2, {2, 6}));
    CHECK(h.vec == Vec{1, 1});
    check_roundtrip(skew, vec_elem(Z2, {2, 6}));
}

TEST_CASE("fiber projection in a semidirect product") {
    auto G = GroupCatalogEntry::semidirect_z2_z(Mat2{2, 1, 1, 1});
    SubgroupOracle fiber(G, GroupCatalogEntry::free_abelian(2, {"h1", "h2"}),
                         {vec_elem(G, {1, 0}), vec_elem(G, {0, 1})},
                         OracleBackend::FiberProjection);
    CHECK(fiber.contains(vec_elem(G, {5, -1})));
    CHECK_FALSE(fiber.contains(vec_elem(G, {0, 0}, 1)));
    check_roundtrip(fiber, vec_elem(G, {5, -1}));
    // canonical coset labels: same Z-part means same coset for the full fiber
    auto r1 = fiber.coset_rep(vec_elem(G, {3, 7}, 2));
    auto r2 = fiber.coset_rep(vec_elem(G, {-1, 4}, 2));
    auto r3 = fiber.coset_rep(vec_elem(G, {0, 0}, 3));
    REQUIRE(r1);
    CHECK(*r1 == *r2);
    CHECK(*r1 != *r3);
}

TEST_CASE("cyclic root inside the infinite cyclic group") {
    auto Z = GroupCatalogEntry::free_abelian(1, {"x"});
    SubgroupOracle even(Z, GroupCatalogEntry::free_abelian(1, {"a"}),
                        {vec_elem(Z, {2})}, OracleBackend::CyclicRoot);
    CHECK(even.contains(vec_elem(Z, {4})));
    CHECK_FALSE(even.contains(vec_elem(Z, {3})));
    GroupElement h = even.preimage(vec_elem(Z, {6}));
    CHECK(h.vec == Vec{3});
    // canonical coset labels split Z into even/odd
    CHECK(*even.coset_rep(vec_elem(Z, {5})) == *even.coset_rep(vec_elem(Z, {-3})));
    CHECK(*even.coset_rep(vec_elem(Z, {5})) != *even.coset_rep(vec_elem(Z, {4})));
}

TEST_CASE("cyclic root in BS(1,2) via affine normal forms") {
    auto BS = GroupCatalogEntry::baumslag_solitar(2);
    SubgroupOracle x_sub(BS, GroupCatalogEntry::free_abelian(1, {"a"}),
                         {BS.generator(0)}, OracleBackend::CyclicRoot);
    GroupElement t = BS.generator(1);
    GroupElement x = BS.generator(0);
    CHECK(x_sub.contains(BS.power_of(x, 16)));
    CHECK(x_sub.preimage(BS.power_of(x, -7)).vec == Vec{-7});
    // t^-1 x t = "half of x" is not an integer power of x
    GroupElement half = BS.multiply(BS.multiply(BS.invert(t), x), t);
    CHECK_FALSE(x_sub.contains(half));
    CHECK_FALSE(x_sub.contains(t));
    // conjugation landing back inside: t x t^-1 = x^2
    CHECK(x_sub.preimage(BS.multiply(BS.multiply(t, x), BS.invert(t))).vec == Vec{2});
}

TEST_CASE("cyclic root in a free group handles conjugated powers") {
    auto F2 = GroupCatalogEntry::free_group(2, {"a", "b"});
    GroupElement z = free_elem(F2, {1, 2, 2, -1}); // a b^2 a^-1
    SubgroupOracle o(F2, GroupCatalogEntry::free_group(1, {"c"}), {z},
                     OracleBackend::CyclicRoot);
    CHECK(o.contains(F2.power_of(z, 5)));
    CHECK(o.preimage(F2.power_of(z, -3)).word == word_pow(Word{1}, -3));
    CHECK_FALSE(o.contains(free_elem(F2, {1, 2, -1})));
    CHECK_FALSE(o.contains(free_elem(F2, {2, 2})));
}

TEST_CASE("factor projection picks out a free factor") {
    auto Z2 = GroupCatalogEntry::free_abelian(2);
    SubgroupOracle axis(Z2, GroupCatalogEntry::free_abelian(1, {"a"}),
                        {vec_elem(Z2, {1, 0})}, OracleBackend::FactorProjection);
    CHECK(axis.contains(vec_elem(Z2, {9, 0})));
    CHECK_FALSE(axis.contains(vec_elem(Z2, {1, 1})));
    CHECK(axis.preimage(vec_elem(Z2, {9, 0})).vec == Vec{9});

    auto F2 = GroupCatalogEntry::free_group(2, {"a", "b"});
    SubgroupOracle afac(F2, GroupCatalogEntry::free_group(1, {"h"}),
                        {free_elem(F2, {1})}, OracleBackend::FactorProjection);
    CHECK(afac.contains(free_elem(F2, {1, 1, 1})));
    CHECK_FALSE(afac.contains(free_elem(F2, {1, 2})));
    // coset label strips the trailing factor part
    CHECK(*afac.coset_rep(free_elem(F2, {2, 1, 1})) == *afac.coset_rep(free_elem(F2, {2, -1})));
    CHECK(*afac.coset_rep(free_elem(F2, {2})) != *afac.coset_rep(free_elem(F2, {1, 2})));
}

TEST_CASE("bounded search answers inside its horizon and defers beyond") {
    auto F2 = GroupCatalogEntry::free_group(2, {"a", "b"});
    SubgroupOracle o(F2, GroupCatalogEntry::free_group(1, {"h"}),
                     {free_elem(F2, {1, 1})}, OracleBackend::BoundedSearch, 4);
    CHECK(o.contains(free_elem(F2, word_pow(Word{1}, 8))));
    CHECK(o.contains_checked(free_elem(F2, word_pow(Word{1}, 10))) == std::nullopt);
    CHECK_THROWS_AS(o.contains(free_elem(F2, word_pow(Word{1}, 10))), OracleUnknown);
}

TEST_CASE("preimage followed by iota is the identity on small edge balls") {
    auto F2 = GroupCatalogEntry::free_group(2, {"a", "b"});
    auto edge = GroupCatalogEntry::free_group(2, {"h1", "h2"});
    SubgroupOracle o(F2, edge, {free_elem(F2, {1, 1}), free_elem(F2, {2})},
                     OracleBackend::StallingsGraph);
    BallEnumerator edge_ball(edge);
    for (const GroupElement& h : edge_ball.ball(5)) {
        GroupElement g = o.iota(h);
        CHECK(o.contains(g));
        CHECK(o.iota(o.preimage(g)) == g);
    }
}

TEST_CASE("stallings coset labels are exact coset invariants") {
    auto F2 = GroupCatalogEntry::free_group(2, {"a", "b"});
    SubgroupOracle o(F2, GroupCatalogEntry::free_group(2, {"h1", "h2"}),
                     {free_elem(F2, {1, 1}), free_elem(F2, {1, 2})},
                     OracleBackend::StallingsGraph);
    BallEnumerator ball(F2);
    auto elems = ball.ball(4);
    for (size_t i = 0; i < elems.size(); i += 3) {
        for (size_t j = 0; j < elems.size(); j += 5) {
            bool same = o.contains(F2.multiply(F2.invert(elems[i]), elems[j]));
            CHECK((*o.coset_rep(elems[i]) == *o.coset_rep(elems[j])) == same);
        }
    }
    // the representative itself lies in the coset
    for (size_t i = 0; i < elems.size(); i += 7) {
        GroupElement r = *o.coset_rep(elems[i]);
        CHECK(o.contains(F2.multiply(F2.invert(r), elems[i])));
    }
}

TEST_CASE("nearest_in_coset finds true minima") {
    auto Z2 = GroupCatalogEntry::free_abelian(2);
    SubgroupOracle lat(Z2, GroupCatalogEntry::free_abelian(2, {"h1", "h2"}),
                       {vec_elem(Z2, {2, 0}), vec_elem(Z2, {0, 2})},
                       OracleBackend::IntegerLattice);
    GroupElement target = vec_elem(Z2, {1, 0});
    // target in the coset itself
    auto self_hit = lat.nearest_in_coset(vec_elem(Z2, {4, 2}), Z2.identity(), 3);
    REQUIRE(self_hit);
    CHECK(self_hit->first == vec_elem(Z2, {4, 2}));
    CHECK(self_hit->second == 0);
    // adjacent lattice point at distance one
    auto near = lat.nearest_in_coset(target, Z2.identity(), 3);
    REQUIRE(near);
    CHECK(near->second == 1);
    CHECK(lat.contains(near->first));
    CHECK(Z2.closed_form_length(Z2.multiply(Z2.invert(target), near->first)) == 1);

    auto Sol = GroupCatalogEntry::semidirect_z2_z(Mat2{2, 1, 1, 1});
    SubgroupOracle fiber(Sol, GroupCatalogEntry::free_abelian(2, {"h1", "h2"}),
                         {vec_elem(Sol, {1, 0}), vec_elem(Sol, {0, 1})},
                         OracleBackend::FiberProjection);
    auto hit = fiber.nearest_in_coset(vec_elem(Sol, {3, 2}, 1), Sol.identity(), 3);
    REQUIRE(hit);
    CHECK(hit->second == 1);
    CHECK(hit->first == vec_elem(Sol, {3, 2}, 0));
}

TEST_CASE("nearest distance is minimal within the searched radius") {
    auto Z2 = GroupCatalogEntry::free_abelian(2);
    SubgroupOracle lat(Z2, GroupCatalogEntry::free_abelian(2, {"h1", "h2"}),
                       {vec_elem(Z2, {3, 1}), vec_elem(Z2, {0, 4})},
                       OracleBackend::IntegerLattice);
    BallEnumerator ball(Z2);
    GroupElement target = vec_elem(Z2, {2, 2});
    auto hit = lat.nearest_in_coset(target, Z2.identity(), 6);
    REQUIRE(hit);
    for (const GroupElement& u : ball.ball((int)hit->second - 1)) {
        GroupElement m = Z2.multiply(target, u);
        CHECK_FALSE(lat.contains(m));
    }
}
