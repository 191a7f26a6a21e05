#include "doctest.h"

#include <random>

#include "gog/normal_sets.hpp"

using namespace gog;

namespace {

// same two one-vertex graphs as in the calculus tests
struct HnnZ {
    std::unique_ptr<GraphOfGroups> g = std::make_unique<GraphOfGroups>();
    int v = 0;
    int e = 0;
    HnnZ() {
        v = g->add_vertex("v", GroupCatalogEntry::free_abelian(1, {"x"}));
        auto edge_grp = GroupCatalogEntry::free_abelian(1, {"a"});
        GroupElement x = g->vertex_group(v).generator(0);
        auto fwd = std::make_shared<SubgroupOracle>(g->vertex_group(v), edge_grp,
                                                    std::vector<GroupElement>{x},
                                                    OracleBackend::CyclicRoot);
        auto rev = std::make_shared<SubgroupOracle>(
            g->vertex_group(v), edge_grp,
            std::vector<GroupElement>{g->vertex_group(v).power_of(x, 2)},
            OracleBackend::CyclicRoot);
        e = g->add_edge_pair("e", v, v, fwd, rev);
    }
    GroupElement x(long long k) const {
        return g->vertex_group(v).power_of(g->vertex_group(v).generator(0), k);
    }
};

struct LooseF2 {
    std::unique_ptr<GraphOfGroups> g = std::make_unique<GraphOfGroups>();
    int v = 0;
    int e = 0;
    LooseF2() {
        v = g->add_vertex("v", GroupCatalogEntry::free_group(2, {"x1", "x2"}));
        auto edge_grp = GroupCatalogEntry::free_group(2, {"a1", "a2"});
        auto elem = [&](Word w) {
            GroupElement t = g->vertex_group(v).identity();
            t.word = word_reduce(w);
            return t;
        };
        auto fwd = std::make_shared<SubgroupOracle>(
            g->vertex_group(v), edge_grp,
            std::vector<GroupElement>{elem({1}), elem({2})}, OracleBackend::StallingsGraph);
        auto rev = std::make_shared<SubgroupOracle>(
            g->vertex_group(v), edge_grp,
            std::vector<GroupElement>{elem({1}), elem({2, 1, 1})},
            OracleBackend::StallingsGraph);
        e = g->add_edge_pair("e", v, v, fwd, rev);
    }
};

FreeProductElement random_fp(const GraphOfGroups& g, std::mt19937_64& rng) {
    FreeProductElement out;
    int n = (int)(rng() % 6);
    for (int i = 0; i < n; ++i) {
        if (rng() % 2) {
            long long p = (long long)(rng() % 5) - 2;
            fp_push(g, out, {true, 0, g.vertex_group(0).identity(), p});
        } else {
            const GroupCatalogEntry& gv = g.vertex_group(0);
            GroupElement x = gv.identity();
            auto moves = gv.symmetric_generators();
            for (int j = (int)(rng() % 3); j > 0; --j)
                x = gv.multiply(x, moves[rng() % moves.size()]);
            fp_push(g, out, {false, 0, x, 0});
        }
    }
    return out;
}

bool alternating(const FreeProductElement& a) {
    for (size_t i = 0; i < a.syllables.size(); ++i) {
        const auto& s = a.syllables[i];
        if (!s.is_edge && s.g.is_identity()) return false;
        if (s.is_edge && s.pow == 0) return false;
        if (i > 0 && a.syllables[i - 1].is_edge == s.is_edge &&
            a.syllables[i - 1].id == s.id)
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("free product syllables stay alternating under multiplication") {
    LooseF2 G;
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10000; ++trial) {
        FreeProductElement a = random_fp(*G.g, rng);
        FreeProductElement b = random_fp(*G.g, rng);
        FreeProductElement p = fp_mul(*G.g, a, b);
        CHECK(alternating(p));
        CHECK(fp_mul(*G.g, p, fp_inv(*G.g, p)).is_identity());
    }
}

TEST_CASE("sequence lift multiplies syllable lengths correctly") {
    HnnZ H;
    GSequence s = H.g->trivial_sequence(H.v);
    s.g0 = H.x(3);
    s.steps.push_back({H.e, H.x(0)});
    s.steps.push_back({H.e, H.x(-2)});
    FreeProductElement fp = fp_of_sequence(*H.g, s);
    // x^3, then e twice (merged), then x^-2
    REQUIRE(fp.syllables.size() == 3);
    CHECK(fp.syllables[0].g == H.x(3));
    CHECK(fp.syllables[1].is_edge);
    CHECK(fp.syllables[1].pow == 2);
    CHECK(fp_length(*H.g, fp) == 3 + 2 + 2);
}

TEST_CASE("normal sets pick geodesic representatives") {
    HnnZ H;
    NormalSets ns(*H.g, H.v, 3);
    // the class of x^2 has standard length 2: the plain vertex word beats
    // the crossing representative of Gamma-length 3
    GSequence sq = H.g->trivial_sequence(H.v);
    sq.g0 = H.x(2);
    const auto* entry = ns.find(ns.key_of(sq));
    REQUIRE(entry);
    CHECK(entry->standard_length == 2);
    CHECK(H.g->gamma_length(entry->geodesic) == 2);
    // identity maps to the empty word in both sets
    const auto* id = ns.find(ns.key_of(H.g->trivial_sequence(H.v)));
    REQUIRE(id);
    CHECK(id->standard_length == 0);
    CHECK(id->hat.is_identity());
}

TEST_CASE("normal set lifts are injective and count the ball") {
    HnnZ H;
    NormalSets ns(*H.g, H.v, 4);
    std::map<std::string, int> hat_keys;
    long long in_ball = 0;
    for (const auto& [key, e] : ns.entries()) {
        ++hat_keys[fp_key(e.hat)];
        if (e.standard_length <= 4) ++in_ball;
    }
    CHECK(in_ball == (long long)ns.entries().size());
    for (const auto& [k, count] : hat_keys) CHECK(count == 1);
}

TEST_CASE("hat lift preserves the l2 norm exactly") {
    HnnZ H;
    NormalSets ns(*H.g, H.v, 3);
    // indicator of the ball
    for (int r = 0; r <= 3; ++r) {
        Pi1Fn f = ns.ball_indicator(r);
        FreeProductFn lifted = hat_lift(ns, f);
        CHECK(lifted.l2_norm_sq() == f.l2_norm_sq());
        CHECK(lifted.support_size() == f.support_size());
    }
    // a single atom has norm one
    Pi1Fn d;
    GSequence sq = H.g->trivial_sequence(H.v);
    sq.g0 = H.x(1);
    d.set(ns.key_of(sq), 1);
    CHECK(hat_lift(ns, d).l2_norm_sq() == 1);
    // random rational values
    std::mt19937_64 rng(5);
    Pi1Fn f;
    for (const auto& [key, e] : ns.entries())
        if (rng() % 2) f.set(key, make_rational((long)(rng() % 7 + 1), (long)(rng() % 5 + 1)));
    CHECK(hat_lift(ns, f).l2_norm_sq() == f.l2_norm_sq());
}

TEST_CASE("hat lift rejects support outside the built ball") {
    HnnZ H;
    NormalSets ns(*H.g, H.v, 2);
    Pi1Fn f;
    GSequence far = H.g->trivial_sequence(H.v);
    far.g0 = H.x(40);
    f.set(ns.key_of(far), 1);
    CHECK_THROWS_AS(hat_lift(ns, f), SupportOutsideDomain);
}

TEST_CASE("lifted pair norms agree exactly on random rational inputs") {
    HnnZ H;
    LooseF2 G;
    std::mt19937_64 rng(9);
    auto run = [&](NormalSets& ns) {
        Pi1Fn ball2 = ns.ball_indicator(2);
        for (int trial = 0; trial < 10; ++trial) {
            Pi1Fn f, g;
            for (const auto& [key, v] : ball2.values()) {
                if (rng() % 3 == 0)
                    f.set(key, make_rational((long)(rng() % 9 + 1), (long)(rng() % 4 + 1)));
                if (rng() % 3 == 0)
                    g.set(key, make_rational((long)(rng() % 9 + 1), (long)(rng() % 4 + 1)));
            }
            if (f.empty() || g.empty()) continue;
            LiftedPairCheck chk = lifted_pair_check(ns, f, g);
            CHECK(chk.exact());
            CHECK(chk.conv_l2sq_direct == chk.conv_l2sq_lifted);
            CHECK(chk.f_l2sq == chk.f_lift_l2sq);
        }
    };
    NormalSets nsH(*H.g, H.v, 6);
    run(nsH);
    NormalSets nsG(*G.g, G.v, 4);
    run(nsG);
}

TEST_CASE("lifted pair check is trivial for a point mass") {
    HnnZ H;
    NormalSets ns(*H.g, H.v, 4);
    Pi1Fn f;
    f.set(ns.key_of(H.g->trivial_sequence(H.v)), 1);
    Pi1Fn g = ns.ball_indicator(2);
    LiftedPairCheck chk = lifted_pair_check(ns, f, g);
    CHECK(chk.exact());
    CHECK(chk.conv_l2sq_direct == g.l2_norm_sq());
}

TEST_CASE("lift length curve is nondecreasing in the standard length") {
    HnnZ H;
    NormalSets ns(*H.g, H.v, 5);
    std::map<long long, long long> worst; // standard length -> max lift length
    for (const auto& [key, e] : ns.entries()) {
        long long l = fp_length(*H.g, e.hat);
        auto [it, inserted] = worst.emplace(e.standard_length, l);
        if (!inserted && l > it->second) it->second = l;
    }
    long long prev = -1;
    for (const auto& [r, l] : worst) {
        CHECK(l >= prev);
        prev = std::max(prev, l);
    }
}
