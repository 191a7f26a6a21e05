#pragma once

#include <cmath>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "gog/growth.hpp"
#include "gog/length_table.hpp"
#include "gog/oracle.hpp"
#include "gog/supported_function.hpp"

namespace gog {

/// Finitely supported rational function on a catalog group.
using GroupFn = FnOn<GroupElement>;

/// Every support element must belong to the group the operation runs in.
inline void require_context(const GroupCatalogEntry& group, const GroupFn& f) {
    for (const auto& [x, v] : f.values())
        if (x.kind != group.kind) throw ContextMismatch();
}

/// Exact convolution over a catalog group.
inline GroupFn group_convolve(const GroupCatalogEntry& group, const GroupFn& f,
                              const GroupFn& g) {
    require_context(group, f);
    require_context(group, g);
    return convolve_with(f, g, [&](const GroupElement& a, const GroupElement& b) {
        return group.multiply(a, b);
    });
}

/// Squared convolution ratio ||f * g||_2^2 / (||f||_2^2 ||g||_2^2). Square
/// roots are deferred; all curve values are exact rationals.
inline Rational rd_ratio_sq(const GroupCatalogEntry& group, const GroupFn& f,
                            const GroupFn& g) {
    if (f.empty() || g.empty()) throw Error("convolution ratio needs nonzero functions");
    GroupFn conv = group_convolve(group, f, g);
    return conv.l2_norm_sq() / (f.l2_norm_sq() * g.l2_norm_sq());
}

enum class RDStrategy { RandomNonneg, FolnerIndicator, SphereIndicator };

inline const char* rd_strategy_name(RDStrategy s) {
    switch (s) {
        case RDStrategy::RandomNonneg: return "random-nonneg";
        case RDStrategy::FolnerIndicator: return "folner-indicator";
        case RDStrategy::SphereIndicator: return "sphere-indicator";
    }
    return "?";
}

inline RDStrategy rd_strategy_from_name(const std::string& name) {
    if (name == "random-nonneg") return RDStrategy::RandomNonneg;
    if (name == "folner-indicator") return RDStrategy::FolnerIndicator;
    if (name == "sphere-indicator") return RDStrategy::SphereIndicator;
    throw ConfigParse("unknown convolution strategy: " + name);
}

struct RDPoint {
    int r = 0;
    Rational worst_ratio_sq = 0;
    int samples_used = 0;
};

struct RDCurve {
    RDStrategy strategy = RDStrategy::RandomNonneg;
    std::vector<RDPoint> points;
    GrowthClassification growth; // of the square-rooted worst ratios
};

struct RDParams {
    int r_max = 4;
    RDStrategy strategy = RDStrategy::RandomNonneg;
    int samples = 20;
    unsigned long long seed = 1;
    int folner_factor = 4;
    /// When set, all supports are intersected with this subgroup, and the
    /// folner-indicator blow-up happens in the subgroup's own metric.
    const SubgroupOracle* restrict_to = nullptr;
    long long element_budget = kDefaultElementBudget;
};

/// Lower-bound curve for the best constant in ||f * g||_2 <= C(r) ||f||_2
/// ||g||_2 over functions supported in the radius-r ball. Each point is the
/// worst squared ratio seen over the sampled pairs, so a point never
/// overstates the true constant.
inline RDCurve rd_ratio_curve(const GroupCatalogEntry& group, const RDParams& p) {
    RDCurve out;
    out.strategy = p.strategy;
    BallEnumerator ball(group, p.element_budget);
    std::mt19937_64 rng(p.seed);
    auto rand_value = [&] {
        return make_rational((long)(rng() % 8 + 1), (long)(rng() % 4 + 1));
    };
    std::unique_ptr<LengthTable> edge_lengths;
    if (p.restrict_to)
        edge_lengths = std::make_unique<LengthTable>(p.restrict_to->edge_group());

    for (int r = 1; r <= p.r_max; ++r) {
        std::vector<GroupElement> f_support;
        long long edge_reach = 1;
        for (const GroupElement& x : ball.ball(r)) {
            if (p.restrict_to) {
                if (!p.restrict_to->contains(x)) continue;
                edge_reach = std::max(
                    edge_reach, edge_lengths->length_checked(p.restrict_to->preimage(x)));
            }
            f_support.push_back(x);
        }
        if (f_support.empty()) continue;

        GroupFn g_fixed;
        if (p.strategy == RDStrategy::FolnerIndicator) {
            if (p.restrict_to) {
                BallEnumerator edge_ball(p.restrict_to->edge_group(), p.element_budget);
                for (const GroupElement& h :
                     edge_ball.ball((int)(p.folner_factor * edge_reach)))
                    g_fixed.set(p.restrict_to->iota(h), 1);
            } else {
                for (const GroupElement& x : ball.ball(p.folner_factor * r))
                    g_fixed.set(x, 1);
            }
        } else if (p.strategy == RDStrategy::SphereIndicator) {
            for (const GroupElement& x : ball.sphere(r)) {
                if (p.restrict_to && !p.restrict_to->contains(x)) continue;
                g_fixed.set(x, 1);
            }
        }

        RDPoint pt{r, Rational(0), 0};
        int rounds = std::max(1, p.samples);
        for (int s = 0; s < rounds; ++s) {
            GroupFn f;
            for (const GroupElement& x : f_support)
                f.set(x, s == 0 ? Rational(1) : rand_value());
            GroupFn g;
            if (p.strategy == RDStrategy::RandomNonneg) {
                for (const GroupElement& x : f_support)
                    g.set(x, s == 0 ? Rational(1) : rand_value());
            } else {
                g = g_fixed;
            }
            if (g.empty()) continue;
            Rational ratio = rd_ratio_sq(group, f, g);
            if (ratio > pt.worst_ratio_sq) pt.worst_ratio_sq = ratio;
            ++pt.samples_used;
        }
        if (pt.samples_used > 0) out.points.push_back(pt);
    }

    std::vector<std::pair<double, double>> curve;
    for (const RDPoint& pt : out.points)
        curve.push_back({(double)pt.r, std::sqrt(rational_double(pt.worst_ratio_sq))});
    if (curve.size() >= 5) out.growth = classify_growth(curve);
    return out;
}

/// For an amenable group: squared ratio ||chi_{B(r)} * chi_{B(R)}||_2^2 /
/// ||chi_{B(R)}||_2^2. As R grows this approaches |B(r)|^2, witnessing that
/// indicator pairs saturate the convolution norm up to the ball size.
inline Rational amenable_lower_bound(const GroupCatalogEntry& group, int r, int R,
                                     long long element_budget = kDefaultElementBudget) {
    BallEnumerator ball(group, element_budget);
    GroupFn small, big;
    for (const GroupElement& x : ball.ball(R)) big.set(x, 1);
    for (const GroupElement& x : ball.ball(r)) small.set(x, 1);
    GroupFn conv = group_convolve(group, small, big);
    return conv.l2_norm_sq() / big.l2_norm_sq();
}

} // namespace gog
