#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gog/graph.hpp"
#include "gog/growth.hpp"
#include "gog/length_table.hpp"
#include "gog/oracle.hpp"
#include "gog/rational.hpp"

namespace gog {

// ---- ambient-ball distortion curves ---------------------------------------

struct DistoPoint {
    long long n = 0;
    long long intersection_size = 0; // |H intersect B_G(n)|
    long long max_len = 0;           // max subgroup length over the intersection
    long long diam = 0;              // diameter of the intersection in H's metric
    Rational disto = 0;              // diam / n
    GroupElement witness_a, witness_b; // subgroup elements realizing the diameter
};

struct DistortionCurve {
    std::vector<DistoPoint> points;
    GrowthClassification classification; // of the disto values
    bool truncated = false;              // ambient ball hit its element budget
};

namespace detail {

inline GrowthClassification classify_disto(const std::vector<DistoPoint>& pts) {
    std::vector<std::pair<double, double>> samples;
    for (const DistoPoint& p : pts)
        samples.push_back({(double)p.n, rational_double(p.disto)});
    if (samples.size() < 5) return GrowthClassification{};
    return classify_growth(samples);
}

} // namespace detail

/// Exact distortion curve of a subgroup inside a catalog group: intersect
/// every ambient ball with the subgroup, then measure the intersection's
/// diameter in the subgroup's own word metric. Pairwise distances are exact;
/// the witness pair reproduces the reported diameter by construction.
inline DistortionCurve disto_curve(const GroupCatalogEntry& ambient,
                                   const SubgroupOracle& sub, int n_max,
                                   long long element_budget = kDefaultElementBudget,
                                   int length_cutoff = 256) {
    DistortionCurve out;
    BallEnumerator ball(ambient, element_budget);
    LengthTable sub_lengths(sub.edge_group());
    std::vector<GroupElement> members; // preimages, i.e. subgroup-side elements
    const GroupCatalogEntry& hgrp = sub.edge_group();

    for (int n = 1; n <= n_max; ++n) {
        try {
            ball.extend_to(n);
        } catch (const BudgetExceeded&) {
            out.truncated = true;
            break;
        }
        for (const GroupElement& g : ball.sphere(n))
            if (sub.contains(g)) members.push_back(sub.preimage(g));

        DistoPoint p;
        p.n = n;
        p.intersection_size = (long long)members.size();
        p.witness_a = hgrp.identity();
        p.witness_b = hgrp.identity();
        for (const GroupElement& h : members)
            p.max_len = std::max(p.max_len, sub_lengths.length_checked(h, length_cutoff));
        for (size_t i = 0; i < members.size(); ++i)
            for (size_t j = i + 1; j < members.size(); ++j) {
                long long d = sub_lengths.length_checked(
                    hgrp.multiply(hgrp.invert(members[i]), members[j]), length_cutoff);
                if (d > p.diam) {
                    p.diam = d;
                    p.witness_a = members[i];
                    p.witness_b = members[j];
                }
            }
        p.disto = make_rational(p.diam, n);
        out.points.push_back(p);
    }
    out.classification = detail::classify_disto(out.points);
    return out;
}

// ---- witness-based distortion curves --------------------------------------

struct WitnessPoint {
    long long n = 0;
    long long ambient_bound = 0;   // word length of the conjugating expression
    long long subgroup_length = 0; // exact length of the preimage in H's metric
    GroupElement witness;          // the ambient element t^n h0 t^-n
};

struct WitnessCurve {
    std::vector<WitnessPoint> points;
    GrowthClassification classification; // of the subgroup lengths
};

/// Distortion lower bounds from the conjugate family t^n h0 t^-n: each point
/// shows a subgroup element of ambient length at most 2n + L(h0) whose
/// intrinsic length is measured exactly. Underestimating the ambient length
/// only weakens the bound, so the curve never overstates distortion.
inline WitnessCurve witness_disto_curve(const GroupCatalogEntry& ambient,
                                        const SubgroupOracle& sub, const GroupElement& t,
                                        const GroupElement& h0, int n_max,
                                        int length_cutoff = 4096) {
    WitnessCurve out;
    LengthTable sub_lengths(sub.edge_group());
    for (int n = 1; n <= n_max; ++n) {
        GroupElement w = ambient.multiply(
            ambient.power_of(t, n), ambient.multiply(h0, ambient.power_of(t, -n)));
        if (!sub.contains(w)) throw NotInSubgroup("witness leaves the subgroup");
        WitnessPoint p;
        p.n = n;
        p.ambient_bound = 2LL * n + 1;
        p.subgroup_length = sub_lengths.length_checked(sub.preimage(w), length_cutoff);
        p.witness = w;
        out.points.push_back(p);
    }
    std::vector<std::pair<double, double>> samples;
    for (const WitnessPoint& p : out.points)
        samples.push_back({(double)p.n, (double)p.subgroup_length});
    if (samples.size() >= 5) out.classification = classify_growth(samples);
    return out;
}

// ---- seemingly-polynomial distortion over edge paths ----------------------

struct SeemPoint {
    int n = 0;                 // edge length of the path
    Rational worst_ratio = 0;  // max of L(a) / (2n + L(h)) over samples
    long long samples = 0;
    std::string witness_path;  // edge names of the worst path
};

struct SeemReport {
    std::vector<SeemPoint> points; // index 0 is the trivial path with ratio 1
    long long total_samples = 0;
    bool no_samples = false;
};

/// For every reduced edge path p of length n and edge-group element u at its
/// start, the vertex elements a = iota_rev(u) and h = c_p(a) satisfy
/// a = [p h p^-1]; the ratio of L(a) to the Gamma-length 2n + L(h) of the
/// conjugated sequence measures how much crossing the path contracts.
inline SeemReport seemingly_distortion_scan(const GraphOfGroups& graph, int path_len_max,
                                            int edge_ball_radius = 4,
                                            int length_cutoff = 256) {
    SeemReport out;
    std::map<int, SeemPoint> per_len;
    per_len[0] = SeemPoint{0, Rational(1), 1, ""};

    struct Frame {
        std::vector<int> path;
        int at;
    };
    std::vector<Frame> stack;
    for (int e = 0; e < graph.edge_count(); ++e)
        stack.push_back({{e}, graph.edge(e).to});

    while (!stack.empty()) {
        Frame fr = std::move(stack.back());
        stack.pop_back();
        int n = (int)fr.path.size();
        int first = fr.path.front();
        const SubgroupOracle& rev = graph.embedding(graph.reverse(first));
        BallEnumerator edge_ball(rev.edge_group());
        SeemPoint& pt = per_len.try_emplace(n, SeemPoint{n, Rational(0), 0, ""}).first->second;
        for (const GroupElement& u : edge_ball.ball(edge_ball_radius)) {
            GroupElement a = rev.iota(u);
            if (a.is_identity()) continue;
            CrossingResult cr = graph.crossing_path(fr.path, a);
            if (!cr.value) continue;
            long long la = graph.vertex_lengths(graph.edge(first).from)
                               .length_checked(a, length_cutoff);
            long long lh = graph.vertex_lengths(fr.at).length_checked(*cr.value,
                                                                      length_cutoff);
            Rational ratio = make_rational(la, 2LL * n + lh);
            ++pt.samples;
            ++out.total_samples;
            if (ratio > pt.worst_ratio) {
                pt.worst_ratio = ratio;
                std::string names;
                for (int e : fr.path)
                    names += (names.empty() ? "" : " ") + graph.edge(e).name;
                pt.witness_path = names;
            }
        }
        if (n < path_len_max)
            for (int e = 0; e < graph.edge_count(); ++e)
                if (graph.edge(e).from == fr.at && e != graph.reverse(fr.path.back()))
                    stack.push_back({[&] {
                                         auto p = fr.path;
                                         p.push_back(e);
                                         return p;
                                     }(),
                                     graph.edge(e).to});
    }
    for (auto& [n, pt] : per_len) out.points.push_back(pt);
    out.no_samples = out.total_samples == 0;
    return out;
}

// ---- tight dynamics --------------------------------------------------------

struct TightReport {
    long long considered = 0;     // sampled (a, b) pairs meeting the precondition
    long long auto_satisfied = 0; // pairs with a nonpositive length gap
    long long unknown = 0;        // nearest-point search exhausted its radius
    long long violations = 0;     // positive gap with zero displacement sum
    long long k_emp = 0;          // largest L(b^-1 a) seen among auto-satisfied pairs
    double c_emp = 0;             // max gap / displacement-sum over binding pairs
};

/// Empirical scan of the two-edge contraction inequality: for elements a, b
/// in the reverse image of edge e at its tail, crossing e and projecting to
/// the reverse image of the follow-up edge f must pay back any shortening.
/// Only pairs where the crossing cannot continue through f (maximality at a
/// or b) are counted.
inline TightReport tight_dynamics_scan(const GraphOfGroups& graph, int e, int f,
                                       int edge_ball_radius, int nearest_radius,
                                       int length_cutoff = 256) {
    if (graph.edge(e).to != graph.edge(f).from)
        throw Error("tight-dynamics edges must be consecutive");
    TightReport out;
    int w = graph.edge(e).to;
    const GroupCatalogEntry& gw = graph.vertex_group(w);
    LengthTable& lw = graph.vertex_lengths(w);
    const GroupCatalogEntry& gv = graph.vertex_group(graph.edge(e).from);
    LengthTable& lv = graph.vertex_lengths(graph.edge(e).from);
    const SubgroupOracle& rev_e = graph.embedding(graph.reverse(e));
    const SubgroupOracle& rev_f = graph.embedding(graph.reverse(f));

    BallEnumerator edge_ball(rev_e.edge_group());
    std::vector<GroupElement> pool;
    for (const GroupElement& u : edge_ball.ball(edge_ball_radius))
        pool.push_back(rev_e.iota(u));

    for (size_t i = 0; i < pool.size(); ++i)
        for (size_t j = 0; j < pool.size(); ++j) {
            if (i == j) continue;
            const GroupElement& a = pool[i];
            const GroupElement& b = pool[j];
            bool max_a = graph.maximal_at({e}, f, a);
            bool max_b = graph.maximal_at({e}, f, b);
            if (!max_a && !max_b) continue;
            auto ca = graph.crossing_path({e}, a).value;
            auto cb = graph.crossing_path({e}, b).value;
            if (!ca || !cb) continue;
            auto na = rev_f.nearest_in_coset(*ca, gw.identity(), nearest_radius);
            auto nb = rev_f.nearest_in_coset(*cb, gw.identity(), nearest_radius);
            if (!na || !nb) {
                ++out.unknown;
                continue;
            }
            ++out.considered;
            long long lhs = na->second + nb->second; // displacement sum
            long long lab = lv.length_checked(gv.multiply(gv.invert(b), a), length_cutoff);
            long long lproj = lw.length_checked(
                gw.multiply(gw.invert(nb->first), na->first), length_cutoff);
            long long gap = lab - lproj;
            if (gap <= 0) {
                ++out.auto_satisfied;
                out.k_emp = std::max(out.k_emp, lab);
                continue;
            }
            if (lhs == 0) {
                ++out.violations;
                continue;
            }
            out.c_emp = std::max(out.c_emp, (double)gap / (double)lhs);
        }
    return out;
}

// ---- linear separation -----------------------------------------------------

struct SeparationReport {
    long long pairs = 0;    // recorded (u, gamma) samples
    long long excluded = 0; // translates skipped by the same-subgroup exclusion
    long long unknown = 0;  // distance search exhausted its radius
    long long n_emp = 0;    // smallest threshold making every sample separated
    double c_emp = 0;       // max L_S(gamma) / d(gamma, u H_j) beyond it
};

/// Empirical at-least-linear-separation scan for two subgroups of a catalog
/// group: for translates u and subgroup elements gamma of H_i, the distance
/// from gamma to the coset u H_j must be a fixed fraction of L_S(gamma) once
/// L_S(gamma) clears the base distance plus a threshold.
inline SeparationReport separation_scan(const GroupCatalogEntry& ambient,
                                        const SubgroupOracle& hi, const SubgroupOracle& hj,
                                        bool same_subgroup, int u_radius, int gamma_radius,
                                        int search_radius,
                                        long long element_budget = kDefaultElementBudget) {
    SeparationReport out;
    BallEnumerator ball(ambient, element_budget);

    std::vector<std::pair<GroupElement, long long>> gammas; // (element, L_S)
    for (int r = 0; r <= gamma_radius; ++r)
        for (const GroupElement& g : ball.sphere(r))
            if (hi.contains(g)) gammas.push_back({g, r});

    struct Sample {
        long long len;  // L_S(gamma)
        long long dist; // d(gamma, u H_j)
        long long base; // L = d(H_i, u H_j) for this translate
    };
    std::vector<Sample> samples;
    for (const GroupElement& u : ball.ball(u_radius)) {
        if (same_subgroup && hi.contains(u)) {
            ++out.excluded;
            continue;
        }
        std::vector<Sample> here;
        long long base = -1;
        bool complete = true;
        for (const auto& [g, len] : gammas) {
            auto nearest = hj.nearest_in_coset(g, u, search_radius);
            if (!nearest) {
                ++out.unknown;
                complete = false;
                continue;
            }
            here.push_back({len, nearest->second, 0});
            base = base < 0 ? nearest->second : std::min(base, nearest->second);
        }
        if (!complete || base < 0) continue;
        for (Sample& s : here) s.base = base;
        samples.insert(samples.end(), here.begin(), here.end());
    }
    out.pairs = (long long)samples.size();

    // smallest threshold under which every qualifying sample keeps a positive
    // distance, then the worst length-to-distance ratio beyond it
    long long n_emp = 0;
    for (const Sample& s : samples)
        if (s.dist == 0 && s.len - s.base >= n_emp) n_emp = s.len - s.base + 1;
    out.n_emp = n_emp;
    for (const Sample& s : samples)
        if (s.len >= n_emp + s.base && s.dist > 0)
            out.c_emp = std::max(out.c_emp, (double)s.len / (double)s.dist);
    return out;
}

} // namespace gog
