#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gog/free_product.hpp"
#include "gog/graph.hpp"
#include "gog/supported_function.hpp"

namespace gog {

/// Functions on the fundamental group are keyed by canonical class keys.
using Pi1Fn = FnOn<std::string>;
using FreeProductFn = FnOn<FreeProductElement>;

/// For every class in a standard-length ball: a geodesic representative, its
/// reduced canonical form, and the lift of that form into the free product.
/// The class-to-lift map is injective by uniqueness of canonical forms.
class NormalSets {
  public:
    struct Entry {
        GSequence geodesic; // Gamma-length equals the standard length
        GSequence reduced;  // reduced + canonically normalized
        FreeProductElement hat;
        long long standard_length = 0;
    };

    NormalSets(const GraphOfGroups& graph, int base, int radius,
               long long class_budget = 500'000)
        : graph_(&graph), base_(base), radius_(radius), ball_(graph, base, class_budget) {
        ball_.extend_to(radius);
        for (size_t ci : ball_.loops(radius)) {
            const auto& c = ball_.cls(ci);
            std::string key = class_key_checked(c.reduced);
            Entry e{c.witness, c.reduced, fp_of_sequence(graph, c.reduced), c.dist};
            entries_.emplace(key, std::move(e));
            reps_.emplace(key, c.reduced);
        }
    }

    const GraphOfGroups& graph() const { return *graph_; }
    int base() const { return base_; }
    int radius() const { return radius_; }
    const std::map<std::string, Entry>& entries() const { return entries_; }

    const Entry* find(const std::string& key) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? nullptr : &it->second;
    }

    /// Canonical key of a loop's class (independent of the ball); the
    /// representative is interned for later arithmetic.
    std::string key_of(const GSequence& loop) { return intern(loop); }

    /// Canonical reduced representative for a key seen by any operation here.
    const GSequence& rep(const std::string& key) const {
        auto it = reps_.find(key);
        if (it == reps_.end()) throw Error("unknown class key: " + key);
        return it->second;
    }

    std::string intern(const GSequence& loop) {
        GSequence r = graph_->reduce(loop);
        auto n = graph_->normalize(r);
        if (!n) throw Error("normal sets need canonical coset forms on every edge");
        std::string key = graph_->sequence_key(*n);
        reps_.emplace(key, *n);
        return key;
    }

    /// Product / inverse of classes by key, interning the results.
    std::string mul(const std::string& a, const std::string& b) {
        return intern(graph_->seq_multiply(rep(a), rep(b)));
    }
    std::string inv(const std::string& a) { return intern(graph_->seq_invert(rep(a))); }

    /// Canonical lift of any class (its reduced normalized form in the free
    /// product); classes inside the ball use their stored entry.
    FreeProductElement hat(const std::string& key) const {
        auto it = entries_.find(key);
        if (it != entries_.end()) return it->second.hat;
        return fp_of_sequence(*graph_, rep(key));
    }

    /// Indicator of the standard-length ball of the given radius.
    Pi1Fn ball_indicator(int r) {
        if (r > radius_) throw Error("indicator radius exceeds the built normal set");
        Pi1Fn f;
        for (const auto& [key, e] : entries_)
            if (e.standard_length <= r) f.set(key, 1);
        return f;
    }

    GroupoidBall& groupoid_ball() { return ball_; }

  private:
    const GraphOfGroups* graph_;
    int base_;
    int radius_;
    GroupoidBall ball_;
    std::map<std::string, Entry> entries_;
    std::map<std::string, GSequence> reps_;

    std::string class_key_checked(const GSequence& reduced) const {
        auto n = graph_->normalize(reduced);
        if (!n) throw Error("normal sets need canonical coset forms on every edge");
        return graph_->sequence_key(*n);
    }
};

/// Lift a function through the hat map; exact l2 isometry since the hat map
/// is injective on classes. Support must stay inside the built ball.
inline FreeProductFn hat_lift(const NormalSets& ns, const Pi1Fn& f) {
    FreeProductFn out;
    for (const auto& [key, v] : f.values()) {
        const NormalSets::Entry* e = ns.find(key);
        if (!e) throw SupportOutsideDomain();
        out.set(e->hat, v);
    }
    return out;
}

/// Exact convolution on the fundamental group.
inline Pi1Fn pi1_convolve(NormalSets& ns, const Pi1Fn& f, const Pi1Fn& g) {
    return convolve_with(f, g, [&](const std::string& a, const std::string& b) {
        return ns.mul(a, b);
    });
}

/// Norm bookkeeping for the lifted-pair construction: F carries f through the
/// hat map, and for every product class u a translate function G_u places the
/// values of g at the points hat(u w^-1)^-1 hat(u), so that convolution
/// against F at hat(u) reproduces (f * g)(u) exactly.
struct LiftedPairCheck {
    Rational conv_l2sq_direct = 0; // ||f * g||_2^2 on the fundamental group
    Rational conv_l2sq_lifted = 0; // sum over u of (F * G_u)(hat(u))^2
    Rational f_l2sq = 0;
    Rational f_lift_l2sq = 0;
    Rational g_l2sq = 0;
    std::vector<Rational> g_translate_l2sq; // per product class u

    bool exact() const {
        if (conv_l2sq_direct != conv_l2sq_lifted) return false;
        if (f_l2sq != f_lift_l2sq) return false;
        for (const Rational& q : g_translate_l2sq)
            if (q != g_l2sq) return false;
        return true;
    }
};

inline LiftedPairCheck lifted_pair_check(NormalSets& ns, const Pi1Fn& f, const Pi1Fn& g) {
    const GraphOfGroups& graph = ns.graph();
    LiftedPairCheck out;
    out.f_l2sq = f.l2_norm_sq();
    out.g_l2sq = g.l2_norm_sq();

    FreeProductFn F;
    for (const auto& [key, v] : f.values()) F.set(ns.hat(key), v);
    out.f_lift_l2sq = F.l2_norm_sq();

    Pi1Fn conv = pi1_convolve(ns, f, g);
    out.conv_l2sq_direct = conv.l2_norm_sq();

    for (const auto& [u, cu] : conv.values()) {
        FreeProductElement u_hat = ns.hat(u);
        // translate function G_u built from g
        FreeProductFn Gu;
        for (const auto& [w, gw] : g.values()) {
            std::string uw_inv = ns.mul(u, ns.inv(w));
            FreeProductElement point =
                fp_mul(graph, fp_inv(graph, ns.hat(uw_inv)), u_hat);
            Gu.add(point, gw);
        }
        out.g_translate_l2sq.push_back(Gu.l2_norm_sq());
        // (F * Gu)(u_hat)
        Rational val = 0;
        for (const auto& [p, fp] : F.values())
            val += fp * Gu.at(fp_mul(graph, fp_inv(graph, p), u_hat));
        out.conv_l2sq_lifted += val * val;
    }
    return out;
}

} // namespace gog
