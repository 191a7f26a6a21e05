#pragma once

#include <compare>
#include <string>
#include <vector>

#include "gog/graph.hpp"

namespace gog {

/// Element of the free product of all vertex groups with one free Z factor
/// per unordered edge pair, in syllable normal form: no trivial syllables,
/// no two adjacent syllables from the same factor.
struct FreeProductElement {
    struct Syllable {
        bool is_edge = false;
        int id = 0;         // vertex id, or edge-pair id (edge / 2)
        GroupElement g;     // vertex syllable payload
        long long pow = 0;  // edge syllable exponent

        friend auto operator<=>(const Syllable&, const Syllable&) = default;
    };
    std::vector<Syllable> syllables;

    friend auto operator<=>(const FreeProductElement&, const FreeProductElement&) = default;

    bool is_identity() const { return syllables.empty(); }
};

inline void fp_push(const GraphOfGroups& graph, FreeProductElement& a,
                    FreeProductElement::Syllable s) {
    if (!s.is_edge && s.g.is_identity()) return;
    if (s.is_edge && s.pow == 0) return;
    while (!a.syllables.empty()) {
        FreeProductElement::Syllable& back = a.syllables.back();
        if (back.is_edge != s.is_edge || back.id != s.id) break;
        if (s.is_edge) {
            back.pow += s.pow;
            if (back.pow == 0) {
                a.syllables.pop_back();
                return;
            }
            return;
        }
        back.g = graph.vertex_group(s.id).multiply(back.g, s.g);
        if (back.g.is_identity()) {
            a.syllables.pop_back();
            return;
        }
        return;
    }
    a.syllables.push_back(std::move(s));
}

inline FreeProductElement fp_mul(const GraphOfGroups& graph, const FreeProductElement& a,
                                 const FreeProductElement& b) {
    FreeProductElement out = a;
    for (const auto& s : b.syllables) fp_push(graph, out, s);
    return out;
}

inline FreeProductElement fp_inv(const GraphOfGroups& graph, const FreeProductElement& a) {
    FreeProductElement out;
    for (auto it = a.syllables.rbegin(); it != a.syllables.rend(); ++it) {
        FreeProductElement::Syllable s = *it;
        if (s.is_edge)
            s.pow = -s.pow;
        else
            s.g = graph.vertex_group(s.id).invert(s.g);
        fp_push(graph, out, std::move(s));
    }
    return out;
}

/// Image of a sequence in the free product: vertex labels become vertex
/// syllables, edge steps become edge-letter syllables (reverse edges carry
/// exponent -1).
inline FreeProductElement fp_of_sequence(const GraphOfGroups& graph, const GSequence& s) {
    FreeProductElement out;
    fp_push(graph, out, {false, s.start, s.g0, 0});
    for (const auto& st : s.steps) {
        fp_push(graph, out,
                {true, st.edge / 2, graph.vertex_group(0).identity(), st.edge % 2 == 0 ? 1 : -1});
        fp_push(graph, out, {false, graph.edge(st.edge).to, st.g, 0});
    }
    return out;
}

/// Word length over the union of vertex generators and edge letters. Syllable
/// normal forms are geodesic in a free product, so this sum is exact.
inline long long fp_length(const GraphOfGroups& graph, const FreeProductElement& a,
                           int cutoff = 64) {
    long long total = 0;
    for (const auto& s : a.syllables) {
        if (s.is_edge)
            total += std::llabs(s.pow);
        else
            total += graph.vertex_lengths(s.id).length_checked(s.g, cutoff);
    }
    return total;
}

inline std::string fp_key(const FreeProductElement& a) {
    std::string key;
    for (const auto& s : a.syllables) {
        if (s.is_edge)
            key += "E" + std::to_string(s.id) + "^" + std::to_string(s.pow);
        else
            key += "V" + std::to_string(s.id) + ":" + element_key(s.g);
    }
    return key.empty() ? "1" : key;
}

inline std::string fp_str(const GraphOfGroups& graph, const FreeProductElement& a) {
    if (a.is_identity()) return "1";
    std::string out;
    for (const auto& s : a.syllables) {
        if (!out.empty()) out += " ";
        if (s.is_edge) {
            out += graph.edge(s.id * 2).name;
            if (s.pow != 1) out += "^" + std::to_string(s.pow);
        } else {
            out += graph.vertex_group(s.id).element_str(s.g);
        }
    }
    return out;
}

} // namespace gog
