#pragma once

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gog/errors.hpp"
#include "gog/group.hpp"
#include "gog/length_table.hpp"
#include "gog/oracle.hpp"

namespace gog {

/// Sequence (g_0, e_1, g_1, ..., e_k, g_k): a leading vertex element followed
/// by edge steps, each carrying the vertex element at the edge's head.
struct GSequence {
    struct Step {
        int edge = -1;
        GroupElement g;
    };
    int start = 0;
    GroupElement g0;
    std::vector<Step> steps;

    int edge_length() const { return (int)steps.size(); }
    bool trivial() const { return steps.empty() && g0.is_identity(); }

    const GroupElement& last() const { return steps.empty() ? g0 : steps.back().g; }
    GroupElement& last() { return steps.empty() ? g0 : steps.back().g; }
};

struct CrossingResult {
    std::optional<GroupElement> value;
    int failed_index = -1; // 1-based index of the first edge whose membership fails
};

/// Graph of groups: vertex groups, paired oriented edges, and one subgroup
/// oracle per oriented edge carrying the embedding of the edge group into the
/// head vertex group.
class GraphOfGroups {
  public:
    struct Vertex {
        std::string name;
        GroupCatalogEntry group;
        mutable std::unique_ptr<LengthTable> lengths;
    };
    struct Edge {
        std::string name;
        int from = 0;
        int to = 0;
        std::shared_ptr<SubgroupOracle> embed; // edge group -> G_to
    };

    int add_vertex(const std::string& name, GroupCatalogEntry group) {
        // heap-allocated so vertex-group addresses stay stable for oracles
        vertices_.push_back(
            std::make_unique<Vertex>(Vertex{name, std::move(group), nullptr}));
        return (int)vertices_.size() - 1;
    }

    /// Adds the oriented pair e (from -> to) and its reverse; returns e's id,
    /// the reverse id is `reverse(e)`. `fwd` embeds the edge group into the
    /// `to` vertex group, `rev` into the `from` vertex group.
    int add_edge_pair(const std::string& name, int from, int to,
                      std::shared_ptr<SubgroupOracle> fwd,
                      std::shared_ptr<SubgroupOracle> rev) {
        if (&fwd->ambient() != &vertices_[(size_t)to]->group ||
            &rev->ambient() != &vertices_[(size_t)from]->group)
            throw Error("edge oracles must embed into the endpoint vertex groups");
        edges_.push_back(Edge{name, from, to, std::move(fwd)});
        edges_.push_back(Edge{name + "~", to, from, std::move(rev)});
        return (int)edges_.size() - 2;
    }

    int vertex_count() const { return (int)vertices_.size(); }
    int edge_count() const { return (int)edges_.size(); }
    int reverse(int e) const { return e ^ 1; }
    const Vertex& vertex(int v) const { return *vertices_[(size_t)v]; }
    const Edge& edge(int e) const { return edges_[(size_t)e]; }
    const GroupCatalogEntry& vertex_group(int v) const { return vertices_[(size_t)v]->group; }
    const SubgroupOracle& embedding(int e) const { return *edges_[(size_t)e].embed; }

    LengthTable& vertex_lengths(int v) const {
        const Vertex& vx = *vertices_[(size_t)v];
        if (!vx.lengths) vx.lengths = std::make_unique<LengthTable>(vx.group);
        return *vx.lengths;
    }

    // ---- sequences --------------------------------------------------------

    int end_vertex(const GSequence& s) const {
        return s.steps.empty() ? s.start : edges_[(size_t)s.steps.back().edge].to;
    }

    void check_sequence(const GSequence& s) const {
        int v = s.start;
        vertex_group(v).check(s.g0);
        for (const auto& st : s.steps) {
            if (edges_[(size_t)st.edge].from != v)
                throw Error("sequence edges do not form a path");
            v = edges_[(size_t)st.edge].to;
            vertex_group(v).check(st.g);
        }
    }

    GSequence trivial_sequence(int v) const {
        GSequence s;
        s.start = v;
        s.g0 = vertex_group(v).identity();
        return s;
    }

    /// Concatenation: end vertex of a must equal start of b.
    GSequence seq_multiply(const GSequence& a, const GSequence& b) const {
        if (end_vertex(a) != b.start) throw Error("sequence endpoints do not match");
        GSequence out = a;
        const GroupCatalogEntry& g = vertex_group(b.start);
        out.last() = g.multiply(out.last(), b.g0);
        for (const auto& st : b.steps) out.steps.push_back(st);
        return out;
    }

    GSequence seq_invert(const GSequence& a) const {
        GSequence out;
        out.start = end_vertex(a);
        out.g0 = vertex_group(out.start).invert(a.last());
        for (int i = (int)a.steps.size() - 1; i >= 0; --i) {
            int e = reverse(a.steps[(size_t)i].edge);
            const GroupElement& prev =
                i == 0 ? a.g0 : a.steps[(size_t)i - 1].g;
            out.steps.push_back(
                {e, vertex_group(edges_[(size_t)e].to).invert(prev)});
        }
        return out;
    }

    /// Britton-style reduction: repeatedly replace the leftmost
    /// (g, e, image-of-h, e-reversed, g') by g * reverse-image-of-h * g'.
    GSequence reduce(GSequence s) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i + 1 < s.steps.size(); ++i) {
                int e = s.steps[i].edge;
                if (s.steps[i + 1].edge != reverse(e)) continue;
                const SubgroupOracle& fwd = *edges_[(size_t)e].embed;
                if (!fwd.contains(s.steps[i].g)) continue;
                GroupElement h = fwd.preimage(s.steps[i].g);
                const SubgroupOracle& rev = *edges_[(size_t)reverse(e)].embed;
                const GroupCatalogEntry& gv = vertex_group(edges_[(size_t)e].from);
                GroupElement merged = gv.multiply(
                    gv.multiply(i == 0 ? s.g0 : s.steps[i - 1].g, rev.iota(h)),
                    s.steps[i + 1].g);
                if (i == 0)
                    s.g0 = merged;
                else
                    s.steps[i - 1].g = merged;
                s.steps.erase(s.steps.begin() + (long)i, s.steps.begin() + (long)i + 2);
                changed = true;
                break;
            }
        }
        return s;
    }

    bool is_reduced(const GSequence& s) const {
        for (size_t i = 0; i + 1 < s.steps.size(); ++i) {
            int e = s.steps[i].edge;
            if (s.steps[i + 1].edge == reverse(e) &&
                edges_[(size_t)e].embed->contains(s.steps[i].g))
                return false;
        }
        return true;
    }

    /// Equality of the classes represented by two sequences with matching
    /// endpoints: a^-1 b reduces to a trivial sequence.
    bool seq_equal(const GSequence& a, const GSequence& b) const {
        if (a.start != b.start || end_vertex(a) != end_vertex(b)) return false;
        GSequence d = reduce(seq_multiply(seq_invert(a), b));
        return d.trivial();
    }

    /// Push each label's coset remainder rightward, leaving canonical coset
    /// representatives: after this, equal reduced sequences have identical
    /// labels. nullopt when some edge oracle has no canonical representative.
    std::optional<GSequence> normalize(GSequence s) const {
        for (size_t i = 0; i < s.steps.size(); ++i) {
            int e = s.steps[i].edge;
            const SubgroupOracle& rev = *edges_[(size_t)reverse(e)].embed;
            const GroupCatalogEntry& gv = vertex_group(edges_[(size_t)e].from);
            GroupElement& label = i == 0 ? s.g0 : s.steps[i - 1].g;
            auto r = rev.coset_rep(label);
            if (!r) return std::nullopt;
            GroupElement h = rev.preimage(gv.multiply(gv.invert(*r), label));
            label = *r;
            const SubgroupOracle& fwd = *edges_[(size_t)e].embed;
            const GroupCatalogEntry& gw = vertex_group(edges_[(size_t)e].to);
            s.steps[i].g = gw.multiply(fwd.iota(h), s.steps[i].g);
        }
        return s;
    }

    std::string sequence_key(const GSequence& s) const {
        std::string key = "s" + std::to_string(s.start) + ":" + element_key(s.g0);
        for (const auto& st : s.steps)
            key += "|e" + std::to_string(st.edge) + ":" + element_key(st.g);
        return key;
    }

    /// Key of the class of s when canonical forms exist along its path.
    std::optional<std::string> class_key(const GSequence& s) const {
        auto n = normalize(reduce(s));
        if (!n) return std::nullopt;
        return sequence_key(*n);
    }

    /// Exact Gamma-length: edge count plus vertex word lengths over the
    /// declared vertex generating sets.
    long long gamma_length(const GSequence& s, int cutoff = 64) const {
        long long total = (long long)s.steps.size();
        total += vertex_lengths(s.start).length_checked(s.g0, cutoff);
        for (const auto& st : s.steps)
            total += vertex_lengths(edges_[(size_t)st.edge].to).length_checked(st.g, cutoff);
        return total;
    }

    std::string sequence_str(const GSequence& s) const {
        std::string out = "(" + vertex_group(s.start).element_str(s.g0);
        for (const auto& st : s.steps) {
            out += ", " + edges_[(size_t)st.edge].name + ", ";
            out += vertex_group(edges_[(size_t)st.edge].to).element_str(st.g);
        }
        return out + ")";
    }

    // ---- crossing maps ----------------------------------------------------

    /// Single-edge crossing: image of a under (forward iota) after (reverse
    /// iota)^-1; requires a in the reverse image.
    std::optional<GroupElement> crossing_edge(int e, const GroupElement& a) const {
        const SubgroupOracle& rev = *edges_[(size_t)reverse(e)].embed;
        if (!rev.contains(a)) return std::nullopt;
        return edges_[(size_t)e].embed->iota(rev.preimage(a));
    }

    /// Composite crossing along an edge path; on failure reports the 1-based
    /// index of the first edge where membership breaks.
    CrossingResult crossing_path(const std::vector<int>& path, GroupElement a) const {
        CrossingResult res;
        for (size_t i = 0; i < path.size(); ++i) {
            auto next = crossing_edge(path[i], a);
            if (!next) {
                res.failed_index = (int)i + 1;
                return res;
            }
            a = *next;
        }
        res.value = a;
        return res;
    }

    /// The path is maximal at `a` with respect to appending edge `e`: the
    /// crossing is defined along the path but fails on one more `e`.
    bool maximal_at(const std::vector<int>& path, int extra_edge, const GroupElement& a) const {
        CrossingResult along = crossing_path(path, a);
        if (!along.value) return false;
        return !crossing_edge(extra_edge, *along.value).has_value();
    }

  private:
    std::vector<std::unique_ptr<Vertex>> vertices_;
    std::vector<Edge> edges_;
};

// ---------------------------------------------------------------------------
// Fundamental group(oid) exploration
// ---------------------------------------------------------------------------

/// Breadth-first ball of the fundamental groupoid based at a vertex, with
/// respect to the standard generators (vertex generators and edge letters).
/// Classes are deduplicated by canonical sequence forms when every edge
/// oracle supplies coset representatives, with an equality-test fallback
/// otherwise. Distances equal the standard length of the class.
class GroupoidBall {
  public:
    struct ClassInfo {
        GSequence witness; // geodesic: Gamma-length equals dist
        GSequence reduced; // reduced (and, when available, normalized) form
        long long dist = 0;
        int end = 0;
    };

    GroupoidBall(const GraphOfGroups& graph, int base, long long class_budget = 500'000)
        : graph_(&graph), base_(base), budget_(class_budget) {
        GSequence id = graph.trivial_sequence(base);
        ClassInfo c{id, id, 0, base};
        classes_.push_back(c);
        index_class(0);
        spheres_.push_back({0});
    }

    const GraphOfGroups& graph() const { return *graph_; }
    int radius() const { return (int)spheres_.size() - 1; }
    size_t size() const { return classes_.size(); }
    const ClassInfo& cls(size_t i) const { return classes_[i]; }

    void extend_to(int target_radius) {
        while (radius() < target_radius) {
            std::vector<size_t> next;
            for (size_t ci : spheres_.back()) {
                expand(ci, next);
                if ((long long)classes_.size() > budget_) {
                    for (size_t undo : next) unindex_class(undo);
                    classes_.resize(classes_.size() - next.size());
                    throw BudgetExceeded(radius());
                }
            }
            spheres_.push_back(std::move(next));
        }
    }

    const std::vector<size_t>& sphere(int r) {
        extend_to(r);
        return spheres_[(size_t)r];
    }

    /// Classes that are loops at the base vertex within radius r.
    std::vector<size_t> loops(int r) {
        extend_to(r);
        std::vector<size_t> out;
        for (int i = 0; i <= r; ++i)
            for (size_t ci : spheres_[(size_t)i])
                if (classes_[ci].end == base_) out.push_back(ci);
        return out;
    }

    /// Index of the class of s if already discovered.
    std::optional<size_t> find(const GSequence& s) const {
        GSequence r = graph_->reduce(s);
        auto n = graph_->normalize(r);
        if (n) {
            auto it = key_index_.find(graph_->sequence_key(*n));
            if (it == key_index_.end()) return std::nullopt;
            return it->second;
        }
        auto bucket = fallback_index_.find(fallback_bucket(r));
        if (bucket == fallback_index_.end()) return std::nullopt;
        for (size_t ci : bucket->second)
            if (graph_->seq_equal(classes_[ci].reduced, r)) return ci;
        return std::nullopt;
    }

    /// Standard length of the class of a loop; nullopt beyond cutoff.
    std::optional<long long> word_length(const GSequence& s, int cutoff) {
        if (auto i = find(s)) return classes_[*i].dist;
        while (radius() < cutoff) {
            extend_to(radius() + 1);
            if (auto i = find(s)) return classes_[*i].dist;
        }
        return std::nullopt;
    }

  private:
    const GraphOfGroups* graph_;
    int base_;
    long long budget_;
    std::vector<ClassInfo> classes_;
    std::vector<std::vector<size_t>> spheres_;
    std::map<std::string, size_t> key_index_;
    std::map<std::string, std::vector<size_t>> fallback_index_;

    std::string fallback_bucket(const GSequence& r) const {
        std::string key = "b" + std::to_string(r.start);
        for (const auto& st : r.steps) key += "e" + std::to_string(st.edge);
        return key;
    }

    void index_class(size_t ci) {
        const GSequence& r = classes_[ci].reduced;
        auto n = graph_->normalize(r);
        if (n) {
            classes_[ci].reduced = *n;
            key_index_[graph_->sequence_key(*n)] = ci;
        } else {
            fallback_index_[fallback_bucket(r)].push_back(ci);
        }
    }

    void unindex_class(size_t ci) {
        const GSequence& r = classes_[ci].reduced;
        std::string key = graph_->sequence_key(r);
        auto it = key_index_.find(key);
        if (it != key_index_.end() && it->second == ci) {
            key_index_.erase(it);
            return;
        }
        auto& bucket = fallback_index_[fallback_bucket(r)];
        std::erase(bucket, ci);
    }

    bool known(const GSequence& reduced) {
        auto n = graph_->normalize(reduced);
        if (n) return key_index_.count(graph_->sequence_key(*n)) > 0;
        auto bucket = fallback_index_.find(fallback_bucket(reduced));
        if (bucket == fallback_index_.end()) return false;
        for (size_t ci : bucket->second)
            if (graph_->seq_equal(classes_[ci].reduced, reduced)) return true;
        return false;
    }

    void add_candidate(const GSequence& witness, std::vector<size_t>& next) {
        GSequence r = graph_->reduce(witness);
        if (known(r)) return;
        ClassInfo c{witness, r, (long long)spheres_.size(), graph_->end_vertex(witness)};
        classes_.push_back(c);
        index_class(classes_.size() - 1);
        next.push_back(classes_.size() - 1);
    }

    void expand(size_t ci, std::vector<size_t>& next) {
        // copy: classes_ may reallocate while we expand
        GSequence w = classes_[ci].witness;
        int v = classes_[ci].end;
        const GroupCatalogEntry& gv = graph_->vertex_group(v);
        for (const GroupElement& m : gv.symmetric_generators()) {
            GSequence w2 = w;
            w2.last() = gv.multiply(w2.last(), m);
            add_candidate(w2, next);
        }
        for (int e = 0; e < graph_->edge_count(); ++e) {
            if (graph_->edge(e).from != v) continue;
            GSequence w2 = w;
            w2.steps.push_back({e, graph_->vertex_group(graph_->edge(e).to).identity()});
            add_candidate(w2, next);
        }
    }
};

// ---------------------------------------------------------------------------
// Local covering-tree fragments
// ---------------------------------------------------------------------------

/// Fragment of the universal covering tree around the base: nodes are vertex
/// cosets reached by sequences, edges are coset translates of the graph
/// edges. Coset representatives are enumerated within a length cutoff, so
/// fragments are explicitly partial.
struct LocalTreeFragment {
    struct Node {
        GSequence rep;  // sequence from the base reaching this coset
        int vertex = 0; // underlying graph vertex
        int parent = -1;
        int via_edge = -1;
        int depth = 0;
    };
    std::vector<Node> nodes;
    int cross_edges = 0; // rediscoveries via a second path (0 on a tree)
};

inline LocalTreeFragment local_tree(const GraphOfGroups& graph, int base, int depth,
                                    int rep_cutoff = 4, int max_reps_per_edge = 16) {
    LocalTreeFragment frag;
    // node key: normalized sequence with its final label dropped (vertex coset)
    auto node_key = [&](const GSequence& s) -> std::optional<std::string> {
        auto n = graph.normalize(graph.reduce(s));
        if (!n) return std::nullopt;
        GSequence c = *n;
        c.last() = graph.vertex_group(graph.end_vertex(c)).identity();
        return graph.sequence_key(c);
    };
    std::map<std::string, size_t> seen;
    frag.nodes.push_back({graph.trivial_sequence(base), base, -1, -1, 0});
    auto base_key = node_key(frag.nodes[0].rep);
    if (!base_key) throw Error("local tree needs canonical coset forms on every edge");
    seen[*base_key] = 0;
    std::deque<size_t> queue{0};
    while (!queue.empty()) {
        size_t ni = queue.front();
        queue.pop_front();
        if (frag.nodes[ni].depth >= depth) continue;
        int v = frag.nodes[ni].vertex;
        const GroupCatalogEntry& gv = graph.vertex_group(v);
        for (int e = 0; e < graph.edge_count(); ++e) {
            if (graph.edge(e).from != v) continue;
            const SubgroupOracle& rev = *graph.edge(graph.reverse(e)).embed;
            // enumerate short left-coset representatives of the reverse image
            std::map<std::string, GroupElement> reps;
            BallEnumerator ball(gv);
            for (int r = 0; r <= rep_cutoff && (int)reps.size() < max_reps_per_edge; ++r) {
                for (const GroupElement& h : ball.sphere(r)) {
                    auto cr = rev.coset_rep(h);
                    if (!cr) throw Error("local tree needs canonical coset forms on every edge");
                    reps.emplace(element_key(*cr), *cr);
                    if ((int)reps.size() >= max_reps_per_edge) break;
                }
            }
            for (const auto& [key, h] : reps) {
                GSequence child = frag.nodes[ni].rep;
                child.last() = gv.multiply(child.last(), h);
                child.steps.push_back({e, graph.vertex_group(graph.edge(e).to).identity()});
                auto ck = node_key(child);
                if (!ck) throw Error("local tree needs canonical coset forms on every edge");
                auto [it, inserted] = seen.emplace(*ck, frag.nodes.size());
                if (!inserted) {
                    // stepping back across the tree edge to the parent is not
                    // a cycle; anything else is
                    if ((int)it->second != frag.nodes[ni].parent) ++frag.cross_edges;
                    continue;
                }
                frag.nodes.push_back({graph.reduce(child), graph.edge(e).to, (int)ni, e,
                                      frag.nodes[ni].depth + 1});
                queue.push_back(frag.nodes.size() - 1);
            }
        }
    }
    return frag;
}

} // namespace gog
