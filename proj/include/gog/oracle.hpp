#pragma once

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "gog/errors.hpp"
#include "gog/group.hpp"
#include "gog/length_table.hpp"
#include "gog/stallings.hpp"
#include "gog/word.hpp"

namespace gog {

// ---------------------------------------------------------------------------
// Integer lattices (subgroups of Z^n) in column echelon form
// ---------------------------------------------------------------------------

/// Column echelon data for the sublattice of Z^dim spanned by `gens`,
/// with each echelon column expressed back in the original generators.
struct IntegerLatticeData {
    int dim = 0;
    std::vector<Vec> gens;
    std::vector<Vec> cols;         // echelon columns, pivots positive
    std::vector<Vec> cols_in_gens; // expression of cols[j] over gens
    std::vector<int> pivot_row;

    IntegerLatticeData() = default;

    IntegerLatticeData(int dimension, std::vector<Vec> generators)
        : dim(dimension), gens(std::move(generators)) {
        std::vector<Vec> work = gens;
        std::vector<Vec> expr(work.size());
        for (size_t j = 0; j < work.size(); ++j) {
            expr[j].assign(work.size(), 0);
            expr[j][j] = 1;
        }
        size_t c = 0;
        for (int p = 0; p < dim && c < work.size(); ++p) {
            // gcd-reduce entries of row p across columns c..end
            while (true) {
                size_t best = work.size();
                for (size_t j = c; j < work.size(); ++j)
                    if (work[j][(size_t)p] != 0 &&
                        (best == work.size() ||
                         std::llabs(work[j][(size_t)p]) < std::llabs(work[best][(size_t)p])))
                        best = j;
                if (best == work.size()) break; // row p empty
                std::swap(work[c], work[best]);
                std::swap(expr[c], expr[best]);
                bool cleared = true;
                for (size_t j = c + 1; j < work.size(); ++j) {
                    if (work[j][(size_t)p] == 0) continue;
                    long long q = work[j][(size_t)p] / work[c][(size_t)p];
                    for (int i = 0; i < dim; ++i) work[j][(size_t)i] -= q * work[c][(size_t)i];
                    for (size_t i = 0; i < expr[j].size(); ++i)
                        expr[j][i] -= q * expr[c][i];
                    if (work[j][(size_t)p] != 0) cleared = false;
                }
                if (cleared) break;
            }
            if (c < work.size() && work[c][(size_t)p] != 0) {
                if (work[c][(size_t)p] < 0) {
                    for (int i = 0; i < dim; ++i) work[c][(size_t)i] = -work[c][(size_t)i];
                    for (auto& x : expr[c]) x = -x;
                }
                cols.push_back(work[c]);
                cols_in_gens.push_back(expr[c]);
                pivot_row.push_back(p);
                ++c;
            }
        }
    }

    /// Canonical residue of v modulo the lattice, plus the coefficients of
    /// the echelon columns that were subtracted.
    std::pair<Vec, std::vector<long long>> residue(const Vec& v) const {
        Vec r = v;
        std::vector<long long> coeff(cols.size(), 0);
        for (size_t j = 0; j < cols.size(); ++j) {
            long long piv = cols[j][(size_t)pivot_row[j]];
            long long val = r[(size_t)pivot_row[j]];
            long long q = val / piv;
            if (val % piv < 0) q -= 1; // floor division: residue in [0, piv)
            coeff[j] = q;
            for (int i = 0; i < dim; ++i) r[(size_t)i] -= q * cols[j][(size_t)i];
        }
        return {r, coeff};
    }

    bool contains(const Vec& v) const {
        Vec r = residue(v).first;
        for (long long x : r)
            if (x) return false;
        return true;
    }

    /// Coefficients over the original generators; NotInSubgroup otherwise.
    Vec solve_in_gens(const Vec& v) const {
        auto [r, coeff] = residue(v);
        for (long long x : r)
            if (x) throw NotInSubgroup();
        Vec out(gens.size(), 0);
        for (size_t j = 0; j < cols.size(); ++j)
            for (size_t i = 0; i < gens.size(); ++i)
                out[i] += coeff[j] * cols_in_gens[j][i];
        return out;
    }

    bool is_full_rank_unimodular() const {
        if ((int)cols.size() != dim) return false;
        for (size_t j = 0; j < cols.size(); ++j)
            if (cols[j][(size_t)pivot_row[j]] != 1) return false;
        return true;
    }
};

// ---------------------------------------------------------------------------
// Folded-graph oracle data with a basis -> edge-generator dictionary
// ---------------------------------------------------------------------------

/// StallingsGraph plus a dictionary expressing each subgroup-basis element as
/// a word in the declared edge generators (found by bounded search over
/// products of edge generators).
struct FoldedOracleData {
    StallingsGraph graph;
    std::vector<Word> basis_to_edge; // per basis letter, word over edge gens
    bool dictionary_complete = false;

    FoldedOracleData(const std::vector<Word>& image_words, int dict_cutoff = 10)
        : graph(image_words) {
        basis_to_edge.assign(graph.rank(), Word{});
        std::vector<bool> found(graph.rank(), false);
        size_t remaining = graph.rank();
        // BFS over reduced words in the edge generators
        std::vector<Word> frontier{Word{}};
        for (int len = 1; len <= dict_cutoff && remaining > 0; ++len) {
            std::vector<Word> next;
            for (const Word& w : frontier) {
                for (size_t gi = 0; gi < image_words.size(); ++gi) {
                    for (int sign : {1, -1}) {
                        int letter = sign * (int)(gi + 1);
                        if (!w.empty() && w.back() == -letter) continue;
                        Word w2 = w;
                        w2.push_back(letter);
                        next.push_back(w2);
                        Word ambient = word_substitute(w2, image_words);
                        Word expr = graph.express_in_basis(ambient);
                        if (expr.size() == 1) {
                            size_t b = (size_t)std::abs(expr[0]) - 1;
                            if (!found[b]) {
                                found[b] = true;
                                basis_to_edge[b] = expr[0] > 0 ? w2 : word_inv(w2);
                                --remaining;
                            }
                        }
                    }
                }
            }
            frontier = std::move(next);
        }
        dictionary_complete = remaining == 0;
    }

    /// Edge-generator word for a member, via the basis dictionary.
    Word preimage_word(const Word& ambient_word) const {
        Word expr = graph.express_in_basis(ambient_word); // throws NotInSubgroup
        Word out;
        for (int letter : expr) {
            size_t b = (size_t)std::abs(letter) - 1;
            const Word& piece = basis_to_edge[b];
            if (piece.empty()) throw OracleUnknown("basis dictionary incomplete");
            if (letter > 0)
                for (int x : piece) word_push(out, x);
            else
                for (auto it = piece.rbegin(); it != piece.rend(); ++it) word_push(out, -*it);
        }
        return out;
    }
};

// ---------------------------------------------------------------------------
// SubgroupOracle
// ---------------------------------------------------------------------------

enum class OracleBackend {
    StallingsGraph,
    IntegerLattice,
    FiberProjection,
    CyclicRoot,
    FactorProjection,
    BoundedSearch,
};

inline const char* backend_name(OracleBackend b) {
    switch (b) {
        case OracleBackend::StallingsGraph: return "stallings";
        case OracleBackend::IntegerLattice: return "integer-lattice";
        case OracleBackend::FiberProjection: return "fiber-projection";
        case OracleBackend::CyclicRoot: return "cyclic-root";
        case OracleBackend::FactorProjection: return "factor-projection";
        case OracleBackend::BoundedSearch: return "bounded-search";
    }
    return "?";
}

inline std::optional<OracleBackend> backend_from_name(const std::string& s) {
    for (OracleBackend b :
         {OracleBackend::StallingsGraph, OracleBackend::IntegerLattice,
          OracleBackend::FiberProjection, OracleBackend::CyclicRoot,
          OracleBackend::FactorProjection, OracleBackend::BoundedSearch})
        if (s == backend_name(b)) return b;
    return std::nullopt;
}

/// Membership / preimage / nearest-element services for a finitely generated
/// subgroup of a catalog group, given as the image of an (injective) edge
/// group under generator images.
class SubgroupOracle {
  public:
    SubgroupOracle(const GroupCatalogEntry& ambient, GroupCatalogEntry edge_group,
                   std::vector<GroupElement> images, OracleBackend backend,
                   int search_cutoff = 8)
        : ambient_(&ambient),
          edge_group_(std::move(edge_group)),
          images_(std::move(images)),
          backend_(backend),
          cutoff_(search_cutoff) {
        if (edge_group_.generators.size() != images_.size())
            throw Error("oracle: one image per edge-group generator required");
        for (const GroupElement& g : images_) ambient_->check(g);
        switch (backend_) {
            case OracleBackend::StallingsGraph: {
                if (ambient_->kind != GroupKind::FreeGroup)
                    throw Error("stallings backend needs a free ambient group");
                folded_ = std::make_unique<FoldedOracleData>(image_words());
                break;
            }
            case OracleBackend::IntegerLattice: {
                if (ambient_->kind != GroupKind::FreeAbelian)
                    throw Error("integer-lattice backend needs a free abelian ambient group");
                std::vector<Vec> vs;
                for (const auto& g : images_) vs.push_back(g.vec);
                lattice_ = std::make_unique<IntegerLatticeData>(ambient_->rank, vs);
                break;
            }
            case OracleBackend::FiberProjection: {
                if (ambient_->kind == GroupKind::SemidirectZ2Z) {
                    std::vector<Vec> vs;
                    for (const auto& g : images_) {
                        if (g.power != 0) throw Error("fiber images must have zero Z-part");
                        vs.push_back(g.vec);
                    }
                    lattice_ = std::make_unique<IntegerLatticeData>(2, vs);
                } else if (ambient_->kind == GroupKind::FreeByCyclic) {
                    for (const auto& g : images_)
                        if (g.power != 0) throw Error("fiber images must have zero Z-part");
                    folded_ = std::make_unique<FoldedOracleData>(image_words());
                } else {
                    throw Error("fiber-projection backend needs a fibered ambient group");
                }
                break;
            }
            case OracleBackend::CyclicRoot:
                if (images_.size() != 1)
                    throw Error("cyclic-root backend needs exactly one generator image");
                if (images_[0].is_identity()) throw Error("cyclic-root generator is trivial");
                break;
            case OracleBackend::FactorProjection: {
                if (ambient_->kind != GroupKind::FreeGroup &&
                    ambient_->kind != GroupKind::FreeAbelian)
                    throw Error("factor-projection backend needs a free or free abelian ambient");
                factor_coords_.clear();
                for (const auto& g : images_) {
                    int coord = single_basis_coordinate(g);
                    if (coord < 0)
                        throw Error("factor-projection images must be distinct basis elements");
                    factor_coords_.push_back(coord);
                }
                break;
            }
            case OracleBackend::BoundedSearch:
                build_bounded_table();
                break;
        }
    }

    const GroupCatalogEntry& ambient() const { return *ambient_; }
    const GroupCatalogEntry& edge_group() const { return edge_group_; }
    const std::vector<GroupElement>& images() const { return images_; }
    OracleBackend backend() const { return backend_; }

    /// Image of an edge-group element under the generator substitution.
    GroupElement iota(const GroupElement& h) const {
        edge_group_.check(h);
        GroupElement out = ambient_->identity();
        for (int letter : edge_generator_word(h)) {
            const GroupElement& img = images_[(size_t)std::abs(letter) - 1];
            out = ambient_->multiply(out, letter > 0 ? img : ambient_->invert(img));
        }
        return out;
    }

    /// Tri-state membership: definite answer, or nullopt for "search bound hit".
    std::optional<bool> contains_checked(const GroupElement& g) const {
        ambient_->check(g);
        switch (backend_) {
            case OracleBackend::StallingsGraph:
                return folded_->graph.member(g.word);
            case OracleBackend::IntegerLattice:
                return lattice_->contains(g.vec);
            case OracleBackend::FiberProjection:
                if (g.power != 0) return false;
                if (lattice_) return lattice_->contains(g.vec);
                return folded_->graph.member(g.word);
            case OracleBackend::CyclicRoot:
                return cyclic_exponent(g).has_value();
            case OracleBackend::FactorProjection: {
                if (ambient_->kind == GroupKind::FreeGroup) {
                    for (int letter : g.word)
                        if (!coord_index(std::abs(letter) - 1)) return false;
                    return true;
                }
                for (int i = 0; i < ambient_->rank; ++i)
                    if (g.vec[(size_t)i] != 0 && !coord_index(i)) return false;
                return true;
            }
            case OracleBackend::BoundedSearch:
                if (bounded_table_.count(g)) return true;
                return std::nullopt;
        }
        return std::nullopt;
    }

    bool contains(const GroupElement& g) const {
        auto r = contains_checked(g);
        if (!r) throw OracleUnknown();
        return *r;
    }

    /// Edge-group element mapping to g under iota; NotInSubgroup otherwise.
    GroupElement preimage(const GroupElement& g) const {
        ambient_->check(g);
        GroupElement h = edge_group_.identity();
        switch (backend_) {
            case OracleBackend::StallingsGraph:
                h.word = folded_->preimage_word(g.word);
                break;
            case OracleBackend::IntegerLattice:
                h.vec = lattice_->solve_in_gens(g.vec);
                break;
            case OracleBackend::FiberProjection:
                if (g.power != 0) throw NotInSubgroup();
                if (lattice_) {
                    Vec c = lattice_->solve_in_gens(g.vec);
                    if (edge_group_.kind == GroupKind::FreeAbelian)
                        h.vec = c;
                    else
                        throw Error("fiber-projection over a lattice needs an abelian edge group");
                } else {
                    h.word = folded_->preimage_word(g.word);
                }
                break;
            case OracleBackend::CyclicRoot: {
                auto k = cyclic_exponent(g);
                if (!k) throw NotInSubgroup();
                if (edge_group_.kind == GroupKind::FreeAbelian)
                    h.vec[0] = *k;
                else
                    h.word = word_pow(Word{1}, *k);
                break;
            }
            case OracleBackend::FactorProjection: {
                if (ambient_->kind == GroupKind::FreeGroup) {
                    for (int letter : g.word) {
                        auto idx = coord_index(std::abs(letter) - 1);
                        if (!idx) throw NotInSubgroup();
                        h.word.push_back(letter > 0 ? (int)*idx + 1 : -((int)*idx + 1));
                    }
                } else {
                    for (int i = 0; i < ambient_->rank; ++i) {
                        if (g.vec[(size_t)i] == 0) continue;
                        auto idx = coord_index(i);
                        if (!idx) throw NotInSubgroup();
                        h.vec[*idx] = g.vec[(size_t)i];
                    }
                }
                break;
            }
            case OracleBackend::BoundedSearch: {
                auto it = bounded_table_.find(g);
                if (it == bounded_table_.end()) throw OracleUnknown();
                if (edge_group_.kind == GroupKind::FreeAbelian) {
                    for (int letter : it->second)
                        h.vec[(size_t)std::abs(letter) - 1] += letter > 0 ? 1 : -1;
                } else {
                    h.word = word_reduce(it->second);
                }
                break;
            }
        }
        return h;
    }

    /// Canonical representative of the left coset g * image(edge group),
    /// or nullopt when this backend has no canonical-form fast path.
    std::optional<GroupElement> coset_rep(const GroupElement& g) const {
        ambient_->check(g);
        GroupElement r = ambient_->identity();
        switch (backend_) {
            case OracleBackend::StallingsGraph:
                r.word = folded_->graph.left_coset_rep(g.word);
                return r;
            case OracleBackend::IntegerLattice:
                r.vec = lattice_->residue(g.vec).first;
                return r;
            case OracleBackend::FiberProjection:
                if (lattice_) {
                    // left coset of (v, k): v + A^k * (lattice); reduce v by
                    // the transformed lattice
                    const IntegerLatticeData& twisted = twisted_lattice(g.power);
                    r.vec = twisted.residue(g.vec).first;
                    r.power = g.power;
                    return r;
                }
                if (folded_->graph.state_count() == 1 &&
                    (int)folded_->graph.rank() == ambient_->rank) {
                    r.power = g.power; // full fiber: coset determined by the Z-part
                    return r;
                }
                return std::nullopt;
            case OracleBackend::CyclicRoot:
                return cyclic_coset_rep(g);
            case OracleBackend::FactorProjection:
                if (ambient_->kind == GroupKind::FreeGroup) {
                    Word w = g.word;
                    while (!w.empty() && coord_index(std::abs(w.back()) - 1)) w.pop_back();
                    r.word = w;
                } else {
                    r.vec = g.vec;
                    for (int c : factor_coords_) r.vec[(size_t)c] = 0;
                }
                return r;
            case OracleBackend::BoundedSearch:
                return std::nullopt;
        }
        return std::nullopt;
    }

    /// Element of rep * subgroup within word-metric `radius` of `target`
    /// minimizing that distance (deterministic first minimum), with the
    /// distance; nullopt when the ball around target contains none.
    std::optional<std::pair<GroupElement, long long>> nearest_in_coset(
        const GroupElement& target, const GroupElement& rep, int radius) const {
        ambient_->check(target);
        ambient_->check(rep);
        GroupElement rep_inv = ambient_->invert(rep);
        BallEnumerator& ball = ambient_ball();
        for (int r = 0; r <= radius; ++r) {
            for (const GroupElement& u : ball.sphere(r)) {
                GroupElement m = ambient_->multiply(target, u);
                auto c = contains_checked(ambient_->multiply(rep_inv, m));
                if (c && *c) return std::make_pair(m, (long long)r);
            }
        }
        return std::nullopt;
    }

  private:
    const GroupCatalogEntry* ambient_;
    GroupCatalogEntry edge_group_;
    std::vector<GroupElement> images_;
    OracleBackend backend_;
    int cutoff_;

    std::unique_ptr<FoldedOracleData> folded_;
    std::unique_ptr<IntegerLatticeData> lattice_;
    std::vector<int> factor_coords_;
    std::map<GroupElement, Word> bounded_table_; // element -> edge-gen word
    mutable std::map<long long, IntegerLatticeData> twisted_cache_;
    mutable std::unique_ptr<BallEnumerator> ball_;

    std::vector<Word> image_words() const {
        std::vector<Word> ws;
        for (const auto& g : images_) ws.push_back(g.word);
        return ws;
    }

    BallEnumerator& ambient_ball() const {
        if (!ball_) ball_ = std::make_unique<BallEnumerator>(*ambient_);
        return *ball_;
    }

    std::optional<size_t> coord_index(int ambient_coord) const {
        for (size_t i = 0; i < factor_coords_.size(); ++i)
            if (factor_coords_[i] == ambient_coord) return i;
        return std::nullopt;
    }

    int single_basis_coordinate(const GroupElement& g) const {
        if (ambient_->kind == GroupKind::FreeGroup)
            return g.word.size() == 1 && g.word[0] > 0 ? g.word[0] - 1 : -1;
        int coord = -1;
        for (int i = 0; i < ambient_->rank; ++i) {
            if (g.vec[(size_t)i] == 0) continue;
            if (coord >= 0 || g.vec[(size_t)i] != 1) return -1;
            coord = i;
        }
        return coord;
    }

    /// Word over edge-group generator indices representing h.
    Word edge_generator_word(const GroupElement& h) const {
        switch (edge_group_.kind) {
            case GroupKind::FreeGroup:
                return h.word;
            case GroupKind::FreeAbelian: {
                Word w;
                for (int i = 0; i < edge_group_.rank; ++i) {
                    long long v = h.vec[(size_t)i];
                    for (long long j = 0; j < std::llabs(v); ++j)
                        w.push_back(v > 0 ? i + 1 : -(i + 1));
                }
                return w;
            }
            default:
                throw Error("edge groups must be free or free abelian");
        }
    }

    void build_bounded_table() {
        bounded_table_[ambient_->identity()] = Word{};
        std::vector<std::pair<GroupElement, Word>> frontier{{ambient_->identity(), Word{}}};
        for (int len = 1; len <= cutoff_; ++len) {
            std::vector<std::pair<GroupElement, Word>> next;
            for (const auto& [g, w] : frontier) {
                for (size_t gi = 0; gi < images_.size(); ++gi) {
                    for (int sign : {1, -1}) {
                        int letter = sign * (int)(gi + 1);
                        if (!w.empty() && w.back() == -letter) continue;
                        GroupElement g2 = ambient_->multiply(
                            g, sign > 0 ? images_[gi] : ambient_->invert(images_[gi]));
                        Word w2 = w;
                        w2.push_back(letter);
                        if (bounded_table_.emplace(g2, w2).second) next.push_back({g2, w2});
                    }
                }
            }
            frontier = std::move(next);
        }
    }

    const IntegerLatticeData& twisted_lattice(long long k) const {
        auto it = twisted_cache_.find(k);
        if (it != twisted_cache_.end()) return it->second;
        Mat2 ak = mat2_pow(ambient_->matrix, k);
        std::vector<Vec> vs;
        for (const Vec& v : lattice_->gens) {
            auto t = mat2_apply(ak, v[0], v[1]);
            vs.push_back({t[0], t[1]});
        }
        return twisted_cache_.emplace(k, IntegerLatticeData(2, vs)).first->second;
    }

    // ---- cyclic root ------------------------------------------------------

    /// Exponent k with z^k = g, if any.
    std::optional<long long> cyclic_exponent(const GroupElement& g) const {
        const GroupElement& z = images_[0];
        if (g.is_identity()) return 0;
        switch (ambient_->kind) {
            case GroupKind::FreeGroup:
                return free_word_root(z.word, g.word);
            case GroupKind::FreeAbelian:
                return vector_root(z.vec, g.vec);
            case GroupKind::SemidirectZ2Z:
                if (z.power != 0) return verify_power_guess(z, g, g.power, z.power);
                if (g.power != 0) return std::nullopt;
                return vector_root(z.vec, g.vec);
            case GroupKind::FreeByCyclic:
                if (z.power != 0) return verify_power_guess(z, g, g.power, z.power);
                if (g.power != 0) return std::nullopt;
                return free_word_root(z.word, g.word);
            case GroupKind::BaumslagSolitar: {
                if (z.power != 0) return verify_power_guess(z, g, g.power, z.power);
                if (g.power != 0) return std::nullopt;
                // solve k * (z.num / m^z.e) = g.num / m^g.e exactly
                long long num = g.num, den = z.num;
                int e = z.denom_exp - g.denom_exp;
                while (e > 0) { num *= ambient_->bs_m; --e; }
                while (e < 0) { den *= ambient_->bs_m; ++e; }
                if (den == 0 || num % den != 0) return std::nullopt;
                return num / den;
            }
        }
        return std::nullopt;
    }

    std::optional<long long> verify_power_guess(const GroupElement& z, const GroupElement& g,
                                                long long g_part, long long z_part) const {
        if (z_part == 0 || g_part % z_part != 0) return std::nullopt;
        long long k = g_part / z_part;
        if (ambient_->power_of(z, k) == g) return k;
        return std::nullopt;
    }

    static std::optional<long long> vector_root(const Vec& z, const Vec& g) {
        std::optional<long long> k;
        for (size_t i = 0; i < z.size(); ++i) {
            if (z[i] == 0) {
                if (g[i] != 0) return std::nullopt;
                continue;
            }
            if (g[i] % z[i] != 0) return std::nullopt;
            long long ki = g[i] / z[i];
            if (k && *k != ki) return std::nullopt;
            k = ki;
        }
        if (!k) return std::nullopt; // z = 0 handled by identity case upstream
        return k;
    }

    /// Solve w = z^k in a free group via cyclic reduction.
    static std::optional<long long> free_word_root(const Word& z, const Word& w) {
        // z = u c u^-1 with c cyclically reduced
        Word u, c = z;
        while (c.size() >= 2 && c.front() == -c.back()) {
            u.push_back(c.front());
            c = Word(c.begin() + 1, c.end() - 1);
        }
        if (c.empty()) return std::nullopt;
        // then z^k = u c^k u^-1 and |z^k| = 2|u| + |k||c|
        long long core = (long long)w.size() - 2 * (long long)u.size();
        if (core <= 0 || core % (long long)c.size() != 0) return std::nullopt;
        long long k = core / (long long)c.size();
        for (long long sign : {1, -1}) {
            Word cand = word_mul(word_mul(u, word_pow(c, sign * k)), word_inv(u));
            if (cand == w) return sign * k;
        }
        return std::nullopt;
    }

    std::optional<GroupElement> cyclic_coset_rep(const GroupElement& g) const {
        const GroupElement& z = images_[0];
        GroupElement r = ambient_->identity();
        switch (ambient_->kind) {
            case GroupKind::FreeGroup: {
                StallingsGraph sg({z.word});
                r.word = sg.left_coset_rep(g.word);
                return r;
            }
            case GroupKind::FreeAbelian: {
                IntegerLatticeData lat(ambient_->rank, {z.vec});
                r.vec = lat.residue(g.vec).first;
                return r;
            }
            case GroupKind::SemidirectZ2Z:
                if (z.power != 0) {
                    // reduce the Z-part canonically into [0, |z.power|)
                    long long q = g.power / z.power;
                    if (g.power % z.power < 0) q -= (z.power > 0 ? 1 : -1);
                    return ambient_->multiply(g, ambient_->power_of(z, -q));
                } else {
                    if (g.power != 0) {
                        // coset of (v,k) under fiber vector z: reduce v by A^k z
                        Mat2 ak = mat2_pow(ambient_->matrix, g.power);
                        auto t = mat2_apply(ak, z.vec[0], z.vec[1]);
                        IntegerLatticeData lat(2, {{t[0], t[1]}});
                        r.vec = lat.residue(g.vec).first;
                        r.power = g.power;
                        return r;
                    }
                    IntegerLatticeData lat(2, {z.vec});
                    r.vec = lat.residue(g.vec).first;
                    return r;
                }
            case GroupKind::BaumslagSolitar: {
                if (z.power != 0) {
                    if (z.power != 1 && z.power != -1) return std::nullopt;
                    return std::nullopt; // cosets of <t>-like subgroups: no fast path
                }
                // g * x^k shifts num by k * z.num * m^(g.power + g.denom_exp);
                // canonical residue of num modulo that stride when positive
                if (z.num != 1 || z.denom_exp != 0) return std::nullopt;
                long long shift_exp = g.power + g.denom_exp;
                r.power = g.power;
                r.denom_exp = g.denom_exp;
                if (shift_exp <= 0) {
                    r.num = 0; // stride divides the value grid: single residue
                    r.denom_exp = 0;
                    r.power = g.power;
                    return r;
                }
                long long stride = 1;
                for (long long i = 0; i < shift_exp; ++i) stride *= ambient_->bs_m;
                long long res = g.num % stride;
                if (res < 0) res += stride;
                r.num = res;
                // keep denom_exp normalization
                while (r.denom_exp > 0 && r.num % ambient_->bs_m == 0) {
                    r.num /= ambient_->bs_m;
                    --r.denom_exp;
                }
                if (r.num == 0) r.denom_exp = 0;
                return r;
            }
            default:
                return std::nullopt;
        }
    }
};

} // namespace gog
