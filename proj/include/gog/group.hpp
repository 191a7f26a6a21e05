#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "gog/errors.hpp"
#include "gog/word.hpp"

namespace gog {

enum class GroupKind {
    FreeGroup,
    FreeAbelian,
    SemidirectZ2Z,
    FreeByCyclic,
    BaumslagSolitar,
};

using Vec = std::vector<long long>;
using Mat2 = std::array<long long, 4>; // row major [a b; c d]

inline Mat2 mat2_mul(const Mat2& x, const Mat2& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

inline Mat2 mat2_identity() { return {1, 0, 0, 1}; }

/// Inverse of a determinant-one integer matrix.
inline Mat2 mat2_inv_det1(const Mat2& m) { return {m[3], -m[1], -m[2], m[0]}; }

inline Mat2 mat2_pow(Mat2 base, long long k) {
    if (k < 0) {
        base = mat2_inv_det1(base);
        k = -k;
    }
    Mat2 r = mat2_identity();
    while (k > 0) {
        if (k & 1) r = mat2_mul(r, base);
        base = mat2_mul(base, base);
        k >>= 1;
    }
    return r;
}

inline std::array<long long, 2> mat2_apply(const Mat2& m, long long x, long long y) {
    return {m[0] * x + m[1] * y, m[2] * x + m[3] * y};
}

/// Canonical-form element of one of the catalog group kinds.
///
/// FreeGroup:       word (freely reduced, letters index the free basis)
/// FreeAbelian:     vec
/// SemidirectZ2Z:   vec (fiber part) and power (Z-factor, rightmost)
/// FreeByCyclic:    word (fiber part) and power (Z-factor, rightmost)
/// BaumslagSolitar: affine normal form z -> m^power z + num/m^denom_exp,
///                  denom_exp >= 0 and minimal
struct GroupElement {
    GroupKind kind = GroupKind::FreeGroup;
    Word word;
    Vec vec;
    long long power = 0;
    long long num = 0;
    int denom_exp = 0;

    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;

    bool is_identity() const {
        if (word.size() || power || num || denom_exp) return false;
        for (long long v : vec)
            if (v) return false;
        return true;
    }
};

/// Compact unique serialization of an element's canonical form, usable as a
/// deduplication key.
inline std::string element_key(const GroupElement& g) {
    std::string s;
    s += std::to_string((int)g.kind);
    s += 'w';
    for (int letter : g.word) s += std::to_string(letter) + ",";
    s += 'v';
    for (long long x : g.vec) s += std::to_string(x) + ",";
    s += 'p';
    s += std::to_string(g.power);
    s += 'n';
    s += std::to_string(g.num);
    s += 'd';
    s += std::to_string(g.denom_exp);
    return s;
}

struct NamedGenerator {
    std::string name;
    GroupElement value;
    // For FreeGroup entries declared over a redundant generating set, the
    // defining word in the free basis (equal to value.word).
};

/// One entry of the group catalog: kind-specific data plus the declared
/// finite generating set used by all length computations.
struct GroupCatalogEntry {
    GroupKind kind = GroupKind::FreeGroup;
    int rank = 0;                       // FreeGroup / FreeAbelian / FreeByCyclic
    Mat2 matrix = mat2_identity();      // SemidirectZ2Z
    std::vector<Word> aut_images;       // FreeByCyclic
    std::vector<Word> aut_inverse_images;
    long long bs_m = 0;                 // BaumslagSolitar(1, m)
    std::vector<NamedGenerator> generators;
    bool standard_generators = true;    // generators are the canonical defaults

    // ---- construction -----------------------------------------------------

    static GroupCatalogEntry free_group(int rank, std::vector<std::string> names = {}) {
        GroupCatalogEntry g;
        g.kind = GroupKind::FreeGroup;
        g.rank = rank;
        for (int i = 0; i < rank; ++i) {
            NamedGenerator ng;
            ng.name = i < (int)names.size() ? names[i] : "x" + std::to_string(i + 1);
            ng.value = g.identity();
            ng.value.word = {i + 1};
            g.generators.push_back(ng);
        }
        return g;
    }

    /// Free group declared over arbitrary generating words (possibly redundant).
    static GroupCatalogEntry free_group_with_generators(
        int rank, std::vector<std::pair<std::string, Word>> gens) {
        GroupCatalogEntry g;
        g.kind = GroupKind::FreeGroup;
        g.rank = rank;
        g.standard_generators = false;
        for (auto& [name, w] : gens) {
            NamedGenerator ng;
            ng.name = name;
            ng.value = g.identity();
            ng.value.word = word_reduce(w);
            g.generators.push_back(ng);
        }
        return g;
    }

    static GroupCatalogEntry free_abelian(int rank, std::vector<std::string> names = {}) {
        GroupCatalogEntry g;
        g.kind = GroupKind::FreeAbelian;
        g.rank = rank;
        for (int i = 0; i < rank; ++i) {
            NamedGenerator ng;
            ng.name = i < (int)names.size() ? names[i] : "e" + std::to_string(i + 1);
            ng.value = g.identity();
            ng.value.vec[i] = 1;
            g.generators.push_back(ng);
        }
        return g;
    }

    static GroupCatalogEntry semidirect_z2_z(const Mat2& a,
                                             std::vector<std::string> names = {}) {
        if (a[0] * a[3] - a[1] * a[2] != 1)
            throw Error("SemidirectZ2Z requires det(A) = 1");
        GroupCatalogEntry g;
        g.kind = GroupKind::SemidirectZ2Z;
        g.rank = 2;
        g.matrix = a;
        std::vector<std::string> def = {"e1", "e2", "t"};
        for (int i = 0; i < 3; ++i) {
            NamedGenerator ng;
            ng.name = i < (int)names.size() ? names[i] : def[i];
            ng.value = g.identity();
            if (i < 2)
                ng.value.vec[i] = 1;
            else
                ng.value.power = 1;
            g.generators.push_back(ng);
        }
        return g;
    }

    static GroupCatalogEntry free_by_cyclic(int rank, std::vector<Word> images,
                                            std::vector<std::string> names = {}) {
        GroupCatalogEntry g;
        g.kind = GroupKind::FreeByCyclic;
        g.rank = rank;
        for (auto& w : images) w = word_reduce(w);
        g.aut_images = images;
        g.check_aut_abelianization();
        g.aut_inverse_images = invert_triangular_aut(rank, images);
        for (int i = 0; i <= rank; ++i) {
            NamedGenerator ng;
            if (i < rank) {
                ng.name = i < (int)names.size() ? names[i] : "x" + std::to_string(i + 1);
                ng.value = g.identity();
                ng.value.word = {i + 1};
            } else {
                ng.name = i < (int)names.size() ? names[i] : "t";
                ng.value = g.identity();
                ng.value.power = 1;
            }
            g.generators.push_back(ng);
        }
        return g;
    }

    static GroupCatalogEntry baumslag_solitar(long long m,
                                              std::vector<std::string> names = {}) {
        if (m < 2) throw Error("BaumslagSolitar(1,m) requires m >= 2");
        GroupCatalogEntry g;
        g.kind = GroupKind::BaumslagSolitar;
        g.bs_m = m;
        std::vector<std::string> def = {"x", "t"};
        for (int i = 0; i < 2; ++i) {
            NamedGenerator ng;
            ng.name = i < (int)names.size() ? names[i] : def[i];
            ng.value = g.identity();
            if (i == 0)
                ng.value.num = 1;
            else
                ng.value.power = 1;
            g.generators.push_back(ng);
        }
        return g;
    }

    // ---- group law --------------------------------------------------------

    GroupElement identity() const {
        GroupElement e;
        e.kind = kind;
        if (kind == GroupKind::FreeAbelian || kind == GroupKind::SemidirectZ2Z)
            e.vec.assign(kind == GroupKind::SemidirectZ2Z ? 2 : rank, 0);
        return e;
    }

    void check(const GroupElement& g) const {
        if (g.kind != kind) throw ElementKindMismatch();
        if ((kind == GroupKind::FreeAbelian && (int)g.vec.size() != rank) ||
            (kind == GroupKind::SemidirectZ2Z && g.vec.size() != 2))
            throw ElementKindMismatch("vector element has wrong rank");
    }

    GroupElement multiply(const GroupElement& a, const GroupElement& b) const {
        check(a);
        check(b);
        GroupElement r = identity();
        switch (kind) {
            case GroupKind::FreeGroup:
                r.word = word_mul(a.word, b.word);
                break;
            case GroupKind::FreeAbelian:
                for (int i = 0; i < rank; ++i) r.vec[i] = a.vec[i] + b.vec[i];
                break;
            case GroupKind::SemidirectZ2Z: {
                Mat2 ak = mat2_pow(matrix, a.power);
                auto tv = mat2_apply(ak, b.vec[0], b.vec[1]);
                r.vec = {a.vec[0] + tv[0], a.vec[1] + tv[1]};
                r.power = a.power + b.power;
                break;
            }
            case GroupKind::FreeByCyclic:
                r.word = word_mul(a.word, apply_aut(b.word, a.power));
                r.power = a.power + b.power;
                break;
            case GroupKind::BaumslagSolitar: {
                // (m^p z + b1) o (m^q z + b2) = m^{p+q} z + m^p b2 + b1
                r.power = a.power + b.power;
                long long n2 = b.num;
                long long e2 = b.denom_exp;
                long long shift = a.power;
                if (shift >= 0) {
                    for (long long i = 0; i < shift; ++i) n2 *= bs_m;
                } else {
                    e2 += -shift;
                }
                // add a.num / m^a.denom_exp + n2 / m^e2
                long long e1 = a.denom_exp, n1 = a.num;
                long long e = std::max(e1, e2);
                for (long long i = e1; i < e; ++i) n1 *= bs_m;
                for (long long i = e2; i < e; ++i) n2 *= bs_m;
                r.num = n1 + n2;
                r.denom_exp = (int)e;
                bs_normalize(r);
                break;
            }
        }
        return r;
    }

    GroupElement invert(const GroupElement& a) const {
        check(a);
        GroupElement r = identity();
        switch (kind) {
            case GroupKind::FreeGroup:
                r.word = word_inv(a.word);
                break;
            case GroupKind::FreeAbelian:
                for (int i = 0; i < rank; ++i) r.vec[i] = -a.vec[i];
                break;
            case GroupKind::SemidirectZ2Z: {
                Mat2 amk = mat2_pow(matrix, -a.power);
                auto tv = mat2_apply(amk, a.vec[0], a.vec[1]);
                r.vec = {-tv[0], -tv[1]};
                r.power = -a.power;
                break;
            }
            case GroupKind::FreeByCyclic:
                r.word = apply_aut(word_inv(a.word), -a.power);
                r.power = -a.power;
                break;
            case GroupKind::BaumslagSolitar: {
                // inverse of z -> m^p z + b is z -> m^-p z - m^-p b
                r.power = -a.power;
                r.num = -a.num;
                r.denom_exp = a.denom_exp;
                if (a.power > 0) {
                    r.denom_exp += (int)a.power;
                } else {
                    for (long long i = 0; i < -a.power; ++i) r.num *= bs_m;
                }
                bs_normalize(r);
                break;
            }
        }
        return r;
    }

    GroupElement power_of(const GroupElement& a, long long n) const {
        GroupElement r = identity();
        GroupElement base = n >= 0 ? a : invert(a);
        for (long long i = 0; i < std::llabs(n); ++i) r = multiply(r, base);
        return r;
    }

    GroupElement generator(size_t i) const { return generators.at(i).value; }

    std::optional<size_t> generator_index(const std::string& name) const {
        for (size_t i = 0; i < generators.size(); ++i)
            if (generators[i].name == name) return i;
        return std::nullopt;
    }

    /// Element from a word over declared generator indices (letters as in Word:
    /// +i / -i refer to generators[i-1] and its inverse).
    GroupElement evaluate(const Word& gen_word) const {
        GroupElement r = identity();
        for (int letter : gen_word) {
            const GroupElement& g = generators.at((size_t)std::abs(letter) - 1).value;
            r = multiply(r, letter > 0 ? g : invert(g));
        }
        return r;
    }

    /// All generator moves (generators and their inverses) for BFS.
    std::vector<GroupElement> symmetric_generators() const {
        std::vector<GroupElement> out;
        for (const auto& ng : generators) {
            out.push_back(ng.value);
            GroupElement inv = invert(ng.value);
            if (inv != ng.value) out.push_back(inv);
        }
        return out;
    }

    bool has_closed_form_length() const {
        return standard_generators &&
               (kind == GroupKind::FreeGroup || kind == GroupKind::FreeAbelian);
    }

    /// Exact length where a closed form exists (free reduction / L1 norm).
    long long closed_form_length(const GroupElement& g) const {
        check(g);
        if (kind == GroupKind::FreeGroup) return (long long)g.word.size();
        long long s = 0;
        for (long long v : g.vec) s += std::llabs(v);
        return s;
    }

    Word apply_aut(const Word& w, long long k) const {
        Word r = w;
        const std::vector<Word>& imgs = k >= 0 ? aut_images : aut_inverse_images;
        for (long long i = 0; i < std::llabs(k); ++i) r = word_substitute(r, imgs);
        return r;
    }

    std::string element_str(const GroupElement& g) const {
        check(g);
        switch (kind) {
            case GroupKind::FreeGroup: {
                std::vector<std::string> basis;
                for (int i = 0; i < rank; ++i) basis.push_back(basis_name(i));
                return word_str(g.word, basis);
            }
            case GroupKind::FreeAbelian: {
                std::string s = "(";
                for (int i = 0; i < rank; ++i)
                    s += (i ? "," : "") + std::to_string(g.vec[i]);
                return s + ")";
            }
            case GroupKind::SemidirectZ2Z:
                return "((" + std::to_string(g.vec[0]) + "," + std::to_string(g.vec[1]) +
                       ")," + std::to_string(g.power) + ")";
            case GroupKind::FreeByCyclic: {
                std::vector<std::string> basis;
                for (int i = 0; i < rank; ++i) basis.push_back(basis_name(i));
                return "(" + word_str(g.word, basis) + "," + std::to_string(g.power) + ")";
            }
            case GroupKind::BaumslagSolitar:
                return "(a=" + std::to_string(g.power) + ",b=" + std::to_string(g.num) +
                       "/m^" + std::to_string(g.denom_exp) + ")";
        }
        return "?";
    }

    std::string basis_name(int i) const {
        // Standard-basis free groups name basis letters by their generators;
        // redundant generating sets keep anonymous basis letters b1, b2, ...
        if (kind == GroupKind::FreeGroup && standard_generators)
            return generators[(size_t)i].name;
        if (kind == GroupKind::FreeByCyclic) return generators[(size_t)i].name;
        return "b" + std::to_string(i + 1);
    }

  private:
    void bs_normalize(GroupElement& r) const {
        while (r.denom_exp > 0 && r.num % bs_m == 0) {
            r.num /= bs_m;
            --r.denom_exp;
        }
        if (r.num == 0) r.denom_exp = 0;
    }

    void check_aut_abelianization() const {
        // determinant of the abelianized map must be +-1
        int n = rank;
        std::vector<std::vector<long long>> m(n, std::vector<long long>(n, 0));
        for (int j = 0; j < n; ++j)
            for (int letter : aut_images[(size_t)j])
                m[(size_t)(std::abs(letter) - 1)][(size_t)j] += letter > 0 ? 1 : -1;
        // fraction-free Gaussian elimination determinant (Bareiss)
        long long det = 1;
        std::vector<std::vector<long long>> a = m;
        long long prev = 1;
        for (int k = 0; k < n; ++k) {
            if (a[(size_t)k][(size_t)k] == 0) {
                int swap_row = -1;
                for (int i = k + 1; i < n; ++i)
                    if (a[(size_t)i][(size_t)k] != 0) { swap_row = i; break; }
                if (swap_row < 0) { det = 0; break; }
                std::swap(a[(size_t)k], a[(size_t)swap_row]);
                det = -det;
            }
            for (int i = k + 1; i < n; ++i)
                for (int j = k + 1; j < n; ++j)
                    a[(size_t)i][(size_t)j] =
                        (a[(size_t)i][(size_t)j] * a[(size_t)k][(size_t)k] -
                         a[(size_t)i][(size_t)k] * a[(size_t)k][(size_t)j]) / prev;
            prev = a[(size_t)k][(size_t)k];
        }
        if (det != 0) det *= prev; // det carries the row-swap sign, prev the last pivot
        if (det != 1 && det != -1)
            throw Error("free-by-cyclic automorphism is not invertible on the abelianization");
    }

    /// Invert an automorphism given in triangular form: repeatedly find a
    /// generator whose image is x_i * w with w over already-solved letters.
    static std::vector<Word> invert_triangular_aut(int rank, const std::vector<Word>& images) {
        std::vector<Word> inv((size_t)rank);
        std::vector<bool> solved((size_t)rank, false);
        int remaining = rank;
        while (remaining > 0) {
            bool progress = false;
            for (int i = 0; i < rank; ++i) {
                if (solved[(size_t)i]) continue;
                const Word& img = images[(size_t)i];
                if (img.empty() || img[0] != i + 1) continue;
                Word tail(img.begin() + 1, img.end());
                bool ok = true;
                for (int letter : tail)
                    if (std::abs(letter) - 1 == i || !solved[(size_t)(std::abs(letter) - 1)]) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                // alpha(x_i) = x_i w  =>  alpha^{-1}(x_i) = x_i * alpha^{-1}(w^{-1})
                Word w_inv = word_inv(tail);
                inv[(size_t)i] = word_mul(Word{i + 1}, word_substitute(w_inv, inv));
                solved[(size_t)i] = true;
                --remaining;
                progress = true;
            }
            if (!progress)
                throw Error("cannot invert free-by-cyclic automorphism (not triangular)");
        }
        return inv;
    }
};

} // namespace gog
