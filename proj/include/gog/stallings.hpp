#pragma once

#include <array>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "gog/errors.hpp"
#include "gog/word.hpp"

namespace gog {

/// Folded subgroup graph for a finitely generated subgroup of a free group.
/// States carry partial letter-labeled transitions (letter +i / -i as in
/// Word); folded means no state has two distinct transitions with the same
/// label. Membership is deterministic tracing from the base state (state 0).
class StallingsGraph {
  public:
    explicit StallingsGraph(const std::vector<Word>& generator_words) {
        for (const Word& w : generator_words) add_loop(word_reduce(w));
        fold();
        build_spanning_tree();
    }

    size_t state_count() const { return states_.size(); }
    size_t rank() const { return basis_.size(); }

    /// Trace a reduced word from `from`; nullopt once a transition is missing.
    std::optional<int> trace(int from, const Word& w) const {
        int s = from;
        for (int letter : w) {
            auto it = states_[(size_t)s].find(letter);
            if (it == states_[(size_t)s].end()) return std::nullopt;
            s = it->second;
        }
        return s;
    }

    bool member(const Word& w) const {
        auto end = trace(0, word_reduce(w));
        return end && *end == 0;
    }

    /// Express a member as a word in the free basis of the subgroup carried by
    /// the non-tree edges (letters +-(i+1) referring to basis_[i]).
    /// Throws NotInSubgroup for non-members.
    Word express_in_basis(const Word& w) const {
        Word reduced = word_reduce(w);
        Word out;
        int s = 0;
        for (int letter : reduced) {
            auto it = states_[(size_t)s].find(letter);
            if (it == states_[(size_t)s].end()) throw NotInSubgroup();
            auto et = edge_basis_.find({s, letter});
            if (et != edge_basis_.end()) word_push(out, et->second);
            s = it->second;
        }
        if (s != 0) throw NotInSubgroup();
        return out;
    }

    /// Ambient word of basis element i+1 (loop through one non-tree edge).
    const Word& basis_word(size_t i) const { return basis_[i]; }

    /// Canonical representative of the right coset H*w: the shortest-path
    /// label to the endpoint of the maximal traceable prefix, followed by the
    /// untraceable remainder. Two words get equal representatives iff they
    /// lie in the same right coset.
    Word right_coset_rep(const Word& w) const {
        Word reduced = word_reduce(w);
        int s = 0;
        size_t consumed = 0;
        while (consumed < reduced.size()) {
            auto it = states_[(size_t)s].find(reduced[consumed]);
            if (it == states_[(size_t)s].end()) break;
            s = it->second;
            ++consumed;
        }
        Word rep = tree_path_[(size_t)s];
        for (size_t i = consumed; i < reduced.size(); ++i) word_push(rep, reduced[i]);
        return rep;
    }

    /// Canonical representative of the left coset w*H.
    Word left_coset_rep(const Word& w) const {
        return word_inv(right_coset_rep(word_inv(w)));
    }

  private:
    using State = std::map<int, int>;
    std::vector<State> states_;
    std::vector<Word> basis_;                 // ambient word per basis element
    std::map<std::pair<int, int>, int> edge_basis_; // (state, letter) -> +-basis letter
    std::vector<Word> tree_path_;             // shortest word base -> state

    std::vector<std::array<int, 3>> raw_edges_; // (from, letter, to), both orientations
    int raw_state_count_ = 1;

    void add_loop(const Word& w) {
        int s = 0;
        for (size_t i = 0; i < w.size(); ++i) {
            int next = i + 1 == w.size() ? 0 : raw_state_count_++;
            raw_edges_.push_back({s, w[i], next});
            raw_edges_.push_back({next, -w[i], s});
            s = next;
        }
    }

    void fold() {
        std::vector<int> parent((size_t)raw_state_count_);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[(size_t)x] != x) x = parent[(size_t)x] = parent[(size_t)parent[(size_t)x]];
            return x;
        };
        // merge targets of equal-labelled edges at a common state until stable
        bool changed = true;
        while (changed) {
            changed = false;
            std::map<std::pair<int, int>, int> seen; // (class, letter) -> target class
            for (const auto& [from, letter, to] : raw_edges_) {
                int fc = find(from), tc = find(to);
                auto [it, inserted] = seen.emplace(std::make_pair(fc, letter), tc);
                if (!inserted && find(it->second) != tc) {
                    parent[(size_t)find(it->second)] = tc;
                    changed = true;
                }
            }
        }
        // compact to the surviving classes, base class first
        std::map<int, int> renumber;
        renumber[find(0)] = 0;
        for (int s = 0; s < raw_state_count_; ++s) renumber.emplace(find(s), (int)renumber.size());
        states_.assign(renumber.size(), State{});
        for (const auto& [from, letter, to] : raw_edges_)
            states_[(size_t)renumber[find(from)]][letter] = renumber[find(to)];
        raw_edges_.clear();
    }

    void build_spanning_tree() {
        tree_path_.assign(states_.size(), Word{});
        std::vector<bool> seen(states_.size(), false);
        std::map<std::pair<int, int>, bool> tree_edge;
        seen[0] = true;
        std::deque<int> q{0};
        while (!q.empty()) {
            int s = q.front();
            q.pop_front();
            for (auto [letter, to] : states_[(size_t)s]) {
                if (seen[(size_t)to]) continue;
                seen[(size_t)to] = true;
                tree_edge[{s, letter}] = tree_edge[{to, -letter}] = true;
                tree_path_[(size_t)to] = tree_path_[(size_t)s];
                tree_path_[(size_t)to].push_back(letter);
                q.push_back(to);
            }
        }
        // each unordered non-tree edge pair contributes one basis element
        for (size_t s = 0; s < states_.size(); ++s) {
            for (auto [letter, to] : states_[s]) {
                if (tree_edge.count({(int)s, letter})) continue;
                if (edge_basis_.count({(int)s, letter})) continue;
                int idx = (int)basis_.size() + 1;
                edge_basis_[{(int)s, letter}] = idx;
                edge_basis_[{to, -letter}] = -idx;
                Word loop = tree_path_[s];
                word_push(loop, letter);
                for (const int step : word_inv(tree_path_[(size_t)to])) word_push(loop, step);
                basis_.push_back(loop);
            }
        }
    }
};

} // namespace gog
