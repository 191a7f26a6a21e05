#pragma once

#include <map>
#include <optional>
#include <vector>

#include "gog/errors.hpp"
#include "gog/group.hpp"

namespace gog {

inline constexpr long long kDefaultElementBudget = 5'000'000;

/// Breadth-first ball of a group with respect to its declared generating set.
/// Spheres are produced in a deterministic order (discovery order under a
/// fixed generator ordering), so every downstream enumeration is reproducible.
class BallEnumerator {
  public:
    explicit BallEnumerator(const GroupCatalogEntry& group,
                            long long element_budget = kDefaultElementBudget)
        : group_(&group), budget_(element_budget) {
        GroupElement id = group.identity();
        lengths_[id] = 0;
        spheres_.push_back({id});
        moves_ = group.symmetric_generators();
    }

    const GroupCatalogEntry& group() const { return *group_; }

    /// Completed radius so far.
    int radius() const { return (int)spheres_.size() - 1; }

    long long size() const { return (long long)lengths_.size(); }

    /// Grow to the requested radius. Throws BudgetExceeded (with the last
    /// fully completed radius) if the element budget would be passed; the
    /// enumerator stays valid at that partial radius.
    void extend_to(int target_radius) {
        while (radius() < target_radius) {
            std::vector<GroupElement> next;
            for (const GroupElement& g : spheres_.back()) {
                for (const GroupElement& s : moves_) {
                    GroupElement h = group_->multiply(g, s);
                    auto [it, inserted] = lengths_.emplace(h, radius() + 1);
                    if (inserted) {
                        next.push_back(h);
                        if (size() > budget_) {
                            for (const GroupElement& undo : next) lengths_.erase(undo);
                            throw BudgetExceeded(radius());
                        }
                    }
                }
            }
            spheres_.push_back(std::move(next));
        }
    }

    const std::vector<GroupElement>& sphere(int r) {
        extend_to(r);
        return spheres_[(size_t)r];
    }

    /// All elements with length <= r, in length-then-discovery order.
    std::vector<GroupElement> ball(int r) {
        extend_to(r);
        std::vector<GroupElement> out;
        for (int i = 0; i <= r; ++i)
            out.insert(out.end(), spheres_[(size_t)i].begin(), spheres_[(size_t)i].end());
        return out;
    }

    long long sphere_size(int r) { return (long long)sphere(r).size(); }

    long long ball_size(int r) {
        extend_to(r);
        long long s = 0;
        for (int i = 0; i <= r; ++i) s += (long long)spheres_[(size_t)i].size();
        return s;
    }

    /// Length if the element is inside the current ball, otherwise nullopt.
    std::optional<long long> known_length(const GroupElement& g) const {
        auto it = lengths_.find(g);
        if (it == lengths_.end()) return std::nullopt;
        return it->second;
    }

    const std::map<GroupElement, int>& length_map() const { return lengths_; }

  private:
    const GroupCatalogEntry* group_;
    long long budget_;
    std::vector<GroupElement> moves_;
    std::vector<std::vector<GroupElement>> spheres_;
    std::map<GroupElement, int> lengths_;
};

/// Word-length oracle: closed form where one exists, shared BFS ball otherwise.
class LengthTable {
  public:
    explicit LengthTable(const GroupCatalogEntry& group,
                         long long element_budget = kDefaultElementBudget)
        : group_(&group), ball_(group, element_budget) {}

    const GroupCatalogEntry& group() const { return *group_; }
    BallEnumerator& ball() { return ball_; }

    /// Word length of g over the declared generators, searching out to
    /// `cutoff` if BFS is needed. nullopt means "longer than cutoff";
    /// BudgetExceeded propagates if even the cutoff ball is too large.
    std::optional<long long> length(const GroupElement& g, int cutoff = 64) {
        if (group_->has_closed_form_length()) return group_->closed_form_length(g);
        if (auto l = ball_.known_length(g)) return l;
        while (ball_.radius() < cutoff) {
            ball_.extend_to(ball_.radius() + 1);
            if (auto l = ball_.known_length(g)) return l;
        }
        return std::nullopt;
    }

    /// Length that must exist below the cutoff; throws otherwise.
    long long length_checked(const GroupElement& g, int cutoff = 64) {
        auto l = length(g, cutoff);
        if (!l) throw Error("element length exceeds cutoff " + std::to_string(cutoff));
        return *l;
    }

  private:
    const GroupCatalogEntry* group_;
    BallEnumerator ball_;
};

} // namespace gog
