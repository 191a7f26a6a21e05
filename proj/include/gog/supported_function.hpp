#pragma once

#include <map>

#include "gog/rational.hpp"

namespace gog {

/// Finitely supported nonnegative-rational-valued function on an arbitrary
/// ordered element type. Zero entries are never stored.
template <class Elem>
class FnOn {
  public:
    using Map = std::map<Elem, Rational>;

    const Map& values() const { return values_; }
    bool empty() const { return values_.empty(); }
    size_t support_size() const { return values_.size(); }

    Rational at(const Elem& x) const {
        auto it = values_.find(x);
        return it == values_.end() ? Rational(0) : it->second;
    }

    void set(const Elem& x, const Rational& v) {
        if (v == 0)
            values_.erase(x);
        else
            values_[x] = v;
    }

    void add(const Elem& x, const Rational& v) {
        if (v == 0) return;
        Rational& slot = values_[x];
        slot += v;
        if (slot == 0) values_.erase(x);
    }

    Rational l2_norm_sq() const {
        Rational s = 0;
        for (const auto& [k, v] : values_) s += v * v;
        return s;
    }

    Rational l1_norm() const {
        Rational s = 0;
        for (const auto& [k, v] : values_) s += abs(v);
        return s;
    }

  private:
    Map values_;
};

/// Exact convolution (f * g)(x) = sum over supp(f) of f(y) g(y^-1 x),
/// computed as sum_{y,z} f(y) g(z) delta_{yz}; `mul` composes elements.
template <class Elem, class Mul>
FnOn<Elem> convolve_with(const FnOn<Elem>& f, const FnOn<Elem>& g, Mul&& mul) {
    FnOn<Elem> out;
    for (const auto& [y, fy] : f.values())
        for (const auto& [z, gz] : g.values()) out.add(mul(y, z), fy * gz);
    return out;
}

template <class Elem>
FnOn<Elem> fn_sum(const FnOn<Elem>& a, const FnOn<Elem>& b) {
    FnOn<Elem> out = a;
    for (const auto& [k, v] : b.values()) out.add(k, v);
    return out;
}

template <class Elem>
FnOn<Elem> fn_scale(const FnOn<Elem>& a, const Rational& c) {
    FnOn<Elem> out;
    for (const auto& [k, v] : a.values()) out.add(k, c * v);
    return out;
}

} // namespace gog
