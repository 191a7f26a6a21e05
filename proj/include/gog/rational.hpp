#pragma once

#include <gmpxx.h>

#include <string>

namespace gog {

/// Exact rational scalar used by all norm and convolution computations.
using Rational = mpq_class;

inline std::string rational_str(const Rational& q) { return q.get_str(); }

/// Canonicalized fraction; mpq_class(n, d) alone keeps the raw pair.
inline Rational make_rational(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline double rational_double(const Rational& q) { return q.get_d(); }

} // namespace gog
