#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "gog/errors.hpp"
#include "gog/group.hpp"

namespace gog {

/// Coordinates of an integer vector in the eigenbasis (v_u, v_s).
struct FoliationCoordinates {
    double a_u = 0;
    double a_s = 0;
};

/// Hyperbolic element of SL2(Z) acting linearly on Z^2, with its expanding
/// and contracting eigendirections. Eigenvectors are unit length with the
/// first nonzero coordinate positive, so all derived data is deterministic.
class AnosovMap {
  public:
    explicit AnosovMap(const Mat2& a) : a_(a) {
        long long det = a[0] * a[3] - a[1] * a[2];
        if (det != 1) throw Error("expected determinant 1");
        long long tr = a[0] + a[3];
        if (tr <= 2 && tr >= -2) throw NotHyperbolic();
        double t = (double)tr;
        double disc = std::sqrt(t * t - 4.0);
        lambda_ = (t + (t > 0 ? disc : -disc)) / 2.0; // dominant eigenvalue
        v_u_ = eigenvector(lambda_);
        v_s_ = eigenvector(1.0 / lambda_);
    }

    const Mat2& matrix() const { return a_; }
    double lambda() const { return lambda_; }
    const std::array<double, 2>& v_u() const { return v_u_; }
    const std::array<double, 2>& v_s() const { return v_s_; }

    /// Largest of |A v - mu v| over both eigenpairs (construction sanity).
    double eigen_residual() const {
        return std::max(pair_residual(v_u_, lambda_), pair_residual(v_s_, 1.0 / lambda_));
    }

    FoliationCoordinates coordinates(long long x, long long y) const {
        double det = v_u_[0] * v_s_[1] - v_u_[1] * v_s_[0];
        FoliationCoordinates c;
        c.a_u = ((double)x * v_s_[1] - (double)y * v_s_[0]) / det;
        c.a_s = (v_u_[0] * (double)y - v_u_[1] * (double)x) / det;
        return c;
    }

    /// |gamma|_phi = |a_u| + |a_s|; zero exactly for the zero vector.
    double foliation_length(long long x, long long y) const {
        if (x == 0 && y == 0) return 0;
        FoliationCoordinates c = coordinates(x, y);
        return std::fabs(c.a_u) + std::fabs(c.a_s);
    }

    /// sl(gamma) = |a_u| / |a_s|; infinity when the vector lies on the
    /// unstable direction (impossible for nonzero integer vectors since the
    /// eigendirections are irrational, but kept total).
    double slope(long long x, long long y) const {
        if (x == 0 && y == 0) throw ZeroVector();
        FoliationCoordinates c = coordinates(x, y);
        if (c.a_s == 0) return std::numeric_limits<double>::infinity();
        return std::fabs(c.a_u) / std::fabs(c.a_s);
    }

    std::array<long long, 2> apply(long long x, long long y, long long iterate = 1) const {
        Mat2 p = mat2_pow(a_, iterate);
        return mat2_apply(p, x, y);
    }

  private:
    Mat2 a_;
    double lambda_ = 0;
    std::array<double, 2> v_u_{}, v_s_{};

    std::array<double, 2> eigenvector(double mu) const {
        // rows of A - mu I are both orthogonal complements of the eigenvector;
        // take the better conditioned of (b, mu - a) and (mu - d, c)
        std::array<double, 2> c1{(double)a_[1], mu - (double)a_[0]};
        std::array<double, 2> c2{mu - (double)a_[3], (double)a_[2]};
        double n1 = std::hypot(c1[0], c1[1]), n2 = std::hypot(c2[0], c2[1]);
        std::array<double, 2> v = n1 >= n2 ? c1 : c2;
        double n = std::hypot(v[0], v[1]);
        v[0] /= n;
        v[1] /= n;
        double lead = std::fabs(v[0]) > 1e-14 ? v[0] : v[1];
        if (lead < 0) {
            v[0] = -v[0];
            v[1] = -v[1];
        }
        return v;
    }

    double pair_residual(const std::array<double, 2>& v, double mu) const {
        double rx = (double)a_[0] * v[0] + (double)a_[1] * v[1] - mu * v[0];
        double ry = (double)a_[2] * v[0] + (double)a_[3] * v[1] - mu * v[1];
        return std::hypot(rx, ry);
    }
};

/// Window data for minimizing the foliation length of phi^j(gamma^n) over j.
struct IterateWindow {
    int window = 0;  // all minimizers lie in [-window, window], and outside it
                     // every length strictly exceeds the unmoved length
    int n_max = 1;
    /// j -> foliation lengths of phi^j(gamma^n) for n = 1..n_max, covering
    /// j in [-(window + 3), window + 3].
    std::map<int, std::vector<double>> lengths;
    double outward_rate_pos = 0; // length ratio stepping from j = window+2 to +3
    double outward_rate_neg = 0; // same on the negative side
    bool phi_power_free = true;  // phi(gamma) is not gamma^k for |k| <= 10
};

/// The length profile j -> |phi^j(gamma^n)|_phi is strictly convex with one
/// minimum; this finds the symmetric window capturing every value at most the
/// unmoved length, for every n up to n_max.
inline IterateWindow min_iterate_window(const AnosovMap& phi, long long x, long long y,
                                        int n_max) {
    if (x == 0 && y == 0) throw ZeroVector();
    if (n_max < 1) throw Error("window scan needs n_max >= 1");
    IterateWindow out;
    out.n_max = n_max;

    auto len_at = [&](int j, long long n) {
        auto w = phi.apply(n * x, n * y, j);
        return phi.foliation_length(w[0], w[1]);
    };

    double base = len_at(0, 1);
    int window = 0;
    for (int side : {1, -1}) {
        int j = side;
        while (len_at(j, 1) <= base) {
            window = std::max(window, std::abs(j));
            j += side;
        }
    }
    // scaling by n multiplies every length by n, but measure all n anyway
    for (long long n = 1; n <= n_max; ++n) {
        double unmoved = len_at(0, n);
        for (int side : {1, -1}) {
            int j = side;
            while (len_at(j, n) <= unmoved) {
                window = std::max(window, std::abs(j));
                j += side;
            }
        }
    }
    out.window = window;

    for (int j = -(window + 3); j <= window + 3; ++j) {
        std::vector<double> row;
        for (long long n = 1; n <= n_max; ++n) row.push_back(len_at(j, n));
        out.lengths[j] = std::move(row);
    }
    out.outward_rate_pos = len_at(window + 3, 1) / len_at(window + 2, 1);
    out.outward_rate_neg = len_at(-(window + 3), 1) / len_at(-(window + 2), 1);

    auto img = phi.apply(x, y);
    for (long long k = -10; k <= 10; ++k)
        if (img[0] == k * x && img[1] == k * y) out.phi_power_free = false;
    return out;
}

/// Exact exponents (u, v) with w = gamma^u eta^v in Z^2, for an integer basis
/// (gamma, eta). Uses the adjugate of the basis matrix, so the result is an
/// exact integer solve.
struct MeridianExponents {
    long long u = 0;
    long long v = 0;
};

inline MeridianExponents meridian_decomposition(long long wx, long long wy, long long gx,
                                                long long gy, long long ex, long long ey) {
    long long det = gx * ey - gy * ex;
    if (det != 1 && det != -1) throw NotABasis();
    MeridianExponents out;
    out.u = (wx * ey - wy * ex) / det;
    out.v = (gx * wy - gy * wx) / det;
    return out;
}

/// Empirical meridian constant: over all (j, n) in the window table where the
/// iterate is shorter than gamma^n, the eta-part carries at least a fixed
/// fraction of the unmoved length; C is the worst observed ratio.
struct MeridianScan {
    double c_emp = 0;
    long long cases = 0;
};

inline MeridianScan meridian_scan(const AnosovMap& phi, long long gx, long long gy,
                                  long long ex, long long ey, int n_max, int j_max) {
    MeridianScan out;
    for (int j = -j_max; j <= j_max; ++j) {
        for (long long n = 1; n <= n_max; ++n) {
            auto w = phi.apply(n * gx, n * gy, j);
            double moved = phi.foliation_length(w[0], w[1]);
            double unmoved = phi.foliation_length(n * gx, n * gy);
            if (moved >= unmoved) continue;
            MeridianExponents uv = meridian_decomposition(w[0], w[1], gx, gy, ex, ey);
            double eta_part = phi.foliation_length(uv.v * ex, uv.v * ey);
            if (eta_part <= 0) continue;
            out.c_emp = std::max(out.c_emp, unmoved / eta_part);
            ++out.cases;
        }
    }
    return out;
}

} // namespace gog
