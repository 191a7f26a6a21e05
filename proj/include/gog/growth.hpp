#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "gog/errors.hpp"

namespace gog {

enum class GrowthKind { Bounded, Polynomial, AtLeastExponential, Inconclusive };

inline const char* growth_kind_name(GrowthKind k) {
    switch (k) {
        case GrowthKind::Bounded: return "bounded";
        case GrowthKind::Polynomial: return "polynomial";
        case GrowthKind::AtLeastExponential: return "at-least-exponential";
        case GrowthKind::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct GrowthClassification {
    GrowthKind kind = GrowthKind::Inconclusive;
    double degree = 0;          // log-log slope (polynomial label)
    double rate = 0;            // semilog slope (exponential label)
    double loglog_residual = 0; // mean squared residual of the power-law fit
    double semilog_residual = 0;
};

namespace detail {

struct Fit {
    double slope = 0;
    double intercept = 0;
    double mean_sq_residual = 0;
};

inline Fit least_squares(const std::vector<std::pair<double, double>>& pts) {
    double n = (double)pts.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    Fit f;
    double denom = n * sxx - sx * sx;
    f.slope = denom == 0 ? 0 : (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    for (auto [x, y] : pts) {
        double r = y - (f.slope * x + f.intercept);
        f.mean_sq_residual += r * r;
    }
    f.mean_sq_residual /= n;
    return f;
}

} // namespace detail

/// Decide between bounded / power-law / exponential behavior of a measured
/// curve by comparing a log-log fit against a semilog fit. Scale-invariant:
/// rescaling all values only shifts intercepts. Needs at least 5 samples.
inline GrowthClassification classify_growth(
    const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 5) throw TooFewSamples();
    GrowthClassification out;

    // plateau: the last third of the curve stays within 5 percent
    size_t tail_start = samples.size() - std::max<size_t>(2, samples.size() / 3);
    double tail_min = samples[tail_start].second, tail_max = tail_min;
    for (size_t i = tail_start; i < samples.size(); ++i) {
        tail_min = std::min(tail_min, samples[i].second);
        tail_max = std::max(tail_max, samples[i].second);
    }
    if (tail_min > 0 && tail_max / tail_min <= 1.05) {
        out.kind = GrowthKind::Bounded;
        return out;
    }
    if (tail_min == 0 && tail_max == 0) {
        out.kind = GrowthKind::Bounded;
        return out;
    }

    std::vector<std::pair<double, double>> loglog, semilog;
    for (auto [n, v] : samples) {
        if (n <= 0 || v <= 0) continue;
        loglog.push_back({std::log(n), std::log(v)});
        semilog.push_back({n, std::log(v)});
    }
    if (loglog.size() < 5) {
        out.kind = GrowthKind::Inconclusive;
        return out;
    }
    detail::Fit power = detail::least_squares(loglog);
    detail::Fit expo = detail::least_squares(semilog);
    out.degree = power.slope;
    out.rate = expo.slope;
    out.loglog_residual = power.mean_sq_residual;
    out.semilog_residual = expo.mean_sq_residual;

    if (power.mean_sq_residual <= expo.mean_sq_residual) {
        // slope stabilization: the fit on the back half must agree within 0.5
        std::vector<std::pair<double, double>> back(loglog.begin() + (long)loglog.size() / 2,
                                                    loglog.end());
        detail::Fit back_fit = detail::least_squares(back);
        if (std::fabs(back_fit.slope - power.slope) <= 0.5) {
            out.kind = GrowthKind::Polynomial;
            return out;
        }
        out.kind = GrowthKind::Inconclusive;
        return out;
    }
    if (expo.slope > 0) {
        out.kind = GrowthKind::AtLeastExponential;
        return out;
    }
    out.kind = GrowthKind::Inconclusive;
    return out;
}

} // namespace gog
