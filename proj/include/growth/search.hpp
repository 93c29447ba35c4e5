#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <utility>

namespace growth {

/// Golden-section maximization on [lo, hi]; fixed iteration count keeps the
/// result deterministic. Returns (argmax, max).
inline std::pair<double, double> golden_max(const std::function<double(double)>& f,
                                            double lo, double hi, int iters = 90) {
    const double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters && (b - a) > 1e-14 * (1.0 + std::fabs(a) + std::fabs(b)); ++i) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return fc > fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

inline std::pair<double, double> golden_min(const std::function<double(double)>& f,
                                            double lo, double hi, int iters = 90) {
    auto [x, v] = golden_max([&f](double t) { return -f(t); }, lo, hi, iters);
    return {x, -v};
}

/// Least-squares slope of y against x over index range [first, last).
inline double ls_slope(std::span<const double> xs, std::span<const double> ys,
                       std::size_t first, std::size_t last) {
    const std::size_t n = last - first;
    if (n < 2) return 0.0;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = first; i < last; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = first; i < last; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxx > 0.0 ? sxy / sxx : 0.0;
}

} // namespace growth
