#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "growth/spec.hpp"

namespace growth {

struct Interval {
    double lo;
    double hi;
    bool contains(double x) const { return x >= lo && x <= hi; }
    double clamp(double x) const { return x < lo ? lo : (x > hi ? hi : x); }
    double width() const { return hi - lo; }
};

/// Sampling and tolerance knobs shared by the whole toolkit. x is always the
/// logarithmic coordinate log t.
struct GridConfig {
    double x_min = std::log(1e-6);
    double x_max = std::log(1e12);
    int n_points = 2048;       // log-uniform samples in x
    double inv_rel_tol = 1e-10; // bisection tolerance for numeric inversion
    int inv_max_iter = 200;
    double slope_tol = 1e-6;   // edge-slope threshold for infinity verdicts
    double fd_step = 1e-4;     // central-difference step in x

    void validate() const; // throws DomainError
};

/// A growth function in logarithmic coordinates: eval(x) = log Phi(e^x),
/// its inverse, and the elasticity logderiv(x) = t Phi'(t)/Phi(t) at t = e^x.
/// Views are immutable and safe to call concurrently.
class LogView {
public:
    double eval(double x) const;
    double inv(double y) const;
    /// Closed form when the family provides one, otherwise a central
    /// difference of eval with the step the view was built with.
    double logderiv(double x) const;
    bool has_closed_logderiv() const { return static_cast<bool>(deriv_); }

    /// x-window where eval is representable in doubles.
    const Interval& x_domain() const { return xdom_; }
    /// y-window where inv is representable (the image of the x-window).
    const Interval& y_domain() const { return ydom_; }

    // Wired up by make_view.
    std::function<double(double)> eval_;
    std::function<double(double)> inv_;
    std::function<double(double)> deriv_; // empty when no closed form
    Interval xdom_{0, 0};
    Interval ydom_{0, 0};
    double fd_step_ = 1e-4;
};

/// Builds the evaluation object for a spec. Closed forms are used wherever
/// the family provides them; the missing direction is realized by guarded
/// bisection with geometric bracket expansion (tolerance cfg.inv_rel_tol,
/// at most cfg.inv_max_iter iterations).
LogView make_view(const SpecPtr& spec, const GridConfig& cfg = GridConfig{});

/// Elasticity at x, preferring the view's closed form and falling back to a
/// central difference with step cfg.fd_step (stencil clamped to the domain).
double log_derivative(const LogView& view, double x, const GridConfig& cfg);

/// Inclusive uniform grid with n >= 2 points.
std::vector<double> uniform_grid(double lo, double hi, int n);

/// Solves f(x) = target for strictly increasing f on dom by bracket expansion
/// (doubling steps from seed) followed by bisection. Throws ConvergenceError
/// when the target is outside f(dom) or the iteration cap is hit.
double invert_monotone(const std::function<double(double)>& f, double target,
                       const Interval& dom, double seed, double rel_tol, int max_iter);

} // namespace growth
