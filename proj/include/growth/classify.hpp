#pragma once

#include <string>
#include <utility>

#include "growth/spec.hpp"
#include "growth/view.hpp"

namespace growth {

/// Type exponent with its constant; either may be +infinity when the grid
/// edge slope says the underlying supremum diverges.
struct TypeEstimate {
    double exponent = 0.0;
    double constant = 1.0;
};

/// Matuszewska-Orlicz index estimates over the sampled window, with the
/// endpoint slopes of the elasticity as divergence diagnostics. All values
/// are grid estimates, not certified bounds.
struct IndexReport {
    double a = 0.0; // inf of t Phi'(t)/Phi(t) over the window
    double b = 0.0; // sup; +infinity when still climbing at the window edge
    double arg_a = 0.0;
    double arg_b = 0.0;
    double slope_left = 0.0;
    double slope_right = 0.0;
    double used_x_min = 0.0;
    double used_x_max = 0.0;
    bool window_clipped = false;
};

struct ClassReport {
    IndexReport indices;
    TypeEstimate upper_type; // Phi(st) <= C s^q Phi(t), s >= 1
    TypeEstimate lower_type; // Phi(st) <= C s^p Phi(t), 0 < s < 1
    bool ratio_nondecreasing = false; // Phi(t)/t nondecreasing on the window
    bool ratio_nonincreasing = false;
    double dlog_minus_C = 1.0; // log-convexity defect constant, >= 1 or +inf
    double dlog_plus_C = 1.0;  // log-concavity defect constant
    GridConfig grid;

    std::string to_text() const;
};

struct DualityReport {
    double c_minus = 1.0;        // Delta_log^- constant of the function
    double c_plus_inverse = 1.0; // Delta_log^+ constant of its inverse
    double discrepancy = 0.0;    // relative, 0 when both infinite
    bool passed = false;

    std::string to_text() const;
};

IndexReport matuszewska_indices(const SpecPtr& spec, const GridConfig& cfg);

/// (upper, lower). Candidate exponents come from the indices; the constants
/// are estimated from the worst excess of the defining inequality over a
/// 64-point scale grid paired with the full window grid.
std::pair<TypeEstimate, TypeEstimate> type_exponents(const SpecPtr& spec, const GridConfig& cfg);

/// (C_minus, C_plus): log-convexity / log-concavity defect constants over a
/// 64x64 argument grid and nine interior interpolation weights. Clamped to
/// >= 1; +infinity when the excess keeps growing at the window edge.
std::pair<double, double> dlog_constants(const SpecPtr& spec, const GridConfig& cfg);

/// Prop-2.5-style check: C_minus(spec) against C_plus(inverse(spec)) on the
/// image window; passes within 5% or when both are infinite.
DualityReport duality_check(const SpecPtr& spec, const GridConfig& cfg);

ClassReport classify(const SpecPtr& spec, const GridConfig& cfg);

/// cfg with [x_min, x_max] replaced by its image under the function's log-view;
/// lets inverse-side scans cover the same t-range as the forward side.
GridConfig map_window_through(const SpecPtr& spec, const GridConfig& cfg);

} // namespace growth
