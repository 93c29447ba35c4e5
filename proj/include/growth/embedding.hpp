#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "growth/spec.hpp"
#include "growth/view.hpp"

namespace growth {

/// Which t-quantifier the criterion runs over: the set definitions use all of
/// t > 0, the boundary/criterion machinery uses t >= 1.
enum class TDomain { all_positive, from_one };
const char* to_cstring(TDomain d);

struct EmbeddingParams {
    double alpha = 0.0;
    double beta = 0.0;
    TDomain t_domain = TDomain::from_one;

    void validate() const; // alpha, beta >= -1
};

/// sup_t Phi^{-1}(t^{2+alpha}) / Psi^{-1}(t^{2+beta}) over the sampled window,
/// decided finite/infinite from the edge slopes of the log-ratio. Consumes
/// only inverse views, so it stays representable for every catalog family.
struct CminResult {
    double value = 0.0; // +inf when the slope test says the sup diverges
    double arg_x = 0.0; // log t of the grid supremum
    double left_slope = 0.0;
    double right_slope = 0.0;
    bool finite = false;

    std::string to_text() const;
};

CminResult cmin(const SpecPtr& phi, const SpecPtr& psi, const EmbeddingParams& params,
                const GridConfig& cfg);

/// Same ratio with the Psi-side argument multiplied by K (shifted by log K).
CminResult cmin_shifted(const SpecPtr& phi, const SpecPtr& psi, const EmbeddingParams& params,
                        const GridConfig& cfg, double log_k);

struct MemberFResult {
    bool member = false;
    CminResult certificate;

    std::string to_text() const;
};

MemberFResult member_F(const SpecPtr& phi, const SpecPtr& psi, const EmbeddingParams& params,
                       const GridConfig& cfg);

/// Existential criterion with the K degree of freedom, searched over an
/// 81-point log-uniform grid of [1e-10, 1e10]. When K = 1 already certifies
/// membership it is returned as-is, otherwise the finite (K, C) pair with the
/// smallest C wins.
struct MemberEResult {
    bool member = false;
    double C = 0.0;
    double K = 1.0;
    CminResult certificate;

    std::string to_text() const;
};

MemberEResult member_E(const SpecPtr& phi, const SpecPtr& psi, const EmbeddingParams& params,
                       const GridConfig& cfg);

struct BetaStarResult {
    double beta = 0.0; // +inf when expansion hits the cap
    int iterations = 0;
    double residual = 0.0; // log of the certifying constant at the member side
    bool capped = false;

    std::string to_text() const;
};

/// Bisects membership over beta in [-1, beta_hi] (upward closure in beta),
/// expanding beta_hi geometrically from 8 up to the 1e6 cap; tolerance 1e-4.
BetaStarResult beta_star(const SpecPtr& phi, const SpecPtr& psi, double alpha,
                         const GridConfig& cfg, TDomain t_domain = TDomain::from_one);

struct BoundarySample {
    double alpha = 0.0;
    double beta = 0.0; // +inf allowed
    int iterations = 0;
    double residual = 0.0;
    bool failed = false;
    std::string error;
};

struct BoundaryCurve {
    std::vector<BoundarySample> samples; // alphas strictly increasing
    SpecPtr phi, psi;
    TDomain t_domain = TDomain::from_one;
    std::vector<std::string> violations; // monotonicity/convexity breaches

    std::string to_text() const;
};

BoundaryCurve boundary_sweep(const SpecPtr& phi, const SpecPtr& psi, double alpha_min,
                             double alpha_max, int n, const GridConfig& cfg,
                             TDomain t_domain = TDomain::from_one);

/// CSV: header alpha,beta_star,iterations,residual; 9 significant digits,
/// "inf" for infinity, LF line endings.
void write_boundary_csv(std::ostream& os, const BoundaryCurve& curve);

/// Phase diagram: fixed 800x600 viewBox, the boundary polyline, shaded
/// admissible region above it, axes with tick labels and a legend naming the
/// functions and the t-domain.
void write_boundary_svg(std::ostream& os, const BoundaryCurve& curve);

struct AlphaBeta {
    double alpha = 0.0;
    double beta = 0.0;
};

/// Convexity of the admissible (alpha, beta) set: interpolates two member
/// pairs and checks membership plus the constant recipe from the convexity
/// argument, C_theta = M0^{1-theta} M1^theta C1^{theta(1-theta)} at
/// K_theta = C2^{theta(1-theta)} K0^{1-theta} K1^theta.
struct VerifyEEntry {
    double theta = 0.0;
    double alpha = 0.0, beta = 0.0;
    bool member = false;
    double achieved_C = 0.0;
    double bound_C = 0.0;
    double K_theta = 1.0;
    bool bound_ok = false;
};

struct VerifyEReport {
    bool hypothesis_met = false; // Phi^{-1} log-convex, Psi^{-1} log-concave, finite constants
    double C1 = 1.0;             // Delta_log^- constant of Phi^{-1}
    double C2 = 1.0;             // Delta_log^+ constant of Psi^{-1}
    bool endpoints_member = false;
    double M0 = 0.0, K0 = 1.0, M1 = 0.0, K1 = 1.0;
    std::vector<VerifyEEntry> entries;
    bool passed = false;

    std::string to_text() const;
};

VerifyEReport verify_E_convexity(const SpecPtr& phi, const SpecPtr& psi, AlphaBeta pair0,
                                 AlphaBeta pair1, const std::vector<double>& thetas,
                                 const GridConfig& cfg, TDomain t_domain = TDomain::all_positive);

/// Log-convexity of the admissible function-pair set: inverse-geodesic
/// interpolants of two member pairs stay members with
/// C_min(theta) <= C_min(0)^{1-theta} C_min(1)^theta.
struct VerifyFEntry {
    double theta = 0.0;
    bool member = false;
    double cmin_theta = 0.0;
    double bound = 0.0;
    bool bound_ok = false;
};

struct VerifyFReport {
    bool endpoints_member = false;
    double cmin0 = 0.0, cmin1 = 0.0;
    std::vector<VerifyFEntry> entries;
    bool passed = false;

    std::string to_text() const;
};

VerifyFReport verify_F_logconvexity(const SpecPtr& phi0, const SpecPtr& psi0,
                                    const SpecPtr& phi1, const SpecPtr& psi1,
                                    const EmbeddingParams& params,
                                    const std::vector<double>& thetas, const GridConfig& cfg);

} // namespace growth
