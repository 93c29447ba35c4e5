#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>

namespace growth {

struct FunctionSpec;
using SpecPtr = std::shared_ptr<const FunctionSpec>;

// Catalog families. Every node denotes a strictly increasing function
// [0,inf) -> [0,inf) with value 0 at 0 and unbounded growth.
struct Pow {
    double p; // t^p, p > 0
};
struct PowLog {
    double p; // t^p log^a(1+t), p > 0, a > 0
    double a;
};
struct ExpM1 {}; // e^t - 1
struct DExp {};  // exp(exp(t)) - e

// Value-geodesic interpolant: log Phi_theta = (1-theta) log Phi_L + theta log Phi_R.
struct Geo {
    SpecPtr left, right;
    double theta; // in [0,1]
};
// Inverse-geodesic interpolant: Phi_theta^{-1} = (Phi_L^{-1})^{1-theta} (Phi_R^{-1})^theta.
struct InvGeo {
    SpecPtr left, right;
    double theta; // in [0,1]
};
// View of the inverse function of `inner`.
struct Inverse {
    SpecPtr inner;
};

struct FunctionSpec {
    std::variant<Pow, PowLog, ExpM1, DExp, Geo, InvGeo, Inverse> node;
};

// Validating factories (throw DomainError on out-of-range parameters).
SpecPtr pow_spec(double p);
SpecPtr powlog_spec(double p, double a);
SpecPtr expm1_spec();
SpecPtr dexp_spec();
SpecPtr geo_spec(SpecPtr left, SpecPtr right, double theta);
SpecPtr invgeo_spec(SpecPtr left, SpecPtr right, double theta);
SpecPtr inverse_spec(SpecPtr inner);

/// Parses the wire grammar:
///   spec    := atom | interp | "inv(" spec ")"
///   atom    := "pow:" num | "powlog:" num ":" num | "expm1" | "dexp"
///   interp  := ("geo" | "invgeo") "(" spec "," spec "," num ")"
///   num     := decimal literal, optional sign and exponent
/// Total on the grammar; anything else raises ParseError with a byte offset,
/// or DomainError for out-of-range parameters.
SpecPtr parse_spec(std::string_view text);

/// Canonical grammar string (parse_spec(to_string(s)) reproduces s).
std::string to_string(const FunctionSpec& spec);
std::string to_string(const SpecPtr& spec);

/// Structural equality of spec trees.
bool same_spec(const FunctionSpec& a, const FunctionSpec& b);
bool same_spec(const SpecPtr& a, const SpecPtr& b);

} // namespace growth
