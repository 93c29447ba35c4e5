#include "growth/spec.hpp"

#include <charconv>
#include <cmath>

#include "growth/errors.hpp"
#include "growth/format.hpp"

namespace growth {

namespace {

void check_pow(double p) {
    if (!(p > 0.0) || !std::isfinite(p))
        throw DomainError("pow exponent must satisfy p > 0, got " + format_real(p));
}

void check_powlog(double p, double a) {
    if (!(p > 0.0) || !std::isfinite(p))
        throw DomainError("powlog exponent must satisfy p > 0, got " + format_real(p));
    if (!(a > 0.0) || !std::isfinite(a))
        throw DomainError("powlog log power must satisfy a > 0, got " + format_real(a));
}

void check_theta(double theta) {
    if (!(theta >= 0.0 && theta <= 1.0))
        throw DomainError("interpolation weight must lie in [0,1], got " + format_real(theta));
}

} // namespace

SpecPtr pow_spec(double p) {
    check_pow(p);
    return std::make_shared<const FunctionSpec>(FunctionSpec{Pow{p}});
}

SpecPtr powlog_spec(double p, double a) {
    check_powlog(p, a);
    return std::make_shared<const FunctionSpec>(FunctionSpec{PowLog{p, a}});
}

SpecPtr expm1_spec() { return std::make_shared<const FunctionSpec>(FunctionSpec{ExpM1{}}); }

SpecPtr dexp_spec() { return std::make_shared<const FunctionSpec>(FunctionSpec{DExp{}}); }

SpecPtr geo_spec(SpecPtr left, SpecPtr right, double theta) {
    if (!left || !right) throw DomainError("geo requires two operand specs");
    check_theta(theta);
    return std::make_shared<const FunctionSpec>(FunctionSpec{Geo{std::move(left), std::move(right), theta}});
}

SpecPtr invgeo_spec(SpecPtr left, SpecPtr right, double theta) {
    if (!left || !right) throw DomainError("invgeo requires two operand specs");
    check_theta(theta);
    return std::make_shared<const FunctionSpec>(FunctionSpec{InvGeo{std::move(left), std::move(right), theta}});
}

SpecPtr inverse_spec(SpecPtr inner) {
    if (!inner) throw DomainError("inv requires an operand spec");
    return std::make_shared<const FunctionSpec>(FunctionSpec{Inverse{std::move(inner)}});
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    SpecPtr run() {
        SpecPtr s = parse_node();
        if (pos_ != text_.size()) fail("trailing characters after spec");
        return s;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    bool try_consume(std::string_view token) {
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (pos_ >= text_.size() || text_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    double parse_num() {
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{} || ptr == begin) fail("expected a number");
        pos_ += static_cast<std::size_t>(ptr - begin);
        return value;
    }

    SpecPtr parse_node() {
        // "invgeo(" must be probed before "inv(".
        if (try_consume("invgeo(")) return parse_interp(/*inverse=*/true);
        if (try_consume("geo(")) return parse_interp(/*inverse=*/false);
        if (try_consume("inv(")) {
            SpecPtr inner = parse_node();
            expect(')');
            return inverse_spec(std::move(inner));
        }
        if (try_consume("powlog:")) {
            double p = parse_num();
            expect(':');
            double a = parse_num();
            return powlog_spec(p, a);
        }
        if (try_consume("pow:")) return pow_spec(parse_num());
        if (try_consume("expm1")) return expm1_spec();
        if (try_consume("dexp")) return dexp_spec();
        fail("expected a function spec");
    }

    SpecPtr parse_interp(bool inverse) {
        SpecPtr left = parse_node();
        expect(',');
        SpecPtr right = parse_node();
        expect(',');
        double theta = parse_num();
        expect(')');
        return inverse ? invgeo_spec(std::move(left), std::move(right), theta)
                       : geo_spec(std::move(left), std::move(right), theta);
    }
};

std::string num_to_string(double v) {
    // Shortest round-trip form keeps to_string . parse_spec an identity.
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    double back = 0.0;
    std::from_chars(buf, buf + sizeof(buf), back);
    for (int prec = 1; prec <= 16; ++prec) {
        char shorter[40];
        std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
        std::from_chars(shorter, shorter + sizeof(shorter), back);
        if (back == v) return shorter;
    }
    return buf;
}

} // namespace

SpecPtr parse_spec(std::string_view text) { return Parser(text).run(); }

std::string to_string(const FunctionSpec& spec) {
    return std::visit(
        [](const auto& node) -> std::string {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Pow>) {
                return "pow:" + num_to_string(node.p);
            } else if constexpr (std::is_same_v<T, PowLog>) {
                return "powlog:" + num_to_string(node.p) + ":" + num_to_string(node.a);
            } else if constexpr (std::is_same_v<T, ExpM1>) {
                return "expm1";
            } else if constexpr (std::is_same_v<T, DExp>) {
                return "dexp";
            } else if constexpr (std::is_same_v<T, Geo>) {
                return "geo(" + to_string(*node.left) + "," + to_string(*node.right) + "," +
                       num_to_string(node.theta) + ")";
            } else if constexpr (std::is_same_v<T, InvGeo>) {
                return "invgeo(" + to_string(*node.left) + "," + to_string(*node.right) + "," +
                       num_to_string(node.theta) + ")";
            } else {
                return "inv(" + to_string(*node.inner) + ")";
            }
        },
        spec.node);
}

std::string to_string(const SpecPtr& spec) { return to_string(*spec); }

bool same_spec(const FunctionSpec& a, const FunctionSpec& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&b](const auto& na) -> bool {
            using T = std::decay_t<decltype(na)>;
            const auto& nb = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, Pow>) {
                return na.p == nb.p;
            } else if constexpr (std::is_same_v<T, PowLog>) {
                return na.p == nb.p && na.a == nb.a;
            } else if constexpr (std::is_same_v<T, ExpM1> || std::is_same_v<T, DExp>) {
                return true;
            } else if constexpr (std::is_same_v<T, Geo> || std::is_same_v<T, InvGeo>) {
                return na.theta == nb.theta && same_spec(*na.left, *nb.left) &&
                       same_spec(*na.right, *nb.right);
            } else {
                return same_spec(*na.inner, *nb.inner);
            }
        },
        a.node);
}

bool same_spec(const SpecPtr& a, const SpecPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return same_spec(*a, *b);
}

} // namespace growth
