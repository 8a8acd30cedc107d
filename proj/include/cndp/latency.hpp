#pragma once

#include <vector>

#include "cndp/errors.hpp"

namespace cndp {

/// Relative tolerance for all scalar root solves in this module.
inline constexpr double kTolRoot = 1e-10;

/// Capacity-normalized latency S(x), evaluated at x = v/z.
///
/// Two kinds are admitted: polynomials with non-negative coefficients
/// S(x) = sum_j a_j x^j, and constants S(x) = c (including zero, used for
/// connector edges). A polynomial with a positive coefficient on some
/// power >= 1 is "strict": S and x^2 S'(x) are strictly increasing and
/// unbounded, which the root solves below rely on.
class LatencyFunction {
public:
    enum class Kind { polynomial, constant };

    /// Default-constructed as the constant zero function.
    LatencyFunction() : LatencyFunction(Kind::constant, {0.0}, false) {}

    static LatencyFunction polynomial(std::vector<double> coeffs);
    static LatencyFunction constant(double value);
    static LatencyFunction affine(double a0, double a1) { return polynomial({a0, a1}); }

    Kind kind() const { return kind_; }
    bool is_strict() const { return strict_; }
    const std::vector<double>& coefficients() const { return coeffs_; }
    /// Degree of the polynomial after trailing-zero trim; 0 for constants.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    double eval(double x) const;
    double deriv(double x) const;
    /// Marginal cost S*(x) = S(x) + x S'(x).
    double marginal(double x) const;

    /// Unique u > 0 with u^2 S'(u) = price. Requires a strict function.
    double solve_u(double price) const;

    /// gamma in (0,1] with S(delta) + S'(delta) delta = S(delta/gamma).
    /// Returns 1 for delta = 0 (capacity left untouched on unused edges).
    double solve_gamma(double delta) const;

    /// Integral of S(t/z) over t in [0, v], in closed form.
    double beckmann_term(double v, double z) const;

private:
    LatencyFunction(Kind kind, std::vector<double> coeffs, bool strict)
        : kind_(kind), coeffs_(std::move(coeffs)), strict_(strict) {}

    Kind kind_;
    std::vector<double> coeffs_;  // constant stored as single coefficient
    bool strict_;
};

/// Class of allowable latency functions with its closed-form constants.
struct FunctionClass {
    enum class Tag { polynomial_degree, concave, convex_general };

    Tag tag;
    int degree = 0;  // meaningful for polynomial_degree only
    double mu = 0.0;
    double gamma = 1.0;

    static FunctionClass polynomial(int max_degree);
    static FunctionClass concave();
    static FunctionClass convex_general();

    /// Single-algorithm guarantee 1 + mu.
    double guarantee_single() const { return 1.0 + mu; }
    /// Best-of-two guarantee (gamma+mu+1)^2 / ((gamma+mu+1)^2 - 4 mu gamma).
    double guarantee_best_of_two() const;
    /// Dispatch threshold p* = (gamma-mu+1)^2 / ((gamma-mu+1)^2 + 4 mu).
    double p_star() const;
};

double mu_of_polynomial_degree(int degree);
double gamma_of_polynomial_degree(int degree);

}  // namespace cndp
