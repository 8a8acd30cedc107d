#include "cndp/latency.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace cndp {

namespace {

// Safeguarded Newton on a strictly increasing g: find x in [lo, hi] with
// g(x) = target, to relative tolerance kTolRoot. Falls back to bisection
// whenever the Newton step leaves the bracket or the derivative vanishes.
template <typename F, typename DF>
double solve_increasing(F g, DF dg, double lo, double hi, double target) {
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        double value = g(x);
        if (std::abs(value - target) <= kTolRoot * std::max(1.0, std::abs(target))) {
            return x;
        }
        if (value > target) {
            hi = x;
        } else {
            lo = x;
        }
        if (hi - lo <= kTolRoot * std::max(1.0, std::abs(hi))) {
            return 0.5 * (lo + hi);
        }
        double slope = dg(x);
        double next = (slope > 0.0) ? x - (value - target) / slope : lo - 1.0;
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        if (std::abs(next - x) <= kTolRoot * std::abs(x)) {
            // Newton has stalled at the root to full precision.
            return next;
        }
        x = next;
    }
    throw NumericalFailure("root solve did not converge within 200 iterations");
}

}  // namespace

LatencyFunction LatencyFunction::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) {
        throw DomainError("polynomial latency needs at least one coefficient");
    }
    for (double a : coeffs) {
        if (!(a >= 0.0)) {
            throw DomainError("latency coefficients must be non-negative");
        }
    }
    while (coeffs.size() > 1 && coeffs.back() == 0.0) {
        coeffs.pop_back();
    }
    bool strict = coeffs.size() > 1 && coeffs.back() > 0.0;
    if (!strict) {
        // Degenerated to a constant; keep it flagged as such.
        return LatencyFunction(Kind::constant, {coeffs[0]}, false);
    }
    return LatencyFunction(Kind::polynomial, std::move(coeffs), true);
}

LatencyFunction LatencyFunction::constant(double value) {
    if (!(value >= 0.0)) {
        throw DomainError("constant latency must be non-negative");
    }
    return LatencyFunction(Kind::constant, {value}, false);
}

double LatencyFunction::eval(double x) const {
    if (!(x >= 0.0)) {
        throw DomainError("latency evaluated at negative load");
    }
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

double LatencyFunction::deriv(double x) const {
    if (!(x >= 0.0)) {
        throw DomainError("latency derivative at negative load");
    }
    double acc = 0.0;
    for (int j = static_cast<int>(coeffs_.size()) - 1; j >= 1; --j) {
        acc = acc * x + coeffs_[static_cast<size_t>(j)] * j;
    }
    return acc;
}

double LatencyFunction::marginal(double x) const { return eval(x) + x * deriv(x); }

double LatencyFunction::solve_u(double price) const {
    if (!strict_) {
        throw NotStrictlyIncreasing("solve_u requires a strict latency function");
    }
    if (!(price > 0.0)) {
        throw DomainError("solve_u requires a positive price");
    }
    auto g = [this](double u) { return u * u * deriv(u); };
    auto dg = [this](double u) {
        // d/du of u^2 S'(u) for a polynomial: sum_j j(j+1) a_j u^j.
        double acc = 0.0;
        for (int j = static_cast<int>(coeffs_.size()) - 1; j >= 1; --j) {
            acc = acc * u + coeffs_[static_cast<size_t>(j)] * j * (j + 1);
        }
        return acc * u;
    };
    double hi = 1.0;
    while (g(hi) < price) {
        hi *= 2.0;
        if (hi > 1e150) {
            throw NumericalFailure("solve_u bracket expansion diverged");
        }
    }
    return solve_increasing(g, dg, 0.0, hi, price);
}

double LatencyFunction::solve_gamma(double delta) const {
    if (!strict_) {
        throw NotStrictlyIncreasing("solve_gamma requires a strict latency function");
    }
    if (!(delta >= 0.0)) {
        throw DomainError("solve_gamma requires delta >= 0");
    }
    if (delta == 0.0) {
        return 1.0;
    }
    // Solve S(delta * t) = S(delta) + S'(delta) delta for t = 1/gamma >= 1.
    double target = marginal(delta);
    auto g = [this, delta](double t) { return eval(delta * t); };
    auto dg = [this, delta](double t) { return delta * deriv(delta * t); };
    double hi = 2.0;
    while (g(hi) < target) {
        hi *= 2.0;
        if (hi > 1e150) {
            throw NumericalFailure("solve_gamma bracket expansion diverged");
        }
    }
    double t = solve_increasing(g, dg, 1.0, hi, target);
    return 1.0 / std::max(t, 1.0);
}

double LatencyFunction::beckmann_term(double v, double z) const {
    if (!(v >= 0.0)) {
        throw DomainError("beckmann_term requires v >= 0");
    }
    if (v == 0.0) {
        return 0.0;
    }
    if (kind_ == Kind::constant) {
        return coeffs_[0] * v;
    }
    if (!(z > 0.0)) {
        throw InfiniteLatency("positive flow on a strict edge with zero capacity");
    }
    // integral_0^v S(t/z) dt = sum_j a_j v^{j+1} / ((j+1) z^j)
    double acc = 0.0;
    double vpow = v;
    double zpow = 1.0;
    for (size_t j = 0; j < coeffs_.size(); ++j) {
        acc += coeffs_[j] * vpow / (static_cast<double>(j + 1) * zpow);
        vpow *= v;
        zpow *= z;
    }
    return acc;
}

double mu_of_polynomial_degree(int degree) {
    if (degree < 0) {
        throw DomainError("polynomial degree must be non-negative");
    }
    if (degree == 0) {
        return 0.0;
    }
    double d = degree;
    return d / (d + 1.0) * std::pow(1.0 / (d + 1.0), 1.0 / d);
}

double gamma_of_polynomial_degree(int degree) {
    if (degree < 0) {
        throw DomainError("polynomial degree must be non-negative");
    }
    if (degree == 0) {
        return 1.0;
    }
    double d = degree;
    return std::pow(1.0 / (d + 1.0), 1.0 / d);
}

FunctionClass FunctionClass::polynomial(int max_degree) {
    FunctionClass c;
    c.tag = Tag::polynomial_degree;
    c.degree = max_degree;
    c.mu = mu_of_polynomial_degree(max_degree);
    c.gamma = gamma_of_polynomial_degree(max_degree);
    return c;
}

FunctionClass FunctionClass::concave() {
    FunctionClass c;
    c.tag = Tag::concave;
    c.mu = 0.25;
    c.gamma = 0.5;
    return c;
}

FunctionClass FunctionClass::convex_general() {
    FunctionClass c;
    c.tag = Tag::convex_general;
    c.mu = 1.0;
    c.gamma = 1.0;
    return c;
}

double FunctionClass::guarantee_best_of_two() const {
    double s = gamma + mu + 1.0;
    return s * s / (s * s - 4.0 * mu * gamma);
}

double FunctionClass::p_star() const {
    double s = gamma - mu + 1.0;
    return s * s / (s * s + 4.0 * mu);
}

}  // namespace cndp
