#pragma once

#include <functional>
#include <span>

namespace pfield::quad {

struct Options {
    double abs_tol = 1e-9;
    double rel_tol = 1e-12;
    unsigned max_depth = 18;
};

struct Result {
    double value = 0.0;
    double error = 0.0;
};

/// Adaptive 15-point Gauss-Kronrod over [a, b]. Throws AccuracyError when the
/// error estimate exceeds max(abs_tol, rel_tol * |value|).
Result integrate(const std::function<double(double)>& f, double a, double b, const Options& opts = {});

/// Same as integrate(), but splits [a, b] at the given interior points first
/// (kinks, discontinuities). Breakpoints outside (a, b) are ignored.
Result integrate_split(const std::function<double(double)>& f, double a, double b, std::span<const double> breaks,
                       const Options& opts = {});

/// Double-exponential (tanh-sinh) rule for integrands with algebraic endpoint
/// singularities or kinks at the endpoints.
Result integrate_endpoint_singular(const std::function<double(double)>& f, double a, double b,
                                   const Options& opts = {});

/// Fixed composite Gauss-Legendre with `panels` equal panels of 10 nodes each.
double gauss_legendre_composite(const std::function<double(double)>& f, double a, double b, std::size_t panels);

} // namespace pfield::quad
