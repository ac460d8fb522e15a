#pragma once

#include "pfield/random.hpp"

#include <complex>
#include <span>
#include <vector>

namespace pfield {

/// Real stable law S(alpha, beta, gamma) with characteristic function
///   exp[-gamma |w|^alpha (1 - j beta sign(w) tan(pi alpha / 2))]       alpha != 1
///   exp[-gamma |w| (1 + j (2/pi) beta sign(w) ln|w|)]                   alpha == 1
/// gamma is the dispersion (units of x^alpha); the usual scale is gamma^(1/alpha).
struct StableParams {
    double alpha = 2.0;
    double beta = 0.0;
    double gamma = 1.0;

    void validate() const;
    double scale() const;
};

/// Circularly-symmetric complex stable law: E exp(j Re(conj(w) Y)) = exp(-gamma |w|^alpha).
/// Real and imaginary parts are each S(alpha, 0, gamma).
struct CsStableParams {
    double alpha = 2.0;
    double gamma = 1.0;

    void validate() const;
};

/// |alpha - 1| below this is treated as alpha == 1.
inline constexpr double kAlphaOneSnap = 1e-6;

bool is_alpha_one(double alpha);

std::complex<double> char_function(const StableParams& p, double w);

/// Chambers-Mallows-Stuck draw. Throws DegenerateDistributionError for gamma == 0.
double sample_stable(const StableParams& p, RandomStream& rng);

/// Totally-skewed positive stable variable B ~ S(alpha/2, 1, cos(pi alpha / 4)) used
/// by the sub-Gaussian representation Y = sqrt(B) G; E exp(-s B) = exp(-s^(alpha/2)).
StableParams subordinator_params(double alpha);

/// Per-component variance of G in Y = sqrt(B) G that yields CS dispersion `gamma`.
double subgaussian_component_variance(const CsStableParams& p);

/// Draw of a CS complex stable variable as sqrt(B) G. gamma == 0 returns 0;
/// alpha == 2 is a plain complex Gaussian with per-component variance 2 gamma.
std::complex<double> sample_cs_stable(const CsStableParams& p, RandomStream& rng);

struct PdfOptions {
    double abs_tol = 1e-6;    ///< per point
    double cf_cutoff = 1e-12; ///< truncate the inversion integral where |cf| drops below this
    std::size_t max_panels = 400000;
};

/// Density by Fourier inversion of char_function. Supports alpha != 1, or
/// alpha == 1 with beta == 0.
std::vector<double> pdf_numeric(const StableParams& p, std::span<const double> xs, const PdfOptions& opts = {});

/// Closed-form laws used to check the generic machinery.
namespace closed_form {

/// Levy scale c of S(1/2, 1, gamma): c = gamma^2.
double levy_scale(double gamma);
double levy_pdf(double x, double c);
double levy_cdf(double x, double c);

/// S(2, 0, gamma) is N(0, 2 gamma).
double gaussian_pdf(double x, double gamma);

/// S(1, 0, gamma) is Cauchy with scale gamma.
double cauchy_pdf(double x, double gamma);

} // namespace closed_form

} // namespace pfield
