#pragma once

// Reference computations used only by the tests. None of these call into the
// library's quadrature, geometry or error-probability code.

#include <complex>
#include <vector>

namespace oracle {

/// CDF of S(1/2, 1, gamma): the Levy law with scale c = gamma^2.
double levy_cdf(double x, double gamma);
double levy_pdf(double x, double gamma);

/// Exact quantile of the same law.
double levy_quantile(double p, double gamma);

/// Rayleigh-faded BPSK: (1 - sqrt(eta / (1 + eta))) / 2.
double rayleigh_bpsk(double eta);

/// Symbol error probability of minimum-distance detection in complex AWGN with
/// per-component variance `var`, by slicing each Voronoi cell along x and
/// integrating the Gaussian over the y-interval in closed form.
double voronoi_awgn_error(const std::vector<std::complex<double>>& points, const std::vector<double>& probs,
                          double var);

/// Per-component variance of X = alpha e^{j phi} [D a + (1 - D) a'] with E{alpha^2} = 1,
/// by enumerating symbol pairs and integrating over D with Simpson's rule.
double brute_force_VX(const std::vector<std::complex<double>>& points, const std::vector<double>& probs,
                      double energy);

/// Rayleigh-faded probe error probability: average of the AWGN result over an
/// exponential instantaneous SNR, using the same slicing oracle.
double voronoi_rayleigh_error(const std::vector<std::complex<double>>& points, const std::vector<double>& probs,
                              double eta);

} // namespace oracle
