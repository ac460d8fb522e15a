#pragma once

#include "pfield/random.hpp"

#include <complex>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace pfield {

/// Linear-modulation signal set, normalized to unit average energy under `probs`.
struct Constellation {
    std::vector<std::complex<double>> points;
    std::vector<double> probs;
    std::string name = "custom";

    std::size_t size() const { return points.size(); }

    /// Checks probabilities, unit average energy and point distinctness.
    void validate() const;

    /// Builds a constellation from raw points; empty `probs` means equiprobable.
    /// Points are rescaled to unit average energy.
    static Constellation from_points(std::vector<std::complex<double>> points, std::vector<double> probs = {},
                                     std::string name = "custom");
};

Constellation make_mpsk(int M);
Constellation make_mqam(int M);

/// "bpsk", "qpsk", "8psk", "16qam", "64qam", "psk:M", "qam:M".
Constellation make_named(std::string_view spec);

/// JSON: {"points": [[re, im], ...], "probs": [...]} (probs optional).
Constellation parse_constellation_json(std::string_view text);
Constellation load_constellation_file(const std::string& path);

/// Index of the constellation point closest to z.
std::size_t nearest_point(const Constellation& c, std::complex<double> z);

/// One angular wedge of the complement of a decision region. For symbol k and
/// boundary neighbor l the error contribution is
///   (1 / 2 pi) int_0^phi f(w eta / (4 sin^2(theta + psi))) d theta.
struct Wedge {
    std::size_t neighbor = 0;
    double phi = 0.0;
    double psi = 0.0;
    double w = 0.0;
};

/// Minimum-distance decision regions expressed as wedges. wedges[k] holds one
/// entry per neighbor sharing a boundary edge of positive length with symbol k.
struct DecisionGeometry {
    std::vector<std::vector<Wedge>> wedges;

    std::vector<std::size_t> neighbors(std::size_t k) const;
};

/// Voronoi construction by half-plane clipping. Throws GeometryError on
/// duplicate points.
DecisionGeometry decision_geometry(const Constellation& c);

/// Fast-fading amplitude law: E{alpha^p} and a sampler, normalized to E{alpha^2} = 1.
struct FadingModel {
    std::string name;
    std::function<double(double)> moment;
    std::function<double(RandomStream&)> sample_amplitude;
};

FadingModel rayleigh_fading();
FadingModel no_fading();
FadingModel make_fading(std::string_view name);

/// Per-component interference variance V_X for interferers using `c` with energy E.
double compute_VX(const Constellation& c, double E);

struct ChiOptions {
    std::size_t max_exact_points = 64; ///< above this, Monte Carlo over symbol pairs
    std::uint64_t mc_samples = 2'000'000;
    std::uint64_t mc_seed = 0x7ab1e1;
};

/// chi(b) = E{|a D cos(theta + phi) + a' (1 - D) cos(theta' + phi)|^{2/b}} for D ~ U(0,1),
/// phi ~ U(0, 2pi) and an independent symbol pair.
double compute_chi(const Constellation& c, double b, const ChiOptions& opts = {});

/// E{|X_{i,n}|^{2/b}} = E^{1/b} E{alpha^{2/b}} chi(b).
double compute_EX2b(const Constellation& c, double b, const FadingModel& fading, double E,
                    const ChiOptions& opts = {});

struct Table1Entry {
    double b = 0.0;
    std::string modulation;
    double value = 0.0;
    double reference = 0.0;
};

/// Rayleigh-faded E{|X_{i,n}|^{2/b}} / E^{1/b} for b in {1.5, 2, 3, 4} and BPSK / QPSK,
/// with the published reference values.
std::vector<Table1Entry> table1();

} // namespace pfield
