#pragma once

#include "pfield/random.hpp"
#include "pfield/stable.hpp"

#include <optional>
#include <vector>

namespace pfield {

/// Physical parameters of the probe link and the interferer field.
/// sigma is stored in natural-log units; see sigma_from_db().
struct NetworkScenario {
    double lambda = 0.0; ///< interferer density, nodes / m^2
    double b = 2.0;      ///< amplitude loss exponent (power loss exponent is 2b)
    double sigma = 0.0;  ///< shadowing coefficient, S = (k / r^b) e^{sigma G}
    double k = 1.0;      ///< median path-gain constant
    double N0 = 1.0;     ///< noise spectral density
    double T = 1.0;      ///< symbol period, s
    double E = 1.0;      ///< interferer average symbol energy at 1 m
    double E0 = 1.0;     ///< probe average symbol energy at 1 m
    double r0 = 1.0;     ///< probe link length, m
    std::optional<double> G0; ///< pinned probe shadowing draw; unset means "random where applicable"

    /// Throws DivergenceError for b <= 1 and DomainError for other violations.
    void validate() const;

    double snr_db() const;
    double inr_db() const;
    void set_snr_db(double db);
    void set_inr_db(double db);
};

/// One draw of the interferer positions: distances (ascending) and shadowing.
struct FieldRealization {
    std::vector<double> distances;
    std::vector<double> shadowing;
    double r_max = 0.0;

    std::size_t size() const { return distances.size(); }
    bool empty() const { return distances.empty(); }
};

double sigma_from_db(double sigma_db);
double sigma_to_db(double sigma);

/// Log-distance form L_dB = k0 + k1 log10(r) + sigma_dB G of the same channel model.
struct LogDistanceLoss {
    double k0 = 0.0;
    double k1 = 0.0;
    double sigma_db = 0.0;
};

LogDistanceLoss to_log_distance(double k, double b, double sigma);

struct AmplitudeLoss {
    double k = 1.0;
    double b = 2.0;
    double sigma = 0.0;
};
AmplitudeLoss from_log_distance(const LogDistanceLoss& l);

/// C_x = (1 - x) / (Gamma(2 - x) cos(pi x / 2)), with C_1 = 2/pi. Domain (0, 2).
double coeff_C(double x);

/// Law of the aggregate interference power A = sum e^{2 sigma G_i} / R_i^{2b}.
StableParams derive_A_params(const NetworkScenario& s);

/// Law of the complex baseband interference Y; ex2b = E{|X_{i,n}|^{2/b}}.
CsStableParams derive_Y_params(const NetworkScenario& s, double ex2b);

/// B in Y = sqrt(B) G.
StableParams derive_B_params(double b);

/// Per-component variance of G in Y = sqrt(B) G.
double derive_VG(const NetworkScenario& s, double ex2b);

/// Homogeneous Poisson field truncated to the disk of radius r_max. Squared
/// distances are generated as arrival times of a rate lambda*pi process, so a
/// realization at radius 2r with the same stream extends the one at radius r.
FieldRealization sample_field(const NetworkScenario& s, double r_max, RandomStream& rng);

/// As sample_field(), reusing the storage of `out`.
void sample_field_into(FieldRealization& out, const NetworkScenario& s, double r_max, RandomStream& rng);

/// A over a realization. Throws SingularityError if any distance is 0.
double compute_A(const FieldRealization& f, double b, double sigma);

/// Expected contribution to A from interferers beyond r_max:
///   lambda pi e^{2 sigma^2} r_max^{2 - 2b} / (b - 1).
double expected_tail_A(const NetworkScenario& s, double r_max);

/// Radius at which expected_tail_A() equals rel_tol times the scale
/// gamma_A^b of the law of A. For lambda == 0 returns `default_radius`.
double truncation_radius(const NetworkScenario& s, double rel_tol, double default_radius = 100.0);

} // namespace pfield
