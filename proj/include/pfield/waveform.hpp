#pragma once

#include "pfield/constellation.hpp"
#include "pfield/error_prob.hpp"
#include "pfield/field.hpp"
#include "pfield/mc.hpp"

#include <complex>
#include <span>
#include <vector>

namespace pfield {

/// Per-interferer randomness seen during one probe symbol.
struct InterfererDraw {
    std::complex<double> symbol;      ///< a e^{j theta}, sent before the switch
    std::complex<double> next_symbol; ///< a' e^{j theta'}, sent after it
    double delay_frac = 0.0;          ///< D / T in [0, 1]
    double fade_amp = 1.0;            ///< alpha >= 0
    double fade_phase = 0.0;          ///< phi in [0, 2 pi)

    void validate() const;
};

InterfererDraw draw_interferer(const Constellation& c, const FadingModel& fading, RandomStream& rng);

/// k alpha e^{j phi} [(D/T) a e^{j theta} + (1 - D/T) a' e^{j theta'}].
std::complex<double> interference_sample_X(const InterfererDraw& d, double k);

/// sum_i e^{sigma G_i} X_i / R_i^b over the realization.
std::complex<double> aggregate_Y(const FieldRealization& f, std::span<const InterfererDraw> draws, double b,
                                 double sigma, double k);

/// aggregate_Y() with fresh interferer draws, without allocating.
std::complex<double> sample_Y(const FieldRealization& f, const Constellation& c, const FadingModel& fading, double b,
                              double sigma, double k, RandomStream& rng);

/// Projects the passband waveform of one interferer (R = 1, G = 0, T = 1) onto
/// the I/Q basis with composite Gauss-Legendre over `n_time_samples` nodes and
/// returns the largest deviation from the baseband formula. Needs fcT >= 10 and
/// n_time_samples >= 4 fcT (UnderSamplingError otherwise).
double passband_projection_check(const InterfererDraw& d, double fcT, std::size_t n_time_samples, double k = 1.0);

enum class OracleMode { slow, fast };

struct OracleOptions {
    OracleMode mode = OracleMode::fast;
    std::uint64_t n_symbols = 1'000'000;
    std::uint64_t block_length = 1; ///< fast mode: symbols per field draw
    double trunc_rel_tol = 1e-3;    ///< field truncation, see truncation_radius()
};

/// Symbol error rate of the waveform-level simulation: Rayleigh-faded probe with
/// known gain, AWGN of variance N0, nearest-point detection. Interferer energy
/// is s.E and probe energy s.E0 (both at 1 m); G0 = s.G0 or 0.
/// Slow mode draws one field from the seed and keeps it for all symbols.
McEstimate ber_oracle(const NetworkScenario& s, const LinkModel& link, const OracleOptions& opts,
                      const McConfig& cfg = {});

/// Slow-mode oracle on a given field.
McEstimate ber_oracle(const NetworkScenario& s, const LinkModel& link, const FieldRealization& field,
                      std::uint64_t n_symbols, const McConfig& cfg = {});

enum class TailMode {
    drop,     ///< plain truncation
    add_mean, ///< add expected_tail_A() to every draw
};

/// n draws of compute_A() over fields truncated at truncation_radius(s, rel_tol).
std::vector<double> empirical_A(const NetworkScenario& s, std::uint64_t n, double rel_tol = 1e-3,
                                const McConfig& cfg = {}, TailMode tail = TailMode::drop);

} // namespace pfield
