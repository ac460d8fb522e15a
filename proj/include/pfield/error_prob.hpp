#pragma once

#include "pfield/constellation.hpp"
#include "pfield/field.hpp"
#include "pfield/mc.hpp"

#include <span>

namespace pfield {

/// SINR averaged over the probe's fast fading.
struct SinrValue {
    double eta = 0.0;

    /// Throws DomainError unless eta is finite and >= 0.
    void validate() const;
};

/// eta_A = e^{2 sigma G0} E0 / (r0^{2b} (2 A V_X + N0)), with G0 = s.G0 or 0.
/// Throws InfiniteSinrError when N0 == 0 and A V_X == 0.
SinrValue eta_conditional(const NetworkScenario& s, double A, double VX);

/// Same with an explicit G0; `interference_var` is A V_X (or B V_G).
SinrValue eta_with_gain(const NetworkScenario& s, double G0, double interference_var);

/// (1 / pi) int_0^x (1 + g eta / sin^2 theta)^{-1} d theta.
double integral_I(double x, double g, SinrValue eta);

/// Symbol error probability from the wedge decomposition, Rayleigh-faded probe.
double pe_conditional_general(const DecisionGeometry& geom, std::span<const double> probs, SinrValue eta);

/// Same decomposition with a non-faded probe and Gaussian noise, exp(-w eta / (4 sin^2)).
/// eta here is the plain Es/N0.
double pe_awgn_general(const DecisionGeometry& geom, std::span<const double> probs, SinrValue eta);

double pe_mpsk(int M, SinrValue eta);
double pe_mqam(int M, SinrValue eta);

enum class ProbeChannel { rayleigh, awgn };

/// Precomputed error model for one constellation. Identical wedges are merged,
/// so evaluating pe() costs one quadrature per distinct wedge.
class SymbolErrorModel {
public:
    explicit SymbolErrorModel(const Constellation& c, ProbeChannel channel = ProbeChannel::rayleigh);

    double pe(double eta) const;

    /// pe(0): the probability of error with no signal.
    double pe_floor() const { return floor_; }

    /// Smallest eta with pe(eta) <= p_target (bisection in log eta). Returns 0
    /// when pe(0) <= p_target.
    double eta_threshold(double p_target) const;

    const DecisionGeometry& geometry() const { return geom_; }

private:
    struct Term {
        double weight;
        double phi;
        double psi;
        double w;
    };
    DecisionGeometry geom_;
    std::vector<Term> terms_;
    ProbeChannel channel_;
    double floor_ = 0.0;
};

/// Probe and interferer signalling.
struct LinkModel {
    Constellation probe;
    Constellation interferer;
    FadingModel interferer_fading;
};

LinkModel default_link(); ///< BPSK probe and interferers, Rayleigh interferer fading

/// P{pe(eta_A) > p_star} over (G0, A). G0 ~ N(0,1) unless s.G0 is set; A is
/// drawn from its stable law.
McEstimate outage_probability(const NetworkScenario& s, const LinkModel& link, double p_star, std::uint64_t n_mc,
                              const McConfig& cfg = {});

/// E_B{pe(eta_B)} with G0 pinned (s.G0 or 0). Deterministic when there is no
/// interference; the estimate then has std_err 0 and n 0.
McEstimate pe_average(const NetworkScenario& s, const LinkModel& link, std::uint64_t n_B, const McConfig& cfg = {});

/// pe(eta_A) for a given field realization, G0 = s.G0 or 0.
double pe_given_field(const NetworkScenario& s, const LinkModel& link, const FieldRealization& f);

struct IsoInrOptions {
    double inr_lo_db = -60.0;
    double inr_cap_db = 120.0;
    double tol_db = 0.1;
};

struct IsoInrResult {
    double inr_db = 0.0;
    bool capped = false;  ///< the target holds at every INR up to the cap
    McEstimate outage;    ///< P_out at the returned INR
};

/// INR where the outage probability crosses `target_pout` at density `lambda`,
/// found by bisection with the same random numbers at every step. Throws
/// BracketError when the target fails even without interference.
IsoInrResult iso_inr_for_outage(NetworkScenario s, const LinkModel& link, double lambda, double target_pout,
                                double p_star, std::uint64_t n_mc, const McConfig& cfg = {},
                                const IsoInrOptions& opts = {});

} // namespace pfield
