#pragma once

#include "pfield/error_prob.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace pfield::cli {

struct SweepSpec {
    std::string axis = "snr_db"; ///< snr_db | inr_db | r0 | lambda
    double start = 0.0;
    double stop = 40.0;
    int points = 9;
    bool log = false;              ///< geometric spacing
    bool inr_follows_snr = false;  ///< snr_db axis: also set INR = SNR
};

/// Resolved run configuration. sigma is kept in dB here and converted once.
struct ScenarioConfig {
    double lambda = 0.01;
    double b = 2.0;
    double sigma_db = 10.0;
    double k = 1.0;
    double N0 = 1.0;
    double T = 1.0;
    std::optional<double> E;
    std::optional<double> E0;
    std::optional<double> snr_db;
    std::optional<double> inr_db;
    double r0 = 1.0;
    std::optional<double> G0;

    nlohmann::json probe = "bpsk";
    nlohmann::json interferer = "bpsk";
    std::string interferer_fading = "rayleigh";

    std::string metric = "outage"; ///< outage | average
    double p_star = 1e-2;
    std::uint64_t n_mc = 100'000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    SweepSpec sweep;
};

/// Throws ConfigurationError on unknown keys or wrong types, and the
/// NetworkScenario errors on invalid physical values.
ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig load_config_file(const std::string& path);

/// Checks cross-field consistency and the physical invariants.
void validate(const ScenarioConfig& c);

nlohmann::json to_json(const ScenarioConfig& c);

NetworkScenario make_scenario(const ScenarioConfig& c);
Constellation make_modulation(const nlohmann::json& spec);
LinkModel make_link(const ScenarioConfig& c);

std::vector<double> sweep_values(const SweepSpec& s);

/// Sets the swept quantity of `s` to x.
void apply_axis(NetworkScenario& s, const SweepSpec& sweep, double x);

std::uint64_t fnv1a(std::string_view text);

/// Parses a number, accepting "-inf" / "inf".
double parse_number(const nlohmann::json& v, const std::string& key);

} // namespace pfield::cli
