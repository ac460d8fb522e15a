#include "config.hpp"

#include "pfield/errors.hpp"
#include "pfield/validation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using nlohmann::json;
using namespace pfield;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

std::string num(double x)
{
    if (std::isnan(x))
        return "nan";
    std::ostringstream o;
    o << std::scientific << std::setprecision(17) << x;
    return o.str();
}

void write_header(std::ostream& out, const std::string& command, const json& config, std::uint64_t seed)
{
    const std::string dump = config.dump();
    std::ostringstream hash;
    hash << std::hex << std::setw(16) << std::setfill('0') << cli::fnv1a(dump);
    out << "# pfield " << PFIELD_VERSION << "\n"
        << "# command: " << command << "\n"
        << "# config_hash: " << hash.str() << "\n"
        << "# seed: " << seed << "\n"
        << "# config: " << dump << "\n";
}

unsigned default_workers()
{
    if (const char* env = std::getenv("PFIELD_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1)
            return static_cast<unsigned>(v);
        throw ConfigurationError("PFIELD_WORKERS must be a positive integer");
    }
    return 1;
}

/// Scenario flags shared by `curve` and `tradeoff`; each flag given on the
/// command line overrides the config file.
struct ScenarioFlags {
    std::string config_path;
    json overrides = json::object();

    void attach(CLI::App* app)
    {
        app->add_option("--config", config_path, "JSON scenario config")->check(CLI::ExistingFile);
        add_number(app, "--lambda", "lambda", "interferer density, nodes/m^2");
        add_number(app, "--b", "b", "amplitude loss exponent");
        add_number(app, "--sigma-db", "sigma_db", "shadowing, dB");
        add_number(app, "--snr-db", "snr_db", "SNR = E0/N0, dB");
        add_number(app, "--inr-db", "inr_db", "INR = E/N0, dB (-inf allowed)");
        add_number(app, "--r0", "r0", "probe link length, m");
        add_number(app, "--g0", "G0", "pinned probe shadowing draw");
        add_number(app, "--pstar", "p_star", "target error probability");
        add_integer(app, "--n-mc", "n_mc", "Monte Carlo samples per point");
        add_integer(app, "--seed", "seed", "root seed");
        add_integer(app, "--workers", "workers", "worker streams");
        add_string(app, "--metric", "metric", "outage | average");
        add_string(app, "--probe", "probe", "probe modulation");
        add_string(app, "--interferer", "interferer", "interferer modulation");
        add_string(app, "--fading", "interferer_fading", "interferer fading: rayleigh | none");
        add_sweep_string(app, "--axis", "axis", "sweep axis: snr_db | inr_db | r0 | lambda");
        add_sweep_number(app, "--start", "start");
        add_sweep_number(app, "--stop", "stop");
        app->add_option_function<int>(
            "--points", [this](const int& v) { overrides["sweep"]["points"] = v; }, "sweep points");
        app->add_flag_function(
            "--log", [this](std::int64_t) { overrides["sweep"]["log"] = true; }, "geometric sweep spacing");
        app->add_flag_function(
            "--inr-follows-snr", [this](std::int64_t) { overrides["sweep"]["inr_follows_snr"] = true; },
            "set INR = SNR along an snr_db sweep");
    }

    cli::ScenarioConfig resolve() const
    {
        json j = config_path.empty() ? json::object() : read_file(config_path);
        if (!j.is_object())
            throw ConfigurationError("config must be a JSON object");
        for (const auto& [key, value] : overrides.items()) {
            if (key == "sweep" && j.contains("sweep") && j["sweep"].is_object())
                j["sweep"].update(value);
            else
                j[key] = value;
        }
        if (!j.contains("workers"))
            j["workers"] = default_workers();
        return cli::parse_config(j);
    }

private:
    static json read_file(const std::string& path)
    {
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        try {
            return json::parse(ss.str());
        } catch (const json::parse_error& e) {
            throw ConfigurationError(std::string("config file is not valid JSON: ") + e.what());
        }
    }

    static json number_value(const std::string& text)
    {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(text, &used);
        } catch (const std::exception&) {
            throw CLI::ValidationError("'" + text + "' is not a number");
        }
        if (used != text.size())
            throw CLI::ValidationError("'" + text + "' is not a number");
        if (std::isinf(v))
            return v < 0 ? "-inf" : "inf";
        return v;
    }

    void add_number(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help)
    {
        app->add_option_function<std::string>(
            flag, [this, key](const std::string& v) { overrides[key] = number_value(v); }, help);
    }
    void add_integer(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help)
    {
        app->add_option_function<std::uint64_t>(
            flag, [this, key](const std::uint64_t& v) { overrides[key] = v; }, help);
    }
    void add_string(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help)
    {
        app->add_option_function<std::string>(
            flag, [this, key](const std::string& v) { overrides[key] = v; }, help);
    }
    void add_sweep_string(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help)
    {
        app->add_option_function<std::string>(
            flag, [this, key](const std::string& v) { overrides["sweep"][key] = v; }, help);
    }
    void add_sweep_number(CLI::App* app, const std::string& flag, const std::string& key)
    {
        app->add_option_function<std::string>(
            flag, [this, key](const std::string& v) { overrides["sweep"][key] = number_value(v); },
            "sweep " + key);
    }
};

struct StableFlags {
    double b = 2.0;
    double lambda = 0.1;
    double sigma_db = 10.0;

    void attach(CLI::App* app)
    {
        app->add_option("--b", b, "amplitude loss exponent")->capture_default_str();
        app->add_option("--lambda", lambda, "interferer density")->capture_default_str();
        app->add_option("--sigma-db", sigma_db, "shadowing, dB")->capture_default_str();
    }

    NetworkScenario scenario() const
    {
        NetworkScenario s;
        s.b = b;
        s.lambda = lambda;
        s.sigma = sigma_from_db(sigma_db);
        return s;
    }

    json to_json() const { return {{"b", b}, {"lambda", lambda}, {"sigma_db", sigma_db}}; }
};

int cmd_stable_pdf(const StableFlags& f, double xmax, int points)
{
    if (!(xmax > 0.0))
        throw ConfigurationError("--xmax must be > 0");
    const auto p = derive_A_params(f.scenario());
    std::vector<double> xs;
    for (int i = 1; i <= points; ++i)
        xs.push_back(xmax * i / points);
    const auto pdf = pdf_numeric(p, xs);
    json cfg = f.to_json();
    cfg["xmax"] = xmax;
    cfg["points"] = points;
    cfg["stable"] = {{"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma}};
    write_header(std::cout, "stable pdf", cfg, 0);
    std::cout << "a,pdf\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        std::cout << num(xs[i]) << "," << num(pdf[i]) << "\n";
    return kOk;
}

int cmd_stable_sample(const StableFlags& f, CLI::App* sub, double alpha, double beta, double gamma, std::uint64_t n,
                      std::uint64_t seed)
{
    StableParams p;
    if (sub->count("--alpha"))
        p = {alpha, beta, gamma};
    else
        p = derive_A_params(f.scenario());
    p.validate();
    json cfg = sub->count("--alpha") ? json{{"alpha", alpha}, {"beta", beta}, {"gamma", gamma}} : f.to_json();
    cfg["n"] = n;
    write_header(std::cout, "stable sample", cfg, seed);
    std::cout << "x\n";
    if (p.gamma == 0.0) {
        for (std::uint64_t i = 0; i < n; ++i)
            std::cout << num(0.0) << "\n";
        return kOk;
    }
    RandomStream rng(seed, 0);
    for (std::uint64_t i = 0; i < n; ++i)
        std::cout << num(sample_stable(p, rng)) << "\n";
    return kOk;
}

int cmd_table1()
{
    constexpr double tol = 0.005;
    const auto rows = table1();
    write_header(std::cout, "table1", json{{"tolerance", tol}}, 0);
    std::cout << "b,modulation,value,reference,abs_dev,tolerance,ok\n";
    bool all_ok = true;
    std::cerr << "  b     mod    value    ref     |dev|\n";
    for (const auto& r : rows) {
        const double dev = std::abs(r.value - r.reference);
        const bool ok = dev <= tol;
        all_ok = all_ok && ok;
        std::cout << num(r.b) << "," << r.modulation << "," << num(r.value) << "," << num(r.reference) << ","
                  << num(dev) << "," << num(tol) << "," << (ok ? "true" : "false") << "\n";
        std::cerr << std::fixed << std::setprecision(1) << "  " << r.b << "   " << r.modulation << "   "
                  << std::setprecision(4) << r.value << "   " << std::setprecision(3) << r.reference << "   "
                  << std::setprecision(4) << dev << (ok ? "" : "  FAIL") << "\n";
    }
    return all_ok ? kOk : kFailed;
}

int cmd_curve(const ScenarioFlags& flags)
{
    const auto cfg = flags.resolve();
    const auto link = cli::make_link(cfg);
    const McConfig mc{cfg.seed, cfg.workers};
    write_header(std::cout, "curve", cli::to_json(cfg), cfg.seed);
    std::cout << "x,value,std_err,n\n";
    for (const double x : cli::sweep_values(cfg.sweep)) {
        try {
            auto s = cli::make_scenario(cfg);
            cli::apply_axis(s, cfg.sweep, x);
            const auto e = cfg.metric == "outage" ? outage_probability(s, link, cfg.p_star, cfg.n_mc, mc)
                                                  : pe_average(s, link, cfg.n_mc, mc);
            std::cout << num(x) << "," << num(e.value) << "," << num(e.std_err) << "," << e.n << "\n";
        } catch (const std::exception& ex) {
            std::cout << "# point " << num(x) << " failed: " << ex.what() << "\n";
            std::cout << num(x) << ",nan,nan,0\n";
        }
    }
    return kOk;
}

std::vector<double> parse_grid(const std::string& text)
{
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception&) {
            throw ConfigurationError("bad --lambda-grid entry '" + item + "'");
        }
        if (used != item.size() || !(x >= 0.0))
            throw ConfigurationError("bad --lambda-grid entry '" + item + "'");
        v.push_back(x);
    }
    if (v.empty())
        throw ConfigurationError("--lambda-grid is empty");
    return v;
}

int cmd_tradeoff(const ScenarioFlags& flags, double target, const std::string& grid_text, double cap_db)
{
    const auto cfg = flags.resolve();
    const auto grid = parse_grid(grid_text);
    const auto link = cli::make_link(cfg);
    const McConfig mc{cfg.seed, cfg.workers};
    json echo = cli::to_json(cfg);
    echo["pout_target"] = target;
    echo["lambda_grid"] = grid;
    echo["inr_cap_db"] = cap_db;
    write_header(std::cout, "tradeoff", echo, cfg.seed);
    std::cout << "lambda,inr_db,status,pout,std_err,n\n";
    IsoInrOptions opts;
    opts.inr_cap_db = cap_db;
    for (const double lambda : grid) {
        try {
            const auto r =
                iso_inr_for_outage(cli::make_scenario(cfg), link, lambda, target, cfg.p_star, cfg.n_mc, mc, opts);
            std::cout << num(lambda) << "," << num(r.inr_db) << "," << (r.capped ? "capped" : "ok") << ","
                      << num(r.outage.value) << "," << num(r.outage.std_err) << "," << r.outage.n << "\n";
        } catch (const BracketError& ex) {
            std::cout << "# lambda " << num(lambda) << ": " << ex.what() << "\n";
            std::cout << num(lambda) << ",nan,unachievable,nan,nan,0\n";
        }
    }
    return kOk;
}

int cmd_validate(const std::string& suite, const std::string& mode, std::uint64_t seed, unsigned workers,
                 double scale)
{
    validation::SuiteOptions o;
    o.seed = seed;
    o.workers = workers;
    o.mode = mode == "slow" ? OracleMode::slow : OracleMode::fast;
    o.scale = scale;
    const auto report = validation::run_suite(suite, o);
    json j;
    j["suite"] = report.suite;
    j["seed"] = report.seed;
    j["passed"] = report.passed();
    j["checks"] = json::array();
    for (const auto& c : report.checks)
        j["checks"].push_back({{"name", c.name},
                               {"passed", c.passed},
                               {"measured", c.measured},
                               {"threshold", c.threshold},
                               {"detail", c.detail}});
    std::cout << j.dump(2) << "\n";
    return report.passed() ? kOk : kFailed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Aggregate interference and error probability in Poisson fields of interferers"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(PFIELD_VERSION));

    auto* stable = app.add_subcommand("stable", "stable law of the interference power A");
    stable->require_subcommand(1);
    StableFlags pdf_flags, sample_flags;
    double xmax = 1.0;
    int points = 200;
    auto* pdf = stable->add_subcommand("pdf", "density of A on a grid (a, f_A(a))");
    pdf_flags.attach(pdf);
    pdf->add_option("--xmax", xmax, "grid upper end")->capture_default_str();
    pdf->add_option("--points", points, "grid points")->check(CLI::PositiveNumber)->capture_default_str();

    double alpha = 1.0, beta = 0.0, gamma = 1.0;
    std::uint64_t n_samples = 1000, sample_seed = 1;
    auto* sample = stable->add_subcommand("sample", "draws from the law of A, or from S(alpha, beta, gamma)");
    sample_flags.attach(sample);
    sample->add_option("--alpha", alpha, "characteristic exponent (switches to explicit parameters)");
    sample->add_option("--beta", beta, "skewness")->capture_default_str();
    sample->add_option("--gamma", gamma, "dispersion")->capture_default_str();
    sample->add_option("--n", n_samples, "number of samples")->check(CLI::PositiveNumber)->capture_default_str();
    sample->add_option("--seed", sample_seed, "root seed")->capture_default_str();

    auto* table = app.add_subcommand("table1", "E{|X|^(2/b)} / E^(1/b) for BPSK and QPSK");

    ScenarioFlags curve_flags;
    auto* curve = app.add_subcommand("curve", "outage or average error probability along a sweep");
    curve_flags.attach(curve);

    ScenarioFlags trade_flags;
    double pout_target = 1e-2, cap_db = 120.0;
    std::string lambda_grid;
    auto* trade = app.add_subcommand("tradeoff", "INR at a fixed outage target for each density");
    trade_flags.attach(trade);
    trade->add_option("--pout-target", pout_target, "target outage probability")->required();
    trade->add_option("--lambda-grid", lambda_grid, "comma-separated densities")->required();
    trade->add_option("--inr-cap-db", cap_db, "largest INR searched")->capture_default_str();

    std::string suite, mode = "fast";
    std::uint64_t val_seed = 1;
    unsigned val_workers = 0;
    double scale = 1.0;
    auto* val = app.add_subcommand("validate", "cross-module validation suites (JSON report)");
    val->add_option("suite", suite, "stable | field | decomposition | oracle")
        ->required()
        ->check(CLI::IsMember(validation::suite_names()));
    val->add_option("--mode", mode, "oracle mode: fast | slow")->check(CLI::IsMember({"fast", "slow"}));
    val->add_option("--seed", val_seed, "root seed")->capture_default_str();
    val->add_option("--workers", val_workers, "worker streams (default PFIELD_WORKERS or 1)");
    val->add_option("--scale", scale, "sample-count multiplier")->check(CLI::PositiveNumber)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (pdf->parsed())
            return cmd_stable_pdf(pdf_flags, xmax, points);
        if (sample->parsed())
            return cmd_stable_sample(sample_flags, sample, alpha, beta, gamma, n_samples, sample_seed);
        if (table->parsed())
            return cmd_table1();
        if (curve->parsed())
            return cmd_curve(curve_flags);
        if (trade->parsed())
            return cmd_tradeoff(trade_flags, pout_target, lambda_grid, cap_db);
        if (val->parsed())
            return cmd_validate(suite, mode, val_seed, val_workers == 0 ? default_workers() : val_workers, scale);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    }
    return kUsage;
}
