// SPDX-License-Identifier: Apache-2.0
#include "mimome/runner.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <thread>

#include "mimome/asymptotic.hpp"
#include "mimome/errors.hpp"
#include "mimome/montecarlo.hpp"

namespace mimome::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Record {
    std::optional<double> eta;
    std::optional<double> sigma;
    std::optional<double> r_erg_approx;
    std::optional<double> r_erg_sim;
    std::optional<double> sim_stderr;
    std::optional<double> p_out_approx;
    std::optional<double> p_out_sim;
    std::optional<double> outage_stderr;
};

// Shortest decimal form that round-trips.
std::string format_number(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return {buf, res.ptr};
}

std::string describe_point(const RunConfig& cfg, std::optional<double> value)
{
    if (!cfg.sweep || !value)
        return "scenario";
    return std::string(to_string(cfg.sweep->variable)) + "=" + format_number(*value);
}

std::string regime_warning(const SystemConfig& sys, const std::string& point)
{
    return "warning: " + point + ": n_e == l_t == " + std::to_string(sys.l_t) +
           "; eavesdropper variance uses the n_e > l_t branch";
}

Record evaluate_point(const RunConfig& cfg, const SystemConfig& sys, unsigned workers,
                      const std::string& point, std::vector<std::string>& warnings)
{
    Record r;
    if (cfg.mode == Mode::approx || cfg.mode == Mode::compare) {
        const AsymptoticMoments m = secrecy_moments(sys);
        if (m.out_of_regime)
            warnings.push_back(regime_warning(sys, point));
        r.eta = m.eta;
        r.sigma = m.sigma();
        r.r_erg_approx = ergodic_approx(m);
        if (cfg.r_out)
            r.p_out_approx = outage_approx(m, *cfg.r_out);
    }
    if (cfg.mode == Mode::simulate || cfg.mode == Mode::compare) {
        const TrialPlan plan{cfg.seed, cfg.trials, cfg.r_out};
        RunOptions options;
        options.workers = workers;
        const SimulationSummary sim = simulate(sys, plan, options);
        r.r_erg_sim = sim.ergodic.mean;
        r.sim_stderr = sim.ergodic.std_error;
        if (sim.outage) {
            r.p_out_sim = sim.outage->mean;
            r.outage_stderr = sim.outage->std_error;
        }
    }
    return r;
}

OptimizeResult optimize_point(const RunConfig& cfg, const SystemConfig& sys)
{
    OptimizeChoice choice = cfg.optimize_method;
    if (choice == OptimizeChoice::automatic) {
        const bool single = sys.n_r == 1 && sys.n_e == 1;
        choice = single && cfg.optimize_objective == Objective::Kind::ergodic
                     ? OptimizeChoice::example1_fixed_point
                     : OptimizeChoice::grid;
    }
    switch (choice) {
    case OptimizeChoice::example1_fixed_point:
        return example1_fixed_point(sys.n_t, sys.rho_m, sys.rho_e);
    case OptimizeChoice::example2_stationary:
        return example2_stationary(sys.n_t, sys.n_e, sys.rho_m, sys.rho_e);
    default: {
        const Objective objective = cfg.optimize_objective == Objective::Kind::outage
                                        ? Objective::outage(*cfg.r_out)
                                        : Objective::ergodic();
        return optimal_lt_grid(sys, objective);
    }
    }
}

void append_csv_field(std::string& line, const std::optional<double>& v)
{
    line += ',';
    if (v)
        line += format_number(*v);
}

void put(ordered_json& obj, const char* key, const std::optional<double>& v)
{
    if (v)
        obj[key] = *v;
}

}  // namespace

RunResult run(const RunConfig& config, unsigned workers)
{
    config.validate();
    std::vector<std::optional<double>> points;
    if (config.sweep)
        points.assign(config.sweep->values.begin(), config.sweep->values.end());
    else
        points.emplace_back(std::nullopt);

    RunResult result;
    std::string csv = std::string(kCsvHeader) + "\n";
    ordered_json records = ordered_json::array();

    for (const auto& value : points) {
        const std::string point = describe_point(config, value);
        const Scenario scenario = value ? config.at(*value) : config.scenario;
        const SystemConfig sys = scenario.system();

        ordered_json rec;
        if (config.sweep) {
            rec["variable"] = to_string(config.sweep->variable);
            rec["value"] = *value;
        }

        try {
            if (config.mode == Mode::optimize) {
                const OptimizeResult opt = optimize_point(config, sys);
                rec["x_star"] = opt.x_star;
                rec["l_star"] = opt.l_star;
                rec["objective"] = opt.objective_at_l_star;
                rec["method"] = to_string(opt.method);
                rec["iterations"] = opt.iterations;
                rec["boundary"] = opt.boundary;
                rec["fallback"] = opt.fallback;
                records.push_back(std::move(rec));
                continue;
            }

            const Record r = evaluate_point(config, sys, workers, point, result.warnings);
            if (config.format == OutputFormat::csv) {
                std::string line;
                if (config.sweep)
                    line = std::string(to_string(config.sweep->variable)) + "," + format_number(*value);
                else
                    line = ",";
                append_csv_field(line, r.eta);
                append_csv_field(line, r.sigma);
                append_csv_field(line, r.r_erg_approx);
                append_csv_field(line, r.r_erg_sim);
                append_csv_field(line, r.sim_stderr);
                append_csv_field(line, r.p_out_approx);
                append_csv_field(line, r.p_out_sim);
                append_csv_field(line, r.outage_stderr);
                csv += line + "\n";
            } else {
                put(rec, "eta", r.eta);
                put(rec, "sigma", r.sigma);
                put(rec, "r_erg_approx", r.r_erg_approx);
                put(rec, "r_erg_sim", r.r_erg_sim);
                put(rec, "sim_stderr", r.sim_stderr);
                put(rec, "p_out_approx", r.p_out_approx);
                put(rec, "p_out_sim", r.p_out_sim);
                put(rec, "outage_stderr", r.outage_stderr);
                records.push_back(std::move(rec));
            }
        } catch (const Error& e) {
            throw SweepPointError("numerical failure at " + point + ": " + e.what());
        }
    }

    if (config.format == OutputFormat::csv)
        result.output = std::move(csv);
    else
        result.output = records.dump(2) + "\n";
    return result;
}

unsigned workers_from_environment()
{
    if (const char* env = std::getenv("MIMOME_THREADS")) {
        unsigned value = 0;
        const std::string_view text(env);
        const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
        if (res.ec == std::errc{} && res.ptr == text.data() + text.size() && value > 0)
            return value;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void write_output(const std::string& path, std::string_view text)
{
    if (path == "-") {
        std::cout << text << std::flush;
        return;
    }
    const std::filesystem::path target(path);
    std::filesystem::path temp = target;
    temp += ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open " + temp.string() + " for writing");
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        out.flush();
        if (!out)
            throw std::runtime_error("failed writing " + temp.string());
    }
    std::filesystem::rename(temp, target);
}

}  // namespace mimome::cli
