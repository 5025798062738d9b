// SPDX-License-Identifier: Apache-2.0
#include "mimome/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

namespace mimome::cli {

using nlohmann::json;

std::string_view to_string(Mode mode)
{
    switch (mode) {
    case Mode::simulate:
        return "simulate";
    case Mode::approx:
        return "approx";
    case Mode::optimize:
        return "optimize";
    case Mode::compare:
        return "compare";
    }
    return "unknown";
}

std::string_view to_string(SweepVariable variable)
{
    switch (variable) {
    case SweepVariable::l_t:
        return "l_t";
    case SweepVariable::rho_m_db:
        return "rho_m_db";
    case SweepVariable::rho_e_db:
        return "rho_e_db";
    }
    return "unknown";
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

double linear_to_db(double linear)
{
    return 10.0 * std::log10(linear);
}

SystemConfig Scenario::system() const
{
    return {n_t, n_r, n_e, l_t, db_to_linear(rho_m_db), db_to_linear(rho_e_db)};
}

Scenario RunConfig::at(double value) const
{
    Scenario s = scenario;
    if (!sweep)
        return s;
    switch (sweep->variable) {
    case SweepVariable::l_t:
        s.l_t = static_cast<int>(value);
        break;
    case SweepVariable::rho_m_db:
        s.rho_m_db = value;
        break;
    case SweepVariable::rho_e_db:
        s.rho_e_db = value;
        break;
    }
    return s;
}

ConfigError::ConfigError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line)
{
}

namespace {

int line_at_offset(std::string_view text, std::size_t offset)
{
    offset = std::min(offset, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    /// Line of the first occurrence of "key" in the source.
    [[nodiscard]] int line_of(std::string_view key) const
    {
        const std::string quoted = "\"" + std::string(key) + "\"";
        const auto pos = text_.find(quoted);
        return pos == std::string_view::npos ? 0 : line_at_offset(text_, pos);
    }

    [[noreturn]] void fail(std::string_view key, const std::string& message) const
    {
        throw ConfigError(line_of(key), message);
    }

    void only_keys(const json& object, std::string_view where,
                   std::initializer_list<std::string_view> allowed) const
    {
        for (const auto& item : object.items()) {
            if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
                fail(item.key(), "unknown key '" + item.key() + "' in " + std::string(where));
        }
    }

    [[nodiscard]] int positive_int(const json& object, const char* key) const
    {
        if (!object.contains(key))
            fail(key, std::string("missing required key '") + key + "'");
        const json& v = object.at(key);
        if (!v.is_number_integer() || v.get<std::int64_t>() < 1 ||
            v.get<std::int64_t>() > 1'000'000)
            fail(key, std::string("'") + key + "' must be a positive integer");
        return v.get<int>();
    }

    [[nodiscard]] double finite(const json& object, const char* key) const
    {
        if (!object.contains(key))
            fail(key, std::string("missing required key '") + key + "'");
        const json& v = object.at(key);
        if (!v.is_number() || !std::isfinite(v.get<double>()))
            fail(key, std::string("'") + key + "' must be a finite number");
        return v.get<double>();
    }

    [[nodiscard]] std::string string(const json& object, const char* key) const
    {
        const json& v = object.at(key);
        if (!v.is_string())
            fail(key, std::string("'") + key + "' must be a string");
        return v.get<std::string>();
    }

private:
    std::string_view text_;
};

template <class Enum>
Enum parse_enum(const Reader& reader, const std::string& value, const char* key,
                std::initializer_list<std::pair<std::string_view, Enum>> choices)
{
    std::string names;
    for (const auto& [name, e] : choices) {
        if (name == value)
            return e;
        names += names.empty() ? "" : ", ";
        names += name;
    }
    reader.fail(key, std::string("'") + key + "' must be one of: " + names);
}

std::vector<double> parse_sweep_values(const Reader& reader, const json& sweep)
{
    if (sweep.contains("values") == sweep.contains("range"))
        reader.fail("sweep", "sweep needs exactly one of 'values' or 'range'");

    std::vector<double> values;
    if (sweep.contains("values")) {
        const json& list = sweep.at("values");
        if (!list.is_array() || list.empty())
            reader.fail("values", "'values' must be a non-empty array");
        for (const json& v : list) {
            if (!v.is_number() || !std::isfinite(v.get<double>()))
                reader.fail("values", "sweep values must be finite numbers");
            values.push_back(v.get<double>());
        }
        return values;
    }

    const json& range = sweep.at("range");
    if (!range.is_object())
        reader.fail("range", "'range' must be an object {start, stop, step}");
    reader.only_keys(range, "range", {"start", "stop", "step"});
    const double start = reader.finite(range, "start");
    const double stop = reader.finite(range, "stop");
    const double step = reader.finite(range, "step");
    if (!(step > 0.0) || stop < start)
        reader.fail("range", "'range' needs step > 0 and stop >= start");
    const auto count = static_cast<std::int64_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 100'000)
        reader.fail("range", "'range' expands to too many points");
    for (std::int64_t k = 0; k < count; ++k)
        values.push_back(start + static_cast<double>(k) * step);
    return values;
}

void check_cross_fields(const RunConfig& cfg, const Reader* reader)
{
    const auto fail = [&](std::string_view key, const std::string& msg) {
        if (reader)
            reader->fail(key, msg);
        throw ConfigError(0, msg);
    };
    const Scenario& s = cfg.scenario;
    const bool sweeps_lt = cfg.sweep && cfg.sweep->variable == SweepVariable::l_t;

    if (cfg.mode != Mode::optimize && !sweeps_lt && s.l_t > s.n_t)
        fail("l_t", "l_t must not exceed n_t");
    if (cfg.sweep) {
        for (double v : cfg.sweep->values) {
            if (sweeps_lt && (v != std::floor(v) || v < 1.0 || v > s.n_t))
                fail("values", "l_t sweep values must be integers in [1, n_t]");
        }
        if (sweeps_lt && cfg.mode == Mode::optimize)
            fail("variable", "optimize mode chooses l_t itself; it cannot sweep l_t");
    }
    if ((cfg.mode == Mode::simulate || cfg.mode == Mode::compare) && cfg.trials < 1)
        fail("trials", "'trials' must be >= 1 when simulating");
    if (cfg.r_out && !(*cfg.r_out >= 0.0))
        fail("r_out", "'r_out' must be non-negative");
    if (cfg.mode == Mode::optimize && cfg.format != OutputFormat::json)
        fail("format", "optimize mode writes JSON records; set \"format\": \"json\"");
    if (cfg.mode == Mode::optimize && cfg.optimize_objective == Objective::Kind::outage &&
        !cfg.r_out)
        fail("objective", "the outage objective needs 'r_out'");
    if (cfg.mode == Mode::optimize && cfg.optimize_method == OptimizeChoice::example1_fixed_point &&
        (s.n_r != 1 || s.n_e != 1))
        fail("method", "example1_fixed_point needs n_r == n_e == 1");
    if (cfg.mode == Mode::optimize && cfg.optimize_method == OptimizeChoice::example2_stationary &&
        s.n_r != 1)
        fail("method", "example2_stationary needs n_r == 1");
    if (cfg.mode == Mode::optimize && cfg.optimize_objective == Objective::Kind::outage &&
        (cfg.optimize_method == OptimizeChoice::example1_fixed_point ||
         cfg.optimize_method == OptimizeChoice::example2_stationary))
        fail("objective", "the closed-form optimizers maximize the ergodic rate only");
    if (cfg.output_path.empty())
        fail("output", "'output' must not be empty");
}

}  // namespace

void RunConfig::validate() const
{
    check_cross_fields(*this, nullptr);
}

RunConfig parse_run_config(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
        throw ConfigError(line_at_offset(text, offset), std::string("malformed JSON: ") + e.what());
    }

    const Reader reader(text);
    if (!doc.is_object())
        throw ConfigError(1, "run config must be a JSON object");
    reader.only_keys(doc, "run config",
                     {"scenario", "sweep", "mode", "trials", "seed", "r_out", "output", "format",
                      "optimize"});

    RunConfig cfg;
    if (!doc.contains("scenario") || !doc.at("scenario").is_object())
        throw ConfigError(reader.line_of("scenario"), "missing object 'scenario'");
    const json& sc = doc.at("scenario");
    reader.only_keys(sc, "scenario", {"n_t", "n_r", "n_e", "l_t", "rho_m_db", "rho_e_db"});
    cfg.scenario.n_t = reader.positive_int(sc, "n_t");
    cfg.scenario.n_r = reader.positive_int(sc, "n_r");
    cfg.scenario.n_e = reader.positive_int(sc, "n_e");
    cfg.scenario.rho_m_db = reader.finite(sc, "rho_m_db");
    cfg.scenario.rho_e_db = reader.finite(sc, "rho_e_db");

    if (doc.contains("mode"))
        cfg.mode = parse_enum<Mode>(reader, reader.string(doc, "mode"), "mode",
                                    {{"simulate", Mode::simulate},
                                     {"approx", Mode::approx},
                                     {"optimize", Mode::optimize},
                                     {"compare", Mode::compare}});

    if (doc.contains("sweep")) {
        const json& sw = doc.at("sweep");
        if (!sw.is_object())
            reader.fail("sweep", "'sweep' must be an object");
        reader.only_keys(sw, "sweep", {"variable", "values", "range"});
        if (!sw.contains("variable"))
            reader.fail("sweep", "sweep needs a 'variable'");
        Sweep sweep;
        sweep.variable = parse_enum<SweepVariable>(
            reader, reader.string(sw, "variable"), "variable",
            {{"l_t", SweepVariable::l_t},
             {"rho_m_db", SweepVariable::rho_m_db},
             {"rho_e_db", SweepVariable::rho_e_db}});
        sweep.values = parse_sweep_values(reader, sw);
        cfg.sweep = std::move(sweep);
    }

    const bool sweeps_lt = cfg.sweep && cfg.sweep->variable == SweepVariable::l_t;
    if (sc.contains("l_t") || !(sweeps_lt || cfg.mode == Mode::optimize))
        cfg.scenario.l_t = reader.positive_int(sc, "l_t");

    if (doc.contains("trials")) {
        const json& v = doc.at("trials");
        if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
            reader.fail("trials", "'trials' must be a positive integer");
        cfg.trials = v.get<std::int64_t>();
    }
    if (doc.contains("seed")) {
        const json& v = doc.at("seed");
        if (!v.is_number_unsigned())
            reader.fail("seed", "'seed' must be a non-negative integer");
        cfg.seed = v.get<std::uint64_t>();
    }
    if (doc.contains("r_out"))
        cfg.r_out = reader.finite(doc, "r_out");
    if (doc.contains("output"))
        cfg.output_path = reader.string(doc, "output");
    if (doc.contains("format"))
        cfg.format = parse_enum<OutputFormat>(reader, reader.string(doc, "format"), "format",
                                              {{"csv", OutputFormat::csv},
                                               {"json", OutputFormat::json}});
    if (doc.contains("optimize")) {
        const json& opt = doc.at("optimize");
        if (!opt.is_object())
            reader.fail("optimize", "'optimize' must be an object");
        reader.only_keys(opt, "optimize", {"method", "objective"});
        if (opt.contains("method"))
            cfg.optimize_method = parse_enum<OptimizeChoice>(
                reader, reader.string(opt, "method"), "method",
                {{"auto", OptimizeChoice::automatic},
                 {"grid", OptimizeChoice::grid},
                 {"example1_fixed_point", OptimizeChoice::example1_fixed_point},
                 {"example2_stationary", OptimizeChoice::example2_stationary}});
        if (opt.contains("objective"))
            cfg.optimize_objective = parse_enum<Objective::Kind>(
                reader, reader.string(opt, "objective"), "objective",
                {{"ergodic", Objective::Kind::ergodic}, {"outage", Objective::Kind::outage}});
    }

    check_cross_fields(cfg, &reader);
    return cfg;
}

}  // namespace mimome::cli
