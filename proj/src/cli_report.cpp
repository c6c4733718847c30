#include "rdper/cli_report.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <unistd.h>

#include "rdper/chg_symbolic.hpp"
#include "rdper/laurent_ops.hpp"
#include "rdper/local_model.hpp"
#include "rdper/periods_numeric.hpp"
#include "rdper/stokes_topology.hpp"

namespace rdper {

// ---------------------------------------------------------------------------
// Configuration

const std::vector<std::string>& known_commands()
{
    static const std::vector<std::string> commands = {"dims",      "stokes",      "homology", "truncdim",
                                                      "chg-verify", "chg-periods", "gm-check", "full-suite"};
    return commands;
}

const std::vector<std::string>& config_keys()
{
    static const std::vector<std::string> keys = {
        "command", "m1",      "m2",      "u0_re",   "u0_im",     "stratum",   "samples", "model",
        "m",       "n_sectors", "op",    "T0",      "steps",     "cokernel",  "a",       "b",
        "c",       "alpha",   "x",       "y",       "x_im",      "y_im",      "rel_tol", "abs_tol",
        "max_level", "digits", "step",   "oracle",  "seed",      "output",
    };
    return keys;
}

namespace {

[[noreturn]] void config_error(const std::string& msg)
{
    throw Error(ErrorKind::ConfigError, msg);
}

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

template <class T>
T parse_integer(const std::string& key, const std::string& value)
{
    T out{};
    const auto* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end)
        config_error("'" + key + "' expects an integer, got '" + value + "'");
    return out;
}

double parse_double(const std::string& key, const std::string& value)
{
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size() || !std::isfinite(v))
        config_error("'" + key + "' expects a number, got '" + value + "'");
    return v;
}

bool parse_bool(const std::string& key, const std::string& value)
{
    if (value == "true" || value == "1" || value == "yes")
        return true;
    if (value == "false" || value == "0" || value == "no")
        return false;
    config_error("'" + key + "' expects true or false, got '" + value + "'");
}

}   // namespace

mpq_class parse_rational(const std::string& text)
{
    const std::string t = trim(text);
    try
    {
        if (t.find('.') == std::string::npos)
        {
            mpq_class q(t);
            if (q.get_den() == 0)
                config_error("zero denominator in '" + text + "'");
            q.canonicalize();
            return q;
        }
        // Terminating decimal: digits after the point become a power of ten.
        const auto dot = t.find('.');
        const std::string frac = t.substr(dot + 1);
        if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos)
            config_error("cannot read '" + text + "' as a rational");
        std::string digits = t.substr(0, dot) + frac;
        if (digits.front() == '+')
            digits.erase(0, 1);
        const mpz_class num(digits);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }
    catch (const std::invalid_argument&)
    {
        config_error("cannot read '" + text + "' as a rational");
    }
}

void apply_setting(RunConfig& cfg, const std::string& raw_key, const std::string& raw_value)
{
    std::string key = trim(raw_key);
    std::replace(key.begin(), key.end(), '-', '_');
    const std::string value = trim(raw_value);

    if (key == "command") cfg.command = value;
    else if (key == "m1") cfg.m1 = parse_integer<int>(key, value);
    else if (key == "m2") cfg.m2 = parse_integer<int>(key, value);
    else if (key == "u0_re") cfg.u0_re = parse_double(key, value);
    else if (key == "u0_im") cfg.u0_im = parse_double(key, value);
    else if (key == "stratum") cfg.stratum = value;
    else if (key == "samples") cfg.samples = parse_integer<int>(key, value);
    else if (key == "model") cfg.model = value;
    else if (key == "m") cfg.m = parse_integer<int>(key, value);
    else if (key == "n_sectors") cfg.n_sectors = parse_integer<int>(key, value);
    else if (key == "op") cfg.op = value;
    else if (key == "T0" || key == "t0") cfg.T0 = parse_integer<int>(key, value);
    else if (key == "steps") cfg.steps = parse_integer<int>(key, value);
    else if (key == "cokernel") cfg.cokernel = parse_bool(key, value);
    else if (key == "a") cfg.a = value;
    else if (key == "b") cfg.b = value;
    else if (key == "c") cfg.c = value;
    else if (key == "alpha") cfg.alpha = value;
    else if (key == "x") cfg.x = value;
    else if (key == "y") cfg.y = value;
    else if (key == "x_im") cfg.x_im = parse_double(key, value);
    else if (key == "y_im") cfg.y_im = parse_double(key, value);
    else if (key == "rel_tol") cfg.rel_tol = parse_double(key, value);
    else if (key == "abs_tol") cfg.abs_tol = parse_double(key, value);
    else if (key == "max_level") cfg.max_level = parse_integer<int>(key, value);
    else if (key == "digits") cfg.digits = parse_integer<int>(key, value);
    else if (key == "step") cfg.step = parse_double(key, value);
    else if (key == "oracle") cfg.oracle = parse_bool(key, value);
    else if (key == "seed") cfg.seed = parse_integer<unsigned>(key, value);
    else if (key == "output") cfg.output = value;
    else config_error("unknown setting '" + raw_key + "'");
}

void load_config_file(RunConfig& cfg, const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        config_error("cannot open config file " + path.string());
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        if (trim(line).empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            config_error(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
        apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
    }
}

void validate(const RunConfig& cfg)
{
    const auto& cmds = known_commands();
    if (std::find(cmds.begin(), cmds.end(), cfg.command) == cmds.end())
        config_error("unknown command '" + cfg.command + "'");
    if (!(cfg.rel_tol > 0) || !(cfg.abs_tol > 0))
        config_error("tolerances must be positive");
    if (!(cfg.step > 0))
        config_error("step must be positive");
    if (cfg.steps < 3)
        config_error("steps must be at least 3");
}

nlohmann::json to_json(const RunConfig& c)
{
    return {
        {"command", c.command}, {"m1", c.m1},         {"m2", c.m2},         {"u0_re", c.u0_re},
        {"u0_im", c.u0_im},     {"stratum", c.stratum}, {"samples", c.samples}, {"model", c.model},
        {"m", c.m},             {"n_sectors", c.n_sectors}, {"op", c.op},   {"T0", c.T0},
        {"steps", c.steps},     {"cokernel", c.cokernel}, {"a", c.a},       {"b", c.b},
        {"c", c.c},             {"alpha", c.alpha},   {"x", c.x},           {"y", c.y},
        {"x_im", c.x_im},       {"y_im", c.y_im},     {"rel_tol", c.rel_tol}, {"abs_tol", c.abs_tol},
        {"max_level", c.max_level}, {"digits", c.digits}, {"step", c.step}, {"oracle", c.oracle},
        {"seed", c.seed},       {"output", c.output},
    };
}

// ---------------------------------------------------------------------------
// Reports

bool RunReport::all_pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

int exit_code_for(ErrorKind kind)
{
    switch (kind)
    {
        case ErrorKind::NoConvergence:
        case ErrorKind::NotStabilized:
        case ErrorKind::StepTooLarge:
        case ErrorKind::ResolutionTooCoarse:
            return 3;
        case ErrorKind::BoundaryNotNilpotent:
        case ErrorKind::IdentityFailed:
        case ErrorKind::ReductionDiverged:
        case ErrorKind::MatrixMismatch:
        case ErrorKind::IntegrabilityFailed:
            return 1;
        default:
            return 2;
    }
}

nlohmann::json to_json(const CheckRecord& r)
{
    return {{"name", r.name},     {"inputs", r.inputs}, {"expected", r.expected}, {"computed", r.computed},
            {"source", r.source}, {"pass", r.pass},     {"runtime_s", r.runtime_s}};
}

nlohmann::json to_json(const RunReport& r)
{
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks)
        checks.push_back(to_json(c));
    return {{"version", r.version}, {"command", r.command}, {"config", r.config},
            {"seed", r.seed},       {"checks", checks},     {"data", r.data},
            {"verdict", r.verdict}, {"exit_code", r.exit_code}, {"error", r.error}};
}

RunReport report_from_json(const nlohmann::json& j)
{
    try
    {
        RunReport r;
        r.version = j.at("version").get<std::string>();
        r.command = j.at("command").get<std::string>();
        r.config = j.at("config");
        r.seed = j.at("seed").get<unsigned>();
        for (const auto& c : j.at("checks"))
            r.checks.push_back({c.at("name").get<std::string>(), c.at("inputs"), c.at("expected"), c.at("computed"),
                                c.at("source").get<std::string>(), c.at("pass").get<bool>(),
                                c.at("runtime_s").get<double>()});
        r.data = j.at("data");
        r.verdict = j.at("verdict").get<std::string>();
        r.exit_code = j.at("exit_code").get<int>();
        r.error = j.value("error", "");
        return r;
    }
    catch (const nlohmann::json::exception& e)
    {
        config_error(std::string("malformed report: ") + e.what());
    }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            config_error("cannot write " + tmp.string());
        out << contents;
        out.flush();
        if (!out)
            config_error("write to " + tmp.string() + " failed");
    }
    std::filesystem::rename(tmp, path);
}

std::vector<std::filesystem::path> write_artifacts(const RunReport& report, const RunConfig& config)
{
    std::filesystem::path target;
    if (!config.output.empty())
        target = config.output;
    else if (const char* dir = std::getenv(output_dir_env); dir && *dir)
        target = std::filesystem::path(dir) / (report.command + ".json");
    else
        return {};

    std::vector<std::filesystem::path> written;
    write_file_atomic(target, to_json(report).dump(2) + "\n");
    written.push_back(target);
    if (report.data.contains("csv"))
    {
        std::filesystem::path csv = target;
        csv.replace_extension(".csv");
        write_file_atomic(csv, report.data["csv"].get<std::string>());
        written.push_back(csv);
    }
    return written;
}

// ---------------------------------------------------------------------------
// Commands

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

CheckRecord check(std::string name, nlohmann::json inputs, nlohmann::json expected, nlohmann::json computed,
                  std::string source, double runtime)
{
    const bool pass = expected == computed;
    return {std::move(name), std::move(inputs), std::move(expected), std::move(computed), std::move(source), pass,
            runtime};
}

CHGParams params_of(const RunConfig& c)
{
    return CHGParams::make(parse_rational(c.a), parse_rational(c.b), parse_rational(c.c), parse_rational(c.alpha));
}

QuadratureSpec spec_of(const RunConfig& c)
{
    QuadratureSpec s;
    s.rel_tol = c.rel_tol;
    s.abs_tol = c.abs_tol;
    s.max_level = c.max_level;
    s.digits = c.digits;
    return s;
}

EvaluationPoint point_of(const CHGParams& p, const RunConfig& c)
{
    return EvaluationPoint::make(p, {parse_rational(c.x).get_d(), c.x_im}, {parse_rational(c.y).get_d(), c.y_im});
}

nlohmann::json params_json(const RunConfig& c)
{
    return {{"a", c.a}, {"b", c.b}, {"c", c.c}, {"alpha", c.alpha}};
}

void run_dims(const RunConfig& c, RunReport& r)
{
    const auto t0 = Clock::now();
    const auto model = ExponentialFactor::make(c.m1, c.m2, {c.u0_re, c.u0_im});
    const Stratum stratum = stratum_from_string(c.stratum);
    const auto rd = rd_dimensions(model, stratum), dr = dr_dimensions(model, stratum);
    const bool dual = duality_check(model, stratum);
    r.data = {{"dims_rd", to_json(rd)}, {"dims_dr", to_json(dr)}, {"duality", dual}};
    r.checks.push_back(check("duality", {{"m1", c.m1}, {"m2", c.m2}, {"stratum", c.stratum}}, true, dual, "paper",
                             seconds_since(t0)));
}

void run_stokes(const RunConfig& c, RunReport& r)
{
    const auto t0 = Clock::now();
    const auto model = ExponentialFactor::make(c.m1, c.m2, {c.u0_re, c.u0_im});
    const int count = stokes_component_count(model, c.samples);
    const int g = pole_gcd(c.m1, c.m2);
    r.data = {{"components", count}, {"gcd", g}, {"samples", c.samples}};
    r.checks.push_back(check("stokes_components", {{"m1", c.m1}, {"m2", c.m2}, {"samples", c.samples}}, g, count,
                             "paper", seconds_since(t0)));
}

void run_homology(const RunConfig& c, RunReport& r)
{
    const auto t0 = Clock::now();
    CellModelSpec spec;
    std::optional<DimensionTable> expected;
    if (c.model == "radial")
    {
        const int n = c.n_sectors > 0 ? c.n_sectors : 4 * (c.m1 + c.m2);
        spec = cell_model::RadialSheetQuotient{c.m1, c.m2, n};
        DimensionTable t;
        t.set(2, pole_gcd(c.m1, c.m2));
        t.set(3, pole_gcd(c.m1, c.m2));
        expected = t;
    }
    else if (c.model == "wedge-bundle")
    {
        spec = cell_model::WedgeBundleOverCircle{c.m};
        DimensionTable t;
        t.set(1, c.m);
        t.set(2, c.m);
        expected = t;
    }
    else if (c.model == "wedge")
        spec = cell_model::WedgeOfCircles{c.m};
    else if (c.model == "sphere")
        spec = cell_model::Sphere2{};
    else if (c.model == "torus")
        spec = cell_model::Torus2{};
    else
        config_error("unknown cell model '" + c.model + "'");

    const auto complex = build_complex(spec);
    const auto h = homology_dims(complex);
    r.data = {{"model", describe(spec)}, {"homology", to_json(h)}, {"cells", complex.dims()},
              {"quotient", is_quotient_model(spec)}};
    if (expected)
        r.checks.push_back(check("homology", {{"model", describe(spec)}}, to_json(*expected), to_json(h), "paper",
                                 seconds_since(t0)));
}

std::optional<int> expected_kernel(const OperatorKind& op)
{
    switch (op.tag)
    {
        case OperatorKind::Tag::DCrossing: return pole_gcd(op.m1, op.m2);
        case OperatorKind::Tag::EOnP: return pole_gcd(op.m1, op.m2) + 2;
        case OperatorKind::Tag::RhoOneVar: return op.m1;
        case OperatorKind::Tag::AOp: return 4;
        default: return std::nullopt;
    }
}

void run_truncdim(const RunConfig& c, RunReport& r)
{
    const auto t0 = Clock::now();
    const auto op = OperatorKind::parse(c.op, c.m1, c.m2);
    const int T0 = c.T0 > 0 ? c.T0 : op.min_window();
    const auto ker = stabilize_kernel(op, T0, c.steps);
    r.data = {{"op", op.name()}, {"T0", T0}, {"kernel_dim", ker.value}, {"stabilized", ker.stabilized},
              {"kernel", to_json(ker)}};
    const nlohmann::json inputs = {{"op", op.name()}, {"T0", T0}, {"steps", c.steps}};
    if (auto e = expected_kernel(op))
        r.checks.push_back(check("kernel_dim", inputs, *e, ker.value, "paper", seconds_since(t0)));
    if (c.cokernel)
    {
        const auto t1 = Clock::now();
        const auto coker = stabilize_cokernel(op, T0, c.steps);
        r.data["cokernel_dim"] = coker.value;
        r.data["cokernel"] = to_json(coker);
        if (op.tag == OperatorKind::Tag::EOnP)
            r.checks.push_back(check("cokernel_dim", inputs, pole_gcd(op.m1, op.m2) + 3, coker.value, "paper",
                                     seconds_since(t1)));
        else if (op.tag == OperatorKind::Tag::AOp)
            r.checks.push_back(check("cokernel_dim", inputs, 4, coker.value, "paper", seconds_since(t1)));
    }
}

void run_chg_verify(const RunConfig& c, RunReport& r)
{
    const auto t0 = Clock::now();
    const auto params = params_of(c);
    const mpq_class x = parse_rational(c.x), y = parse_rational(c.y);
    const nlohmann::json inputs = {{"params", params_json(c)}, {"x", x.get_str()}, {"y", y.get_str()}};
    const auto ids = check_gm_relations(params, x, y);
    for (const auto& id : ids.checks)
        r.checks.push_back({id.name, inputs, "0", id.residual, "formula", id.pass, seconds_since(t0)});

    const auto t1 = Clock::now();
    const auto pts = default_sample_points(10);
    const auto mism = gm_matrix_mismatches(params, printed_gm_matrix(params), pts);
    r.checks.push_back(check("gm_matrix", {{"params", params_json(c)}, {"points", pts.size()}}, 0, mism.size(),
                             "formula", seconds_since(t1)));

    const auto t2 = Clock::now();
    const auto integ = check_integrability(printed_gm_matrix(params), pts);
    r.checks.push_back(check("integrability", {{"params", params_json(c)}, {"points", pts.size()}}, true,
                             integ.all_zero(), "formula", seconds_since(t2)));
    r.data = {{"identities", to_json(ids)}, {"gm_mismatches", mism}, {"integrability", to_json(integ)}};
}

void run_chg_periods(const RunConfig& c, RunReport& r)
{
    const auto params = params_of(c);
    const auto point = point_of(params, c);
    const auto spec = spec_of(c);
    const nlohmann::json inputs = {{"params", params_json(c)}, {"x", {point.x.real(), point.x.imag()}},
                                   {"y", {point.y.real(), point.y.imag()}}, {"rel_tol", c.rel_tol}};

    auto t0 = Clock::now();
    const auto F = period_vector(params, point, spec);
    r.data = {{"periods", to_json(F)}, {"csv", period_csv_header() + "\n" + to_csv_row(F) + "\n"}};
    bool within = true;
    for (int i = 0; i < 3; ++i)
        within = within && F.err[i] <= std::max(c.abs_tol, c.rel_tol * static_cast<double>(abs(F.values[i])));
    r.checks.push_back({"error_estimate", inputs, "<= tolerance", {{"err", F.err}}, "property", within,
                        seconds_since(t0)});

    t0 = Clock::now();
    const auto res = exactness_residual(params, point, spec);
    double worst = 0;
    for (const auto& z : res)
        worst = std::max(worst, static_cast<double>(abs(z)) / F.norm());
    r.checks.push_back({"exactness_residual", inputs, "<= 1e-8", {{"residual", worst}}, "property", worst <= 1e-8,
                        seconds_since(t0)});

    if (c.oracle)
    {
        t0 = Clock::now();
        const auto G = period_vector(params, point, spec, Engine::GaussKronrod);
        double diff = 0;
        for (int i = 0; i < 3; ++i)
            diff = std::max(diff, static_cast<double>(abs(F.values[i] - G.values[i]) / abs(G.values[i])));
        r.checks.push_back({"engine_agreement", inputs, "<= 1e-8", {{"residual", diff}}, "oracle", diff <= 1e-8,
                            seconds_since(t0)});
        r.data["oracle"] = to_json(G);
    }
}

void run_gm_check(const RunConfig& c, RunReport& r)
{
    const auto t0 = Clock::now();
    const auto params = params_of(c);
    const auto point = point_of(params, c);
    const auto g = gm_residual(params, point, c.step, spec_of(c));
    const double dt = seconds_since(t0);
    const nlohmann::json inputs = {{"params", params_json(c)}, {"x", {point.x.real(), point.x.imag()}},
                                   {"y", {point.y.real(), point.y.imag()}}, {"step", c.step}};
    r.data = to_json(g);
    r.checks.push_back({"du_x_identity", inputs, "<= 1e-5", {{"residual", g.du_x_identity}}, "property",
                        g.du_x_identity <= 1e-5, dt});
    r.checks.push_back({"du_y_identity", inputs, "<= 1e-5", {{"residual", g.du_y_identity}}, "property",
                        g.du_y_identity <= 1e-5, dt});
    r.checks.push_back({"gm_system", inputs, "<= 1e-4", {{"residual", g.residual}}, "property", g.residual <= 1e-4,
                        dt});
}

void run_full_suite(const RunConfig& c, RunReport& r)
{
    nlohmann::json criteria = nlohmann::json::array();
    for (const auto& res : run_acceptance_suite(c.seed))
    {
        criteria.push_back(to_json(res));
        r.checks.push_back({"criterion_" + std::to_string(res.id), {{"title", res.title}}, true, res.pass,
                            "property", res.pass, res.runtime_s});
    }
    r.data = {{"criteria", criteria}};
}

}   // namespace

RunReport run(const RunConfig& config)
{
    RunReport r;
    r.command = config.command;
    r.config = to_json(config);
    r.seed = config.seed;
    try
    {
        validate(config);
        const std::map<std::string, void (*)(const RunConfig&, RunReport&)> dispatch = {
            {"dims", run_dims},           {"stokes", run_stokes},           {"homology", run_homology},
            {"truncdim", run_truncdim},   {"chg-verify", run_chg_verify},   {"chg-periods", run_chg_periods},
            {"gm-check", run_gm_check},   {"full-suite", run_full_suite},
        };
        dispatch.at(config.command)(config, r);
        r.verdict = r.all_pass() ? "pass" : "fail";
        r.exit_code = r.all_pass() ? 0 : 1;
    }
    catch (const Error& e)
    {
        r.verdict = "error";
        r.exit_code = exit_code_for(e.kind());
        r.error = e.what();
    }
    catch (const std::invalid_argument& e)
    {
        r.verdict = "error";
        r.exit_code = 2;
        r.error = std::string("ConfigError: ") + e.what();
    }
    return r;
}

// ---------------------------------------------------------------------------
// Comparison

namespace {

const std::set<std::string>& estimate_keys()
{
    static const std::set<std::string> keys = {"err", "residual", "central_residual", "richardson_estimate",
                                               "du_x_identity", "du_y_identity", "du_x_central", "du_y_central",
                                               "levels"};
    return keys;
}

std::optional<double> as_number(const nlohmann::json& v)
{
    if (v.is_number_float())
        return v.get<double>();
    if (v.is_string())
    {
        const std::string s = v.get<std::string>();
        char* end = nullptr;
        const double d = std::strtod(s.c_str(), &end);
        if (!s.empty() && end == s.c_str() + s.size() && s.find_first_of(".eE") != std::string::npos)
            return d;
    }
    return std::nullopt;
}

void diff_json(const nlohmann::json& a, const nlohmann::json& b, const std::string& path, bool estimate,
               double rel_tol, std::vector<std::string>& out)
{
    if (a.is_object() && b.is_object())
    {
        std::set<std::string> keys;
        for (auto it = a.begin(); it != a.end(); ++it)
            keys.insert(it.key());
        for (auto it = b.begin(); it != b.end(); ++it)
            keys.insert(it.key());
        for (const auto& k : keys)
        {
            if (k == "runtime_s")
                continue;
            if (!a.contains(k) || !b.contains(k))
            {
                out.push_back(path + "/" + k + ": present in only one report");
                continue;
            }
            diff_json(a[k], b[k], path + "/" + k, estimate || estimate_keys().count(k) > 0, rel_tol, out);
        }
        return;
    }
    if (a.is_array() && b.is_array())
    {
        if (a.size() != b.size())
        {
            out.push_back(path + ": length " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
            return;
        }
        for (std::size_t i = 0; i < a.size(); ++i)
            diff_json(a[i], b[i], path + "/" + std::to_string(i), estimate, rel_tol, out);
        return;
    }
    if (!estimate)
    {
        const auto x = as_number(a), y = as_number(b);
        if (x && y)
        {
            if (std::abs(*x - *y) > rel_tol * std::max(std::abs(*x), std::abs(*y)))
                out.push_back(path + ": " + a.dump() + " vs " + b.dump());
            return;
        }
    }
    if (a != b)
        out.push_back(path + ": " + a.dump() + " vs " + b.dump());
}

}   // namespace

ReportDiff compare_reports(const RunReport& r1, const RunReport& r2)
{
    if (r1.version != r2.version)
        throw Error(ErrorKind::VersionMismatch, "artifact versions " + r1.version + " and " + r2.version);
    if (r1.command != r2.command)
        throw Error(ErrorKind::VersionMismatch, "commands " + r1.command + " and " + r2.command);

    const double tol = 10 * std::max(r1.config.value("rel_tol", 1e-10), r2.config.value("rel_tol", 1e-10));
    ReportDiff d;
    if (r1.verdict != r2.verdict)
        d.entries.push_back("verdict: " + r1.verdict + " vs " + r2.verdict);

    std::map<std::string, const CheckRecord*> second;
    for (const auto& c : r2.checks)
        second[c.name] = &c;
    std::set<std::string> seen;
    for (const auto& c : r1.checks)
    {
        seen.insert(c.name);
        auto it = second.find(c.name);
        if (it == second.end())
        {
            d.entries.push_back("check " + c.name + ": only in the first report");
            continue;
        }
        if (c.pass != it->second->pass)
            d.entries.push_back("check " + c.name + ": pass " + (c.pass ? "true" : "false") + " vs "
                                + (it->second->pass ? "true" : "false"));
        diff_json(c.computed, it->second->computed, "check " + c.name, false, tol, d.entries);
    }
    for (const auto& c : r2.checks)
        if (!seen.count(c.name))
            d.entries.push_back("check " + c.name + ": only in the second report");
    return d;
}

}   // namespace rdper
