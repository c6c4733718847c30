// Command-line front end: one subcommand per verification task.

#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "rdper/cli_report.hpp"

namespace {

using rdper::RunConfig;

struct Option
{
    const char* key;   // RunConfig setting
    const char* flag;
    const char* help;
    bool is_flag = false;
};

const std::vector<Option> all_options = {
    {"m1", "--m1", "pole order along the first divisor"},
    {"m2", "--m2", "pole order along the second divisor"},
    {"u0_re", "--u0-re", "real part of u(0)"},
    {"u0_im", "--u0-im", "imaginary part of u(0)"},
    {"stratum", "--stratum", "crossing | component | smooth"},
    {"samples", "--samples", "grid samples per torus axis"},
    {"model", "--model", "radial | wedge-bundle | wedge | sphere | torus"},
    {"m", "--m", "wedge size"},
    {"n_sectors", "--n-sectors", "torus grid size for the radial model (0: 4(m1+m2))"},
    {"op", "--op", "D | E | EP | A | rho | phi | psi | phibar"},
    {"T0", "--T0", "truncation degree (0: minimal window)"},
    {"steps", "--steps", "window enlargements allowed"},
    {"cokernel", "--cokernel", "also stabilize the cokernel", true},
    {"a", "--a", "exponent of u1 (rational)"},
    {"b", "--b", "exponent of u2 (rational)"},
    {"c", "--c", "exponent of 1+u1+u2 (rational)"},
    {"alpha", "--alpha", "exponential weight (rational)"},
    {"x", "--x", "x (rational; real part for periods)"},
    {"y", "--y", "y (rational; real part for periods)"},
    {"x_im", "--x-im", "imaginary part of x"},
    {"y_im", "--y-im", "imaginary part of y"},
    {"rel_tol", "--rel-tol", "relative quadrature tolerance"},
    {"abs_tol", "--abs-tol", "absolute quadrature tolerance"},
    {"max_level", "--max-level", "mesh halvings allowed"},
    {"digits", "--digits", "requested precision in decimal digits"},
    {"step", "--step", "finite-difference step"},
    {"oracle", "--oracle", "also run the Gauss-Kronrod oracle", true},
};

const std::map<std::string, std::vector<std::string> > command_keys = {
    {"dims", {"m1", "m2", "u0_re", "u0_im", "stratum"}},
    {"stokes", {"m1", "m2", "u0_re", "u0_im", "samples"}},
    {"homology", {"model", "m", "m1", "m2", "n_sectors"}},
    {"truncdim", {"op", "m1", "m2", "T0", "steps", "cokernel"}},
    {"chg-verify", {"a", "b", "c", "alpha", "x", "y"}},
    {"chg-periods", {"a", "b", "c", "alpha", "x", "y", "x_im", "y_im", "rel_tol", "abs_tol", "max_level", "digits",
                     "oracle"}},
    {"gm-check", {"a", "b", "c", "alpha", "x", "y", "x_im", "y_im", "rel_tol", "abs_tol", "max_level", "digits",
                  "step"}},
    {"full-suite", {}},
};

const std::map<std::string, std::string> command_help = {
    {"dims", "rapid-decay and de Rham dimensions of a local model"},
    {"stokes", "count Stokes components on the torus"},
    {"homology", "homology of a cell model"},
    {"truncdim", "stabilized kernel dimension of a truncated operator"},
    {"chg-verify", "exact identities for the hypergeometric example"},
    {"chg-periods", "periods over the decay chamber"},
    {"gm-check", "finite-difference check of the connection matrices"},
    {"full-suite", "every acceptance check"},
};

struct Given
{
    std::map<std::string, std::string> values;
    std::map<std::string, bool> flags;
    std::map<std::string, CLI::Option*> handles;
};

int run_compare(const std::string& p1, const std::string& p2)
{
    auto load = [](const std::string& p) {
        std::ifstream in(p);
        if (!in)
            throw rdper::Error(rdper::ErrorKind::ConfigError, "cannot open report " + p);
        return rdper::report_from_json(nlohmann::json::parse(in));
    };
    const auto diff = rdper::compare_reports(load(p1), load(p2));
    std::cout << nlohmann::json{{"empty", diff.empty()}, {"diff", diff.entries}}.dump(2) << "\n";
    return diff.empty() ? 0 : 1;
}

}   // namespace

int main(int argc, char** argv)
{
    CLI::App app{"rapid-decay / de Rham verification toolkit"};
    app.require_subcommand(1);
    std::string config_path, output;
    unsigned seed = 0;
    std::map<std::string, Given> given;

    for (const auto& cmd : rdper::known_commands())
    {
        CLI::App* sub = app.add_subcommand(cmd, command_help.at(cmd));
        sub->add_option("--config", config_path, "key = value config file; flags override it");
        sub->add_option("--seed", seed, "random seed recorded in the report");
        sub->add_option("--output", output, "report path (default: $RDPER_OUTPUT_DIR/<command>.json)");
        Given& g = given[cmd];
        for (const auto& key : command_keys.at(cmd))
        {
            const auto& opt = *std::find_if(all_options.begin(), all_options.end(),
                                            [&](const Option& o) { return key == o.key; });
            g.handles[key] = opt.is_flag ? sub->add_flag(opt.flag, g.flags[key], opt.help)
                                         : sub->add_option(opt.flag, g.values[key], opt.help);
        }
    }
    std::string report1, report2;
    CLI::App* compare = app.add_subcommand("compare", "structural diff of two JSON reports");
    compare->add_option("first", report1)->required();
    compare->add_option("second", report2)->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return 2;
    }

    try
    {
        if (compare->parsed())
            return run_compare(report1, report2);

        RunConfig cfg;
        std::string command;
        for (const auto& cmd : rdper::known_commands())
            if (app.get_subcommand(cmd)->parsed())
                command = cmd;
        if (!config_path.empty())
            rdper::load_config_file(cfg, config_path);
        cfg.command = command;
        Given& g = given[command];
        for (const auto& [key, handle] : g.handles)
            if (handle->count() > 0)
                rdper::apply_setting(cfg, key, g.flags.count(key) ? "true" : g.values[key]);
        if (app.get_subcommand(command)->get_option("--seed")->count() > 0)
            cfg.seed = seed;
        if (!output.empty())
            cfg.output = output;

        const auto report = rdper::run(cfg);
        std::cout << rdper::to_json(report).dump(2) << "\n";
        for (const auto& path : rdper::write_artifacts(report, cfg))
            std::cerr << "wrote " << path.string() << "\n";
        return report.exit_code;
    }
    catch (const rdper::Error& e)
    {
        std::cerr << e.what() << "\n";
        return rdper::exit_code_for(e.kind());
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
