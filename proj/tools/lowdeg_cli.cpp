// lowdeg: command-line front end for the experiment suites.
//
//   lowdeg adv --model corr-er --n 3 --q 1/3 --rho 1/2 --D 3 --exact
//   lowdeg xi --n 6 --k 2 --eps 0.3 --lambda 1 --D 3
//   lowdeg --config run.json
//
// A config file supplies the starting values; flags given on the command line override them.

#include "lowdeg/cli/run.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

using lowdeg::cli::ExperimentConfig;

unsigned default_threads() {
    if (const char* env = std::getenv("LOWDEG_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
        std::cerr << "ignoring LOWDEG_THREADS='" << env << "'\n";
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

// --config (or bounds-audit --params) has to be read before the flags are bound, so find it by hand.
std::optional<std::string> config_path(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        for (const std::string flag : {"--config", "--params"}) {
            if (a == flag && i + 1 < argc) return argv[i + 1];
            if (a.rfind(flag + "=", 0) == 0) return a.substr(flag.size() + 1);
        }
    }
    return std::nullopt;
}

void model_options(CLI::App* sub, ExperimentConfig& c) {
    auto& m = c.model;
    sub->add_option("--model", m.family, "corr-er, er, sbm, corr-sbm or modified-sbm");
    sub->add_option("--n", m.n, "number of vertices");
    sub->add_option_function<std::string>("--p", [&m](const std::string& v) { m.p = v; }, "parent edge probability");
    sub->add_option_function<std::string>("--s", [&m](const std::string& v) { m.s = v; }, "subsampling probability");
    sub->add_option_function<std::string>("--q", [&m](const std::string& v) { m.q = v; }, "marginal edge density");
    sub->add_option_function<std::string>("--rho", [&m](const std::string& v) { m.rho = v; }, "edge correlation");
    sub->add_option("--lambda", m.lambda, "SBM average degree");
    sub->add_option("--k", m.k, "number of communities");
    sub->add_option("--eps", m.eps, "SBM signal strength");
    sub->add_option("--delta", m.delta, "admissibility slack, at most 1/100");
    sub->add_option("--D", m.D, "degree");
    sub->add_option("--N", m.N, "cycle length cutoff");
    sub->add_flag("--exact", c.exact, "exact rational mode; probabilities as integers or a/b");
}

void output_options(CLI::App* app, ExperimentConfig& c) {
    app->add_option("--out", c.output, "output file (default stdout)");
    app->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app->add_option("--seed", c.seed, "base seed");
}

}  // namespace

int main(int argc, char** argv) {
    namespace cli = lowdeg::cli;
    ExperimentConfig c;
    bool file_sets_format = false;
    if (const auto path = config_path(argc, argv)) {
        std::ifstream f(*path, std::ios::binary);
        if (!f) {
            std::cerr << cli::error_json("config", "cannot read config file '" + *path + "'").dump() << "\n";
            return cli::kUsage;
        }
        std::stringstream buf;
        buf << f.rdbuf();
        try {
            c = cli::parse_config_text(buf.str());
            file_sets_format = nlohmann::json::parse(buf.str()).contains("format");
        } catch (const std::exception& e) {
            std::cerr << cli::error_json("config", e.what()).dump() << "\n";
            return cli::kUsage;
        }
    }
    const std::string from_file = c.command;

    CLI::App app{"Low-degree advantage experiments on correlated random graphs and block models"};
    std::string config_file;
    unsigned threads = default_threads();
    bool dump_config = false;
    app.add_option("--config", config_file, "JSON experiment config; flags override its values");
    app.add_option("--threads", threads, "worker threads (default: $LOWDEG_THREADS or all cores)")->check(CLI::PositiveNumber);
    app.add_flag("--dump-config", dump_config, "print the resolved config as JSON and exit");
    output_options(&app, c);
    app.require_subcommand(0, 1);
    // global options may also follow the subcommand
    app.fallthrough();

    auto* sample = app.add_subcommand("sample", "draw graphs from a model");
    model_options(sample, c);
    sample->add_option("--trials", c.trials, "number of draws");

    auto* adv = app.add_subcommand("adv", "degree-D advantage by exact enumeration");
    model_options(adv, c);
    adv->add_option("--method", c.method, "product, gram_schmidt or rayleigh");
    adv->add_option_function<std::vector<int>>(
           "--condition", [&c](const std::vector<int>& v) { c.condition = std::array<int, 2>{v[0], v[1]}; },
           "condition on pi*(i) = j")
        ->expected(2);

    auto* hidden = app.add_subcommand("hidden", "hidden informative sample dilution");
    model_options(hidden, c);
    hidden->add_option("--M", c.M, "block counts");
    hidden->add_option("--base-null", c.base_null, "null coordinate probabilities, comma separated");
    hidden->add_option("--base-alt", c.base_alt, "planted coordinate probabilities, comma separated");

    auto* xi = app.add_subcommand("xi", "Xi table over leafless classes");
    model_options(xi, c);
    xi->add_option("--convention", c.convention, "leading or exact cross step");
    // xi is an SBM quantity
    xi->preparse_callback([&c](std::size_t) { c.model.family = "sbm"; });

    auto* dual = app.add_subcommand("dual-check", "reversed advantage against the dual certificate norm");
    model_options(dual, c);
    dual->preparse_callback([&c](std::size_t) { c.model.family = "sbm"; });

    auto* bounds = app.add_subcommand("bounds-audit", "audit counting and moment bounds (CSV unless --format json)");
    model_options(bounds, c);
    bounds->add_option("--params", config_file, "JSON parameter file, same schema as --config");
    bounds->add_option("--suite", c.suite, "A1, A4, A5, B1, B3, P-sum or all");
    bounds->add_option("--slack", c.slack, "constant multiplying the right-hand side");

    auto* reduce = app.add_subcommand("reduce", "one-sided test built from a matching statistic");
    model_options(reduce, c);
    reduce->add_option("--trials", c.trials, "trials per hypothesis");
    reduce->add_option("--estimator", c.estimator, "oracle, identity, random or greedy");
    reduce->add_option("--threshold", c.threshold, "reject the null above this value");

    auto* otter = app.add_subcommand("otter", "rooted tree counts and the Otter constant");
    otter->add_option("--max-n", c.max_n, "largest tree size")->check(CLI::Range(1, 2000));

    app.add_subcommand("verify", "run the full invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << cli::error_json("usage", e.what()).dump() << "\n";
        return cli::kUsage;
    }

    if (!app.get_subcommands().empty()) {
        const std::string name = app.get_subcommands().front()->get_name();
        if (!from_file.empty() && from_file != name) {
            std::cerr << cli::error_json("usage", "config command '" + from_file + "' conflicts with subcommand '" + name + "'").dump()
                      << "\n";
            return cli::kUsage;
        }
        c.command = name;
    }
    if (c.command == "bounds-audit" && app.get_option("--format")->count() == 0 && !file_sets_format) c.format = "csv";
    if (c.command.empty()) {
        std::cerr << cli::error_json("usage", "no subcommand given").dump() << "\n" << app.help();
        return cli::kUsage;
    }
    if (dump_config) {
        std::cout << cli::to_json(c).dump(2) << "\n";
        return cli::kOk;
    }
    return cli::run(c, threads, std::cout, std::cerr);
}
