// slipns command line: experiment runners over the C API.
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "slipns.h"

namespace {

struct CliOptions {
    std::string config;
    std::string out = "out";
    std::string seed;
    std::string nu, beta, modes, tfinal;
};

int run_one(const std::string& experiment, const CliOptions& opt) {
    slipns_run* run = nullptr;
    if (slipns_run_create(&run) != SLIPNS_OK) {
        std::fprintf(stderr, "error: cannot create run handle\n");
        return 2;
    }
    auto fail = [&](const char* stage) {
        std::fprintf(stderr, "error in %s: %s\n", stage, slipns_last_error(run));
        slipns_run_destroy(run);
        return 2;
    };
    if (!opt.config.empty() && slipns_load_config(run, opt.config.c_str()) != SLIPNS_OK)
        return fail("load-config");
    if (!opt.seed.empty() && slipns_set_option(run, "seed", opt.seed.c_str()) != SLIPNS_OK)
        return fail("set-option");
    if (!opt.nu.empty() && slipns_set_option(run, "nu", opt.nu.c_str()) != SLIPNS_OK)
        return fail("set-option");
    if (!opt.beta.empty() && slipns_set_option(run, "beta", opt.beta.c_str()) != SLIPNS_OK)
        return fail("set-option");
    if (!opt.modes.empty() && slipns_set_option(run, "modes", opt.modes.c_str()) != SLIPNS_OK)
        return fail("set-option");
    if (!opt.tfinal.empty() && slipns_set_option(run, "tfinal", opt.tfinal.c_str()) != SLIPNS_OK)
        return fail("set-option");

    if (slipns_execute(run, experiment.c_str(), opt.out.c_str()) != SLIPNS_OK)
        return fail(experiment.c_str());

    const int rows = slipns_row_count(run);
    int failures = 0;
    for (int i = 0; i < rows; ++i) {
        char quantity[128], verdict[16];
        double value = 0, tol = 0, nu = 0, beta = 0, t = 0;
        slipns_row_quantity(run, i, quantity, sizeof(quantity));
        slipns_row_verdict(run, i, verdict, sizeof(verdict));
        slipns_row_values(run, i, &value, &tol, &nu, &beta, &t);
        if (std::string(verdict) == "info") continue;
        const bool ok = std::string(verdict) == "pass";
        if (!ok) ++failures;
        std::printf("[%s] %-32s value=%-13.6g tol=%-10.4g nu=%-9.3g t=%-8.4g\n",
                    ok ? "PASS" : "FAIL", quantity, value, tol, nu, t);
    }
    const int passed = slipns_passed(run);
    std::printf("%s: %s (%d check rows, %d failures); outputs in %s\n", experiment.c_str(),
                passed ? "pass" : "FAIL", rows, failures, opt.out.c_str());
    slipns_run_destroy(run);
    return passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"slipns: half-plane Navier-Stokes with Navier-slip boundary conditions"};
    app.require_subcommand(1);

    CliOptions opt;
    app.add_option("--config", opt.config, "configuration file (key = value lines)");
    app.add_option("--out", opt.out, "output directory");
    app.add_option("--seed", opt.seed, "random seed override");
    app.add_option("--nu", opt.nu, "viscosity override");
    app.add_option("--beta", opt.beta, "slip exponent override");
    app.add_option("--modes", opt.modes, "mode truncation override");
    app.add_option("--tfinal", opt.tfinal, "final time override");

    static const std::vector<std::pair<std::string, std::string>> kSubs = {
        {"kernel-check", "resolvent/temporal kernel and inequality audits"},
        {"stokes-run", "linear Stokes evolution of a data family"},
        {"ns-run", "nonlinear evolution with Picard-Duhamel stepping"},
        {"inviscid-rate", "velocity convergence rate across a nu sweep"},
        {"bound-check", "pointwise vorticity bound across a nu sweep"},
        {"oracle-check", "Green-function solver vs method-of-lines"},
    };
    std::string chosen;
    for (const auto& [name, desc] : kSubs) {
        auto* sub = app.add_subcommand(name, desc);
        sub->callback([&chosen, name = name] { chosen = name; });
    }

    CLI11_PARSE(app, argc, argv);
    return run_one(chosen, opt);
}
