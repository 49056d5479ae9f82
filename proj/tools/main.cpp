// Command-line frontend: steady-state evaluation, feedback-gain
// optimization, Fig-2-style sweeps over (chi, eta), and Monte-Carlo
// validation of the closed-form covariance.
//
// Exit codes: 0 ok, 2 usage/invalid parameters, 3 unstable or unphysical
// state, 4 statistical validation failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entfb/covariance.hpp"
#include "entfb/entanglement.hpp"
#include "entfb/model.hpp"
#include "entfb/optimize.hpp"
#include "entfb/simulate.hpp"
#include "entfb/sweep.hpp"

namespace {

using entfb::format_sig12;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitUnstable = 3;
constexpr int kExitValidation = 4;

int exit_code_for(const entfb::Error& err) {
    switch (err.code()) {
        case entfb::ErrorCode::EtaOutOfRange:
        case entfb::ErrorCode::NegativeChi:
        case entfb::ErrorCode::FeedbackWithoutDetection:
        case entfb::ErrorCode::InvalidConfig:
        case entfb::ErrorCode::StepTooLarge:
        case entfb::ErrorCode::CurrentUndefined:
            return kExitUsage;
        case entfb::ErrorCode::UnstableMeans:
        case entfb::ErrorCode::UnstableSystem:
        case entfb::ErrorCode::NotConverged:
        case entfb::ErrorCode::NotPositiveDefinite:
        case entfb::ErrorCode::StructureViolation:
        case entfb::ErrorCode::BranchViolation:
            return kExitUnstable;
    }
    return kExitUsage;
}

const std::array<std::pair<int, int>, 10> kUpperEntries = {{{0, 0},
                                                            {0, 1},
                                                            {0, 2},
                                                            {0, 3},
                                                            {1, 1},
                                                            {1, 2},
                                                            {1, 3},
                                                            {2, 2},
                                                            {2, 3},
                                                            {3, 3}}};

const char* kQuadratureNames[4] = {"x1", "y1", "x2", "y2"};

std::string entry_name(int i, int j) {
    return std::string(kQuadratureNames[i]) + kQuadratureNames[j];
}

std::vector<double> parse_eta_list(const std::string& text) {
    std::vector<double> etas;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            throw entfb::Error(entfb::ErrorCode::InvalidConfig, "empty entry in eta list");
        }
        etas.push_back(std::stod(item));
    }
    if (etas.empty()) {
        throw entfb::Error(entfb::ErrorCode::InvalidConfig, "eta list must not be empty");
    }
    return etas;
}

struct SteadyArgs {
    double chi = 0.0;
    double eta = 1.0;
    double lambda = 0.0;
    std::string format = "csv";
};

int run_steady(const SteadyArgs& args) {
    const entfb::ModelParams p = entfb::make_params(args.chi, args.eta, args.lambda);
    const entfb::CovarianceState gamma = entfb::closed_form_covariance(p);
    const entfb::EntanglementReport rep = entfb::entanglement_report(gamma);
    const double margin = entfb::stability_margin(p);
    const bool physical = entfb::is_physical(gamma);

    if (args.format == "json") {
        json out;
        out["chi"] = args.chi;
        out["eta"] = args.eta;
        out["lambda"] = args.lambda;
        out["stability_margin"] = margin;
        out["zeta"] = rep.zeta;
        out["log_negativity"] = rep.log_negativity;
        out["epr_variance"] = rep.epr_variance;
        out["nu_min"] = rep.nu_min;
        out["physical"] = physical;
        json rows = json::array();
        for (int i = 0; i < 4; ++i) {
            json row = json::array();
            for (int j = 0; j < 4; ++j) row.push_back(gamma(i, j));
            rows.push_back(row);
        }
        out["gamma"] = rows;
        std::cout << out.dump(2) << '\n';
        return kExitOk;
    }

    std::string header = "chi,eta,lambda,stability_margin,zeta,log_negativity,"
                         "epr_variance,nu_min,physical";
    std::string row = format_sig12(args.chi) + ',' + format_sig12(args.eta) + ',' +
                      format_sig12(args.lambda) + ',' + format_sig12(margin) + ',' +
                      format_sig12(rep.zeta) + ',' + format_sig12(rep.log_negativity) + ',' +
                      format_sig12(rep.epr_variance) + ',' + format_sig12(rep.nu_min) + ',' +
                      (physical ? "1" : "0");
    for (const auto& [i, j] : kUpperEntries) {
        header += ",g_" + entry_name(i, j);
        row += ',' + format_sig12(gamma(i, j));
    }
    std::cout << header << '\n' << row << '\n';
    return kExitOk;
}

struct OptimizeArgs {
    double chi = 0.0;
    double eta = 1.0;
    entfb::OptimizerConfig cfg;
    std::string format = "csv";
};

int run_optimize(const OptimizeArgs& args) {
    const entfb::SweepRecord rec = entfb::evaluate_sweep_point(args.chi, args.eta, args.cfg);
    if (args.format == "json") {
        json out;
        out["chi"] = rec.chi;
        out["eta"] = rec.eta;
        out["lambda_star"] = rec.lambda_star;
        out["l_fb"] = rec.l_fb;
        out["l_nofb"] = rec.l_nofb;
        out["epr_variance_nofb"] = rec.epr_variance_nofb;
        out["zeta"] = rec.zeta;
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << entfb::sweep_csv_header() << '\n' << entfb::to_csv_row(rec) << '\n';
    }
    return kExitOk;
}

struct SweepArgs {
    double chi_min = 0.01;
    double chi_max = 0.49;
    int chi_steps = 49;
    std::string eta_list = "0,0.3,0.5,0.7,0.99";
    std::string out_path;
    entfb::OptimizerConfig cfg;
};

int run_sweep_cmd(const SweepArgs& args) {
    const std::vector<double> etas = parse_eta_list(args.eta_list);
    const auto records =
        entfb::run_sweep(args.chi_min, args.chi_max, args.chi_steps, etas, args.cfg);
    if (args.out_path.empty()) {
        entfb::write_sweep_csv(std::cout, records);
    } else {
        std::ofstream out(args.out_path, std::ios::binary);
        if (!out) {
            throw entfb::Error(entfb::ErrorCode::InvalidConfig,
                               "cannot open output file " + args.out_path);
        }
        entfb::write_sweep_csv(out, records);
    }
    return kExitOk;
}

struct SimulateArgs {
    double chi = 0.0;
    double eta = 1.0;
    double lambda = 0.0;
    entfb::SimConfig cfg;
    std::string dump_prefix;
};

void dump_series(const std::string& path, const entfb::TimeSeries& series) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw entfb::Error(entfb::ErrorCode::InvalidConfig, "cannot open " + path);
    }
    for (std::size_t k = 0; k < series.time.size(); ++k) {
        out << format_sig12(series.time[k]) << ' ' << format_sig12(series.value[k]) << '\n';
    }
}

int run_simulate(const SimulateArgs& args) {
    if (args.cfg.n_traj < 2) {
        throw entfb::Error(entfb::ErrorCode::InvalidConfig,
                           "at least 2 trajectories are needed for standard errors");
    }
    const entfb::ModelParams p = entfb::make_params(args.chi, args.eta, args.lambda);
    entfb::SimConfig cfg = args.cfg;
    cfg.record_series = !args.dump_prefix.empty();
    const entfb::EnsembleStats stats = entfb::simulate_ensemble(p, cfg);
    const entfb::CovarianceState analytic = entfb::closed_form_covariance(p);

    std::cout << "chi,eta,lambda,dt,burn_in,horizon,trajectories,seed\n"
              << format_sig12(args.chi) << ',' << format_sig12(args.eta) << ','
              << format_sig12(args.lambda) << ',' << format_sig12(cfg.dt) << ','
              << format_sig12(cfg.burn_in) << ',' << format_sig12(cfg.horizon) << ','
              << cfg.n_traj << ',' << cfg.seed << '\n';

    std::cout << "entry,analytic,estimate,std_error,z\n";
    double max_abs_z = 0.0;
    for (const auto& [i, j] : kUpperEntries) {
        const double expect = analytic(i, j);
        const double got = stats.gamma_hat(i, j);
        const double se = stats.gamma_se(i, j);
        const double z = (got - expect) / se;
        max_abs_z = std::max(max_abs_z, std::abs(z));
        std::cout << entry_name(i, j) << ',' << format_sig12(expect) << ',' << format_sig12(got)
                  << ',' << format_sig12(se) << ',' << format_sig12(z) << '\n';
    }
    if (stats.current) {
        const double z = stats.current->mean / stats.current->std_error;
        std::cout << "current,0," << format_sig12(stats.current->mean) << ','
                  << format_sig12(stats.current->std_error) << ',' << format_sig12(z) << '\n';
    }

    if (stats.series) {
        dump_series(args.dump_prefix + ".x1.dat", stats.series->x1);
        dump_series(args.dump_prefix + ".y1.dat", stats.series->y1);
        dump_series(args.dump_prefix + ".x2.dat", stats.series->x2);
        dump_series(args.dump_prefix + ".y2.dat", stats.series->y2);
        if (p.eta > 0.0) dump_series(args.dump_prefix + ".current.dat", stats.series->current);
    }

    const bool pass = max_abs_z <= 4.0;
    std::cout << "result," << (pass ? "PASS" : "FAIL") << ",max_abs_z,"
              << format_sig12(max_abs_z) << '\n';
    return pass ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steady-state entanglement of two damped, parametrically coupled bosonic "
                 "modes under Markovian homodyne feedback"};
    app.require_subcommand(1);

    SteadyArgs steady_args;
    auto* steady = app.add_subcommand("steady", "Evaluate the steady state at fixed gains");
    steady->add_option("--chi", steady_args.chi, "coupling strength")->required();
    steady->add_option("--eta", steady_args.eta, "detection efficiency")->required();
    steady->add_option("--lambda", steady_args.lambda, "feedback gain (default 0)");
    steady->add_option("--format", steady_args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    OptimizeArgs opt_args;
    auto* optimize = app.add_subcommand("optimize", "Maximize log negativity over the gain");
    optimize->add_option("--chi", opt_args.chi, "coupling strength")->required();
    optimize->add_option("--eta", opt_args.eta, "detection efficiency")->required();
    optimize->add_option("--grid-points", opt_args.cfg.grid_points, "coarse scan points");
    optimize->add_option("--tol", opt_args.cfg.refine_tol, "refinement tolerance in lambda");
    optimize->add_option("--margin", opt_args.cfg.stability_margin, "minimum stability margin");
    optimize->add_option("--format", opt_args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "CSV sweep over (chi, eta)");
    sweep->add_option("--chi-min", sweep_args.chi_min, "lowest chi (default 0.01)");
    sweep->add_option("--chi-max", sweep_args.chi_max, "highest chi (default 0.49)");
    sweep->add_option("--chi-steps", sweep_args.chi_steps, "number of chi values (default 49)");
    sweep->add_option("--eta-list", sweep_args.eta_list,
                      "comma-separated efficiencies (default 0,0.3,0.5,0.7,0.99)");
    sweep->add_option("--out", sweep_args.out_path, "output path (default stdout)");
    sweep->add_option("--grid-points", sweep_args.cfg.grid_points, "coarse scan points");
    sweep->add_option("--tol", sweep_args.cfg.refine_tol, "refinement tolerance in lambda");
    sweep->add_option("--margin", sweep_args.cfg.stability_margin, "minimum stability margin");

    SimulateArgs sim_args;
    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo validation of the covariance");
    simulate->add_option("--chi", sim_args.chi, "coupling strength")->required();
    simulate->add_option("--eta", sim_args.eta, "detection efficiency")->required();
    simulate->add_option("--lambda", sim_args.lambda, "feedback gain (default 0)");
    simulate->add_option("--dt", sim_args.cfg.dt, "time step (default 1e-3)");
    simulate->add_option("--burn-in", sim_args.cfg.burn_in, "discarded time (default 10)");
    simulate->add_option("--horizon", sim_args.cfg.horizon, "averaged time (default 100)");
    simulate->add_option("--trajectories", sim_args.cfg.n_traj, "ensemble size (default 10000)");
    simulate->add_option("--seed", sim_args.cfg.seed, "master seed (default 0)");
    simulate->add_option("--threads", sim_args.cfg.threads,
                         "worker threads, 0 = hardware (result is thread-count independent)");
    simulate->add_option("--dump-series", sim_args.dump_prefix,
                         "write trajectory-0 sample paths to PREFIX.<obs>.dat");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (steady->parsed()) return run_steady(steady_args);
        if (optimize->parsed()) return run_optimize(opt_args);
        if (sweep->parsed()) return run_sweep_cmd(sweep_args);
        if (simulate->parsed()) return run_simulate(sim_args);
    } catch (const entfb::Error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return exit_code_for(err);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return kExitUsage;
}
