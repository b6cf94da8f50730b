// Command line front end: sweeps, scans, finite-game runs, and simulations
// over the 4-state absorbing game on the action square [0, 1/16]^2.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sdgame/finite.hpp"
#include "sdgame/montecarlo.hpp"
#include "sdgame/solver.hpp"
#include "sdgame/sweep.hpp"

namespace {

using namespace sdgame;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct ProfileOpts {
    std::string family = "sinlog";
    double amplitude = kActionBound;
    std::string profile_file;
};

void add_profile_flags(CLI::App* cmd, ProfileOpts& o) {
    cmd->add_option("--family", o.family, "s family")
        ->check(CLI::IsMember({"zero", "sinlog", "sinloglog", "const", "custom"}))
        ->capture_default_str();
    cmd->add_option("--amplitude", o.amplitude,
                    "scale A of the s family (the constant itself for const)")
        ->capture_default_str();
    cmd->add_option("--profile-file", o.profile_file,
                    "two-column text (x, s(x)), x increasing in (0, 1/16]; "
                    "required for --family custom");
}

SDProfile load_custom(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open profile file: " + path);
    std::vector<double> xs, ss;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        double x = 0.0, s = 0.0;
        if (row >> x >> s) {
            xs.push_back(x);
            ss.push_back(s);
        }
    }
    return SDProfile::custom(std::move(xs), std::move(ss));
}

SDProfile build_profile(const ProfileOpts& o) {
    if (o.family == "zero") return SDProfile::zero();
    if (o.family == "sinlog") return SDProfile::sinlog(o.amplitude);
    if (o.family == "sinloglog") return SDProfile::sinloglog(o.amplitude);
    if (o.family == "const") return SDProfile::constant(o.amplitude);
    if (o.profile_file.empty())
        throw std::runtime_error("--family custom needs --profile-file");
    return load_custom(o.profile_file);
}

TransitionKernel build_kernel(const SDProfile& p, const std::string& kind) {
    if (kind == "sqrt") return kernel_sqrt(p);
    if (kind == "general") return kernel_general(p);
    return p.d_kind() == DKind::SquareRoot ? kernel_sqrt(p) : kernel_general(p);
}

struct ScheduleOpts {
    std::string schedule = "log";
    double lambda_min = 1e-8;
    double lambda_max = kActionBound;
    int count = 50;
    std::vector<double> explicit_values;
};

void add_schedule_flags(CLI::App* cmd, ScheduleOpts& o) {
    cmd->add_option("--schedule", o.schedule, "spacing of the discount sweep")
        ->check(CLI::IsMember({"log", "loglog", "explicit"}))
        ->capture_default_str();
    cmd->add_option("--lambda-min", o.lambda_min)->capture_default_str();
    cmd->add_option("--lambda-max", o.lambda_max)->capture_default_str();
    cmd->add_option("--count", o.count, "points in the sweep")->capture_default_str();
    cmd->add_option("--lambda", o.explicit_values,
                    "explicit discount list (with --schedule explicit)");
}

Schedule build_schedule(const ScheduleOpts& o) {
    Schedule s;
    s.kind = o.schedule == "log"      ? ScheduleKind::LogUniform
             : o.schedule == "loglog" ? ScheduleKind::LogLogUniform
                                      : ScheduleKind::Explicit;
    s.lambda_min = o.lambda_min;
    s.lambda_max = o.lambda_max;
    s.count = o.count;
    s.explicit_values = o.explicit_values;
    return s;
}

std::map<std::string, std::string> base_config(const std::string& op,
                                               const SDProfile& profile) {
    return {{"op", op}, {"profile", profile.describe()}};
}

void add_schedule_config(std::map<std::string, std::string>& c, const ScheduleOpts& o) {
    c["schedule"] = o.schedule;
    if (o.schedule == "explicit") {
        std::string vals;
        for (double v : o.explicit_values) {
            if (!vals.empty()) vals += ';';
            vals += format_double_17(v);
        }
        c["lambda_values"] = vals;
    } else {
        c["lambda_min"] = format_double_17(o.lambda_min);
        c["lambda_max"] = format_double_17(o.lambda_max);
        c["count"] = std::to_string(o.count);
    }
}

int emit(const std::string& path, const std::function<void(std::ostream&)>& writer) {
    if (path.empty()) {
        writer(std::cout);
        return 0;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "cannot open output file: " << path << "\n";
        return 1;
    }
    writer(f);
    return 0;
}

/// Fast feasibility gate for sweep commands: analytic certificates within the
/// 1/16 budget pass outright, everything else gets a coarse scan.
bool profile_feasible(const SDProfile& profile, const TransitionKernel& kernel,
                      std::string* note) {
    const BoundCertificate cert = bound_certificate(profile, 512);
    const double budget = kActionBound + 1e-12;
    if (cert.analytic && profile.d_kind() == DKind::SquareRoot &&
        cert.sup_abs_s <= budget && cert.sup_abs_xsprime <= budget) {
        *note = "analytic certificate";
        return true;
    }
    const FeasibilityReport rep = scan_feasibility(kernel, 201);
    *note = rep.feasible ? "scan(201) passed" : "scan(201) failed";
    if (!rep.feasible) std::cerr << rep.to_table();
    return rep.feasible;
}

// ---------------------------------------------------------------- values

struct ValuesOpts {
    ProfileOpts profile;
    ScheduleOpts schedule;
    int grid = 129;
    double tol = 1e-10;
    bool no_solver = false;
    std::string out;
};

int run_values(const ValuesOpts& o) {
    const SDProfile profile = build_profile(o.profile);
    const TransitionKernel kernel = build_kernel(profile, "auto");
    std::string note;
    if (!profile_feasible(profile, kernel, &note)) {
        std::cerr << "profile fails the feasibility scan; refusing to sweep\n";
        return 2;
    }
    const SweepResult sweep =
        sweep_values(profile, build_schedule(o.schedule), !o.no_solver, o.grid, o.tol);

    auto config = base_config("values", profile);
    add_schedule_config(config, o.schedule);
    config["grid"] = std::to_string(o.grid);
    config["tol"] = format_double_17(o.tol);
    config["solver"] = o.no_solver ? "off" : "on";
    config["feasibility"] = note;
    return emit(o.out, [&](std::ostream& os) {
        CsvWriter w(os, config,
                    {"lambda", "v_plus_closed", "v_minus_closed", "v_plus_solved",
                     "v_minus_solved", "residual", "duality_gap"});
        for (const SweepRow& r : sweep.rows)
            w.write_row({r.lambda, r.closed_form.plus, r.closed_form.minus,
                         r.solved.plus, r.solved.minus, r.solver_error, r.duality_gap});
        w.finish();
    });
}

// ------------------------------------------------------------ oscillation

struct OscillationOpts {
    ProfileOpts profile;
    ScheduleOpts schedule;
    std::string out;
};

int run_oscillation(const OscillationOpts& o) {
    const SDProfile profile = build_profile(o.profile);
    const OscillationReport rep = oscillation_report(profile, build_schedule(o.schedule));

    std::cout << "detrended column v(omega+) - d(lambda) over the schedule\n"
              << "  min     " << format_double_17(rep.min_plus)
              << "  at lambda=" << format_double_17(rep.lambda_at_min_plus) << "\n"
              << "  max     " << format_double_17(rep.max_plus)
              << "  at lambda=" << format_double_17(rep.lambda_at_max_plus) << "\n"
              << "  spread  " << format_double_17(rep.spread_plus) << "\n"
              << "  sign changes " << rep.sign_changes << "\n"
              << "detrended column v(omega-) + d(lambda)\n"
              << "  spread  " << format_double_17(rep.spread_minus) << "\n";

    if (o.out.empty()) return 0;
    auto config = base_config("oscillation", profile);
    add_schedule_config(config, o.schedule);
    return emit(o.out, [&](std::ostream& os) {
        CsvWriter w(os, config,
                    {"min_plus", "max_plus", "spread_plus", "min_minus", "max_minus",
                     "spread_minus", "lambda_at_min_plus", "lambda_at_max_plus",
                     "sign_changes"});
        w.write_row({rep.min_plus, rep.max_plus, rep.spread_plus, rep.min_minus,
                     rep.max_minus, rep.spread_minus, rep.lambda_at_min_plus,
                     rep.lambda_at_max_plus, static_cast<double>(rep.sign_changes)});
        w.finish();
    });
}

// ----------------------------------------------------------------- nstage

struct NStageOpts {
    ProfileOpts profile;
    std::vector<int> ns = {16, 64, 256, 1024};
    int grid = 65;
    std::string out;
};

int run_nstage(const NStageOpts& o) {
    const SDProfile profile = build_profile(o.profile);
    std::vector<int> ns = o.ns;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

    std::vector<int> small, transfer, skipped;
    for (int n : ns) {
        if (n < 1 || n > 100000)
            skipped.push_back(n);  // runtime guard: cost grows like n * grid^2
        else if (n < 16)
            small.push_back(n);
        else
            transfer.push_back(n);
    }

    const TransitionKernel kernel = build_kernel(profile, "auto");
    TransferReport report;
    if (!transfer.empty()) report = check_transfer(profile, transfer, o.grid);

    auto config = base_config("nstage", profile);
    config["grid"] = std::to_string(o.grid);
    {
        std::string joined;
        for (int n : skipped) {
            if (!joined.empty()) joined += ';';
            joined += std::to_string(n);
        }
        if (!joined.empty()) config["skipped_n_over_guard"] = joined;
    }
    if (!transfer.empty()) {
        config["derivative_screen"] =
            report.derivative_screen_passed ? "pass" : "fail";
        config["derivative_screen_max"] =
            format_double_17(report.derivative_screen_max);
    }

    const GridGame stage_game = make_grid_game(kernel, o.grid);
    return emit(o.out, [&](std::ostream& os) {
        CsvWriter w(os, config,
                    {"n", "v_plus_n", "v_minus_n", "w_plus_n", "w_minus_n",
                     "transfer_bound", "gap_flag"});
        for (int n : small) {
            // Below n = 16 the matching discount 1/n leaves the domain, so
            // the closed-form and bound columns are undefined.
            const NStageSolution sol = solve_nstage(stage_game, n);
            w.write_row({static_cast<double>(n), sol.value.plus, sol.value.minus,
                         kNan, kNan, kNan, 0.0});
        }
        for (const TransferRow& r : report.rows)
            w.write_row({static_cast<double>(r.n), r.v_n.plus, r.v_n.minus,
                         r.w_n.plus, r.w_n.minus, r.bound,
                         r.within_bound ? 0.0 : 1.0});
        w.finish();
    });
}

// ----------------------------------------------------------------- finite

struct FiniteOpts {
    double p_star_plus = 1.0;
    double p_star_minus = 0.25;
    double lambda_min = 1e-6;
    double lambda_max = 0.5;
    int count = 25;
    double tol = 1e-12;
    std::string out;
};

int run_finite(const FiniteOpts& o) {
    if (!(o.lambda_min > 0.0 && o.lambda_min < o.lambda_max && o.lambda_max <= 1.0))
        throw std::runtime_error("finite schedule needs 0 < lambda-min < lambda-max <= 1");
    if (o.count < 2) throw std::runtime_error("finite schedule needs --count >= 2");
    const FiniteGameSpec spec(o.p_star_plus, o.p_star_minus);
    const auto limit = finite_limit_value(spec);
    const double limit_cell = limit ? limit->plus : kNan;

    std::map<std::string, std::string> config{
        {"op", "finite"},
        {"p_star_plus", format_double_17(o.p_star_plus)},
        {"p_star_minus", format_double_17(o.p_star_minus)},
        {"lambda_min", format_double_17(o.lambda_min)},
        {"lambda_max", format_double_17(o.lambda_max)},
        {"count", std::to_string(o.count)},
        {"tol", format_double_17(o.tol)},
    };
    return emit(o.out, [&](std::ostream& os) {
        CsvWriter w(os, config,
                    {"lambda", "v_plus", "v_minus", "x_quit_plus", "y_quit_minus",
                     "limit_formula"});
        const double t_hi = std::log(o.lambda_max), t_lo = std::log(o.lambda_min);
        for (int i = 0; i < o.count; ++i) {
            const double l =
                std::exp(t_hi + (t_lo - t_hi) * i / (o.count - 1));
            const FiniteSolution sol = solve_finite(spec, l, o.tol);
            w.write_row({l, sol.value.plus, sol.value.minus, sol.quit_plus_row,
                         sol.quit_minus_col, limit_cell});
        }
        w.finish();
    });
}

// ------------------------------------------------------------ feasibility

struct FeasibilityOpts {
    ProfileOpts profile;
    int grid = 401;
    std::string kernel_kind = "auto";
    std::string out;
};

int run_feasibility(const FeasibilityOpts& o) {
    const SDProfile profile = build_profile(o.profile);
    const TransitionKernel kernel = build_kernel(profile, o.kernel_kind);
    const FeasibilityReport rep = scan_feasibility(kernel, o.grid);

    const int rc = emit(o.out, [&](std::ostream& os) {
        os << "# profile: " << profile.describe() << "\n"
           << "# kernel: "
           << (kernel.source() == KernelSource::SpecializedSqrt ? "sqrt" : "general")
           << ", grid: " << o.grid << "x" << o.grid << "\n"
           << rep.to_table();
    });
    if (rc != 0) return rc;
    return rep.feasible ? 0 : 3;
}

// --------------------------------------------------------------- simulate

struct SimulateOpts {
    ProfileOpts profile{.family = "zero"};
    double lambda = kActionBound;
    std::string start = "omega+";
    double p1 = -1.0;  // sentinel: use lambda
    double p2 = -1.0;
    long trajectories = 10000;
    std::uint64_t seed = 12345;
    bool occupation = false;
    std::string out;
};

GameState parse_state(const std::string& s) {
    if (s == "omega+") return GameState::OmegaPlus;
    if (s == "omega-") return GameState::OmegaMinus;
    if (s == "1*") return GameState::AbsPlus;
    if (s == "-1*") return GameState::AbsMinus;
    throw std::runtime_error("unknown state: " + s);
}

int run_simulate(const SimulateOpts& o) {
    const SDProfile profile = build_profile(o.profile);
    const TransitionKernel kernel = build_kernel(profile, "auto");
    const Discount lam(o.lambda);
    const GameState start = parse_state(o.start);

    auto config = base_config(o.occupation ? "occupation" : "simulate", profile);
    config["lambda"] = format_double_17(o.lambda);
    config["start"] = o.start;
    config["trajectories"] = std::to_string(o.trajectories);
    config["seed"] = std::to_string(o.seed);

    if (o.occupation) {
        const OccupationResult r =
            occupation_check(kernel, lam, start, o.trajectories, o.seed);
        return emit(o.out, [&](std::ostream& os) {
            CsvWriter w(os, config,
                        {"lambda", "trajectories", "window", "fraction_plus",
                         "predicted", "absorbed_fraction", "absorption_warning"});
            w.write_row({o.lambda, static_cast<double>(o.trajectories),
                         static_cast<double>(r.window), r.fraction_plus, r.predicted,
                         r.absorbed_fraction, r.absorption_warning ? 1.0 : 0.0});
            w.finish();
        });
    }

    const double a1 = o.p1 < 0.0 ? o.lambda : o.p1;
    const double a2 = o.p2 < 0.0 ? o.lambda : o.p2;
    config["p1_action"] = format_double_17(a1);
    config["p2_action"] = format_double_17(a2);
    const SimulationResult r =
        simulate_discounted(kernel, lam, start, constant_policy(a1),
                            constant_policy(a2), o.trajectories, o.seed);
    return emit(o.out, [&](std::ostream& os) {
        CsvWriter w(os, config,
                    {"lambda", "start", "p1_action", "p2_action", "trajectories",
                     "seed", "mean", "std_error", "horizon", "absorbed_fraction",
                     "mean_absorption_time", "occupation_plus_fraction"});
        w.write_raw_row({format_double_17(o.lambda), o.start, format_double_17(a1),
                         format_double_17(a2), std::to_string(o.trajectories),
                         std::to_string(o.seed), format_double_17(r.mean),
                         format_double_17(r.std_error), std::to_string(r.horizon),
                         format_double_17(r.absorbed_fraction),
                         format_double_17(r.mean_absorption_time),
                         format_double_17(r.occupation_plus_fraction)});
        w.finish();
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Numerical laboratory for a 4-state absorbing game with action square "
        "[0, 1/16]^2, payoff by state only, and values s(l) +- d(l)."};
    app.require_subcommand(1);

    ValuesOpts values_opts;
    CLI::App* values = app.add_subcommand(
        "values", "sweep the discounted value: closed form vs grid solver");
    add_profile_flags(values, values_opts.profile);
    add_schedule_flags(values, values_opts.schedule);
    values->add_option("--grid", values_opts.grid, "action grid size")
        ->capture_default_str();
    values->add_option("--tol", values_opts.tol)->capture_default_str();
    values->add_flag("--no-solver", values_opts.no_solver,
                     "closed-form columns only (solver columns become nan)");
    values->add_option("--out", values_opts.out, "CSV path (default stdout)");

    OscillationOpts osc_opts;
    CLI::App* osc = app.add_subcommand(
        "oscillation", "spread of the detrended value over a discount schedule");
    add_profile_flags(osc, osc_opts.profile);
    add_schedule_flags(osc, osc_opts.schedule);
    osc->add_option("--out", osc_opts.out, "optional CSV path for the summary row");

    NStageOpts nstage_opts;
    CLI::App* nstage = app.add_subcommand(
        "nstage", "n-stage values against the closed form at lambda = 1/n");
    add_profile_flags(nstage, nstage_opts.profile);
    nstage->add_option("--n", nstage_opts.ns, "horizons to solve")
        ->capture_default_str();
    nstage->add_option("--grid", nstage_opts.grid, "action grid size")
        ->capture_default_str();
    nstage->add_option("--out", nstage_opts.out, "CSV path (default stdout)");

    FiniteOpts finite_opts;
    CLI::App* finite = app.add_subcommand(
        "finite", "two-action Stay/Quit game: discounted values vs the limit");
    finite->add_option("--p-star-plus", finite_opts.p_star_plus)->capture_default_str();
    finite->add_option("--p-star-minus", finite_opts.p_star_minus)
        ->capture_default_str();
    finite->add_option("--lambda-min", finite_opts.lambda_min)->capture_default_str();
    finite->add_option("--lambda-max", finite_opts.lambda_max)->capture_default_str();
    finite->add_option("--count", finite_opts.count)->capture_default_str();
    finite->add_option("--tol", finite_opts.tol)->capture_default_str();
    finite->add_option("--out", finite_opts.out, "CSV path (default stdout)");

    FeasibilityOpts feas_opts;
    CLI::App* feas = app.add_subcommand(
        "feasibility", "scan the four transition probabilities over the square");
    add_profile_flags(feas, feas_opts.profile);
    feas->add_option("--grid", feas_opts.grid, "scan grid per axis")
        ->capture_default_str();
    feas->add_option("--kernel", feas_opts.kernel_kind,
                     "kernel route (auto picks sqrt when d = sqrt)")
        ->check(CLI::IsMember({"auto", "sqrt", "general"}))
        ->capture_default_str();
    feas->add_option("--out", feas_opts.out, "report path (default stdout)");

    SimulateOpts sim_opts;
    CLI::App* sim = app.add_subcommand(
        "simulate", "Monte Carlo discounted payoff or occupation fractions");
    add_profile_flags(sim, sim_opts.profile);
    sim->add_option("--lambda", sim_opts.lambda)->capture_default_str();
    sim->add_option("--start", sim_opts.start)
        ->check(CLI::IsMember({"omega+", "omega-", "1*", "-1*"}))
        ->capture_default_str();
    sim->add_option("--p1-action", sim_opts.p1,
                    "constant action for the maximizer (default: lambda)");
    sim->add_option("--p2-action", sim_opts.p2,
                    "constant action for the minimizer (default: lambda)");
    sim->add_option("--trajectories", sim_opts.trajectories)->capture_default_str();
    sim->add_option("--seed", sim_opts.seed)->capture_default_str();
    sim->add_flag("--occupation", sim_opts.occupation,
                  "report post-transient state occupation instead of payoff");
    sim->add_option("--out", sim_opts.out, "CSV path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (values->parsed()) return run_values(values_opts);
        if (osc->parsed()) return run_oscillation(osc_opts);
        if (nstage->parsed()) return run_nstage(nstage_opts);
        if (finite->parsed()) return run_finite(finite_opts);
        if (feas->parsed()) return run_feasibility(feas_opts);
        if (sim->parsed()) return run_simulate(sim_opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
