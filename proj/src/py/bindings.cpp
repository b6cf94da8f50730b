#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "sdgame/finite.hpp"
#include "sdgame/montecarlo.hpp"
#include "sdgame/solver.hpp"
#include "sdgame/sweep.hpp"

namespace py = pybind11;
using namespace sdgame;

PYBIND11_MODULE(_core, m) {
    m.doc() =
        "Numerical laboratory for a 4-state absorbing zero-sum game on the "
        "action square [0, 1/16]^2 whose discounted value is s(l) +- d(l)";

    m.attr("ACTION_BOUND") = kActionBound;
    m.attr("LAMBDA_FLOOR") = kLambdaFloor;

    py::register_exception<DegenerateSystemError>(m, "DegenerateSystemError");
    py::register_exception<NonConvergenceError>(m, "NonConvergenceError");

    py::enum_<GameState>(m, "GameState")
        .value("OMEGA_PLUS", GameState::OmegaPlus)
        .value("OMEGA_MINUS", GameState::OmegaMinus)
        .value("ABS_PLUS", GameState::AbsPlus)
        .value("ABS_MINUS", GameState::AbsMinus);

    py::class_<ValuePair>(m, "ValuePair")
        .def(py::init<double, double>(), py::arg("plus"), py::arg("minus"))
        .def_readonly("plus", &ValuePair::plus)
        .def_readonly("minus", &ValuePair::minus)
        .def("__repr__", [](const ValuePair& v) {
            return "ValuePair(plus=" + format_double_17(v.plus) +
                   ", minus=" + format_double_17(v.minus) + ")";
        });

    py::class_<BoundCertificate>(m, "BoundCertificate")
        .def_readonly("sup_abs_s", &BoundCertificate::sup_abs_s)
        .def_readonly("sup_abs_xsprime", &BoundCertificate::sup_abs_xsprime)
        .def_readonly("analytic", &BoundCertificate::analytic);

    py::class_<SDProfile>(m, "SDProfile")
        .def_static("zero", &SDProfile::zero)
        .def_static("sinlog", &SDProfile::sinlog, py::arg("amplitude") = kActionBound)
        .def_static("sinloglog", &SDProfile::sinloglog,
                    py::arg("amplitude") = kActionBound)
        .def_static("constant", &SDProfile::constant, py::arg("c"))
        .def_static("custom", &SDProfile::custom, py::arg("xs"), py::arg("ss"))
        .def(
            "with_custom_d",
            [](const SDProfile& p, std::function<double(double)> d,
               std::optional<std::function<double(double)>> dp, std::string label) {
                return p.with_custom_d(std::move(d),
                                       dp ? *dp : std::function<double(double)>{},
                                       std::move(label));
            },
            py::arg("d"), py::arg("d_prime") = std::nullopt,
            py::arg("label") = "custom")
        .def("s", &SDProfile::s, py::arg("x"))
        .def("s_prime", &SDProfile::s_prime, py::arg("x"))
        .def("d", &SDProfile::d, py::arg("x"))
        .def("d_prime", &SDProfile::d_prime, py::arg("x"))
        .def("has_d_prime", &SDProfile::has_d_prime)
        .def("sample_range", &SDProfile::sample_range)
        .def("describe", &SDProfile::describe)
        .def_property_readonly(
            "family", [](const SDProfile& p) { return to_string(p.family()); })
        .def_property_readonly("amplitude", &SDProfile::amplitude)
        .def("__repr__",
             [](const SDProfile& p) { return "SDProfile(" + p.describe() + ")"; });

    m.def("bound_certificate", &bound_certificate, py::arg("profile"),
          py::arg("grid_size") = 512);
    m.def(
        "closed_form_value",
        [](const SDProfile& p, double l) { return closed_form_value(p, Discount(l)); },
        py::arg("profile"), py::arg("lam"));
    m.def(
        "value_derivative",
        [](const SDProfile& p, double l) { return value_derivative(p, Discount(l)); },
        py::arg("profile"), py::arg("lam"));

    py::class_<TransitionKernel>(m, "TransitionKernel")
        .def("p_plus", &TransitionKernel::p_plus, py::arg("x"), py::arg("y"))
        .def("p_minus", &TransitionKernel::p_minus, py::arg("x"), py::arg("y"))
        .def("p_star_plus", &TransitionKernel::p_star_plus, py::arg("x"), py::arg("y"))
        .def("p_star_minus", &TransitionKernel::p_star_minus, py::arg("x"),
             py::arg("y"))
        .def_property_readonly("profile", &TransitionKernel::profile)
        .def_property_readonly("source", [](const TransitionKernel& k) {
            return k.source() == KernelSource::SpecializedSqrt ? "sqrt" : "general";
        });

    m.def("kernel_sqrt", &kernel_sqrt, py::arg("profile"));
    m.def("kernel_general", &kernel_general, py::arg("profile"));
    m.def(
        "f1", [](double x, double y, const SDProfile& p) { return f1(x, y, p); },
        py::arg("x"), py::arg("y"), py::arg("profile"));
    m.def(
        "f2", [](double x, double y, const SDProfile& p) { return f2(x, y, p); },
        py::arg("x"), py::arg("y"), py::arg("profile"));

    py::class_<PFunctionStats>(m, "PFunctionStats")
        .def_readonly("name", &PFunctionStats::name)
        .def_readonly("min", &PFunctionStats::min)
        .def_readonly("max", &PFunctionStats::max)
        .def_readonly("argmin", &PFunctionStats::argmin)
        .def_readonly("argmax", &PFunctionStats::argmax)
        .def_readonly("max_diag_jump", &PFunctionStats::max_diag_jump);

    py::class_<FeasibilityReport>(m, "FeasibilityReport")
        .def_readonly("stats", &FeasibilityReport::stats)
        .def_readonly("max_star_envelope_excess",
                      &FeasibilityReport::max_star_envelope_excess)
        .def_readonly("max_swap_envelope_excess",
                      &FeasibilityReport::max_swap_envelope_excess)
        .def_readonly("evaluation_errors", &FeasibilityReport::evaluation_errors)
        .def_readonly("feasible", &FeasibilityReport::feasible)
        .def("to_table", &FeasibilityReport::to_table);

    m.def("scan_feasibility", &scan_feasibility, py::arg("kernel"),
          py::arg("grid_size") = 401);

    m.def("base_action_grid", &base_action_grid, py::arg("size"));
    m.def(
        "equalizing_residuals",
        [](const TransitionKernel& k, double l, const std::vector<double>& grid) {
            return equalizing_residuals(CompactGame{k}, Discount(l), grid);
        },
        py::arg("kernel"), py::arg("lam"), py::arg("opponent_grid"));

    py::class_<DiscountedSolution>(m, "DiscountedSolution")
        .def_readonly("value", &DiscountedSolution::value)
        .def_readonly("iterations", &DiscountedSolution::iterations)
        .def_readonly("last_step", &DiscountedSolution::last_step)
        .def_readonly("error_bound", &DiscountedSolution::error_bound)
        .def_readonly("final_gap", &DiscountedSolution::final_gap);

    m.def(
        "solve_discounted",
        [](const TransitionKernel& k, double l, int grid, double tol) {
            return solve_discounted(make_grid_game(k, Discount(l), grid), tol);
        },
        py::arg("kernel"), py::arg("lam"), py::arg("grid") = 129,
        py::arg("tol") = 1e-10);

    py::class_<NStageSolution>(m, "NStageSolution")
        .def_readonly("value", &NStageSolution::value)
        .def_readonly("stages", &NStageSolution::stages)
        .def_readonly("max_stage_gap", &NStageSolution::max_stage_gap);

    m.def(
        "solve_nstage",
        [](const TransitionKernel& k, int n, int grid) {
            return solve_nstage(make_grid_game(k, grid), n);
        },
        py::arg("kernel"), py::arg("n"), py::arg("grid") = 65);

    py::class_<TransferRow>(m, "TransferRow")
        .def_readonly("n", &TransferRow::n)
        .def_readonly("v_n", &TransferRow::v_n)
        .def_readonly("w_n", &TransferRow::w_n)
        .def_readonly("distance", &TransferRow::distance)
        .def_readonly("bound", &TransferRow::bound)
        .def_readonly("slack", &TransferRow::slack)
        .def_readonly("within_bound", &TransferRow::within_bound);

    py::class_<TransferReport>(m, "TransferReport")
        .def_readonly("rows", &TransferReport::rows)
        .def_readonly("derivative_screen_passed",
                      &TransferReport::derivative_screen_passed)
        .def_readonly("derivative_screen_max", &TransferReport::derivative_screen_max)
        .def_readonly("all_within", &TransferReport::all_within);

    m.def("check_transfer", &check_transfer, py::arg("profile"), py::arg("ns"),
          py::arg("grid_size") = 65);

    py::class_<FiniteGameSpec>(m, "FiniteGameSpec")
        .def(py::init<double, double>(), py::arg("p_star_plus"),
             py::arg("p_star_minus"))
        .def_readonly("p_star_plus", &FiniteGameSpec::p_star_plus)
        .def_readonly("p_star_minus", &FiniteGameSpec::p_star_minus);

    py::class_<FiniteSolution>(m, "FiniteSolution")
        .def_readonly("value", &FiniteSolution::value)
        .def_readonly("iterations", &FiniteSolution::iterations)
        .def_readonly("residual", &FiniteSolution::residual)
        .def_readonly("converged", &FiniteSolution::converged)
        .def_readonly("quit_plus_row", &FiniteSolution::quit_plus_row)
        .def_readonly("quit_plus_col", &FiniteSolution::quit_plus_col)
        .def_readonly("quit_minus_row", &FiniteSolution::quit_minus_row)
        .def_readonly("quit_minus_col", &FiniteSolution::quit_minus_col);

    m.def("solve_finite", &solve_finite, py::arg("spec"), py::arg("lam"),
          py::arg("tol") = 1e-12, py::arg("max_iterations") = 100000000L);
    m.def("finite_limit_value", &finite_limit_value, py::arg("spec"));

    py::class_<SimulationResult>(m, "SimulationResult")
        .def_readonly("mean", &SimulationResult::mean)
        .def_readonly("std_error", &SimulationResult::std_error)
        .def_readonly("trajectories", &SimulationResult::trajectories)
        .def_readonly("horizon", &SimulationResult::horizon)
        .def_readonly("absorbed_fraction", &SimulationResult::absorbed_fraction)
        .def_readonly("mean_absorption_time", &SimulationResult::mean_absorption_time)
        .def_readonly("occupation_plus_fraction",
                      &SimulationResult::occupation_plus_fraction);

    m.def(
        "simulate_discounted",
        [](const TransitionKernel& k, double l, GameState start, double p1_action,
           double p2_action, long trajectories, std::uint64_t seed, double tail_tol) {
            return simulate_discounted(k, Discount(l), start,
                                       constant_policy(p1_action),
                                       constant_policy(p2_action), trajectories, seed,
                                       tail_tol);
        },
        py::arg("kernel"), py::arg("lam"), py::arg("start"), py::arg("p1_action"),
        py::arg("p2_action"), py::arg("trajectories") = 10000L,
        py::arg("seed") = 12345, py::arg("tail_tol") = 1e-10);

    py::class_<EqualizingCheckRow>(m, "EqualizingCheckRow")
        .def_readonly("opponent_action", &EqualizingCheckRow::opponent_action)
        .def_readonly("estimate", &EqualizingCheckRow::estimate)
        .def_readonly("std_error", &EqualizingCheckRow::std_error)
        .def_readonly("predicted", &EqualizingCheckRow::predicted)
        .def_readonly("sigma_distance", &EqualizingCheckRow::sigma_distance);

    py::class_<EqualizingCheck>(m, "EqualizingCheck")
        .def_readonly("rows", &EqualizingCheck::rows)
        .def_readonly("max_sigma_distance", &EqualizingCheck::max_sigma_distance)
        .def_readonly("all_within", &EqualizingCheck::all_within);

    m.def(
        "check_equalizing_mc",
        [](const TransitionKernel& k, double l,
           const std::vector<double>& opponent_actions, long trajectories,
           std::uint64_t seed, double sigmas) {
            return check_equalizing_mc(k, Discount(l), opponent_actions, trajectories,
                                       seed, sigmas);
        },
        py::arg("kernel"), py::arg("lam"), py::arg("opponent_actions"),
        py::arg("trajectories") = 100000L, py::arg("seed") = 12345,
        py::arg("sigmas") = 4.0);

    py::class_<OccupationResult>(m, "OccupationResult")
        .def_readonly("fraction_plus", &OccupationResult::fraction_plus)
        .def_readonly("predicted", &OccupationResult::predicted)
        .def_readonly("window", &OccupationResult::window)
        .def_readonly("absorbed_fraction", &OccupationResult::absorbed_fraction)
        .def_readonly("absorption_warning", &OccupationResult::absorption_warning);

    m.def(
        "occupation_check",
        [](const TransitionKernel& k, double l, GameState start, long trajectories,
           std::uint64_t seed) {
            return occupation_check(k, Discount(l), start, trajectories, seed);
        },
        py::arg("kernel"), py::arg("lam"),
        py::arg("start") = GameState::OmegaPlus, py::arg("trajectories") = 10000L,
        py::arg("seed") = 12345);

    py::enum_<ScheduleKind>(m, "ScheduleKind")
        .value("LOG", ScheduleKind::LogUniform)
        .value("LOGLOG", ScheduleKind::LogLogUniform)
        .value("EXPLICIT", ScheduleKind::Explicit);

    py::class_<Schedule>(m, "Schedule")
        .def(py::init([](ScheduleKind kind, double lambda_min, double lambda_max,
                         int count, std::vector<double> values) {
                 Schedule s;
                 s.kind = kind;
                 s.lambda_min = lambda_min;
                 s.lambda_max = lambda_max;
                 s.count = count;
                 s.explicit_values = std::move(values);
                 return s;
             }),
             py::arg("kind") = ScheduleKind::LogUniform, py::arg("lambda_min") = 1e-8,
             py::arg("lambda_max") = kActionBound, py::arg("count") = 50,
             py::arg("explicit_values") = std::vector<double>{})
        .def("lambdas", &Schedule::lambdas);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("lam", &SweepRow::lambda)
        .def_readonly("closed_form", &SweepRow::closed_form)
        .def_readonly("solved", &SweepRow::solved)
        .def_readonly("solver_error", &SweepRow::solver_error)
        .def_readonly("duality_gap", &SweepRow::duality_gap)
        .def_readonly("derivative_plus", &SweepRow::derivative_plus)
        .def_readonly("derivative_minus", &SweepRow::derivative_minus);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("rows", &SweepResult::rows)
        .def_readonly("solver_used", &SweepResult::solver_used);

    m.def("sweep_values", &sweep_values, py::arg("profile"), py::arg("schedule"),
          py::arg("run_solver") = true, py::arg("grid") = 129,
          py::arg("tol") = 1e-10);

    py::class_<OscillationReport>(m, "OscillationReport")
        .def_readonly("min_plus", &OscillationReport::min_plus)
        .def_readonly("max_plus", &OscillationReport::max_plus)
        .def_readonly("spread_plus", &OscillationReport::spread_plus)
        .def_readonly("min_minus", &OscillationReport::min_minus)
        .def_readonly("max_minus", &OscillationReport::max_minus)
        .def_readonly("spread_minus", &OscillationReport::spread_minus)
        .def_readonly("lambda_at_min_plus", &OscillationReport::lambda_at_min_plus)
        .def_readonly("lambda_at_max_plus", &OscillationReport::lambda_at_max_plus)
        .def_readonly("sign_changes", &OscillationReport::sign_changes);

    m.def("oscillation_report", &oscillation_report, py::arg("profile"),
          py::arg("schedule"));
}
