#include "sdgame/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>

namespace sdgame {

std::vector<double> Schedule::lambdas() const {
    std::vector<double> out;
    if (kind == ScheduleKind::Explicit) {
        if (explicit_values.empty())
            throw std::invalid_argument("explicit schedule without values");
        out = explicit_values;
        for (double& v : out) {
            if (!(v > 0.0))
                throw std::invalid_argument("schedule values must be positive");
            v = std::clamp(v, kLambdaFloor, kActionBound);
        }
        std::sort(out.begin(), out.end(), std::greater<double>());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
    if (count < 2)
        throw std::invalid_argument("schedule needs at least two points");
    const double lo = std::clamp(lambda_min, kLambdaFloor, kActionBound);
    const double hi = std::clamp(lambda_max, kLambdaFloor, kActionBound);
    if (!(lo < hi))
        throw std::invalid_argument("schedule needs lambda_min < lambda_max");
    out.reserve(count);
    if (kind == ScheduleKind::LogUniform) {
        const double t_hi = std::log(hi), t_lo = std::log(lo);
        for (int i = 0; i < count; ++i) {
            const double t = t_hi + (t_lo - t_hi) * i / (count - 1);
            out.push_back(std::clamp(std::exp(t), kLambdaFloor, kActionBound));
        }
    } else {
        // hi <= 1/16 keeps -ln(lambda) positive, so the outer log is safe.
        const double u_hi = std::log(-std::log(hi));
        const double u_lo = std::log(-std::log(lo));
        for (int i = 0; i < count; ++i) {
            const double u = u_hi + (u_lo - u_hi) * i / (count - 1);
            out.push_back(std::clamp(std::exp(-std::exp(u)), kLambdaFloor, kActionBound));
        }
    }
    return out;
}

SweepResult sweep_values(const SDProfile& profile, const Schedule& schedule,
                         bool run_solver, int grid_size, double tol) {
    SweepResult result;
    result.solver_used = run_solver;
    const bool derivs = profile.has_d_prime();
    std::optional<TransitionKernel> kernel;
    if (run_solver)
        kernel.emplace(profile.d_kind() == DKind::SquareRoot ? kernel_sqrt(profile)
                                                             : kernel_general(profile));
    for (double l : schedule.lambdas()) {
        SweepRow row;
        row.lambda = l;
        const Discount lam(l);
        row.closed_form = closed_form_value(profile, lam);
        if (derivs) {
            const auto dv = value_derivative(profile, lam);
            row.derivative_plus = dv.first;
            row.derivative_minus = dv.second;
        } else {
            row.derivative_plus = std::numeric_limits<double>::quiet_NaN();
            row.derivative_minus = std::numeric_limits<double>::quiet_NaN();
        }
        if (run_solver) {
            const GridGame game = make_grid_game(*kernel, lam, grid_size);
            const DiscountedSolution sol = solve_discounted(game, tol);
            row.solved = sol.value;
            row.solver_error = linf_distance(row.closed_form, sol.value);
            row.duality_gap = sol.final_gap;
        } else {
            row.solver_error = std::numeric_limits<double>::quiet_NaN();
            row.duality_gap = std::numeric_limits<double>::quiet_NaN();
        }
        result.rows.push_back(row);
    }
    return result;
}

OscillationReport oscillation_report(const SDProfile& profile, const Schedule& schedule) {
    OscillationReport rep;
    bool first = true;
    int prev_sign = 0;
    for (double l : schedule.lambdas()) {
        const ValuePair v = closed_form_value(profile, Discount(l));
        const double dl = profile.d(l);
        const double det_plus = v.plus - dl;
        const double det_minus = v.minus + dl;
        if (first || det_plus < rep.min_plus) {
            rep.min_plus = det_plus;
            rep.lambda_at_min_plus = l;
        }
        if (first || det_plus > rep.max_plus) {
            rep.max_plus = det_plus;
            rep.lambda_at_max_plus = l;
        }
        if (first || det_minus < rep.min_minus) rep.min_minus = det_minus;
        if (first || det_minus > rep.max_minus) rep.max_minus = det_minus;
        first = false;
        const int sg = (det_plus > 0.0) - (det_plus < 0.0);
        if (sg != 0) {
            if (prev_sign != 0 && sg != prev_sign) ++rep.sign_changes;
            prev_sign = sg;
        }
    }
    if (first) throw std::invalid_argument("empty schedule");
    rep.spread_plus = rep.max_plus - rep.min_plus;
    rep.spread_minus = rep.max_minus - rep.min_minus;
    return rep;
}

CsvWriter::CsvWriter(std::ostream& out, const std::map<std::string, std::string>& config,
                     const std::vector<std::string>& columns)
    : out_(out) {
    for (const auto& [key, value] : config)
        comment_lines_.push_back("# " + key + "=" + value);
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) column_line_ += ',';
        column_line_ += columns[i];
    }
}

void CsvWriter::write_row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_double_17(v));
    write_raw_row(cells);
}

void CsvWriter::write_raw_row(const std::vector<std::string>& cells) {
    if (finished_) throw std::logic_error("CsvWriter: row after finish()");
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    data_lines_.push_back(std::move(line));
}

void CsvWriter::finish() {
    if (finished_) return;
    finished_ = true;
    std::string blob;
    for (const auto& line : data_lines_) {
        blob += line;
        blob += '\n';
    }
    char hash[24];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(blob)));
    for (const auto& line : comment_lines_) out_ << line << '\n';
    out_ << "# content_hash=" << hash << '\n';
    out_ << column_line_ << '\n';
    for (const auto& line : data_lines_) out_ << line << '\n';
    out_.flush();
}

std::string format_double_17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace sdgame
