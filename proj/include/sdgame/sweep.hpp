#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sdgame/solver.hpp"

namespace sdgame {

enum class ScheduleKind { LogUniform, LogLogUniform, Explicit };

/// Discount schedule for sweeps. LogUniform spaces points evenly in ln(lambda),
/// LogLogUniform evenly in ln(-ln(lambda)), which is the natural clock for
/// oscillations with period e^{2 pi} in -ln(lambda). Values are clamped to
/// [1e-300, 1/16] and returned descending.
struct Schedule {
    ScheduleKind kind = ScheduleKind::LogUniform;
    double lambda_min = 1e-8;
    double lambda_max = 1.0 / 16.0;
    int count = 50;
    std::vector<double> explicit_values;

    std::vector<double> lambdas() const;
};

/// One row of a discounted-value sweep.
struct SweepRow {
    double lambda = 0.0;
    ValuePair closed_form;
    ValuePair solved;          // grid solver output (if solver enabled)
    double solver_error = 0.0; // sup distance closed form vs solver
    double duality_gap = 0.0;  // pure-saddle gap at the solver output
    double derivative_plus = 0.0;   // d v / d lambda at omega+ (NaN if no d')
    double derivative_minus = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    bool solver_used = false;
};

SweepResult sweep_values(const SDProfile& profile, const Schedule& schedule,
                         bool run_solver, int grid_size, double tol);

/// Summary of the detrended closed-form columns v(omega+) - d(lambda) and
/// v(omega-) + d(lambda) (both equal s(lambda)) over a schedule.
struct OscillationReport {
    double min_plus = 0.0, max_plus = 0.0;
    double spread_plus = 0.0;      // max - min of the detrended omega+ column
    double min_minus = 0.0, max_minus = 0.0;
    double spread_minus = 0.0;
    double lambda_at_min_plus = 0.0, lambda_at_max_plus = 0.0;
    int sign_changes = 0;          // sign flips of the detrended column
};

/// A spread bounded away from zero as lambda_min -> 0 is the witness that
/// v_lambda does not converge; for s = A sin(...) families it approaches 2A.
OscillationReport oscillation_report(const SDProfile& profile, const Schedule& schedule);

/// CSV output. Comma separated, '.' decimal point, 17 significant digits,
/// LF line endings. Header comments (prefixed '#') carry the resolved
/// configuration key=value pairs plus a 64-bit FNV-1a hash of the data rows,
/// so identical configurations produce byte-identical files.
class CsvWriter {
  public:
    CsvWriter(std::ostream& out, const std::map<std::string, std::string>& config,
              const std::vector<std::string>& columns);
    void write_row(const std::vector<double>& values);
    void write_raw_row(const std::vector<std::string>& cells);
    /// Flushes the buffered rows: comments, hash line, column header, data.
    void finish();

  private:
    std::ostream& out_;
    std::vector<std::string> comment_lines_;
    std::string column_line_;
    std::vector<std::string> data_lines_;
    bool finished_ = false;
};

std::string format_double_17(double v);
std::uint64_t fnv1a64(const std::string& data);

}  // namespace sdgame
