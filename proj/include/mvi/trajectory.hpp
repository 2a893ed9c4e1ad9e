#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "mvi/grid_function.hpp"
#include "mvi/solver.hpp"
#include "mvi/time_grid.hpp"
#include "mvi/types.hpp"

namespace mvi {

struct TrajectoryRow {
    int i = 0;
    double t = 0;
    Vec q;
    Vec p;
    double energy = 0;
};

struct SolverStats {
    long long total_iterations = 0;
    int max_step_iterations = 0;
    double max_residual = 0;
};

// Output of one integration run: a row per T node plus enough metadata to
// rebuild the grid. A run that stopped early keeps the rows it produced and
// records why in failure_note.
struct TrajectoryRecord {
    std::string problem;
    std::string scheme;
    double a = 0;
    double b = 1;
    int n = 1;
    int dim = 1;
    SolverStats stats;
    std::string failure_note;
    std::vector<std::pair<std::string, std::string>> notes;
    std::vector<TrajectoryRow> rows;

    bool complete() const { return static_cast<int>(rows.size()) == n + 1; }
    TimeGrid grid() const { return TimeGrid(a, b, n); }

    // The q (resp. p) columns as a function on T; requires a complete run.
    GridFunction positions() const;
    GridFunction momenta() const;
};

// Raised when a step solve fails mid-run; carries the failing step index and
// the rows produced up to it (failure_note already set).
class IntegrationError : public ConvergenceError {
public:
    IntegrationError(const std::string& what, int iterations, double residual_norm,
                     int step_index, TrajectoryRecord partial)
        : ConvergenceError(what, iterations, residual_norm), step_index(step_index),
          partial(std::move(partial)) {}

    int step_index;
    TrajectoryRecord partial;
};

// Shortest decimal with 17 significant digits; round-trips binary64 exactly.
std::string format_g17(double x);

// CSV with "# key=value" metadata lines, then the header row
// i,t,q0..q{d-1},p0..p{d-1},H and one data row per node at 17 significant
// digits. A failed run gets a trailing "# solver_failure=..." line.
void write_csv(const TrajectoryRecord& record, std::ostream& out);
void write_csv_file(const TrajectoryRecord& record, const std::string& path);

TrajectoryRecord read_csv(std::istream& in);
TrajectoryRecord read_csv_file(const std::string& path);

} // namespace mvi
