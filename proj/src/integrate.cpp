#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mvi/hamiltonian.hpp"
#include "mvi/lagrangian.hpp"
#include "mvi/trajectory.hpp"

namespace mvi {

namespace {

LagrangianModel ensured(const LagrangianModel& L)
{
    return (L.grad_q && L.grad_v) ? L : with_fd_gradients(L);
}

void absorb(SolverStats& stats, const SolveReport& report)
{
    stats.total_iterations += report.iterations;
    stats.max_step_iterations = std::max(stats.max_step_iterations, report.iterations);
    stats.max_residual = std::max(stats.max_residual, report.residual_norm);
}

TrajectoryRecord base_record(const std::string& scheme, const TimeGrid& grid, int dim)
{
    TrajectoryRecord record;
    record.scheme = scheme;
    record.a = grid.a();
    record.b = grid.b();
    record.n = grid.n_intervals();
    record.dim = dim;
    return record;
}

[[noreturn]] void rethrow_step(const ConvergenceError& e, int step_index, TrajectoryRecord partial)
{
    const std::string what = "step " + std::to_string(step_index) + ": " + e.what();
    partial.failure_note = what;
    throw IntegrationError(what, e.iterations, e.residual_norm, step_index, std::move(partial));
}

} // namespace

TrajectoryRecord integrate_lagrangian(const LagrangianModel& L, const Vec& q0, const Vec& q1,
                                      const TimeGrid& grid, const SolverConfig& cfg)
{
    const LagrangianModel M = ensured(L);
    if (q0.size() != M.dim || q1.size() != M.dim)
        throw std::domain_error("integrate_lagrangian: seed dim does not match the model");
    if (!q0.allFinite() || !q1.allFinite())
        throw std::domain_error("integrate_lagrangian: seed is not finite");
    const HamiltonianModel H = build_hamiltonian(M, cfg);
    const int n = grid.n_intervals();
    const double h = grid.step();

    TrajectoryRecord record = base_record("midpoint_lagrangian", grid, M.dim);

    std::vector<Vec> qs;
    qs.reserve(static_cast<size_t>(n) + 1);
    qs.push_back(q0);
    qs.push_back(q1);

    // Same momentum expressions as discrete_momentum, evaluated as rows appear.
    const auto mom_left = [&](const Vec& prev, const Vec& curr) {
        const StarPoint star = reconstruct_star(prev, curr, h);
        return Vec(M.grad_v(star.q_half, star.v_half) +
                   (h / 2) * M.grad_q(star.q_half, star.v_half));
    };
    const auto push_row = [&](int i, const Vec& p) {
        const Vec& q = qs[static_cast<size_t>(i)];
        record.rows.push_back({i, grid.node(i), q, p, H.value(p, q)});
    };
    const StarPoint first = reconstruct_star(q0, q1, h);
    push_row(0, M.grad_v(first.q_half, first.v_half) -
                    (h / 2) * M.grad_q(first.q_half, first.v_half));
    push_row(1, mom_left(q0, q1));

    for (int i = 1; i < n; ++i) {
        SolveReport report;
        try {
            qs.push_back(step_midpoint_lagrangian(M, qs[static_cast<size_t>(i - 1)],
                                                  qs[static_cast<size_t>(i)], h, cfg, &report));
        } catch (const ConvergenceError& e) {
            rethrow_step(e, i + 1, std::move(record));
        }
        absorb(record.stats, report);
        push_row(i + 1, mom_left(qs[static_cast<size_t>(i)], qs[static_cast<size_t>(i + 1)]));
    }
    return record;
}

TrajectoryRecord integrate_hamiltonian(const LagrangianModel& L, const PhasePoint& x0,
                                       const TimeGrid& grid, const SolverConfig& cfg)
{
    const LagrangianModel M = ensured(L);
    if (x0.q.size() != M.dim || x0.p.size() != M.dim)
        throw std::domain_error("integrate_hamiltonian: state dim does not match the model");
    const HamiltonianModel H = build_hamiltonian(M, cfg);
    const int n = grid.n_intervals();
    const double h = grid.step();

    TrajectoryRecord record = base_record("midpoint_hamiltonian", grid, M.dim);
    PhasePoint x = x0;
    record.rows.push_back({0, grid.node(0), x.q, x.p, H.value(x.p, x.q)});
    for (int i = 0; i < n; ++i) {
        SolveReport report;
        try {
            x = step_midpoint_hamiltonian(M, x, h, cfg, &report);
        } catch (const ConvergenceError& e) {
            rethrow_step(e, i + 1, std::move(record));
        }
        absorb(record.stats, report);
        record.rows.push_back({i + 1, grid.node(i + 1), x.q, x.p, H.value(x.p, x.q)});
    }
    return record;
}

TrajectoryRecord integrate_order1_hamiltonian(const LagrangianModel& L, const PhasePoint& x0,
                                              const TimeGrid& grid, const SolverConfig& cfg)
{
    const LagrangianModel M = ensured(L);
    if (x0.q.size() != M.dim || x0.p.size() != M.dim)
        throw std::domain_error("integrate_order1_hamiltonian: state dim does not match the model");
    const HamiltonianModel H = build_hamiltonian(M, cfg);
    const int n = grid.n_intervals();
    const double h = grid.step();

    TrajectoryRecord record = base_record("order1", grid, M.dim);
    PhasePoint x = x0;
    record.rows.push_back({0, grid.node(0), x.q, x.p, H.value(x.p, x.q)});
    for (int i = 0; i < n; ++i) {
        const Vec q_next = x.q + h * H.grad_p(x.p, x.q);
        SolveReport report;
        try {
            const Vec p_prev = x.p;
            x.p = solve_root(
                [&](const Vec& p) { return Vec((p - p_prev) / h + H.grad_q(p, q_next)); },
                x.p, cfg, &report);
        } catch (const ConvergenceError& e) {
            rethrow_step(e, i + 1, std::move(record));
        }
        x.q = q_next;
        absorb(record.stats, report);
        record.rows.push_back({i + 1, grid.node(i + 1), x.q, x.p, H.value(x.p, x.q)});
    }
    return record;
}

} // namespace mvi
