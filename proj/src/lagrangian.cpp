#include "mvi/lagrangian.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>

#include "mvi/hamiltonian.hpp"

namespace mvi {

namespace {

Vec central_fd(const std::function<double(const Vec&)>& f, const Vec& x)
{
    Vec grad(x.size());
    Vec probe = x;
    for (int j = 0; j < x.size(); ++j) {
        const double eps = std::max(1e-6, 1e-6 * std::abs(x[j]));
        probe[j] = x[j] + eps;
        const double hi = f(probe);
        probe[j] = x[j] - eps;
        const double lo = f(probe);
        probe[j] = x[j];
        grad[j] = (hi - lo) / (2 * eps);
    }
    return grad;
}

void check_model(const LagrangianModel& L, const char* op)
{
    if (L.dim < 1)
        throw std::domain_error(std::string(op) + ": model dim must be >= 1");
    if (!L.grad_q || !L.grad_v)
        throw std::domain_error(std::string(op) +
                                ": model lacks gradients; pass it through with_fd_gradients");
}

void check_positions(const LagrangianModel& L, const GridFunction& q, const char* op)
{
    if (q.set().kind() != SetKind::T)
        throw std::domain_error(std::string(op) + ": positions must live on T, got " +
                                set_name(q.set().kind()));
    if (q.dim() != L.dim)
        throw std::domain_error(std::string(op) + ": position dim " + std::to_string(q.dim()) +
                                " does not match model dim " + std::to_string(L.dim));
}

void check_h(double h, const char* op)
{
    if (!(h > 0) || !std::isfinite(h))
        throw std::domain_error(std::string(op) + ": step h must be positive and finite");
}

// Euler-Lagrange operator across the two steps around q_curr.
Vec bridge_residual(const LagrangianModel& L, const StarPoint& star_prev, const StarPoint& star_next,
                    double h)
{
    return (L.grad_v(star_next.q_half, star_next.v_half) -
            L.grad_v(star_prev.q_half, star_prev.v_half)) / h -
           (L.grad_q(star_next.q_half, star_next.v_half) +
            L.grad_q(star_prev.q_half, star_prev.v_half)) / 2;
}

} // namespace

LagrangianModel with_fd_gradients(LagrangianModel model)
{
    if (!model.value)
        throw std::domain_error("with_fd_gradients: model has no value callback");
    const auto value = model.value;
    if (!model.grad_q)
        model.grad_q = [value](const Vec& q, const Vec& v) {
            return central_fd([&](const Vec& x) { return value(x, v); }, q);
        };
    if (!model.grad_v)
        model.grad_v = [value](const Vec& q, const Vec& v) {
            return central_fd([&](const Vec& x) { return value(q, x); }, v);
        };
    return model;
}

double gradient_check(const LagrangianModel& L, int n_samples, std::uint64_t seed)
{
    check_model(L, "gradient_check");
    if (!L.value)
        throw std::domain_error("gradient_check: model has no value callback");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double worst = 0;
    for (int s = 0; s < n_samples; ++s) {
        Vec q(L.dim), v(L.dim);
        for (int j = 0; j < L.dim; ++j) {
            q[j] = unit(rng);
            v[j] = unit(rng);
        }
        const Vec gq = L.grad_q(q, v);
        const Vec gv = L.grad_v(q, v);
        const Vec gq_fd = central_fd([&](const Vec& x) { return L.value(x, v); }, q);
        const Vec gv_fd = central_fd([&](const Vec& x) { return L.value(q, x); }, v);
        const double scale = std::max({1.0, inf_norm(gq), inf_norm(gv)});
        worst = std::max(worst, inf_norm(gq - gq_fd) / scale);
        worst = std::max(worst, inf_norm(gv - gv_fd) / scale);
    }
    return worst;
}

StarPoint reconstruct_star(const Vec& q_i, const Vec& q_next, double h)
{
    check_h(h, "reconstruct_star");
    if (q_i.size() != q_next.size())
        throw std::domain_error("reconstruct_star: endpoint dimensions differ");
    return {(q_i + q_next) / 2, (q_next - q_i) / h};
}

std::pair<Vec, Vec> reconstruct_q(const StarPoint& star, double h)
{
    check_h(h, "reconstruct_q");
    if (star.q_half.size() != star.v_half.size())
        throw std::domain_error("reconstruct_q: star component dimensions differ");
    return {star.q_half - (h / 2) * star.v_half, star.q_half + (h / 2) * star.v_half};
}

double action_midpoint(const LagrangianModel& L, const GridFunction& q)
{
    if (!L.value)
        throw std::domain_error("action_midpoint: model has no value callback");
    check_positions(L, q, "action_midpoint");
    const TimeGrid& grid = q.set().grid();
    const double h = grid.step();
    double acc = 0;
    for (int i = 0; i < grid.n_intervals(); ++i) {
        const StarPoint star = reconstruct_star(q.value(i), q.value(i + 1), h);
        acc += L.value(star.q_half, star.v_half) * h;
    }
    return acc;
}

double action_order1(const LagrangianModel& L, const GridFunction& q)
{
    if (!L.value)
        throw std::domain_error("action_order1: model has no value callback");
    check_positions(L, q, "action_order1");
    const TimeGrid& grid = q.set().grid();
    const double h = grid.step();
    double acc = 0;
    for (int i = 0; i < grid.n_intervals(); ++i)
        acc += L.value(q.value(i), (q.value(i + 1) - q.value(i)) / h) * h;
    return acc;
}

GridFunction el_residual_midpoint(const LagrangianModel& L, const GridFunction& q)
{
    const LagrangianModel M = (L.grad_q && L.grad_v) ? L : with_fd_gradients(L);
    check_model(M, "el_residual_midpoint");
    check_positions(M, q, "el_residual_midpoint");
    const TimeGrid& grid = q.set().grid();
    if (grid.n_intervals() < 2)
        throw std::domain_error("el_residual_midpoint: needs at least two steps");
    const double h = grid.step();
    GridFunction r(NodeSet(SetKind::THalfMinus, grid), q.dim());
    for (int i = 1; i < grid.n_intervals(); ++i) {
        const StarPoint prev = reconstruct_star(q.value(i - 1), q.value(i), h);
        const StarPoint next = reconstruct_star(q.value(i), q.value(i + 1), h);
        r.value(i - 1) = bridge_residual(M, prev, next, h);
    }
    return r;
}

GridFunction el_residual_order1(const LagrangianModel& L, const GridFunction& q)
{
    const LagrangianModel M = (L.grad_q && L.grad_v) ? L : with_fd_gradients(L);
    check_model(M, "el_residual_order1");
    check_positions(M, q, "el_residual_order1");
    const TimeGrid& grid = q.set().grid();
    if (grid.n_intervals() < 2)
        throw std::domain_error("el_residual_order1: needs at least two steps");
    const double h = grid.step();
    GridFunction r(NodeSet(SetKind::TPm, grid), q.dim());
    for (int i = 1; i < grid.n_intervals(); ++i) {
        const Vec v_prev = (q.value(i) - q.value(i - 1)) / h;
        const Vec v_curr = (q.value(i + 1) - q.value(i)) / h;
        r.value(i - 1) = M.grad_q(q.value(i), v_curr) -
                         (M.grad_v(q.value(i), v_curr) - M.grad_v(q.value(i - 1), v_prev)) / h;
    }
    return r;
}

double frechet_midpoint(const LagrangianModel& L, const GridFunction& q, const GridFunction& v)
{
    check_positions(L, q, "frechet_midpoint");
    if (!(v.set() == q.set()) || v.dim() != q.dim())
        throw std::domain_error("frechet_midpoint: direction must live on the same T with equal dim");
    const int n = q.set().grid().n_intervals();
    if (inf_norm(v.value(0)) != 0.0 || inf_norm(v.value(n)) != 0.0)
        throw std::domain_error("frechet_midpoint: direction must vanish at both endpoints");
    if (n < 2)
        return 0.0;
    const GridFunction r = el_residual_midpoint(L, q);
    const double h = q.set().grid().step();
    double acc = 0;
    for (int i = 1; i < n; ++i)
        acc += r.value(i - 1).dot(v.value(i));
    return -h * acc;
}

Vec step_midpoint_lagrangian(const LagrangianModel& L, const Vec& q_prev, const Vec& q_curr,
                             double h, const SolverConfig& cfg, SolveReport* report)
{
    const LagrangianModel M = (L.grad_q && L.grad_v) ? L : with_fd_gradients(L);
    check_model(M, "step_midpoint_lagrangian");
    check_h(h, "step_midpoint_lagrangian");
    if (q_prev.size() != M.dim || q_curr.size() != M.dim)
        throw std::domain_error("step_midpoint_lagrangian: state dim does not match the model");

    const StarPoint star_prev = reconstruct_star(q_prev, q_curr, h);
    // Solved in momentum units (h times the scheme residual, the two-point
    // stationarity condition): the force-unit residual carries an |q|/h^2
    // term whose evaluation noise would outgrow any fixed tolerance as h
    // shrinks, while this form keeps the floor near machine precision.
    const auto residual = [&](const Vec& q_next) {
        return Vec(h * bridge_residual(M, star_prev, reconstruct_star(q_curr, q_next, h), h));
    };

    if (cfg.method == SolverConfig::Method::fixed_point) {
        // Contractive form of the same equation: the new momentum follows from
        // the old one plus the averaged force, then the Legendre inverse gives
        // the velocity that advances q.
        const Vec p_prev = M.grad_v(star_prev.q_half, star_prev.v_half);
        const Vec force_prev = M.grad_q(star_prev.q_half, star_prev.v_half);
        Vec q_next = 2 * q_curr - q_prev;
        for (int iter = 0; iter <= cfg.max_iter; ++iter) {
            const Vec r = residual(q_next);
            if (inf_norm(r) <= cfg.tol) {
                if (report) {
                    report->iterations = iter;
                    report->residual_norm = inf_norm(r);
                }
                return q_next;
            }
            if (iter == cfg.max_iter) {
                char norm[32];
                std::snprintf(norm, sizeof norm, "%.3e", inf_norm(r));
                throw ConvergenceError("step_midpoint_lagrangian: fixed point stopped after " +
                                           std::to_string(iter) + " iterations with residual " +
                                           norm,
                                       iter, inf_norm(r));
            }
            const StarPoint star_next = reconstruct_star(q_curr, q_next, h);
            const Vec p_next = p_prev +
                (h / 2) * (M.grad_q(star_next.q_half, star_next.v_half) + force_prev);
            q_next = q_curr + h * legendre_inverse(M, p_next, star_next.q_half, cfg);
        }
        throw std::logic_error("step_midpoint_lagrangian: unreachable");
    }
    return solve_root(residual, 2 * q_curr - q_prev, cfg, report);
}

double wm_lagrangian(const LagrangianModel& L, const Vec& x, const Vec& y, double h)
{
    if (!L.value)
        throw std::domain_error("wm_lagrangian: model has no value callback");
    check_h(h, "wm_lagrangian");
    const StarPoint star = reconstruct_star(x, y, h);
    return h * L.value(star.q_half, star.v_half);
}

Vec wm_grad_x(const LagrangianModel& L, const Vec& x, const Vec& y, double h)
{
    const LagrangianModel M = (L.grad_q && L.grad_v) ? L : with_fd_gradients(L);
    check_h(h, "wm_grad_x");
    const StarPoint star = reconstruct_star(x, y, h);
    return h * ((M.grad_q(star.q_half, star.v_half) / 2) -
                M.grad_v(star.q_half, star.v_half) / h);
}

Vec wm_grad_y(const LagrangianModel& L, const Vec& x, const Vec& y, double h)
{
    const LagrangianModel M = (L.grad_q && L.grad_v) ? L : with_fd_gradients(L);
    check_h(h, "wm_grad_y");
    const StarPoint star = reconstruct_star(x, y, h);
    return h * ((M.grad_q(star.q_half, star.v_half) / 2) +
                M.grad_v(star.q_half, star.v_half) / h);
}

Vec wm_el_residual(const LagrangianModel& L, const Vec& q_prev, const Vec& q_curr,
                   const Vec& q_next, double h)
{
    return wm_grad_x(L, q_curr, q_next, h) + wm_grad_y(L, q_prev, q_curr, h);
}

} // namespace mvi
