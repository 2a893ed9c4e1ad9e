#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "mvi/grid_function.hpp"
#include "mvi/solver.hpp"
#include "mvi/trajectory.hpp"
#include "mvi/types.hpp"

namespace mvi {

// A Lagrangian L(q, v) with its partial gradients. grad_q and grad_v may be
// left empty and synthesized by finite differences (with_fd_gradients);
// legendre_inverse is the optional analytic solve of dL/dv(q, v) = p for v.
struct LagrangianModel {
    int dim = 1;
    std::function<double(const Vec& q, const Vec& v)> value;
    std::function<Vec(const Vec& q, const Vec& v)> grad_q;
    std::function<Vec(const Vec& q, const Vec& v)> grad_v;
    std::function<Vec(const Vec& p, const Vec& q)> legendre_inverse;
};

// Copy of the model with any missing gradient filled in by central finite
// differences of value (step max(1e-6, 1e-6 |x|) per component).
LagrangianModel with_fd_gradients(LagrangianModel model);

// Largest relative mismatch between the model gradients and central finite
// differences of value, over n_samples random (q, v) points.
double gradient_check(const LagrangianModel& L, int n_samples, std::uint64_t seed);

// Evaluation point of one step (q_i, q_{i+1}): the interval midpoint and the
// difference quotient across it.
struct StarPoint {
    Vec q_half;
    Vec v_half;
};

StarPoint reconstruct_star(const Vec& q_i, const Vec& q_next, double h);

// Inverse of reconstruct_star: the (q_i, q_{i+1}) pair with the given
// midpoint and difference quotient.
std::pair<Vec, Vec> reconstruct_q(const StarPoint& star, double h);

// Action of the mid-point scheme, sum_i L((q_i+q_{i+1})/2, (q_{i+1}-q_i)/h) h.
double action_midpoint(const LagrangianModel& L, const GridFunction& q);

// Action of the left-endpoint scheme, sum_i L(q_i, (q_{i+1}-q_i)/h) h.
double action_order1(const LagrangianModel& L, const GridFunction& q);

// Derivative of action_midpoint at q in the direction v; v lives on T and must
// vanish at both endpoints. Equals the pairing of the scheme residual below
// with v over the interior nodes.
double frechet_midpoint(const LagrangianModel& L, const GridFunction& q, const GridFunction& v);

// Mid-point scheme residual at the half nodes 1..N-1 (T_half_minus), one
// d-vector per bridging half node:
//   r = (dL/dv(*_{i+1/2}) - dL/dv(*_{i-1/2}))/h - (dL/dq(*_{i+1/2}) + dL/dq(*_{i-1/2}))/2,
// the discrete Euler-Lagrange operator; zero along critical sequences. For
// L = |v|^2/2 - V(q) it equals the second difference of q over h^2 plus the
// mean of V' at the two midpoints.
GridFunction el_residual_midpoint(const LagrangianModel& L, const GridFunction& q);

// Left-endpoint scheme residual at the interior T nodes (T_pm):
//   r(t_i) = dL/dq(q_i, v_i) - (dL/dv(q_i, v_i) - dL/dv(q_{i-1}, v_{i-1}))/h,
// with v_i the forward difference quotient at t_i.
GridFunction el_residual_order1(const LagrangianModel& L, const GridFunction& q);

// One implicit step of the mid-point scheme: the q_{i+1} that zeroes the
// residual bridging (q_{i-1}, q_i, q_{i+1}), found from the linear predictor
// 2 q_i - q_{i-1}. The solver sees the residual in momentum units (h times
// the scheme residual, the two-point stationarity condition), so cfg.tol does
// not inflate with 1/h^2. With cfg.method == fixed_point the contractive
// update q <- q_i + h g(p_half(q), (q + q_i)/2) replaces Newton (g = Legendre
// inverse).
Vec step_midpoint_lagrangian(const LagrangianModel& L, const Vec& q_prev, const Vec& q_curr,
                             double h, const SolverConfig& cfg = {}, SolveReport* report = nullptr);

// Run the mid-point scheme from the seed pair (q0, q1). Rows carry the
// induced momentum samples and their energy. A failing step throws
// IntegrationError with the rows produced up to it.
TrajectoryRecord integrate_lagrangian(const LagrangianModel& L, const Vec& q0, const Vec& q1,
                                      const TimeGrid& grid, const SolverConfig& cfg = {});

// Two-point step Lagrangian h L((x+y)/2, (y-x)/h) and its exact partials.
double wm_lagrangian(const LagrangianModel& L, const Vec& x, const Vec& y, double h);
Vec wm_grad_x(const LagrangianModel& L, const Vec& x, const Vec& y, double h);
Vec wm_grad_y(const LagrangianModel& L, const Vec& x, const Vec& y, double h);

// Stationarity condition of the two-point form,
//   d_x Lh(q_i, q_{i+1}) + d_y Lh(q_{i-1}, q_i);
// equals -h times el_residual_midpoint at the bridging half node.
Vec wm_el_residual(const LagrangianModel& L, const Vec& q_prev, const Vec& q_curr,
                   const Vec& q_next, double h);

} // namespace mvi
