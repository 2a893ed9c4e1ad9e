#pragma once

#include <functional>

#include "mvi/grid_function.hpp"
#include "mvi/lagrangian.hpp"
#include "mvi/solver.hpp"
#include "mvi/trajectory.hpp"
#include "mvi/types.hpp"

namespace mvi {

struct PhasePoint {
    Vec q;
    Vec p;
};

struct HamiltonianModel {
    int dim = 1;
    std::function<double(const Vec& p, const Vec& q)> value;
    std::function<Vec(const Vec& p, const Vec& q)> grad_p;
    std::function<Vec(const Vec& p, const Vec& q)> grad_q;
};

// Velocity v with dL/dv(q, v) = p: the model's analytic inverse when present,
// otherwise a Newton solve started from v = p.
Vec legendre_inverse(const LagrangianModel& L, const Vec& p, const Vec& q,
                     const SolverConfig& cfg = {});

// H(p, q) = p . v - L(q, v) with v the Legendre inverse. grad_p is that v and
// grad_q = -dL/dq(q, v); the dv terms cancel through the Legendre relation.
HamiltonianModel build_hamiltonian(const LagrangianModel& L, const SolverConfig& cfg = {});

// Momentum samples induced on all of T by a position sequence:
//   p(t_i) = dL/dv(*_{i-1/2}) + (h/2) dL/dq(*_{i-1/2})   for i >= 1,
//   p(t_0) = dL/dv(*_{1/2})   - (h/2) dL/dq(*_{1/2}).
GridFunction discrete_momentum(const LagrangianModel& L, const GridFunction& q);

// (p_i + p_{i+1})/2 - dL/dv at the star point, one d-vector per half node;
// zero exactly when the averaged momentum matches the discrete velocity.
GridFunction momentum_constraint_residual(const LagrangianModel& L, const GridFunction& q,
                                          const GridFunction& p);

// One step of the mid-point phase-space scheme: solve jointly
//   (p1 - p0)/h = dL/dq((q0+q1)/2, (q1-q0)/h),
//   (q1 - q0)/h = g((p0+p1)/2, (q0+q1)/2),
// Newton on the stacked 2d residual from the predictor (q0 + h g(p0, q0), p0).
PhasePoint step_midpoint_hamiltonian(const LagrangianModel& L, const PhasePoint& x0, double h,
                                     const SolverConfig& cfg = {}, SolveReport* report = nullptr);

// Run the phase-space scheme from (q0, p0) over the grid. A failing step
// throws IntegrationError with the rows produced up to it.
TrajectoryRecord integrate_hamiltonian(const LagrangianModel& L, const PhasePoint& x0,
                                       const TimeGrid& grid, const SolverConfig& cfg = {});

// Residuals of the phase-space equations along a (q, p) pair on T. The
// momentum equation lives at the half nodes 1..N-1; the position equation
// (difference quotient of q minus dH/dp at the averaged point) is evaluated at
// every half node, so both boundary relations are included.
struct ShResidual {
    GridFunction momentum_eq;
    GridFunction position_eq;

    double max_norm() const;
};

ShResidual sh_residual(const LagrangianModel& L, const GridFunction& q, const GridFunction& p,
                       const SolverConfig& cfg = {});

// Phase-space action sum_i h [ p_half . (q_{i+1}-q_i)/h - H(p_half, q_half) ]
// with the averaged (p, q) values at each half node.
double action_hamiltonian(const LagrangianModel& L, const GridFunction& p, const GridFunction& q,
                          const SolverConfig& cfg = {});

// Directional derivatives of action_hamiltonian along every canonical basis
// variation (q directions vanish at the endpoints, p directions do not),
// by central differences of step fd_step, next to the scheme residuals.
struct CriticalityReport {
    double max_directional_derivative = 0;
    double max_residual = 0;
};

CriticalityReport criticality_check(const LagrangianModel& L, const GridFunction& q,
                                    const GridFunction& p, const SolverConfig& cfg = {},
                                    double fd_step = 1e-6);

// Left-endpoint phase-space scheme: q_{i+1} = q_i + h dH/dp(p_i, q_i), then
// p_{i+1} from the implicit relation (p_{i+1} - p_i)/h = -dH/dq(p_{i+1}, q_{i+1}).
TrajectoryRecord integrate_order1_hamiltonian(const LagrangianModel& L, const PhasePoint& x0,
                                              const TimeGrid& grid, const SolverConfig& cfg = {});

} // namespace mvi
