#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mvi/hamiltonian.hpp"
#include "mvi/lagrangian.hpp"
#include "mvi/types.hpp"

namespace mvi {

// A mechanical system q'' = -grad V(q). dim == 0 means any dimension.
// exact, when present, is the closed-form flow used by convergence studies.
struct MechanicalProblem {
    std::string name;
    int dim = 0;
    std::function<double(const Vec& q)> potential;
    std::function<Vec(const Vec& q)> potential_grad;
    std::function<PhasePoint(double t, const PhasePoint& x0)> exact;
};

// L(q, v) = |v|^2/2 - V(q): unit mass matrix, identity Legendre transform.
LagrangianModel make_mechanical(const MechanicalProblem& problem, int dim);

// Built-in systems: free_particle (V = 0), harmonic (V = |q|^2/2, both any
// dim, exact flows) and pendulum (V = -cos q, one dim, no closed form).
const MechanicalProblem& find_problem(const std::string& name);
std::vector<std::string> problem_names();

} // namespace mvi
