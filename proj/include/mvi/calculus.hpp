#pragma once

#include "mvi/grid_function.hpp"

namespace mvi {

// Extension of f from T to the doubled grid: values at T nodes are copied,
// the value at each half node is the mean of the two surrounding node values.
GridFunction extend(const GridFunction& f);

// Forward difference quotient (f(sigma(t)) - f(t)) / spacing, defined on the
// family minus its last node. Accepts functions on T, T_half or T_circ.
GridFunction delta_plus(const GridFunction& f);

// Backward difference quotient (f(t) - f(rho(t))) / spacing, defined on the
// family minus its first node. Accepts functions on T, T_half or T_circ.
GridFunction delta_minus(const GridFunction& f);

// Backward mean on the half grid, (f(t) + f(t - h))/2 on T_half minus its
// first node.
GridFunction avg_half_minus(const GridFunction& f);

// Mean of the two circ neighbours of each interior T node,
// (f(t + h/2) + f(t - h/2))/2 on T_pm.
GridFunction avg_circ(const GridFunction& f);

// Rectangle quadrature with one sample per step, taken at the lambda point
// t_{k,lambda} = t_k + lambda h. Bounds i, j are T node indices; the result is
// sum_{k=i}^{j-1} f_k h, empty when i == j and antisymmetric under swapping.
// f must carry one sample per step: a function on T_plus or T_half, or on T
// (whose last value the quadrature never reads).
Vec integral_lambda(const GridFunction& f, double lambda, int i, int j);

// lambda = 1/2 quadrature of a function on T_half.
Vec integral_midpoint(const GridFunction& f, int i, int j);

} // namespace mvi
