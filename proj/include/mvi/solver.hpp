#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "mvi/types.hpp"

namespace mvi {

struct SolverConfig {
    enum class Method { newton, fixed_point };
    enum class Damping { none, halving };

    double tol = 1e-12;        // infinity-norm target for the residual
    int max_iter = 50;
    double fd_epsilon = 1e-7;  // Jacobian column step, scaled by max(1, |x_j|)
    Method method = Method::newton;
    Damping damping = Damping::halving;
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, int iterations, double residual_norm)
        : std::runtime_error(what), iterations(iterations), residual_norm(residual_norm) {}

    int iterations;
    double residual_norm;
};

class ConditioningError : public std::runtime_error {
public:
    explicit ConditioningError(const std::string& what) : std::runtime_error(what) {}
};

struct SolveReport {
    int iterations = 0;         // accepted updates
    double residual_norm = 0.0; // infinity norm at the returned point
};

// Root of residual(x) = 0 from the given guess. Newton uses a dense
// forward-difference Jacobian and optional step-halving damping; fixed_point
// iterates x -> x - residual(x) and suits contractive formulations. Throws
// ConvergenceError when max_iter updates leave the residual above tol and
// ConditioningError when the Jacobian is singular.
Vec solve_root(const std::function<Vec(const Vec&)>& residual, const Vec& guess,
               const SolverConfig& cfg, SolveReport* report = nullptr);

// Forward-difference Jacobian of residual at x; r0 = residual(x) when already
// available.
Mat fd_jacobian(const std::function<Vec(const Vec&)>& residual, const Vec& x, const Vec& r0,
                double fd_epsilon);

} // namespace mvi
