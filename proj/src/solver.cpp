#include "mvi/solver.hpp"

#include <cmath>
#include <cstdio>

namespace mvi {

namespace {

std::string fmt_norm(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

void check_config(const SolverConfig& cfg)
{
    if (!(cfg.tol > 0))
        throw std::domain_error("SolverConfig: tol must be positive");
    if (cfg.max_iter < 1)
        throw std::domain_error("SolverConfig: max_iter must be >= 1");
    if (!(cfg.fd_epsilon > 0))
        throw std::domain_error("SolverConfig: fd_epsilon must be positive");
}

Vec eval_residual(const std::function<Vec(const Vec&)>& residual, const Vec& x, int dim)
{
    Vec r = residual(x);
    if (r.size() != dim)
        throw std::domain_error("solve_root: residual dimension does not match the guess");
    if (!r.allFinite())
        throw ConvergenceError("solve_root: residual is not finite", 0, inf_norm(r));
    return r;
}

Vec newton(const std::function<Vec(const Vec&)>& residual, Vec x, const SolverConfig& cfg,
           SolveReport* report)
{
    const int dim = static_cast<int>(x.size());
    Vec r = eval_residual(residual, x, dim);
    double norm = inf_norm(r);
    int iter = 0;
    while (norm > cfg.tol) {
        if (iter >= cfg.max_iter)
            throw ConvergenceError("solve_root: Newton stopped after " + std::to_string(iter) +
                                       " iterations with residual " + fmt_norm(norm),
                                   iter, norm);
        const Mat jac = fd_jacobian(residual, x, r, cfg.fd_epsilon);
        Eigen::FullPivLU<Mat> lu(jac);
        if (!lu.isInvertible())
            throw ConditioningError("solve_root: singular Jacobian (rank " +
                                    std::to_string(lu.rank()) + " of " + std::to_string(dim) + ")");
        const Vec step = lu.solve(-r);

        double alpha = 1.0;
        Vec x_next = x + step;
        Vec r_next = eval_residual(residual, x_next, dim);
        if (cfg.damping == SolverConfig::Damping::halving) {
            for (int k = 0; k < 40 && inf_norm(r_next) > norm; ++k) {
                alpha /= 2;
                x_next = x + alpha * step;
                r_next = eval_residual(residual, x_next, dim);
            }
        }
        x = std::move(x_next);
        r = std::move(r_next);
        norm = inf_norm(r);
        ++iter;
    }
    if (report) {
        report->iterations = iter;
        report->residual_norm = norm;
    }
    return x;
}

Vec fixed_point(const std::function<Vec(const Vec&)>& residual, Vec x, const SolverConfig& cfg,
                SolveReport* report)
{
    const int dim = static_cast<int>(x.size());
    Vec r = eval_residual(residual, x, dim);
    double norm = inf_norm(r);
    int iter = 0;
    while (norm > cfg.tol) {
        if (iter >= cfg.max_iter)
            throw ConvergenceError("solve_root: fixed point stopped after " +
                                       std::to_string(iter) + " iterations with residual " +
                                       fmt_norm(norm),
                                   iter, norm);
        x -= r;
        r = eval_residual(residual, x, dim);
        norm = inf_norm(r);
        ++iter;
    }
    if (report) {
        report->iterations = iter;
        report->residual_norm = norm;
    }
    return x;
}

} // namespace

Mat fd_jacobian(const std::function<Vec(const Vec&)>& residual, const Vec& x, const Vec& r0,
                double fd_epsilon)
{
    const int dim = static_cast<int>(x.size());
    Mat jac(r0.size(), dim);
    Vec probe = x;
    for (int j = 0; j < dim; ++j) {
        const double eps = fd_epsilon * std::max(1.0, std::abs(x[j]));
        probe[j] = x[j] + eps;
        jac.col(j) = (residual(probe) - r0) / eps;
        probe[j] = x[j];
    }
    return jac;
}

Vec solve_root(const std::function<Vec(const Vec&)>& residual, const Vec& guess,
               const SolverConfig& cfg, SolveReport* report)
{
    check_config(cfg);
    if (guess.size() == 0)
        throw std::domain_error("solve_root: empty guess");
    if (!guess.allFinite())
        throw std::domain_error("solve_root: guess is not finite");
    return cfg.method == SolverConfig::Method::newton ? newton(residual, guess, cfg, report)
                                                      : fixed_point(residual, guess, cfg, report);
}

} // namespace mvi
