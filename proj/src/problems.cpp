#include "mvi/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace mvi {

namespace {

MechanicalProblem make_free_particle()
{
    MechanicalProblem p;
    p.name = "free_particle";
    p.potential = [](const Vec& q) { (void)q; return 0.0; };
    p.potential_grad = [](const Vec& q) { return Vec(Vec::Zero(q.size())); };
    p.exact = [](double t, const PhasePoint& x0) {
        return PhasePoint{x0.q + t * x0.p, x0.p};
    };
    return p;
}

MechanicalProblem make_harmonic()
{
    MechanicalProblem p;
    p.name = "harmonic";
    p.potential = [](const Vec& q) { return 0.5 * q.squaredNorm(); };
    p.potential_grad = [](const Vec& q) { return q; };
    p.exact = [](double t, const PhasePoint& x0) {
        const double c = std::cos(t), s = std::sin(t);
        return PhasePoint{c * x0.q + s * x0.p, -s * x0.q + c * x0.p};
    };
    return p;
}

MechanicalProblem make_pendulum()
{
    MechanicalProblem p;
    p.name = "pendulum";
    p.dim = 1;
    p.potential = [](const Vec& q) { return -std::cos(q[0]); };
    p.potential_grad = [](const Vec& q) { return Vec(Vec::Constant(1, std::sin(q[0]))); };
    return p;
}

const std::vector<MechanicalProblem>& catalog()
{
    static const std::vector<MechanicalProblem> problems = {
        make_free_particle(), make_harmonic(), make_pendulum()};
    return problems;
}

} // namespace

LagrangianModel make_mechanical(const MechanicalProblem& problem, int dim)
{
    if (dim < 1)
        throw std::domain_error("make_mechanical: dim must be >= 1");
    if (problem.dim != 0 && problem.dim != dim)
        throw std::domain_error("make_mechanical: " + problem.name + " is fixed to dim " +
                                std::to_string(problem.dim) + ", requested " + std::to_string(dim));
    if (!problem.potential || !problem.potential_grad)
        throw std::domain_error("make_mechanical: problem lacks potential callbacks");

    const auto V = problem.potential;
    const auto dV = problem.potential_grad;
    LagrangianModel L;
    L.dim = dim;
    L.value = [V](const Vec& q, const Vec& v) { return 0.5 * v.squaredNorm() - V(q); };
    L.grad_q = [dV](const Vec& q, const Vec& v) { (void)v; return Vec(-dV(q)); };
    L.grad_v = [](const Vec& q, const Vec& v) { (void)q; return v; };
    L.legendre_inverse = [](const Vec& p, const Vec& q) { (void)q; return p; };
    return L;
}

const MechanicalProblem& find_problem(const std::string& name)
{
    for (const MechanicalProblem& p : catalog())
        if (p.name == name)
            return p;
    throw std::domain_error("find_problem: unknown problem '" + name + "'");
}

std::vector<std::string> problem_names()
{
    std::vector<std::string> names;
    for (const MechanicalProblem& p : catalog())
        names.push_back(p.name);
    return names;
}

} // namespace mvi
