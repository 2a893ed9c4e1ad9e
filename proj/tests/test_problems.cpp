#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "mvi/problems.hpp"

using namespace mvi;

TEST_CASE("catalog lists the built-in systems")
{
    const auto names = problem_names();
    REQUIRE(names.size() == 3);
    CHECK(names[0] == "free_particle");
    CHECK(names[1] == "harmonic");
    CHECK(names[2] == "pendulum");
    for (const auto& name : names)
        CHECK(find_problem(name).name == name);
    CHECK_THROWS_AS(find_problem("kepler"), std::domain_error);
}

TEST_CASE("potentials and their gradients")
{
    Vec q(2);
    q << 3.0, 4.0;

    const MechanicalProblem& free = find_problem("free_particle");
    CHECK(free.potential(q) == 0.0);
    CHECK(free.potential_grad(q).isZero());

    const MechanicalProblem& harmonic = find_problem("harmonic");
    CHECK(harmonic.potential(q) == doctest::Approx(12.5).epsilon(1e-15));
    CHECK(harmonic.potential_grad(q)[0] == 3.0);
    CHECK(harmonic.potential_grad(q)[1] == 4.0);

    const MechanicalProblem& pendulum = find_problem("pendulum");
    Vec angle(1);
    angle << 0.7;
    CHECK(pendulum.potential(angle) == doctest::Approx(-std::cos(0.7)).epsilon(1e-15));
    CHECK(pendulum.potential_grad(angle)[0] == doctest::Approx(std::sin(0.7)).epsilon(1e-15));
    CHECK(pendulum.dim == 1);
    CHECK_FALSE(static_cast<bool>(pendulum.exact));
}

TEST_CASE("closed-form flows")
{
    const MechanicalProblem& free = find_problem("free_particle");
    PhasePoint x0{Vec::Constant(1, 2.0), Vec::Constant(1, -0.5)};
    const PhasePoint drift = free.exact(3.0, x0);
    CHECK(drift.q[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(drift.p[0] == -0.5);

    const MechanicalProblem& harmonic = find_problem("harmonic");
    const PhasePoint circle = harmonic.exact(M_PI / 2, {Vec::Constant(1, 1.0), Vec::Zero(1)});
    CHECK(std::abs(circle.q[0]) <= 1e-15);
    CHECK(circle.p[0] == doctest::Approx(-1.0).epsilon(1e-15));

    // the flow conserves |q|^2 + |p|^2
    const PhasePoint later = harmonic.exact(2.7, {Vec::Constant(1, 0.6), Vec::Constant(1, 0.8)});
    CHECK(later.q.squaredNorm() + later.p.squaredNorm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("mechanical model construction and its guards")
{
    const LagrangianModel L = make_mechanical(find_problem("harmonic"), 3);
    CHECK(L.dim == 3);
    Vec q(3), v(3);
    q << 1.0, 0.0, -1.0;
    v << 0.5, 2.0, 0.0;
    CHECK(L.value(q, v) == doctest::Approx(0.5 * 4.25 - 1.0).epsilon(1e-15));
    CHECK(L.grad_q(q, v)[0] == -1.0);
    CHECK(L.grad_v(q, v)[1] == 2.0);
    CHECK(L.legendre_inverse(v, q)[1] == 2.0);

    CHECK_THROWS_AS(make_mechanical(find_problem("pendulum"), 2), std::domain_error);
    CHECK_THROWS_AS(make_mechanical(find_problem("harmonic"), 0), std::domain_error);
    CHECK_THROWS_AS(make_mechanical(MechanicalProblem{}, 1), std::domain_error);
}
