#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mvi/lagrangian.hpp"
#include "mvi/problems.hpp"

using namespace mvi;

namespace {

GridFunction on_t(const TimeGrid& grid, const std::vector<double>& values)
{
    std::vector<Vec> samples;
    samples.reserve(values.size());
    for (double x : values)
        samples.push_back(Vec::Constant(1, x));
    return GridFunction(NodeSet(SetKind::T, grid), std::move(samples));
}

// L = cosh(v) - q^4/4: nonquadratic in both arguments, value callback only
LagrangianModel cosh_model()
{
    LagrangianModel L;
    L.dim = 1;
    L.value = [](const Vec& q, const Vec& v) {
        return std::cosh(v[0]) - std::pow(q[0], 4) / 4;
    };
    return L;
}

} // namespace

TEST_CASE("star point reconstruction and its inverse")
{
    Vec q0(1), q1(1);
    q0 << 1.0;
    q1 << 3.0;
    const StarPoint star = reconstruct_star(q0, q1, 0.5);
    CHECK(star.q_half[0] == 2.0);
    CHECK(star.v_half[0] == 4.0);

    const auto [x, y] = reconstruct_q(star, 0.5);
    CHECK(x[0] == 1.0);
    CHECK(y[0] == 3.0);
}

TEST_CASE("midpoint and left-endpoint actions on pinned inputs")
{
    const LagrangianModel harmonic = make_mechanical(find_problem("harmonic"), 1);

    // one step, constant position: only the potential contributes
    const TimeGrid tiny(0.0, 0.1, 1);
    CHECK(action_midpoint(harmonic, on_t(tiny, {1.0, 1.0})) ==
          doctest::Approx(-0.05).epsilon(1e-14));
    CHECK(action_order1(harmonic, on_t(tiny, {1.0, 1.0})) ==
          doctest::Approx(-0.05).epsilon(1e-14));

    // one step with motion: the two quadratures sample the potential differently
    CHECK(action_midpoint(harmonic, on_t(tiny, {1.0, 2.0})) ==
          doctest::Approx(4.8875).epsilon(1e-14));
    CHECK(action_order1(harmonic, on_t(tiny, {1.0, 2.0})) ==
          doctest::Approx(4.95).epsilon(1e-14));

    // free particle along q = t: action is v^2/2 integrated over [0, 1]
    const LagrangianModel free = make_mechanical(find_problem("free_particle"), 1);
    const TimeGrid grid(0.0, 1.0, 7);
    const GridFunction line =
        GridFunction::sample_scalar(NodeSet(SetKind::T, grid), [](double t) { return t; });
    CHECK(action_midpoint(free, line) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(action_order1(free, line) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("scheme residuals on a constant sequence")
{
    const LagrangianModel harmonic = make_mechanical(find_problem("harmonic"), 1);
    const TimeGrid grid(0.0, 0.2, 2);
    const GridFunction q = on_t(grid, {1.0, 1.0, 1.0});

    // v = 0 everywhere, so only the potential term survives
    const GridFunction r_mid = el_residual_midpoint(harmonic, q);
    REQUIRE(r_mid.set().kind() == SetKind::THalfMinus);
    REQUIRE(r_mid.size() == 1);
    CHECK(r_mid.value(0)[0] == doctest::Approx(1.0).epsilon(1e-14));

    const GridFunction r_left = el_residual_order1(harmonic, q);
    REQUIRE(r_left.set().kind() == SetKind::TPm);
    REQUIRE(r_left.size() == 1);
    CHECK(r_left.value(0)[0] == doctest::Approx(-1.0).epsilon(1e-14));

    const TimeGrid one(0.0, 0.1, 1);
    CHECK_THROWS_AS(el_residual_midpoint(harmonic, on_t(one, {1.0, 1.0})), std::domain_error);
}

TEST_CASE("action derivative pairs the residual with the direction")
{
    const LagrangianModel harmonic = make_mechanical(find_problem("harmonic"), 1);
    const TimeGrid grid(0.0, 0.2, 2);
    const GridFunction q = on_t(grid, {1.0, 1.0, 1.0});
    const GridFunction v = on_t(grid, {0.0, 1.0, 0.0});

    // -h r(t_{1/2+1/2}) v(t_1) with r = 1 from the constant sequence
    CHECK(frechet_midpoint(harmonic, q, v) == doctest::Approx(-0.1).epsilon(1e-14));

    // directions must vanish at both endpoints
    CHECK_THROWS_AS(frechet_midpoint(harmonic, q, on_t(grid, {0.1, 1.0, 0.0})),
                    std::domain_error);
    CHECK_THROWS_AS(frechet_midpoint(harmonic, q, on_t(grid, {0.0, 1.0, -0.2})),
                    std::domain_error);

    // a single step has no interior nodes, so every admissible derivative is zero
    const TimeGrid one(0.0, 0.1, 1);
    CHECK(frechet_midpoint(harmonic, on_t(one, {1.0, 2.0}), on_t(one, {0.0, 0.0})) == 0.0);
}

TEST_CASE("frechet derivative matches a finite difference of the action")
{
    const LagrangianModel pendulum = make_mechanical(find_problem("pendulum"), 1);
    const TimeGrid grid(0.0, 1.0, 5);
    const GridFunction q =
        GridFunction::sample_scalar(NodeSet(SetKind::T, grid), [](double t) { return std::sin(t); });
    GridFunction v(NodeSet(SetKind::T, grid), 1);
    for (int i = 1; i < 5; ++i)
        v.value(i)[0] = std::cos(3.0 * i);

    const double analytic = frechet_midpoint(pendulum, q, v);
    const double eps = 1e-6;
    GridFunction hi = q;
    GridFunction lo = q;
    for (int i = 0; i <= 5; ++i) {
        hi.value(i) += eps * v.value(i);
        lo.value(i) -= eps * v.value(i);
    }
    const double fd =
        (action_midpoint(pendulum, hi) - action_midpoint(pendulum, lo)) / (2 * eps);
    CHECK(analytic == doctest::Approx(fd).epsilon(1e-7));
}

TEST_CASE("implicit step reproduces the hand-solved harmonic value")
{
    const LagrangianModel harmonic = make_mechanical(find_problem("harmonic"), 1);
    Vec q0 = Vec::Constant(1, 1.0);
    Vec q1 = Vec::Constant(1, 1.0);

    // (q2 - 1)/h^2 + (1 + (1 + q2)/2)/2 = 0 at h = 0.1 gives q2 = 99.25/100.25
    const Vec q2 = step_midpoint_lagrangian(harmonic, q0, q1, 0.1);
    CHECK(std::abs(q2[0] - 99.25 / 100.25) <= 1e-12);

    // the solved step zeroes the bridging residual
    const TimeGrid grid(0.0, 0.2, 2);
    GridFunction q(NodeSet(SetKind::T, grid), 1);
    q.value(0) = q0;
    q.value(1) = q1;
    q.value(2) = q2;
    CHECK(max_abs(el_residual_midpoint(harmonic, q)) <= 1e-10);
}

TEST_CASE("free particle step extrapolates linearly")
{
    const LagrangianModel free = make_mechanical(find_problem("free_particle"), 1);
    const Vec q2 = step_midpoint_lagrangian(free, Vec::Constant(1, 0.2), Vec::Constant(1, 0.5), 0.25);
    CHECK(std::abs(q2[0] - 0.8) <= 1e-13);
}

TEST_CASE("two-point step Lagrangian and its partials on pinned inputs")
{
    const LagrangianModel harmonic = make_mechanical(find_problem("harmonic"), 1);
    const Vec one = Vec::Constant(1, 1.0);
    const double h = 0.1;

    CHECK(wm_lagrangian(harmonic, one, one, h) == doctest::Approx(-0.05).epsilon(1e-14));
    CHECK(wm_grad_x(harmonic, one, one, h)[0] == doctest::Approx(-0.05).epsilon(1e-14));
    CHECK(wm_grad_y(harmonic, one, one, h)[0] == doctest::Approx(-0.05).epsilon(1e-14));

    // stationarity residual = -h times the scheme residual (+1 here)
    const Vec r = wm_el_residual(harmonic, one, one, one, h);
    CHECK(r[0] == doctest::Approx(-0.1).epsilon(1e-14));
}

TEST_CASE("two-point partials match finite differences of the two-point value")
{
    const LagrangianModel model = with_fd_gradients(cosh_model());
    Vec x(1), y(1);
    x << 0.4;
    y << 0.9;
    const double h = 0.3;
    const double eps = 1e-6;

    const auto value_at = [&](double xs, double ys) {
        return wm_lagrangian(model, Vec::Constant(1, xs), Vec::Constant(1, ys), h);
    };
    const double fd_x = (value_at(x[0] + eps, y[0]) - value_at(x[0] - eps, y[0])) / (2 * eps);
    const double fd_y = (value_at(x[0], y[0] + eps) - value_at(x[0], y[0] - eps)) / (2 * eps);
    CHECK(wm_grad_x(model, x, y, h)[0] == doctest::Approx(fd_x).epsilon(1e-6));
    CHECK(wm_grad_y(model, x, y, h)[0] == doctest::Approx(fd_y).epsilon(1e-6));
}

TEST_CASE("finite-difference gradients agree with analytic ones")
{
    const LagrangianModel harmonic = make_mechanical(find_problem("harmonic"), 2);
    LagrangianModel value_only;
    value_only.dim = 2;
    value_only.value = harmonic.value;
    const LagrangianModel filled = with_fd_gradients(value_only);

    Vec q(2), v(2);
    q << 0.3, -0.7;
    v << 1.1, 0.2;
    CHECK(inf_norm(Vec(filled.grad_q(q, v) - harmonic.grad_q(q, v))) <= 1e-8);
    CHECK(inf_norm(Vec(filled.grad_v(q, v) - harmonic.grad_v(q, v))) <= 1e-8);

    // gradient_check scores a correct model near zero and a broken one far from it
    CHECK(gradient_check(harmonic, 20, 42) <= 1e-8);
    LagrangianModel broken = harmonic;
    broken.grad_v = [](const Vec&, const Vec& v) { return Vec(2 * v); };
    CHECK(gradient_check(broken, 20, 42) >= 1e-2);
}

TEST_CASE("position integrator records rows and momenta together")
{
    const LagrangianModel harmonic = make_mechanical(find_problem("harmonic"), 1);
    const TimeGrid grid(0.0, 1.0, 10);
    const Vec q0 = Vec::Constant(1, 1.0);
    const Vec q1 = step_midpoint_hamiltonian(harmonic, {q0, Vec::Zero(1)}, grid.step()).q;

    const TrajectoryRecord record = integrate_lagrangian(harmonic, q0, q1, grid);
    CHECK(record.scheme == "midpoint_lagrangian");
    CHECK(record.complete());
    CHECK(record.rows.size() == 11);
    CHECK(record.stats.total_iterations > 0);

    // row momenta reproduce the discrete momentum map of the position column
    const GridFunction q = record.positions();
    const GridFunction p = record.momenta();
    CHECK(max_abs_diff(p, discrete_momentum(harmonic, q)) <= 1e-14);

    CHECK_THROWS_AS(integrate_lagrangian(harmonic, Vec::Zero(2), Vec::Zero(2), grid),
                    std::domain_error);
    Vec bad = Vec::Constant(1, std::numeric_limits<double>::quiet_NaN());
    CHECK_THROWS_AS(integrate_lagrangian(harmonic, bad, q1, grid), std::domain_error);
}

TEST_CASE("a failing step surfaces the partial trajectory")
{
    const LagrangianModel pendulum = make_mechanical(find_problem("pendulum"), 1);
    const TimeGrid grid(0.0, 1.0, 10);
    SolverConfig cfg;
    cfg.tol = 1e-300;  // unreachable
    cfg.max_iter = 5;
    try {
        integrate_lagrangian(pendulum, Vec::Constant(1, 1.0), Vec::Constant(1, 0.999), grid, cfg);
        FAIL("expected IntegrationError");
    } catch (const IntegrationError& e) {
        CHECK(e.step_index == 2);
        CHECK(e.partial.rows.size() == 2);
        CHECK(e.partial.failure_note.find("step 2") == 0);
        CHECK_FALSE(e.partial.complete());
        CHECK_THROWS_AS(e.partial.positions(), std::domain_error);
    }
}
