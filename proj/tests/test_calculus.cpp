#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mvi/calculus.hpp"
#include "mvi/grid_function.hpp"
#include "mvi/time_grid.hpp"

using namespace mvi;

namespace {

Vec scalar(double x)
{
    Vec v(1);
    v[0] = x;
    return v;
}

GridFunction scalar_function(const NodeSet& set, const std::vector<double>& values)
{
    std::vector<Vec> samples;
    samples.reserve(values.size());
    for (double x : values)
        samples.push_back(scalar(x));
    return GridFunction(set, std::move(samples));
}

} // namespace

TEST_CASE("grid function construction and sampling")
{
    const TimeGrid grid(0.0, 1.0, 4);
    const NodeSet t(SetKind::T, grid);

    GridFunction zero(t, 2);
    CHECK(zero.size() == 5);
    CHECK(zero.dim() == 2);
    CHECK(zero.value(3).isZero());

    const GridFunction f = GridFunction::sample_scalar(t, [](double s) { return s * s; });
    CHECK(f.value(2)[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(f.time(2) == grid.node(2));

    const GridFunction g = GridFunction::sample(t, 2, [](double s) {
        Vec v(2);
        v << s, -s;
        return v;
    });
    CHECK(g.value(4)[0] == 1.0);
    CHECK(g.value(4)[1] == -1.0);

    CHECK_THROWS_AS(GridFunction(t, 0), std::domain_error);
    CHECK_THROWS_AS(GridFunction(t, std::vector<Vec>{scalar(1.0)}), std::domain_error);
    CHECK_THROWS_AS(GridFunction(t, std::vector<Vec>{scalar(1), scalar(2), scalar(3), scalar(4),
                                                     Vec::Zero(2)}),
                    std::domain_error);
    CHECK_THROWS_AS(f.value(5), std::domain_error);
    CHECK_THROWS_AS(f.value(-1), std::domain_error);
}

TEST_CASE("max_abs and max_abs_diff")
{
    const TimeGrid grid(0.0, 1.0, 2);
    const NodeSet t(SetKind::T, grid);
    const GridFunction f = scalar_function(t, {1.0, -3.0, 2.0});
    const GridFunction g = scalar_function(t, {1.0, -3.5, 2.0});
    CHECK(max_abs(f) == 3.0);
    CHECK(max_abs_diff(f, g) == 0.5);

    const GridFunction other_set = scalar_function(NodeSet(SetKind::THalf, grid), {0.0, 0.0});
    CHECK_THROWS_AS(max_abs_diff(f, other_set), std::domain_error);
    const GridFunction other_dim(t, 2);
    CHECK_THROWS_AS(max_abs_diff(f, other_dim), std::domain_error);
}

TEST_CASE("extension copies nodes and averages over each step")
{
    const TimeGrid grid(0.0, 1.0, 2);
    const GridFunction f = scalar_function(NodeSet(SetKind::T, grid), {1.0, 2.0, 5.0});
    const GridFunction fc = extend(f);
    REQUIRE(fc.set().kind() == SetKind::TCirc);
    REQUIRE(fc.size() == 5);
    CHECK(fc.value(0)[0] == 1.0);
    CHECK(fc.value(1)[0] == 1.5);
    CHECK(fc.value(2)[0] == 2.0);
    CHECK(fc.value(3)[0] == 3.5);
    CHECK(fc.value(4)[0] == 5.0);

    CHECK_THROWS_AS(extend(fc), std::domain_error);
    CHECK_THROWS_AS(extend(scalar_function(NodeSet(SetKind::THalf, grid), {0.0, 0.0})),
                    std::domain_error);
}

TEST_CASE("difference quotients move to the plus and minus families")
{
    const TimeGrid grid(0.0, 2.0, 4);
    const GridFunction f =
        GridFunction::sample_scalar(NodeSet(SetKind::T, grid), [](double t) { return 3 * t - 1; });

    const GridFunction df = delta_plus(f);
    CHECK(df.set().kind() == SetKind::TPlus);
    CHECK(df.size() == 4);
    for (int i = 0; i < df.size(); ++i)
        CHECK(df.value(i)[0] == doctest::Approx(3.0).epsilon(1e-14));

    const GridFunction db = delta_minus(f);
    CHECK(db.set().kind() == SetKind::TMinus);
    for (int i = 0; i < db.size(); ++i)
        CHECK(db.value(i)[0] == df.value(i)[0]);

    const GridFunction on_half = GridFunction::sample_scalar(NodeSet(SetKind::THalf, grid),
                                                             [](double t) { return t * t; });
    CHECK(delta_plus(on_half).set().kind() == SetKind::THalfPlus);
    CHECK(delta_minus(on_half).set().kind() == SetKind::THalfMinus);

    const GridFunction on_circ = extend(f);
    const GridFunction dc = delta_plus(on_circ);
    CHECK(dc.set().kind() == SetKind::TCircPlus);
    CHECK(dc.set().spacing() == grid.step() / 2);
    for (int i = 0; i < dc.size(); ++i)
        CHECK(dc.value(i)[0] == doctest::Approx(3.0).epsilon(1e-14));

    CHECK_THROWS_AS(delta_plus(df), std::domain_error);
    CHECK_THROWS_AS(delta_minus(db), std::domain_error);
}

TEST_CASE("backward mean on the half grid")
{
    const TimeGrid grid(0.0, 1.0, 3);
    const GridFunction f = scalar_function(NodeSet(SetKind::THalf, grid), {1.0, 3.0, 7.0});
    const GridFunction m = avg_half_minus(f);
    REQUIRE(m.set().kind() == SetKind::THalfMinus);
    REQUIRE(m.size() == 2);
    CHECK(m.value(0)[0] == 2.0);
    CHECK(m.value(1)[0] == 5.0);

    const TimeGrid one(0.0, 1.0, 1);
    CHECK_THROWS_AS(avg_half_minus(scalar_function(NodeSet(SetKind::THalf, one), {1.0})),
                    std::domain_error);
    CHECK_THROWS_AS(avg_half_minus(scalar_function(NodeSet(SetKind::T, grid), {0, 0, 0, 0})),
                    std::domain_error);
}

TEST_CASE("interior mean of circ neighbours")
{
    const TimeGrid grid(0.0, 1.0, 2);
    const GridFunction f = scalar_function(NodeSet(SetKind::T, grid), {1.0, 2.0, 5.0});
    const GridFunction m = avg_circ(extend(f));
    REQUIRE(m.set().kind() == SetKind::TPm);
    REQUIRE(m.size() == 1);
    CHECK(m.time(0) == 0.5);
    CHECK(m.value(0)[0] == 2.5);

    CHECK_THROWS_AS(avg_circ(f), std::domain_error);
    const TimeGrid one(0.0, 1.0, 1);
    CHECK_THROWS_AS(avg_circ(extend(scalar_function(NodeSet(SetKind::T, one), {1.0, 2.0}))),
                    std::domain_error);
}

TEST_CASE("rectangle quadrature sums one sample per step")
{
    const TimeGrid grid(0.0, 1.0, 4);
    const GridFunction f =
        GridFunction::sample_scalar(NodeSet(SetKind::T, grid), [](double t) { return t * t; });

    // left rule for t^2 on [0, 1] with four steps
    CHECK(integral_lambda(f, 0.0, 0, 4)[0] == doctest::Approx(0.21875).epsilon(1e-15));
    CHECK(integral_lambda(f, 0.0, 1, 3)[0] == doctest::Approx(0.078125).epsilon(1e-15));

    // antisymmetric in the bounds, empty range is zero
    CHECK(integral_lambda(f, 0.0, 4, 0)[0] == doctest::Approx(-0.21875).epsilon(1e-15));
    CHECK(integral_lambda(f, 0.0, 2, 2)[0] == 0.0);

    CHECK_THROWS_AS(integral_lambda(f, 1.0, 0, 4), std::domain_error);
    CHECK_THROWS_AS(integral_lambda(f, -0.1, 0, 4), std::domain_error);
    CHECK_THROWS_AS(integral_lambda(f, 0.0, 0, 5), std::domain_error);
    CHECK_THROWS_AS(integral_lambda(f, 0.0, -1, 4), std::domain_error);
    CHECK_THROWS_AS(integral_lambda(extend(f), 0.0, 0, 4), std::domain_error);
    CHECK_THROWS_AS(integral_lambda(delta_minus(f), 0.0, 0, 4), std::domain_error);
}

TEST_CASE("midpoint quadrature of the extension is the trapezoid rule")
{
    const TimeGrid grid(0.0, 1.0, 4);
    const GridFunction f =
        GridFunction::sample_scalar(NodeSet(SetKind::T, grid), [](double t) { return t * t; });
    const GridFunction fc = extend(f);

    // odd circ positions carry the per-step means
    GridFunction on_half(NodeSet(SetKind::THalf, grid), 1);
    for (int i = 0; i < 4; ++i)
        on_half.value(i) = fc.value(2 * i + 1);

    // trapezoid of t^2 on [0, 1] with four steps
    CHECK(integral_midpoint(on_half, 0, 4)[0] == doctest::Approx(0.34375).epsilon(1e-15));

    // exact for a linear integrand sampled at the half nodes
    const GridFunction lin =
        GridFunction::sample_scalar(NodeSet(SetKind::THalf, grid), [](double t) { return t; });
    CHECK(integral_midpoint(lin, 0, 4)[0] == doctest::Approx(0.5).epsilon(1e-15));

    CHECK_THROWS_AS(integral_midpoint(f, 0, 4), std::domain_error);
}

TEST_CASE("quadrature of a forward difference telescopes")
{
    const TimeGrid grid(-1.0, 2.0, 6);
    const GridFunction f = GridFunction::sample_scalar(
        NodeSet(SetKind::T, grid), [](double t) { return std::sin(3 * t) + t; });
    const Vec gap = integral_lambda(delta_plus(f), 0.0, 0, 6);
    CHECK(gap[0] == doctest::Approx(f.value(6)[0] - f.value(0)[0]).epsilon(1e-13));
}
