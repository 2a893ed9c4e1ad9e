#include "mvi/calculus.hpp"

#include <stdexcept>
#include <string>

namespace mvi {

namespace {

SetKind plus_kind(SetKind kind)
{
    switch (kind) {
        case SetKind::T: return SetKind::TPlus;
        case SetKind::THalf: return SetKind::THalfPlus;
        case SetKind::TCirc: return SetKind::TCircPlus;
        default:
            throw std::domain_error(std::string("delta_plus: not defined on ") + set_name(kind));
    }
}

SetKind minus_kind(SetKind kind)
{
    switch (kind) {
        case SetKind::T: return SetKind::TMinus;
        case SetKind::THalf: return SetKind::THalfMinus;
        case SetKind::TCirc: return SetKind::TCircMinus;
        default:
            throw std::domain_error(std::string("delta_minus: not defined on ") + set_name(kind));
    }
}

} // namespace

GridFunction extend(const GridFunction& f)
{
    if (f.set().kind() != SetKind::T)
        throw std::domain_error(std::string("extend: expects a function on T, got ") +
                                set_name(f.set().kind()));
    GridFunction out(NodeSet(SetKind::TCirc, f.set().grid()), f.dim());
    const int n = f.set().grid().n_intervals();
    for (int i = 0; i <= n; ++i)
        out.value(2 * i) = f.value(i);
    for (int i = 0; i < n; ++i)
        out.value(2 * i + 1) = (f.value(i) + f.value(i + 1)) / 2;
    return out;
}

GridFunction delta_plus(const GridFunction& f)
{
    GridFunction out(NodeSet(plus_kind(f.set().kind()), f.set().grid()), f.dim());
    const double step = f.set().spacing();
    for (int i = 0; i < out.size(); ++i)
        out.value(i) = (f.value(i + 1) - f.value(i)) / step;
    return out;
}

GridFunction delta_minus(const GridFunction& f)
{
    GridFunction out(NodeSet(minus_kind(f.set().kind()), f.set().grid()), f.dim());
    const double step = f.set().spacing();
    for (int i = 0; i < out.size(); ++i)
        out.value(i) = (f.value(i + 1) - f.value(i)) / step;
    return out;
}

GridFunction avg_half_minus(const GridFunction& f)
{
    if (f.set().kind() != SetKind::THalf)
        throw std::domain_error(std::string("avg_half_minus: expects a function on T_half, got ") +
                                set_name(f.set().kind()));
    if (f.set().grid().n_intervals() < 2)
        throw std::domain_error("avg_half_minus: needs at least two steps");
    GridFunction out(NodeSet(SetKind::THalfMinus, f.set().grid()), f.dim());
    for (int i = 0; i < out.size(); ++i)
        out.value(i) = (f.value(i + 1) + f.value(i)) / 2;
    return out;
}

GridFunction avg_circ(const GridFunction& f)
{
    if (f.set().kind() != SetKind::TCirc)
        throw std::domain_error(std::string("avg_circ: expects a function on T_circ, got ") +
                                set_name(f.set().kind()));
    if (f.set().grid().n_intervals() < 2)
        throw std::domain_error("avg_circ: needs at least two steps");
    GridFunction out(NodeSet(SetKind::TPm, f.set().grid()), f.dim());
    for (int i = 0; i < out.size(); ++i) {
        const int center = 2 * (i + 1);
        out.value(i) = (f.value(center + 1) + f.value(center - 1)) / 2;
    }
    return out;
}

Vec integral_lambda(const GridFunction& f, double lambda, int i, int j)
{
    if (!(lambda >= 0.0 && lambda < 1.0))
        throw std::domain_error("integral_lambda: lambda must lie in [0, 1), got " +
                                std::to_string(lambda));
    const SetKind kind = f.set().kind();
    if (kind != SetKind::T && kind != SetKind::TPlus && kind != SetKind::THalf)
        throw std::domain_error(
            std::string("integral_lambda: needs one sample per step (T, T_plus or T_half), got ") +
            set_name(kind));
    const int n = f.set().grid().n_intervals();
    for (int bound : {i, j})
        if (bound < 0 || bound > n)
            throw std::domain_error("integral_lambda: bound " + std::to_string(bound) +
                                    " outside the T index range [0, " + std::to_string(n) + "]");

    const double sign = j >= i ? 1.0 : -1.0;
    const int lo = std::min(i, j);
    const int hi = std::max(i, j);
    const double h = f.set().grid().step();
    Vec acc = Vec::Zero(f.dim());
    for (int k = lo; k < hi; ++k)
        acc += f.value(k);
    return sign * h * acc;
}

Vec integral_midpoint(const GridFunction& f, int i, int j)
{
    if (f.set().kind() != SetKind::THalf)
        throw std::domain_error(
            std::string("integral_midpoint: expects a function on T_half, got ") +
            set_name(f.set().kind()));
    return integral_lambda(f, 0.5, i, j);
}

} // namespace mvi
