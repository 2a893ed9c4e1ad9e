#include "mvi/grid_function.hpp"

#include <stdexcept>
#include <string>

namespace mvi {

GridFunction::GridFunction(NodeSet set, int dim)
    : set_(set), dim_(dim), values_(static_cast<size_t>(set.size()), Vec::Zero(dim))
{
    if (dim < 1)
        throw std::domain_error("GridFunction: dim must be >= 1, got " + std::to_string(dim));
}

GridFunction::GridFunction(NodeSet set, std::vector<Vec> values)
    : set_(set), dim_(values.empty() ? 1 : static_cast<int>(values.front().size())),
      values_(std::move(values))
{
    if (static_cast<int>(values_.size()) != set_.size())
        throw std::domain_error(std::string("GridFunction: ") + std::to_string(values_.size()) +
                                " values for " + set_name(set_.kind()) + " with " +
                                std::to_string(set_.size()) + " nodes");
    for (const Vec& v : values_)
        if (static_cast<int>(v.size()) != dim_)
            throw std::domain_error("GridFunction: values of mixed dimension");
    if (dim_ < 1)
        throw std::domain_error("GridFunction: dim must be >= 1");
}

GridFunction GridFunction::sample(NodeSet set, int dim, const std::function<Vec(double)>& f)
{
    GridFunction out(set, dim);
    for (int i = 0; i < out.size(); ++i) {
        Vec v = f(set.time(i));
        if (static_cast<int>(v.size()) != dim)
            throw std::domain_error("GridFunction::sample: callback dimension mismatch");
        out.value(i) = std::move(v);
    }
    return out;
}

GridFunction GridFunction::sample_scalar(NodeSet set, const std::function<double(double)>& f)
{
    return sample(set, 1, [&](double t) { return Vec::Constant(1, f(t)); });
}

void GridFunction::check_index(int i) const
{
    if (i < 0 || i >= size())
        throw std::domain_error(std::string("GridFunction: index ") + std::to_string(i) +
                                " out of range for " + set_name(set_.kind()) + " (size " +
                                std::to_string(size()) + ")");
}

const Vec& GridFunction::value(int i) const
{
    check_index(i);
    return values_[static_cast<size_t>(i)];
}

Vec& GridFunction::value(int i)
{
    check_index(i);
    return values_[static_cast<size_t>(i)];
}

double max_abs(const GridFunction& f)
{
    double m = 0;
    for (int i = 0; i < f.size(); ++i)
        m = std::max(m, inf_norm(f.value(i)));
    return m;
}

double max_abs_diff(const GridFunction& f, const GridFunction& g)
{
    if (!(f.set() == g.set()) || f.dim() != g.dim())
        throw std::domain_error("max_abs_diff: functions live on different sets or dims");
    double m = 0;
    for (int i = 0; i < f.size(); ++i)
        m = std::max(m, inf_norm(f.value(i) - g.value(i)));
    return m;
}

} // namespace mvi
