#pragma once

#include <functional>
#include <vector>

#include "mvi/time_grid.hpp"
#include "mvi/types.hpp"

namespace mvi {

// Samples of an R^d valued map on one node family. Value i belongs to the
// node set.time(i); the pairing never changes once constructed.
class GridFunction {
public:
    GridFunction(NodeSet set, int dim);
    GridFunction(NodeSet set, std::vector<Vec> values);

    static GridFunction sample(NodeSet set, int dim, const std::function<Vec(double)>& f);
    static GridFunction sample_scalar(NodeSet set, const std::function<double(double)>& f);

    const NodeSet& set() const { return set_; }
    int dim() const { return dim_; }
    int size() const { return static_cast<int>(values_.size()); }
    double time(int i) const { return set_.time(i); }

    const Vec& value(int i) const;
    Vec& value(int i);

private:
    void check_index(int i) const;

    NodeSet set_;
    int dim_;
    std::vector<Vec> values_;
};

double max_abs(const GridFunction& f);

// Largest |f - g| entry; the functions must live on the same set with equal dim.
double max_abs_diff(const GridFunction& f, const GridFunction& g);

} // namespace mvi
