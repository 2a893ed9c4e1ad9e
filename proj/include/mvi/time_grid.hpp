#pragma once

#include <string>

namespace mvi {

// Uniform partition of [a, b] into n steps of width h = (b - a)/n.
// Every node value is recomputed from (a, h, index); nothing is accumulated,
// so the same index always yields the same double.
class TimeGrid {
public:
    TimeGrid(double a, double b, int n_intervals);

    double a() const { return a_; }
    double b() const { return b_; }
    int n_intervals() const { return n_; }
    double step() const { return h_; }

    // t_i = a + i h for 0 <= i <= n
    double node(int i) const;

    // t_{i+1/2} = (t_i + t_{i+1})/2 for 0 <= i <= n-1
    double half_node(int i) const;

    // Doubled grid at spacing h/2: even positions are T nodes, odd positions
    // are the half nodes in between, computed by the same expressions.
    double circ_node(int k) const;

    bool operator==(const TimeGrid& other) const;

private:
    double a_;
    double b_;
    int n_;
    double h_;
};

// Node families over one grid. The base families are T (the nodes), T_half
// (the mid-interval points) and T_circ (both interleaved). A "plus" suffix
// drops the last node, "minus" drops the first, "pm" drops both.
enum class SetKind {
    T,
    TPlus,
    TMinus,
    TPm,
    THalf,
    THalfPlus,
    THalfMinus,
    THalfPm,
    TCirc,
    TCircPlus,
    TCircMinus,
};

const char* set_name(SetKind kind);

class NodeSet {
public:
    NodeSet(SetKind kind, const TimeGrid& grid);

    SetKind kind() const { return kind_; }
    const TimeGrid& grid() const { return grid_; }

    int size() const;

    // Value of the i-th node of this family; throws std::domain_error when i
    // is outside [0, size).
    double time(int i) const;

    // Distance between consecutive nodes: h/2 on the circ families, h elsewhere.
    double spacing() const;

    bool operator==(const NodeSet& other) const;

private:
    SetKind kind_;
    TimeGrid grid_;
};

// Index of the node one step forward (sigma) or backward (rho) within the same
// family; stepping past either end throws std::domain_error.
int sigma(const NodeSet& set, int i);
int rho(const NodeSet& set, int i);

// Half node of the step starting at t_i; takes an index into T_plus.
int project_half(const NodeSet& t_plus, int i);

} // namespace mvi
