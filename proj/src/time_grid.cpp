#include "mvi/time_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace mvi {

TimeGrid::TimeGrid(double a, double b, int n_intervals)
    : a_(a), b_(b), n_(n_intervals), h_((b - a) / n_intervals)
{
    if (!std::isfinite(a) || !std::isfinite(b))
        throw std::domain_error("TimeGrid: endpoints must be finite");
    if (!(b > a))
        throw std::domain_error("TimeGrid: requires b > a");
    if (n_intervals < 1)
        throw std::domain_error("TimeGrid: requires at least one interval, got " +
                                std::to_string(n_intervals));
}

double TimeGrid::node(int i) const
{
    if (i < 0 || i > n_)
        throw std::domain_error("TimeGrid: node index " + std::to_string(i) +
                                " out of range [0, " + std::to_string(n_) + "]");
    return a_ + i * h_;
}

double TimeGrid::half_node(int i) const
{
    if (i < 0 || i >= n_)
        throw std::domain_error("TimeGrid: half node index " + std::to_string(i) +
                                " out of range [0, " + std::to_string(n_ - 1) + "]");
    return ((a_ + i * h_) + (a_ + (i + 1) * h_)) / 2;
}

double TimeGrid::circ_node(int k) const
{
    if (k < 0 || k > 2 * n_)
        throw std::domain_error("TimeGrid: circ node index " + std::to_string(k) +
                                " out of range [0, " + std::to_string(2 * n_) + "]");
    return k % 2 == 0 ? node(k / 2) : half_node((k - 1) / 2);
}

bool TimeGrid::operator==(const TimeGrid& other) const
{
    return a_ == other.a_ && b_ == other.b_ && n_ == other.n_;
}

const char* set_name(SetKind kind)
{
    switch (kind) {
        case SetKind::T: return "T";
        case SetKind::TPlus: return "T_plus";
        case SetKind::TMinus: return "T_minus";
        case SetKind::TPm: return "T_pm";
        case SetKind::THalf: return "T_half";
        case SetKind::THalfPlus: return "T_half_plus";
        case SetKind::THalfMinus: return "T_half_minus";
        case SetKind::THalfPm: return "T_half_pm";
        case SetKind::TCirc: return "T_circ";
        case SetKind::TCircPlus: return "T_circ_plus";
        case SetKind::TCircMinus: return "T_circ_minus";
    }
    return "?";
}

NodeSet::NodeSet(SetKind kind, const TimeGrid& grid) : kind_(kind), grid_(grid) {}

int NodeSet::size() const
{
    const int n = grid_.n_intervals();
    switch (kind_) {
        case SetKind::T: return n + 1;
        case SetKind::TPlus: return n;
        case SetKind::TMinus: return n;
        case SetKind::TPm: return n - 1;
        case SetKind::THalf: return n;
        case SetKind::THalfPlus: return n - 1;
        case SetKind::THalfMinus: return n - 1;
        case SetKind::THalfPm: return n >= 2 ? n - 2 : 0;
        case SetKind::TCirc: return 2 * n + 1;
        case SetKind::TCircPlus: return 2 * n;
        case SetKind::TCircMinus: return 2 * n;
    }
    return 0;
}

double NodeSet::time(int i) const
{
    if (i < 0 || i >= size())
        throw std::domain_error(std::string("NodeSet: index ") + std::to_string(i) +
                                " out of range for " + set_name(kind_) + " (size " +
                                std::to_string(size()) + ")");
    switch (kind_) {
        case SetKind::T: return grid_.node(i);
        case SetKind::TPlus: return grid_.node(i);
        case SetKind::TMinus: return grid_.node(i + 1);
        case SetKind::TPm: return grid_.node(i + 1);
        case SetKind::THalf: return grid_.half_node(i);
        case SetKind::THalfPlus: return grid_.half_node(i);
        case SetKind::THalfMinus: return grid_.half_node(i + 1);
        case SetKind::THalfPm: return grid_.half_node(i + 1);
        case SetKind::TCirc: return grid_.circ_node(i);
        case SetKind::TCircPlus: return grid_.circ_node(i);
        case SetKind::TCircMinus: return grid_.circ_node(i + 1);
    }
    return 0;
}

double NodeSet::spacing() const
{
    switch (kind_) {
        case SetKind::TCirc:
        case SetKind::TCircPlus:
        case SetKind::TCircMinus:
            return grid_.step() / 2;
        default:
            return grid_.step();
    }
}

bool NodeSet::operator==(const NodeSet& other) const
{
    return kind_ == other.kind_ && grid_ == other.grid_;
}

int sigma(const NodeSet& set, int i)
{
    if (i < 0 || i >= set.size())
        throw std::domain_error(std::string("sigma: index ") + std::to_string(i) +
                                " out of range for " + set_name(set.kind()));
    if (i + 1 >= set.size())
        throw std::domain_error(std::string("sigma: no successor of the last node of ") +
                                set_name(set.kind()));
    return i + 1;
}

int rho(const NodeSet& set, int i)
{
    if (i < 0 || i >= set.size())
        throw std::domain_error(std::string("rho: index ") + std::to_string(i) +
                                " out of range for " + set_name(set.kind()));
    if (i == 0)
        throw std::domain_error(std::string("rho: no predecessor of the first node of ") +
                                set_name(set.kind()));
    return i - 1;
}

int project_half(const NodeSet& t_plus, int i)
{
    if (t_plus.kind() != SetKind::TPlus)
        throw std::domain_error(std::string("project_half: expects an index into T_plus, got ") +
                                set_name(t_plus.kind()));
    if (i < 0 || i >= t_plus.size())
        throw std::domain_error("project_half: index " + std::to_string(i) +
                                " out of range for T_plus (size " +
                                std::to_string(t_plus.size()) + ")");
    return i;
}

} // namespace mvi
