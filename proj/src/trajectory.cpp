#include "mvi/trajectory.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mvi {

namespace {

GridFunction column(const TrajectoryRecord& record, bool momenta)
{
    if (!record.complete())
        throw std::domain_error("TrajectoryRecord: incomplete run, " +
                                std::to_string(record.rows.size()) + " rows for n = " +
                                std::to_string(record.n));
    GridFunction out(NodeSet(SetKind::T, record.grid()), record.dim);
    for (int i = 0; i <= record.n; ++i)
        out.value(i) = momenta ? record.rows[static_cast<size_t>(i)].p
                               : record.rows[static_cast<size_t>(i)].q;
    return out;
}

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, sep))
        out.push_back(item);
    if (!line.empty() && line.back() == sep)
        out.emplace_back();
    return out;
}

double parse_double(const std::string& s)
{
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str())
        throw std::domain_error("read_csv: cannot parse number '" + s + "'");
    return v;
}

} // namespace

GridFunction TrajectoryRecord::positions() const { return column(*this, false); }
GridFunction TrajectoryRecord::momenta() const { return column(*this, true); }

std::string format_g17(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv(const TrajectoryRecord& record, std::ostream& out)
{
    out << "# problem=" << record.problem << "\n";
    out << "# scheme=" << record.scheme << "\n";
    out << "# a=" << format_g17(record.a) << "\n";
    out << "# b=" << format_g17(record.b) << "\n";
    out << "# n=" << record.n << "\n";
    out << "# h=" << format_g17((record.b - record.a) / record.n) << "\n";
    out << "# dim=" << record.dim << "\n";
    out << "# total_iterations=" << record.stats.total_iterations << "\n";
    out << "# max_step_iterations=" << record.stats.max_step_iterations << "\n";
    out << "# max_residual=" << format_g17(record.stats.max_residual) << "\n";
    for (const auto& [key, value] : record.notes)
        out << "# " << key << "=" << value << "\n";

    out << "i,t";
    for (int j = 0; j < record.dim; ++j)
        out << ",q" << j;
    for (int j = 0; j < record.dim; ++j)
        out << ",p" << j;
    out << ",H\n";

    for (const TrajectoryRow& row : record.rows) {
        out << row.i << "," << format_g17(row.t);
        for (int j = 0; j < record.dim; ++j)
            out << "," << format_g17(row.q[j]);
        for (int j = 0; j < record.dim; ++j)
            out << "," << format_g17(row.p[j]);
        out << "," << format_g17(row.energy) << "\n";
    }
    if (!record.failure_note.empty())
        out << "# solver_failure=" << record.failure_note << "\n";
}

void write_csv_file(const TrajectoryRecord& record, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("write_csv_file: cannot open " + path);
    write_csv(record, out);
}

TrajectoryRecord read_csv(std::istream& in)
{
    TrajectoryRecord record;
    record.n = -1;
    bool have_header = false;
    bool have_a = false, have_b = false;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line.front() == '#') {
            std::string body = line.substr(1);
            if (!body.empty() && body.front() == ' ')
                body = body.substr(1);
            const auto eq = body.find('=');
            if (eq == std::string::npos)
                continue;
            const std::string key = body.substr(0, eq);
            const std::string value = body.substr(eq + 1);
            if (key == "problem") record.problem = value;
            else if (key == "scheme") record.scheme = value;
            else if (key == "a") { record.a = parse_double(value); have_a = true; }
            else if (key == "b") { record.b = parse_double(value); have_b = true; }
            else if (key == "n") record.n = std::stoi(value);
            else if (key == "dim") record.dim = std::stoi(value);
            else if (key == "h") continue;
            else if (key == "total_iterations") record.stats.total_iterations = std::stoll(value);
            else if (key == "max_step_iterations") record.stats.max_step_iterations = std::stoi(value);
            else if (key == "max_residual") record.stats.max_residual = parse_double(value);
            else if (key == "solver_failure") record.failure_note = value;
            else record.notes.emplace_back(key, value);
            continue;
        }
        if (!have_header) {
            const auto cols = split(line, ',');
            if (cols.size() < 4 || cols[0] != "i" || cols[1] != "t" || cols.back() != "H")
                throw std::domain_error("read_csv: unexpected header '" + line + "'");
            const int dim = static_cast<int>(cols.size() - 3) / 2;
            if (static_cast<size_t>(2 * dim + 3) != cols.size())
                throw std::domain_error("read_csv: header has an uneven q/p column split");
            record.dim = dim;
            have_header = true;
            continue;
        }
        const auto cols = split(line, ',');
        if (static_cast<int>(cols.size()) != 2 * record.dim + 3)
            throw std::domain_error("read_csv: row with " + std::to_string(cols.size()) +
                                    " fields, expected " + std::to_string(2 * record.dim + 3));
        TrajectoryRow row;
        row.i = std::stoi(cols[0]);
        row.t = parse_double(cols[1]);
        row.q = Vec(record.dim);
        row.p = Vec(record.dim);
        for (int j = 0; j < record.dim; ++j) {
            row.q[j] = parse_double(cols[static_cast<size_t>(2 + j)]);
            row.p[j] = parse_double(cols[static_cast<size_t>(2 + record.dim + j)]);
        }
        row.energy = parse_double(cols.back());
        record.rows.push_back(std::move(row));
    }
    if (!have_header)
        throw std::domain_error("read_csv: no header row found");
    if (record.rows.empty())
        throw std::domain_error("read_csv: no data rows found");
    if (!have_a)
        record.a = record.rows.front().t;
    if (!have_b)
        record.b = record.rows.back().t;
    if (record.n < 0)
        record.n = static_cast<int>(record.rows.size()) - 1;
    return record;
}

TrajectoryRecord read_csv_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("read_csv_file: cannot open " + path);
    return read_csv(in);
}

} // namespace mvi
