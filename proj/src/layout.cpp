#include "qcahaz/layout.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

namespace qcahaz
{

std::optional<std::string> check_geometry(const geometry& g)
{
    if (!(g.cell_size > 0 && g.dot_diameter > 0 && g.dot_spacing > 0 && g.pitch > 0))
    {
        return "all geometry parameters must be positive";
    }
    if (!(g.dot_spacing < g.cell_size))
    {
        return "dot_spacing must be smaller than cell_size";
    }
    if (g.pitch < g.cell_size)
    {
        return "pitch must be at least cell_size";
    }
    return std::nullopt;
}

std::optional<std::size_t> qca_layout::find_input(std::string_view label) const noexcept
{
    for (std::size_t i = 0; i < cells.size(); ++i)
    {
        if (const auto* in = std::get_if<role::input>(&cells[i].role); in != nullptr && in->label == label)
        {
            return i;
        }
    }
    return std::nullopt;
}

std::optional<std::size_t> qca_layout::find_output(std::string_view label) const noexcept
{
    for (std::size_t i = 0; i < cells.size(); ++i)
    {
        if (const auto* out = std::get_if<role::output>(&cells[i].role); out != nullptr && out->label == label)
        {
            return i;
        }
    }
    return std::nullopt;
}

std::vector<std::size_t> qca_layout::input_cells() const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cells.size(); ++i)
    {
        if (cells[i].is_input())
        {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<std::size_t> qca_layout::output_cells() const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cells.size(); ++i)
    {
        if (cells[i].is_output())
        {
            out.push_back(i);
        }
    }
    return out;
}

std::string signal_of_label(std::string_view label)
{
    const auto dot = label.rfind('.');
    if (dot == std::string_view::npos || dot == 0 || dot + 1 == label.size())
    {
        return std::string{label};
    }
    const auto suffix = label.substr(dot + 1);
    unsigned   k      = 0;
    const auto [ptr, ec] = std::from_chars(suffix.data(), suffix.data() + suffix.size(), k);
    if (ec != std::errc{} || ptr != suffix.data() + suffix.size() || k == 0)
    {
        return std::string{label};
    }
    return std::string{label.substr(0, dot)};
}

std::vector<std::string> input_signals(const qca_layout& layout)
{
    std::vector<std::string> out;
    for (const auto i : layout.input_cells())
    {
        auto s = signal_of_label(std::get<role::input>(layout.cells[i].role).label);
        if (std::find(out.begin(), out.end(), s) == out.end())
        {
            out.push_back(std::move(s));
        }
    }
    return out;
}

std::vector<qca_cell> place_wire(point start, point end, const std::vector<std::pair<std::size_t, int>>& zone_schedule,
                                 const geometry& geom)
{
    const double dx = end.x - start.x;
    const double dy = end.y - start.y;
    if (std::abs(dx) > 1e-9 && std::abs(dy) > 1e-9)
    {
        throw std::invalid_argument("wire must be horizontal or vertical");
    }
    const double length = std::abs(dx) + std::abs(dy);
    const double steps  = length / geom.pitch;
    if (std::abs(steps - std::round(steps)) > 1e-6)
    {
        throw std::invalid_argument("wire length is not a multiple of the cell pitch");
    }
    const auto count = static_cast<std::size_t>(std::llround(steps)) + 1;

    std::size_t scheduled = 0;
    for (const auto& [n, zone] : zone_schedule)
    {
        scheduled += n;
    }
    if (scheduled != count)
    {
        throw std::invalid_argument("zone schedule covers " + std::to_string(scheduled) + " cells but the wire has " +
                                    std::to_string(count));
    }

    const double ux = count > 1 ? dx / static_cast<double>(count - 1) : 0.0;
    const double uy = count > 1 ? dy / static_cast<double>(count - 1) : 0.0;

    std::vector<qca_cell> cells;
    cells.reserve(count);
    for (const auto& [n, zone] : zone_schedule)
    {
        for (std::size_t k = 0; k < n; ++k)
        {
            const auto i = static_cast<double>(cells.size());
            cells.push_back({{start.x + ux * i, start.y + uy * i}, cell_rotation::standard_90, zone, role::normal{}});
        }
    }
    return cells;
}

std::vector<qca_cell> place_majority(point center, int zone, const geometry& geom)
{
    const double p    = geom.pitch;
    auto         cell = [zone](double x, double y) {
        return qca_cell{{x, y}, cell_rotation::standard_90, zone, role::normal{}};
    };
    return {cell(center.x - p, center.y), cell(center.x, center.y - p), cell(center.x, center.y + p),
            cell(center.x, center.y), cell(center.x + p, center.y)};
}

std::vector<qca_cell> place_inverter(point input_point, int zone, const geometry& geom)
{
    return {{input_point, cell_rotation::standard_90, zone, role::normal{}},
            {{input_point.x + geom.pitch, input_point.y + geom.pitch}, cell_rotation::standard_90, zone, role::normal{}}};
}

std::string_view to_string(violation::kind k) noexcept
{
    switch (k)
    {
        case violation::kind::overlap: return "overlap";
        case violation::kind::zone_range: return "zone_range";
        case violation::kind::fixed_polarization: return "fixed_polarization";
        case violation::kind::duplicate_label: return "duplicate_label";
        case violation::kind::empty_label: return "empty_label";
        case violation::kind::isolated: return "isolated";
        case violation::kind::off_grid: return "off_grid";
        case violation::kind::bad_geometry: return "bad_geometry";
    }
    return "unknown";
}

std::vector<violation> validate(const qca_layout& layout, double radius_of_effect)
{
    std::vector<violation> out;
    const auto&            cells = layout.cells;

    if (const auto problem = check_geometry(layout.geometry))
    {
        out.push_back({violation::kind::bad_geometry, {}, *problem});
        return out;
    }

    const double pitch = layout.geometry.pitch;
    auto         key   = [pitch](const point& p)
    { return std::pair{std::llround(p.x / pitch * 1000.0), std::llround(p.y / pitch * 1000.0)}; };

    std::map<std::pair<long long, long long>, std::size_t> seen;
    for (std::size_t i = 0; i < cells.size(); ++i)
    {
        const auto& c = cells[i];
        if (const auto [it, inserted] = seen.emplace(key(c.center), i); !inserted)
        {
            out.push_back({violation::kind::overlap,
                           {it->second, i},
                           "cells " + std::to_string(it->second) + " and " + std::to_string(i) + " share a center"});
        }
        if (c.zone < 0 || c.zone > 3)
        {
            out.push_back({violation::kind::zone_range,
                           {i},
                           "cell " + std::to_string(i) + " has clock zone " + std::to_string(c.zone)});
        }
        if (const auto* f = std::get_if<role::fixed>(&c.role); f != nullptr && std::abs(f->polarization) != 1.0)
        {
            out.push_back({violation::kind::fixed_polarization,
                           {i},
                           "fixed cell " + std::to_string(i) + " must have polarization +1 or -1"});
        }
        const double gx = c.center.x / pitch;
        const double gy = c.center.y / pitch;
        if (std::abs(gx - std::round(gx)) > 1e-6 || std::abs(gy - std::round(gy)) > 1e-6)
        {
            out.push_back({violation::kind::off_grid, {i}, "cell " + std::to_string(i) + " is not on the pitch grid"});
        }
    }

    auto check_labels = [&out, &cells](auto tag, std::string_view what)
    {
        using role_type = decltype(tag);
        std::map<std::string, std::size_t> labels;
        for (std::size_t i = 0; i < cells.size(); ++i)
        {
            const auto* r = std::get_if<role_type>(&cells[i].role);
            if (r == nullptr)
            {
                continue;
            }
            if (r->label.empty())
            {
                out.push_back({violation::kind::empty_label, {i}, std::string{what} + " cell " + std::to_string(i) +
                                                                      " has an empty label"});
            }
            else if (const auto [it, inserted] = labels.emplace(r->label, i); !inserted)
            {
                out.push_back({violation::kind::duplicate_label,
                               {it->second, i},
                               std::string{what} + " label '" + r->label + "' is used more than once"});
            }
        }
    };
    check_labels(role::input{}, "input");
    check_labels(role::output{}, "output");

    for (std::size_t i = 0; i < cells.size(); ++i)
    {
        if (cells[i].is_fixed())
        {
            continue;
        }
        bool connected = false;
        for (std::size_t j = 0; j < cells.size() && !connected; ++j)
        {
            if (j != i)
            {
                connected = std::hypot(cells[i].center.x - cells[j].center.x,
                                       cells[i].center.y - cells[j].center.y) <= radius_of_effect;
            }
        }
        if (!connected)
        {
            out.push_back({violation::kind::isolated,
                           {i},
                           "cell " + std::to_string(i) + " has no neighbour within the radius of effect"});
        }
    }
    return out;
}

}  // namespace qcahaz
