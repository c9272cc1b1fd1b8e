#include "qcahaz/layout.hpp"

#include <array>

namespace qcahaz
{

namespace
{

struct demo_info
{
    demo_layout      which;
    std::string_view name;
    std::string_view function;
};

constexpr std::array<demo_info, 7> demos{{
    {demo_layout::with_hazard, "fig12_with_hazard", "AB' + BC'"},
    {demo_layout::hazard_free, "fig13_hazard_free", "AB' + BC' + AC'"},
    {demo_layout::wire, "wire", "A"},
    {demo_layout::inverter, "inverter", "A'"},
    {demo_layout::majority, "majority", "AB + BC + AC"},
    {demo_layout::and_gate, "and_gate", "AB"},
    {demo_layout::or_gate, "or_gate", "A + B"},
}};

const demo_info& info(demo_layout which)
{
    for (const auto& d : demos)
    {
        if (d.which == which)
        {
            return d;
        }
    }
    throw std::invalid_argument("unknown demo layout");
}

qca_cell at(const geometry& g, long x, long y, int zone, cell_role r = role::normal{})
{
    return {{static_cast<double>(x) * g.pitch, static_cast<double>(y) * g.pitch},
            cell_rotation::standard_90,
            zone,
            std::move(r)};
}

void append(std::vector<qca_cell>& to, const std::vector<qca_cell>& cells)
{
    to.insert(to.end(), cells.begin(), cells.end());
}

// Gate at (3, 3) in zone 1 fed from the west, north and (optionally) south by zone 0 lanes.
qca_layout gate_demo(const geometry& g, std::optional<double> fixed_south)
{
    qca_layout out;
    auto&      cells = out.cells;
    cells.push_back(at(g, 0, 3, 0, role::input{"A"}));
    cells.push_back(at(g, 1, 3, 0));
    cells.push_back(at(g, 3, 0, 0, role::input{"B"}));
    cells.push_back(at(g, 3, 1, 0));
    if (!fixed_south)
    {
        cells.push_back(at(g, 3, 6, 0, role::input{"C"}));
        cells.push_back(at(g, 3, 5, 0));
    }
    auto gate = place_majority({3 * g.pitch, 3 * g.pitch}, 1, g);
    if (fixed_south)
    {
        gate[2].role = role::fixed{*fixed_south};
    }
    append(cells, gate);
    cells.push_back(at(g, 5, 3, 1, role::output{"f"}));
    return out;
}

}  // namespace

std::optional<demo_layout> demo_from_name(std::string_view name) noexcept
{
    for (const auto& d : demos)
    {
        if (d.name == name)
        {
            return d.which;
        }
    }
    return std::nullopt;
}

std::string_view demo_name(demo_layout which) noexcept
{
    for (const auto& d : demos)
    {
        if (d.which == which)
        {
            return d.name;
        }
    }
    return {};
}

std::string_view demo_function(demo_layout which) noexcept
{
    for (const auto& d : demos)
    {
        if (d.which == which)
        {
            return d.function;
        }
    }
    return {};
}

qca_layout builtin_demo(demo_layout which)
{
    const geometry g;
    const auto&    d = info(which);
    qca_layout     out;
    switch (which)
    {
        case demo_layout::with_hazard:
        case demo_layout::hazard_free: out = synthesize_sop(parse_expression(d.function), g); break;
        case demo_layout::wire:
            out.cells = place_wire({0, 0}, {7 * g.pitch, 0}, {{4, 0}, {4, 1}}, g);
            out.cells.front().role = role::input{"A"};
            out.cells.back().role  = role::output{"f"};
            break;
        case demo_layout::inverter:
            out.cells.push_back(at(g, 0, 0, 0, role::input{"A"}));
            out.cells.push_back(at(g, 1, 0, 0));
            append(out.cells, place_inverter({2 * g.pitch, 0}, 0, g));
            append(out.cells, place_wire({4 * g.pitch, g.pitch}, {6 * g.pitch, g.pitch}, {{3, 1}}, g));
            out.cells.back().role = role::output{"f"};
            break;
        case demo_layout::majority: out = gate_demo(g, std::nullopt); break;
        case demo_layout::and_gate: out = gate_demo(g, -1.0); break;
        case demo_layout::or_gate: out = gate_demo(g, 1.0); break;
    }
    out.name     = std::string{d.name};
    out.geometry = g;
    return out;
}

std::string demo_text(demo_layout which)
{
    return save_layout(builtin_demo(which));
}

}  // namespace qcahaz
