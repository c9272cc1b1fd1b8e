#include "qcahaz/energy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace qcahaz
{

namespace
{

void check_polarization(double p)
{
    if (p != 1.0 && p != -1.0)
    {
        throw energy_error("polarization must be +1 or -1");
    }
}

// Occupied pair for P = +1, then the P = -1 pair, as offsets from the center.
std::array<point, 4> dot_offsets(cell_rotation rotation, double dot_spacing)
{
    const double h = dot_spacing / 2.0;
    if (rotation == cell_rotation::rotated_45)
    {
        const double r = h * std::numbers::sqrt2;
        return {point{0, r}, point{0, -r}, point{r, 0}, point{-r, 0}};
    }
    return {point{h, h}, point{-h, -h}, point{-h, h}, point{h, -h}};
}

}  // namespace

cell_charge_config make_charge_config(const qca_cell& cell, double polarization, const geometry& geom)
{
    check_polarization(polarization);
    const auto off   = dot_offsets(cell.rotation, geom.dot_spacing);
    const auto first = polarization > 0 ? 0 : 2;
    const auto other = polarization > 0 ? 2 : 0;
    auto       at    = [&cell](const point& o) { return point{cell.center.x + o.x, cell.center.y + o.y}; };
    return {polarization, {at(off[first]), at(off[first + 1]), at(off[other]), at(off[other + 1])}};
}

std::array<point, 2> electron_positions(const qca_cell& cell, double polarization, const geometry& geom)
{
    return make_charge_config(cell, polarization, geom).electrons();
}

double pair_interaction(point p1, point p2, const energy_params& params)
{
    const double r_nm = std::hypot(p1.x - p2.x, p1.y - p2.y);
    if (!(r_nm > 0.0))
    {
        throw energy_error("coincident charges: interaction energy is singular");
    }
    return params.k_e2 / (params.relative_permittivity * r_nm * 1e-9);
}

double cells_interaction(const cell_charge_config& a, const cell_charge_config& b, const energy_params& params,
                         charge_model model)
{
    const std::size_t n = model == charge_model::electrons_only ? 2 : 4;
    double            e = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = 0; j < n; ++j)
        {
            double q = 1.0;
            if (model == charge_model::neutralized)
            {
                q = ((i < 2) == (j < 2)) ? 0.25 : -0.25;
            }
            e += q * pair_interaction(a.dots[i], b.dots[j], params);
        }
    }
    return e;
}

double kink_energy(const qca_cell& a, const qca_cell& b, const geometry& geom, const energy_params& params,
                   charge_model model)
{
    if (a.center == b.center)
    {
        throw energy_error("kink energy of coincident cells");
    }
    const auto a_plus = make_charge_config(a, 1.0, geom);
    return cells_interaction(a_plus, make_charge_config(b, -1.0, geom), params, model) -
           cells_interaction(a_plus, make_charge_config(b, 1.0, geom), params, model);
}

double neighborhood_energy(const qca_cell& target, double target_polarization,
                           const std::vector<cell_charge_config>& drivers, const geometry& geom,
                           const energy_params& params, charge_model model)
{
    if (drivers.empty())
    {
        throw std::invalid_argument("neighborhood energy needs at least one driver");
    }
    const auto t = make_charge_config(target, target_polarization, geom);
    double     e = 0.0;
    for (const auto& d : drivers)
    {
        e += cells_interaction(t, d, params, model);
    }
    return e;
}

output_stage_report output_stage_kink(const qca_layout& layout, std::string_view output_label,
                                      const energy_params& params, double radius)
{
    const auto out = layout.find_output(output_label);
    if (!out)
    {
        throw std::invalid_argument("no output cell labelled '" + std::string{output_label} + "'");
    }
    const auto& target = layout.cells[*out];

    output_stage_report report;
    report.output_cell = *out;
    std::vector<cell_charge_config> drivers;
    for (std::size_t i = 0; i < layout.cells.size(); ++i)
    {
        const auto& c = layout.cells[i];
        if (i != *out && std::hypot(c.center.x - target.center.x, c.center.y - target.center.y) <= radius)
        {
            report.drivers.push_back(i);
            drivers.push_back(make_charge_config(c, 1.0, layout.geometry));
        }
    }
    if (drivers.empty())
    {
        throw std::invalid_argument("output cell '" + std::string{output_label} + "' has no neighbours within " +
                                    std::to_string(radius) + " nm");
    }
    report.energy.e_opp  = neighborhood_energy(target, -1.0, drivers, layout.geometry, params);
    report.energy.e_same = neighborhood_energy(target, 1.0, drivers, layout.geometry, params);
    report.energy.e_kink = report.energy.e_opp - report.energy.e_same;
    return report;
}

stage_energy stage_energies(double pitch, double dot_spacing, const std::vector<std::pair<int, int>>& offsets,
                            const energy_params& params)
{
    geometry g;
    g.pitch       = pitch;
    g.dot_spacing = dot_spacing;
    std::vector<cell_charge_config> drivers;
    for (const auto& [dx, dy] : offsets)
    {
        qca_cell c;
        c.center = {dx * pitch, dy * pitch};
        drivers.push_back(make_charge_config(c, 1.0, g));
    }
    const qca_cell target;
    stage_energy   e;
    e.e_opp  = neighborhood_energy(target, -1.0, drivers, g, params);
    e.e_same = neighborhood_energy(target, 1.0, drivers, g, params);
    e.e_kink = e.e_opp - e.e_same;
    return e;
}

std::vector<stage_candidate> search_output_stage()
{
    const std::vector<std::pair<int, int>> ring{{-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1}};
    std::vector<stage_candidate>           out;
    for (const double pitch : {18.0, 20.0})
    {
        for (unsigned mask = 0; mask < (1u << ring.size()); ++mask)
        {
            const auto count = std::popcount(mask);
            if (count != 3 && count != 4)
            {
                continue;
            }
            stage_candidate c;
            c.pitch       = pitch;
            c.dot_spacing = 9.0;
            for (std::size_t i = 0; i < ring.size(); ++i)
            {
                if ((mask >> i) & 1u)
                {
                    c.offsets.push_back(ring[i]);
                }
            }
            c.energy = stage_energies(c.pitch, c.dot_spacing, c.offsets);
            c.error  = std::max(std::abs(c.energy.e_opp / reference_e_opp - 1.0),
                                std::abs(c.energy.e_same / reference_e_same - 1.0));
            out.push_back(std::move(c));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b)
              {
                  if (a.error != b.error)
                  {
                      return a.error < b.error;
                  }
                  if (a.pitch != b.pitch)
                  {
                      return a.pitch < b.pitch;
                  }
                  return a.offsets < b.offsets;
              });
    return out;
}

}  // namespace qcahaz
