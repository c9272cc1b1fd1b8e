#ifndef QCAHAZ_ENERGY_HPP
#define QCAHAZ_ENERGY_HPP

#include "qcahaz/layout.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

namespace qcahaz
{

/// k e^2 in J m.
inline constexpr double coulomb_k_e2 = 23.04e-29;

struct energy_params
{
    double k_e2{coulomb_k_e2};
    double relative_permittivity{1.0};
};

/**
 * electrons_only sums the two mobile electrons of each cell. neutralized puts +1/2 on occupied and -1/2 on empty dots,
 * the usual way of cancelling the fixed background charge; its pair energies are symmetric under a global flip of all
 * polarizations.
 */
enum class charge_model : std::uint8_t
{
    electrons_only,
    neutralized
};

/// Raised for coincident charges and non-unit polarizations.
class energy_error : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/**
 * Electron sites of a cell. Dots sit at (+-s/2, +-s/2) around the center, s = dot_spacing; P = +1 occupies
 * (+s/2, +s/2) and (-s/2, -s/2), P = -1 the other diagonal. Rotated cells use the same sites turned by 45 degrees.
 */
std::array<point, 2> electron_positions(const qca_cell& cell, double polarization, const geometry& geom);

struct cell_charge_config
{
    double polarization{1.0};
    /// Occupied sites first, then the two empty ones.
    std::array<point, 4> dots;

    [[nodiscard]] std::array<point, 2> electrons() const noexcept
    {
        return {dots[0], dots[1]};
    }
};

cell_charge_config make_charge_config(const qca_cell& cell, double polarization, const geometry& geom);

/// k e^2 / (eps_r r) with r given in nm.
double pair_interaction(point p1, point p2, const energy_params& params);

double cells_interaction(const cell_charge_config& a, const cell_charge_config& b, const energy_params& params,
                         charge_model model = charge_model::electrons_only);

/// E(opposite polarizations) - E(equal polarizations), both evaluated with cell `a` at P = +1.
double kink_energy(const qca_cell& a, const qca_cell& b, const geometry& geom, const energy_params& params,
                   charge_model model = charge_model::electrons_only);

double neighborhood_energy(const qca_cell& target, double target_polarization,
                           const std::vector<cell_charge_config>& drivers, const geometry& geom,
                           const energy_params& params, charge_model model = charge_model::electrons_only);

struct stage_energy
{
    double e_opp{};
    double e_same{};
    double e_kink{};
};

struct output_stage_report
{
    std::size_t              output_cell{};
    std::vector<std::size_t> drivers;
    stage_energy             energy;
};

/**
 * Every cell within `radius` of the output cell drives it with P = +1; E_opp puts the output at -1, E_same at +1.
 * Throws std::invalid_argument for an unknown label or an output without neighbours.
 */
output_stage_report output_stage_kink(const qca_layout& layout, std::string_view output_label,
                                      const energy_params& params = {},
                                      double radius = default_radius_of_effect);

// output stage reconstruction -----------------------------------------------------------------------------------------

/// Reference output-stage energies in J.
inline constexpr double reference_e_opp  = 29.211e-20;
inline constexpr double reference_e_same = 19.497e-20;
inline constexpr double reference_e_kink = 9.714e-20;

struct stage_candidate
{
    double pitch{};
    double dot_spacing{};
    /// Grid offsets of the drivers around the target cell at (0, 0).
    std::vector<std::pair<int, int>> offsets;
    stage_energy                     energy;
    /// max(|E_opp / ref - 1|, |E_same / ref - 1|)
    double error{};
};

/**
 * Enumerates every 3- and 4-driver subset of the 8 grid neighbours of a target cell, for pitch 18 and 20 nm and dot
 * spacing 9 nm, all drivers at P = +1, electrons only and eps_r = 1. Sorted by error, then pitch, then offsets.
 */
std::vector<stage_candidate> search_output_stage();

/// Energies of a target at the origin driven by P = +1 cells at the given grid offsets.
stage_energy stage_energies(double pitch, double dot_spacing, const std::vector<std::pair<int, int>>& offsets,
                            const energy_params& params = {});

}  // namespace qcahaz

#endif  // QCAHAZ_ENERGY_HPP
