#ifndef QCAHAZ_LAYOUT_HPP
#define QCAHAZ_LAYOUT_HPP

#include "qcahaz/boolean.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace qcahaz
{

/// Cell and dot dimensions in nm.
struct geometry
{
    double cell_size{18.0};
    double dot_diameter{5.0};
    /// Center-to-center distance of adjacent dots inside one cell.
    double dot_spacing{9.0};
    /// Center-to-center distance of adjacent cells.
    double pitch{20.0};

    bool operator==(const geometry&) const = default;
};

/// Empty when the geometry is consistent; otherwise a description of the first problem.
std::optional<std::string> check_geometry(const geometry& g);

/// Layout coordinates in nm. y grows southwards: "north" is the smaller y.
struct point
{
    double x{};
    double y{};

    bool operator==(const point&) const = default;
};

enum class cell_rotation : std::uint8_t
{
    standard_90,
    rotated_45
};

namespace role
{
struct normal
{
    bool operator==(const normal&) const = default;
};
struct fixed
{
    double polarization{1.0};
    bool   operator==(const fixed&) const = default;
};
struct input
{
    std::string label;
    bool        operator==(const input&) const = default;
};
struct output
{
    std::string label;
    bool        operator==(const output&) const = default;
};
}  // namespace role

using cell_role = std::variant<role::normal, role::fixed, role::input, role::output>;

struct qca_cell
{
    point         center;
    cell_rotation rotation{cell_rotation::standard_90};
    int           zone{0};
    cell_role     role{role::normal{}};

    [[nodiscard]] bool is_fixed() const noexcept
    {
        return std::holds_alternative<role::fixed>(role);
    }
    [[nodiscard]] bool is_input() const noexcept
    {
        return std::holds_alternative<role::input>(role);
    }
    [[nodiscard]] bool is_output() const noexcept
    {
        return std::holds_alternative<role::output>(role);
    }

    bool operator==(const qca_cell&) const = default;
};

struct qca_layout
{
    std::string           name;
    qcahaz::geometry      geometry;
    std::vector<qca_cell> cells;

    [[nodiscard]] std::optional<std::size_t> find_input(std::string_view label) const noexcept;
    [[nodiscard]] std::optional<std::size_t> find_output(std::string_view label) const noexcept;
    /// Indices of input / output cells in declaration order.
    [[nodiscard]] std::vector<std::size_t> input_cells() const;
    [[nodiscard]] std::vector<std::size_t> output_cells() const;

    bool operator==(const qca_layout&) const = default;
};

/**
 * Input labels of the form `NAME.k` (k a positive integer) are replicas of the signal `NAME`: they receive the same
 * stimulus. Returns `NAME`.
 */
std::string signal_of_label(std::string_view label);

/// Distinct input signals in order of first appearance among the input cells.
std::vector<std::string> input_signals(const qca_layout& layout);

// primitives --------------------------------------------------------------------------------------------------------

/// Axis-aligned run of standard cells at pitch spacing; `zone_schedule` lists (cell count, zone) segments in order.
std::vector<qca_cell> place_wire(point start, point end, const std::vector<std::pair<std::size_t, int>>& zone_schedule,
                                 const geometry& geom = {});

/// Plus-shaped majority gate: west, north and south input ports, device cell, east output port (in that order).
std::vector<qca_cell> place_majority(point center, int zone, const geometry& geom = {});

/**
 * Corner-coupled inverter: the input cell at `input_point` and the output cell one pitch east and one pitch south of
 * it. The two cells touch only corner to corner, which is what flips the polarization.
 */
std::vector<qca_cell> place_inverter(point input_point, int zone, const geometry& geom = {});

// validation --------------------------------------------------------------------------------------------------------

struct violation
{
    enum class kind : std::uint8_t
    {
        overlap,
        zone_range,
        fixed_polarization,
        duplicate_label,
        empty_label,
        isolated,
        off_grid,
        bad_geometry
    };

    kind                     what;
    std::vector<std::size_t> cells;
    std::string              message;
};

std::string_view to_string(violation::kind k) noexcept;

/// Radius of effect (nm) used for the connectivity check unless overridden.
inline constexpr double default_radius_of_effect = 65.0;

std::vector<violation> validate(const qca_layout& layout, double radius_of_effect = default_radius_of_effect);

// file format -------------------------------------------------------------------------------------------------------

class layout_parse_error : public std::runtime_error
{
  public:
    layout_parse_error(std::size_t line, const std::string& what);
    /// 1-based; 0 for whole-file problems.
    [[nodiscard]] std::size_t line() const noexcept
    {
        return line_no;
    }

  private:
    std::size_t line_no;
};

std::string save_layout(const qca_layout& layout);
qca_layout  load_layout(std::string_view text);
/// Reads only `param` lines (header optional); unspecified values keep their defaults.
geometry load_geometry(std::string_view text);

// synthesis ---------------------------------------------------------------------------------------------------------

/// Label of the output cell emitted by synthesize_sop().
inline constexpr std::string_view synthesized_output_label = "f";

/**
 * Compiles a cover into a columnar-clocked majority-gate layout. Every product term is a chain of 2-input AND
 * majorities (fixed -1 port), the terms are joined by a chain of 2-input OR majorities (fixed +1 port) and complemented
 * literals pass through corner inverters. Column band b holds logic level b and is clocked by zone b mod 4.
 * Throws std::invalid_argument for constant covers or more than 8 variables.
 */
qca_layout synthesize_sop(const cover& c, const geometry& geom = {});

/// Shipped reference layouts.
enum class demo_layout : std::uint8_t
{
    with_hazard,
    hazard_free,
    wire,
    inverter,
    majority,
    and_gate,
    or_gate
};

std::optional<demo_layout> demo_from_name(std::string_view name) noexcept;
std::string_view           demo_name(demo_layout which) noexcept;
/// The expression each demo computes, in expression syntax.
std::string_view demo_function(demo_layout which) noexcept;
/// `.qcl` text of a shipped layout.
std::string demo_text(demo_layout which);
qca_layout       builtin_demo(demo_layout which);

}  // namespace qcahaz

#endif  // QCAHAZ_LAYOUT_HPP
