#ifndef QCAHAZ_BISTABLE_HPP
#define QCAHAZ_BISTABLE_HPP

#include "qcahaz/boolean.hpp"
#include "qcahaz/layout.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace qcahaz
{

struct sim_params
{
    std::size_t samples{12800};
    double      convergence_tolerance{0.001};
    /// nm
    double radius_of_effect{65.0};
    double relative_permittivity{12.9};
    /// J
    double clock_high{9.8e-22};
    double clock_low{3.8e-23};
    double clock_amplitude_factor{2.0};
    double clock_shift{0.0};
    unsigned max_iterations_per_sample{100};
    /// nm; single-layer engine, kept for completeness.
    double layer_separation{11.5};
    /// Clock periods per input combination; raised automatically when the output is too deep to settle in time.
    unsigned clock_periods_per_input{2};
    /// Trace every cell instead of inputs and outputs only.
    bool trace_all{false};
};

/// Empty when the parameters are usable with `input_count` inputs.
std::optional<std::string> check_params(const sim_params& p, std::size_t input_count);

/// Per cell: (neighbour index, kink energy in J). Neutralized charges, eps_r from the parameters.
struct neighbor_graph
{
    std::vector<std::vector<std::pair<std::size_t, double>>> edges;
};

neighbor_graph build_neighbor_graph(const qca_layout& layout, const sim_params& params);

/// Samples per clock period: S / (2^n m).
double clock_period(const sim_params& params, std::size_t input_count, unsigned periods_per_input);

/**
 * Tunneling energy of zone z at sample s: clamp(a (high - low) cos(2 pi s / T - z pi / 2) + (high + low) / 2 + shift)
 * to [low, high]. Zone z lags zone z - 1 by T/4; a zone is held (low barrier energy) half a period after its peak.
 */
double clock_value(int zone, double sample, const sim_params& params, double period);

/// Input i (0 = most significant) carries bit n-1-i of floor(s 2^n / S); 0 maps to -1 and 1 to +1.
std::vector<double> drive_inputs(std::size_t input_count, std::size_t sample, const sim_params& params);

struct relax_result
{
    unsigned iterations{};
    bool     converged{};
};

/**
 * Gauss-Seidel sweeps over the free cells in ascending index: x = sum(E_k P_j) / (2 gamma_zone), P = x / sqrt(1 + x^2),
 * until max |dP| < tolerance or the iteration cap. `frozen` cells keep their polarization.
 */
relax_result relax_sample(const neighbor_graph& graph, const std::vector<int>& zones, const std::vector<bool>& frozen,
                          const std::array<double, 4>& clocks, const sim_params& params,
                          std::vector<double>& polarization);

/**
 * Number of clock-zone hand-offs between the inputs and the output cell: a 0-1 search over cells within 1.5 pitch of
 * each other where staying in a zone is free and moving to the next zone costs one. Starts at the input cell's zone;
 * the result is the largest over inputs that reach the output.
 */
std::size_t output_depth(const qca_layout& layout, std::size_t output_cell);

struct trace
{
    std::vector<std::string> labels;
    /// Layout index of each traced column.
    std::vector<std::size_t> cells;
    std::vector<std::string> input_signals;
    std::size_t              samples{};
    double                   period{};
    unsigned                 periods_per_input{};
    std::vector<std::array<double, 4>> clocks;
    /// [sample][traced column]
    std::vector<std::vector<double>> polarization;
    std::vector<unsigned>            iterations;
    std::size_t                      non_converged{};
    /// Output cell index -> zone depth used for read-off.
    std::vector<std::pair<std::size_t, std::size_t>> output_depths;
};

/// Throws std::invalid_argument for layouts that fail validate() or unusable parameters.
trace run(const qca_layout& layout, const sim_params& params = {});

struct truth_row
{
    /// Input values in trace input_signals order.
    assignment          inputs;
    std::vector<bool>   outputs;
    std::vector<double> polarization;
    std::vector<bool>   weak;
    std::size_t         sample{};
};

/**
 * For window w (W = S / 2^n samples) reads each output at the last sample wW + T/2 + (d mod 4) T/4 + kT inside the
 * window, d being the output's depth: the latest moment its zone is held with the window's inputs already through.
 * P > 0 reads 1; |P| < 0.5 is weak.
 */
std::vector<truth_row> extract_truth_table(const trace& t);

/// `sample,clock0..3,<labels>` with %.5e values.
void write_trace_csv(std::ostream& os, const trace& t);

}  // namespace qcahaz

#endif  // QCAHAZ_BISTABLE_HPP
