#include "qcahaz/bistable.hpp"

#include "qcahaz/energy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <numbers>

namespace qcahaz
{

std::optional<std::string> check_params(const sim_params& p, std::size_t input_count)
{
    if (!(p.clock_low < p.clock_high) || !(p.clock_low > 0))
    {
        return "clock_low must be positive and below clock_high";
    }
    if (!(p.convergence_tolerance > 0))
    {
        return "convergence tolerance must be positive";
    }
    if (!(p.radius_of_effect > 0) || !(p.relative_permittivity > 0))
    {
        return "radius of effect and relative permittivity must be positive";
    }
    if (p.max_iterations_per_sample == 0 || p.clock_periods_per_input == 0)
    {
        return "iteration cap and clock periods per input must be at least 1";
    }
    if (input_count > 16)
    {
        return "at most 16 inputs are supported";
    }
    if (p.samples < (std::size_t{4} << input_count))
    {
        return "need at least " + std::to_string(std::size_t{4} << input_count) + " samples for " +
               std::to_string(input_count) + " inputs";
    }
    return std::nullopt;
}

neighbor_graph build_neighbor_graph(const qca_layout& layout, const sim_params& params)
{
    const auto&         cells = layout.cells;
    const energy_params ep{coulomb_k_e2, params.relative_permittivity};
    neighbor_graph      g;
    g.edges.resize(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i)
    {
        for (std::size_t j = i + 1; j < cells.size(); ++j)
        {
            const double r = std::hypot(cells[i].center.x - cells[j].center.x, cells[i].center.y - cells[j].center.y);
            if (r <= params.radius_of_effect)
            {
                const double e = kink_energy(cells[i], cells[j], layout.geometry, ep, charge_model::neutralized);
                g.edges[i].emplace_back(j, e);
                g.edges[j].emplace_back(i, e);
            }
        }
    }
    for (auto& row : g.edges)
    {
        std::sort(row.begin(), row.end());
    }
    return g;
}

double clock_period(const sim_params& params, std::size_t input_count, unsigned periods_per_input)
{
    return static_cast<double>(params.samples) /
           (static_cast<double>(std::size_t{1} << input_count) * static_cast<double>(periods_per_input));
}

double clock_value(int zone, double sample, const sim_params& params, double period)
{
    const double hi = params.clock_high;
    const double lo = params.clock_low;
    const double phase =
        2.0 * std::numbers::pi * sample / period - static_cast<double>(zone) * std::numbers::pi / 2.0;
    const double g = params.clock_amplitude_factor * (hi - lo) * std::cos(phase) + (hi + lo) / 2.0 + params.clock_shift;
    return std::clamp(g, lo, hi);
}

std::vector<double> drive_inputs(std::size_t input_count, std::size_t sample, const sim_params& params)
{
    const std::size_t combo = sample * (std::size_t{1} << input_count) / params.samples;
    std::vector<double> out(input_count);
    for (std::size_t i = 0; i < input_count; ++i)
    {
        out[i] = ((combo >> (input_count - 1 - i)) & 1u) != 0 ? 1.0 : -1.0;
    }
    return out;
}

relax_result relax_sample(const neighbor_graph& graph, const std::vector<int>& zones, const std::vector<bool>& frozen,
                          const std::array<double, 4>& clocks, const sim_params& params,
                          std::vector<double>& polarization)
{
    relax_result r;
    while (r.iterations < params.max_iterations_per_sample)
    {
        ++r.iterations;
        double max_delta = 0.0;
        for (std::size_t i = 0; i < polarization.size(); ++i)
        {
            if (frozen[i])
            {
                continue;
            }
            double field = 0.0;
            for (const auto& [j, e] : graph.edges[i])
            {
                field += e * polarization[j];
            }
            const double x = field / (2.0 * clocks[static_cast<std::size_t>(zones[i])]);
            const double p = x / std::sqrt(1.0 + x * x);
            max_delta      = std::max(max_delta, std::abs(p - polarization[i]));
            polarization[i] = p;
        }
        if (max_delta < params.convergence_tolerance)
        {
            r.converged = true;
            break;
        }
    }
    return r;
}

std::size_t output_depth(const qca_layout& layout, std::size_t output_cell)
{
    const auto&  cells = layout.cells;
    const double reach = 1.5 * layout.geometry.pitch;
    constexpr auto unreached = std::numeric_limits<std::size_t>::max();

    std::vector<std::vector<std::size_t>> adj(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i)
    {
        for (std::size_t j = 0; j < cells.size(); ++j)
        {
            if (i != j && !cells[j].is_fixed() &&
                std::hypot(cells[i].center.x - cells[j].center.x, cells[i].center.y - cells[j].center.y) <= reach)
            {
                adj[i].push_back(j);
            }
        }
    }

    std::size_t depth = unreached;
    for (const auto src : layout.input_cells())
    {
        std::vector<std::size_t> dist(cells.size(), unreached);
        std::deque<std::size_t>  queue{src};
        dist[src] = static_cast<std::size_t>(cells[src].zone);
        while (!queue.empty())
        {
            const auto u = queue.front();
            queue.pop_front();
            for (const auto v : adj[u])
            {
                std::size_t cost = 0;
                if (cells[v].zone == (cells[u].zone + 1) % 4)
                {
                    cost = 1;
                }
                else if (cells[v].zone != cells[u].zone)
                {
                    continue;
                }
                if (dist[u] + cost < dist[v])
                {
                    dist[v] = dist[u] + cost;
                    if (cost == 0)
                    {
                        queue.push_front(v);
                    }
                    else
                    {
                        queue.push_back(v);
                    }
                }
            }
        }
        if (dist[output_cell] != unreached)
        {
            depth = depth == unreached ? dist[output_cell] : std::max(depth, dist[output_cell]);
        }
    }
    return depth == unreached ? static_cast<std::size_t>(cells[output_cell].zone) : depth;
}

trace run(const qca_layout& layout, const sim_params& params)
{
    if (const auto problems = validate(layout, params.radius_of_effect); !problems.empty())
    {
        throw std::invalid_argument("invalid layout: " + problems.front().message);
    }
    const auto signals = input_signals(layout);
    const auto n       = signals.size();
    if (const auto problem = check_params(params, n))
    {
        throw std::invalid_argument("invalid simulation parameters: " + *problem);
    }
    const auto& cells = layout.cells;

    trace t;
    t.input_signals = signals;
    t.samples       = params.samples;

    unsigned periods = params.clock_periods_per_input;
    for (const auto o : layout.output_cells())
    {
        const auto d = output_depth(layout, o);
        t.output_depths.emplace_back(o, d);
        periods = std::max(periods, static_cast<unsigned>((d + 2) / 4 + 1));
    }
    t.periods_per_input = periods;
    t.period            = clock_period(params, n, periods);

    std::vector<int>    zones(cells.size());
    std::vector<bool>   frozen(cells.size(), false);
    std::vector<double> pol(cells.size(), 0.0);
    // input cell -> signal index
    std::vector<std::optional<std::size_t>> signal_of(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i)
    {
        zones[i] = cells[i].zone;
        if (const auto* f = std::get_if<role::fixed>(&cells[i].role))
        {
            frozen[i] = true;
            pol[i]    = f->polarization;
        }
        else if (const auto* in = std::get_if<role::input>(&cells[i].role))
        {
            frozen[i] = true;
            const auto s = signal_of_label(in->label);
            signal_of[i] = static_cast<std::size_t>(std::find(signals.begin(), signals.end(), s) - signals.begin());
        }
    }

    for (std::size_t i = 0; i < cells.size(); ++i)
    {
        if (params.trace_all)
        {
            t.cells.push_back(i);
            t.labels.push_back("cell_" + std::to_string(i));
        }
        else if (const auto* in = std::get_if<role::input>(&cells[i].role))
        {
            t.cells.push_back(i);
            t.labels.push_back(in->label);
        }
        else if (const auto* out = std::get_if<role::output>(&cells[i].role))
        {
            t.cells.push_back(i);
            t.labels.push_back(out->label);
        }
    }

    const auto graph = build_neighbor_graph(layout, params);
    t.clocks.reserve(params.samples);
    t.polarization.reserve(params.samples);
    t.iterations.reserve(params.samples);
    for (std::size_t s = 0; s < params.samples; ++s)
    {
        const auto drive = drive_inputs(n, s, params);
        for (std::size_t i = 0; i < cells.size(); ++i)
        {
            if (signal_of[i])
            {
                pol[i] = drive[*signal_of[i]];
            }
        }
        std::array<double, 4> clocks{};
        for (int z = 0; z < 4; ++z)
        {
            clocks[static_cast<std::size_t>(z)] = clock_value(z, static_cast<double>(s), params, t.period);
        }
        const auto r = relax_sample(graph, zones, frozen, clocks, params, pol);
        t.iterations.push_back(r.iterations);
        if (!r.converged)
        {
            ++t.non_converged;
        }
        t.clocks.push_back(clocks);
        std::vector<double> row;
        row.reserve(t.cells.size());
        for (const auto c : t.cells)
        {
            row.push_back(pol[c]);
        }
        t.polarization.push_back(std::move(row));
    }
    return t;
}

std::vector<truth_row> extract_truth_table(const trace& t)
{
    const auto        n       = t.input_signals.size();
    const std::size_t windows = std::size_t{1} << n;
    const double      w_len   = static_cast<double>(t.samples) / static_cast<double>(windows);

    std::vector<truth_row> rows;
    for (std::size_t w = 0; w < windows; ++w)
    {
        truth_row row;
        std::vector<bool> bits(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            bits[i] = ((w >> (n - 1 - i)) & 1u) != 0;
        }
        row.inputs = assignment{bits};

        const double start = static_cast<double>(w) * w_len;
        const double end   = static_cast<double>(w + 1) * w_len;
        for (const auto& [cell, depth] : t.output_depths)
        {
            const double offset = t.period / 2.0 + static_cast<double>(depth % 4) * t.period / 4.0;
            const double first  = start + offset + static_cast<double>(depth / 4) * t.period;
            const double k      = std::floor((end - 1.0 - (start + offset)) / t.period);
            double       at     = start + offset + k * t.period;
            if (at < first)
            {
                at = first;
            }
            const auto sample =
                std::min(static_cast<std::size_t>(std::llround(at)), t.samples == 0 ? 0 : t.samples - 1);
            const auto column =
                static_cast<std::size_t>(std::find(t.cells.begin(), t.cells.end(), cell) - t.cells.begin());
            const double p = t.polarization[sample][column];
            row.outputs.push_back(p > 0);
            row.polarization.push_back(p);
            row.weak.push_back(std::abs(p) < 0.5);
            row.sample = sample;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_trace_csv(std::ostream& os, const trace& t)
{
    os << "sample,clock0,clock1,clock2,clock3";
    for (const auto& l : t.labels)
    {
        os << ',' << l;
    }
    os << '\n';
    char buf[32];
    for (std::size_t s = 0; s < t.polarization.size(); ++s)
    {
        os << s;
        for (const auto c : t.clocks[s])
        {
            std::snprintf(buf, sizeof buf, ",%.5e", c);
            os << buf;
        }
        for (const auto p : t.polarization[s])
        {
            std::snprintf(buf, sizeof buf, ",%.5e", p);
            os << buf;
        }
        os << '\n';
    }
}

}  // namespace qcahaz
