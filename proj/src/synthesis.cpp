#include "qcahaz/layout.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <optional>

namespace qcahaz
{

namespace
{

struct lane
{
    std::size_t term;
    literal     lit;
};

struct pad_group
{
    std::size_t              var;
    std::size_t              depth;
    std::vector<std::size_t> lanes;
};

struct grid_pos
{
    long x;
    long y;
};

// Assigns lanes to pad groups whose row spans nest, so trunks never cross lanes of other groups.
std::vector<pad_group> group_lanes(const std::vector<lane>& lanes)
{
    std::vector<pad_group>   groups;
    std::vector<std::size_t> stack;

    auto has_future = [&lanes](std::size_t var, std::size_t from)
    {
        return std::any_of(lanes.begin() + static_cast<std::ptrdiff_t>(from), lanes.end(),
                           [var](const auto& l) { return l.lit.var == var; });
    };

    for (std::size_t l = 0; l < lanes.size(); ++l)
    {
        const auto var = lanes[l].lit.var;
        while (!stack.empty() && !has_future(groups[stack.back()].var, l))
        {
            stack.pop_back();
        }

        auto found = std::find_if(stack.rbegin(), stack.rend(), [&](auto g) { return groups[g].var == var; });
        if (found != stack.rend())
        {
            const auto pos   = static_cast<std::size_t>(stack.rend() - found) - 1;
            const bool clear = std::all_of(stack.begin() + static_cast<std::ptrdiff_t>(pos) + 1, stack.end(),
                                           [&](auto g) { return !has_future(groups[g].var, l); });
            if (clear)
            {
                stack.resize(pos + 1);
                groups[stack.back()].lanes.push_back(l);
                continue;
            }
        }
        groups.push_back({var, stack.size(), {l}});
        stack.push_back(groups.size() - 1);
    }
    return groups;
}

std::pair<std::size_t, std::size_t> grouping_cost(const std::vector<pad_group>& groups)
{
    std::size_t depth = 0;
    for (const auto& g : groups)
    {
        depth = std::max(depth, g.depth);
    }
    return {groups.size(), depth};
}

std::vector<lane> lanes_of(const std::vector<std::vector<literal>>& orders)
{
    std::vector<lane> out;
    for (std::size_t t = 0; t < orders.size(); ++t)
    {
        for (const auto& l : orders[t])
        {
            out.push_back({t, l});
        }
    }
    return out;
}

// Literal order inside each term chosen to minimise pad groups; exhaustive when the search space is small.
std::vector<lane> plan_lanes(const cover& c)
{
    std::vector<std::vector<literal>> orders;
    std::size_t                       space = 1;
    for (const auto& t : c.terms())
    {
        orders.push_back(t.literals());
        for (std::size_t k = 2; k <= orders.back().size() && space <= 40320; ++k)
        {
            space *= k;
        }
    }
    auto best      = orders;
    auto best_cost = grouping_cost(group_lanes(lanes_of(orders)));
    if (space > 40320)
    {
        return lanes_of(best);
    }

    auto by_var = [](const literal& a, const literal& b) { return a.var < b.var; };
    // odometer over per-term permutations
    for (;;)
    {
        std::size_t t = 0;
        while (t < orders.size() && !std::next_permutation(orders[t].begin(), orders[t].end(), by_var))
        {
            ++t;
        }
        if (t == orders.size())
        {
            break;
        }
        const auto cost = grouping_cost(group_lanes(lanes_of(orders)));
        if (cost < best_cost)
        {
            best_cost = cost;
            best      = orders;
        }
    }
    return lanes_of(best);
}

class grid_builder
{
  public:
    grid_builder(long band0_width, const geometry& g) : w0{band0_width}, geom{g} {}

    [[nodiscard]] long band_of(long x) const noexcept
    {
        return x < w0 ? 0 : 1 + (x - w0) / 4;
    }

    [[nodiscard]] long band_start(long b) const noexcept
    {
        return b == 0 ? 0 : w0 + 4 * (b - 1);
    }

    void add(grid_pos p, cell_role r = role::normal{}, std::optional<long> level = std::nullopt)
    {
        if (!occupied.emplace(std::pair{p.x, p.y}, cells.size()).second)
        {
            throw std::logic_error("synthesis placed two cells at (" + std::to_string(p.x) + ", " +
                                   std::to_string(p.y) + ")");
        }
        cells.push_back({{static_cast<double>(p.x) * geom.pitch, static_cast<double>(p.y) * geom.pitch},
                         cell_rotation::standard_90,
                         static_cast<int>(level.value_or(band_of(p.x)) % 4),
                         std::move(r)});
    }

    // Horizontal run on row y over columns [x0, x1]; cells at or past column `cap_from` are clocked as `cap_level`.
    void run_east(long x0, long x1, long y, long cap_from = std::numeric_limits<long>::max(), long cap_level = 0)
    {
        for (long x = x0; x <= x1; ++x)
        {
            add({x, y}, role::normal{}, x >= cap_from ? std::optional{cap_level} : std::nullopt);
        }
    }

    // Plus-shaped gate: the W and N ports are supplied by the caller's routing, S is fixed.
    grid_pos gate(grid_pos center, double fixed_polarization)
    {
        add({center.x - 1, center.y});
        add({center.x, center.y - 1});
        add({center.x, center.y + 1}, role::fixed{fixed_polarization});
        add(center);
        add({center.x + 1, center.y});
        return {center.x + 1, center.y};
    }

    /*
     * Carries the signal at `head` east along its row to column gx, then south to just above the gate's N port. The part
     * inside the gate's band keeps the previous band's zone so that only the gate itself switches in the gate's zone.
     */
    void route_to_north_port(grid_pos head, grid_pos gate_center)
    {
        const long band = band_of(gate_center.x);
        run_east(head.x + 1, gate_center.x, head.y, band_start(band), band - 1);
        for (long y = head.y + 1; y <= gate_center.y - 2; ++y)
        {
            add({gate_center.x, y}, role::normal{}, band - 1);
        }
    }

    // Carries the signal at `head` east along its row up to just before the gate's W port.
    void route_to_west_port(grid_pos head, grid_pos gate_center)
    {
        run_east(head.x + 1, gate_center.x - 2, head.y);
    }

    std::vector<qca_cell> cells;

  private:
    long                                        w0;
    geometry                                    geom;
    std::map<std::pair<long, long>, std::size_t> occupied;
};

}  // namespace

qca_layout synthesize_sop(const cover& c, const geometry& geom)
{
    if (c.is_trivially_constant() || c.terms().empty())
    {
        throw std::invalid_argument("cannot synthesize a constant function");
    }
    if (c.num_variables() > 8)
    {
        throw std::invalid_argument("synthesis supports at most 8 variables");
    }
    if (const auto problem = check_geometry(geom))
    {
        throw std::invalid_argument("invalid geometry: " + *problem);
    }

    const auto lanes  = plan_lanes(c);
    const auto groups = group_lanes(lanes);

    std::size_t max_depth = 0;
    for (const auto& g : groups)
    {
        max_depth = std::max(max_depth, g.depth);
    }
    const long   w0 = 4 * static_cast<long>(max_depth) + 3;
    grid_builder grid{w0, geom};

    auto logic_row = [](std::size_t l) { return 4 * static_cast<long>(l) + 1; };
    auto pad_row   = [&](std::size_t l) { return logic_row(l) - (lanes[l].lit.complemented ? 1 : 0); };

    // pads first, ordered by variable then replica index
    std::vector<std::size_t> group_order(groups.size());
    std::iota(group_order.begin(), group_order.end(), std::size_t{0});
    std::stable_sort(group_order.begin(), group_order.end(),
                     [&](auto a, auto b) { return groups[a].var < groups[b].var; });
    std::map<std::size_t, std::size_t> replicas;
    for (const auto gi : group_order)
    {
        const auto& g     = groups[gi];
        const auto  k     = ++replicas[g.var];
        auto        label = c.variables()[g.var].name;
        if (k > 1)
        {
            label += "." + std::to_string(k);
        }
        const long x   = 4 * static_cast<long>(g.depth);
        long       top = pad_row(g.lanes.front());
        for (const auto l : g.lanes)
        {
            top = std::min(top, pad_row(l));
        }
        grid.add({x, top}, role::input{label});
    }

    // trunks and band 0 / band 1 lane segments
    const long          c1 = grid.band_start(1);
    std::vector<grid_pos> lane_heads(lanes.size());
    for (const auto& g : groups)
    {
        const long x   = 4 * static_cast<long>(g.depth);
        long       top = pad_row(g.lanes.front());
        long       bot = top;
        for (const auto l : g.lanes)
        {
            top = std::min(top, pad_row(l));
            bot = std::max(bot, pad_row(l));
        }
        for (long y = top + 1; y <= bot; ++y)
        {
            grid.add({x, y});
        }
        for (const auto l : g.lanes)
        {
            const long y = logic_row(l);
            if (lanes[l].lit.complemented)
            {
                grid.run_east(x + 1, c1 + 1, y - 1);
                grid.run_east(c1 + 2, c1 + 3, y);
            }
            else
            {
                grid.run_east(x + 1, c1 + 3, y);
            }
            lane_heads[l] = {c1 + 3, y};
        }
    }

    // AND chains
    std::vector<grid_pos> term_heads;
    std::vector<long>     term_levels;
    std::size_t           first = 0;
    while (first < lanes.size())
    {
        std::size_t last = first;
        while (last + 1 < lanes.size() && lanes[last + 1].term == lanes[first].term)
        {
            ++last;
        }
        auto head = lane_heads[first];
        for (std::size_t j = 0; first + j < last; ++j)
        {
            const auto     lit_lane = first + j + 1;
            const grid_pos center{grid.band_start(2 + static_cast<long>(j)) + 1, logic_row(lit_lane)};
            grid.route_to_north_port(head, center);
            grid.route_to_west_port(lane_heads[lit_lane], center);
            head = grid.gate(center, -1.0);
        }
        term_heads.push_back(head);
        term_levels.push_back(last > first ? static_cast<long>(last - first + 1) : 1);
        first = last + 1;
    }

    // OR chain
    const long lor  = *std::max_element(term_levels.begin(), term_levels.end()) + 1;
    auto       head = term_heads.front();
    for (std::size_t j = 0; j + 1 < term_heads.size(); ++j)
    {
        const grid_pos center{grid.band_start(lor + static_cast<long>(j)) + 1, term_heads[j + 1].y};
        grid.route_to_north_port(head, center);
        grid.route_to_west_port(term_heads[j + 1], center);
        head = grid.gate(center, 1.0);
    }
    grid.add({head.x + 1, head.y}, role::output{std::string{synthesized_output_label}}, grid.band_of(head.x));

    qca_layout out;
    out.name     = "sop " + to_string(c);
    out.geometry = geom;
    out.cells    = std::move(grid.cells);
    return out;
}

}  // namespace qcahaz
