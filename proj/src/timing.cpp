#include "qcahaz/timing.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qcahaz
{

const gate* gate_netlist::find_gate(std::string_view key) const noexcept
{
    const auto it = std::find_if(gates.begin(), gates.end(), [key](const auto& g) { return g.key == key; });
    return it == gates.end() ? nullptr : &*it;
}

gate_netlist sop_to_netlist(const cover& c, const delay_map& delays)
{
    if (c.is_trivially_constant())
    {
        throw std::invalid_argument("cannot build a netlist for a constant function");
    }
    gate_netlist nl;
    const auto   n = c.num_variables();
    for (const auto& v : c.variables())
    {
        nl.input_names.push_back(v.name);
        nl.primary_inputs.push_back(v.index);
    }
    nl.num_nets = n;

    auto add_gate = [&nl](gate_kind kind, std::vector<net_id> inputs, std::string key)
    {
        gate g;
        g.id         = nl.gates.size();
        g.kind       = kind;
        g.input_nets = std::move(inputs);
        g.output_net = nl.num_nets++;
        g.key        = std::move(key);
        nl.gates.push_back(std::move(g));
        return nl.gates.back().output_net;
    };

    std::vector<net_id> inverted(n, 0);
    for (std::size_t v = 0; v < n; ++v)
    {
        const bool needed = std::any_of(c.terms().begin(), c.terms().end(),
                                        [v](const auto& t) { return t.contains(v) && !((t.phase() >> v) & 1u); });
        if (needed)
        {
            inverted[v] = add_gate(gate_kind::not_gate, {v}, "not." + c.variables()[v].name);
        }
    }

    std::vector<net_id> term_nets;
    for (std::size_t i = 0; i < c.terms().size(); ++i)
    {
        std::vector<net_id> inputs;
        for (const auto& l : c.terms()[i].literals())
        {
            inputs.push_back(l.complemented ? inverted[l.var] : l.var);
        }
        term_nets.push_back(inputs.size() == 1 ? inputs.front()
                                               : add_gate(gate_kind::and_gate, inputs, "and." + std::to_string(i)));
    }

    if (term_nets.size() == 1)
    {
        nl.primary_output = term_nets.front();
    }
    else
    {
        nl.primary_output = add_gate(gate_kind::or_gate, term_nets, "or");
    }
    apply_delays(nl, delays);
    return nl;
}

void apply_delays(gate_netlist& nl, const delay_map& delays)
{
    for (const auto& [id, d] : delays)
    {
        if (id >= nl.gates.size())
        {
            throw std::invalid_argument("delay given for unknown gate id " + std::to_string(id));
        }
        if (d == 0)
        {
            throw std::invalid_argument("gate delays must be at least 1");
        }
        nl.gates[id].delay = d;
    }
}

delay_map delays_from_keys(const gate_netlist& nl, const std::map<std::string, unsigned>& by_key)
{
    delay_map out;
    for (const auto& [key, d] : by_key)
    {
        const auto* g = nl.find_gate(key);
        if (g == nullptr)
        {
            std::string known;
            for (const auto& x : nl.gates)
            {
                known += (known.empty() ? "" : ", ") + x.key;
            }
            throw std::invalid_argument("unknown gate key '" + key + "' (known: " + known + ")");
        }
        if (d == 0)
        {
            throw std::invalid_argument("delay for '" + key + "' must be at least 1");
        }
        out[g->id] = d;
    }
    return out;
}

namespace
{

bool evaluate(const gate& g, const std::vector<bool>& values)
{
    switch (g.kind)
    {
        case gate_kind::not_gate: return !values[g.input_nets.front()];
        case gate_kind::and_gate:
            return std::all_of(g.input_nets.begin(), g.input_nets.end(), [&values](net_id x) { return values[x]; });
        case gate_kind::or_gate:
            return std::any_of(g.input_nets.begin(), g.input_nets.end(), [&values](net_id x) { return values[x]; });
    }
    return false;
}

void check_width(const gate_netlist& nl, const assignment& a)
{
    if (a.size() != nl.primary_inputs.size())
    {
        throw std::invalid_argument("assignment has " + std::to_string(a.size()) + " bits but the netlist has " +
                                    std::to_string(nl.primary_inputs.size()) + " inputs");
    }
}

}  // namespace

std::vector<bool> settle(const gate_netlist& nl, const assignment& a)
{
    check_width(nl, a);
    std::vector<bool> values(nl.num_nets, false);
    for (std::size_t i = 0; i < nl.primary_inputs.size(); ++i)
    {
        values[nl.primary_inputs[i]] = a[i];
    }
    for (const auto& g : nl.gates)
    {
        values[g.output_net] = evaluate(g, values);
    }
    return values;
}

std::vector<event> simulate_transition(const gate_netlist& nl, const assignment& from, const assignment& to)
{
    check_width(nl, to);
    auto values = settle(nl, from);

    std::vector<std::vector<gate_id>> fanout(nl.num_nets);
    for (const auto& g : nl.gates)
    {
        for (const auto in : g.input_nets)
        {
            fanout[in].push_back(g.id);
        }
    }

    // pending (time, net) -> value; transport delay keeps every scheduled transition
    std::map<std::pair<std::uint64_t, net_id>, bool> pending;
    for (std::size_t i = 0; i < nl.primary_inputs.size(); ++i)
    {
        if (from[i] != to[i])
        {
            pending[{0, nl.primary_inputs[i]}] = to[i];
        }
    }

    std::vector<event> out;
    while (!pending.empty())
    {
        const auto now = pending.begin()->first.first;

        std::set<gate_id> touched;
        while (!pending.empty() && pending.begin()->first.first == now)
        {
            const auto [key, value] = *pending.begin();
            pending.erase(pending.begin());
            const auto net = key.second;
            if (values[net] == value)
            {
                continue;
            }
            values[net] = value;
            if (net == nl.primary_output)
            {
                out.push_back({now, net, value});
            }
            touched.insert(fanout[net].begin(), fanout[net].end());
        }

        for (const auto id : touched)
        {
            const auto& g = nl.gates[id];
            pending[{now + g.delay, g.output_net}] = evaluate(g, values);
        }
    }
    return out;
}

bool detect_glitch(const std::vector<event>& output_events, bool steady)
{
    const bool final_value = output_events.empty() ? steady : output_events.back().value;
    if (final_value != steady)
    {
        throw std::invalid_argument("output does not settle back to the steady value; not a static transition");
    }
    return std::any_of(output_events.begin(), output_events.end(), [steady](const auto& e) { return e.value != steady; });
}

std::string format_events(const std::vector<event>& events)
{
    std::ostringstream os;
    os << "time value\n";
    for (const auto& e : events)
    {
        os << e.time << ' ' << (e.value ? 1 : 0) << '\n';
    }
    return os.str();
}

}  // namespace qcahaz
