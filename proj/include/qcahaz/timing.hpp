#ifndef QCAHAZ_TIMING_HPP
#define QCAHAZ_TIMING_HPP

#include "qcahaz/boolean.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qcahaz
{

using net_id  = std::size_t;
using gate_id = std::size_t;

enum class gate_kind : std::uint8_t
{
    not_gate,
    and_gate,
    or_gate
};

struct gate
{
    gate_id             id{};
    gate_kind           kind{gate_kind::and_gate};
    std::vector<net_id> input_nets;
    net_id              output_net{};
    unsigned            delay{1};
    /// Addressing key: `not.<var>`, `and.<term index>` or `or`.
    std::string key;
};

/// gate id -> delay (time units, >= 1)
using delay_map = std::map<gate_id, unsigned>;

/**
 * Two-level gate DAG. Nets 0..n-1 are the primary inputs in variable order; every other net is driven by exactly one
 * gate, and gates are stored in topological order.
 */
struct gate_netlist
{
    std::vector<std::string> input_names;
    std::vector<net_id>      primary_inputs;
    net_id                   primary_output{};
    std::vector<gate>        gates;
    std::size_t              num_nets{};

    [[nodiscard]] const gate* find_gate(std::string_view key) const noexcept;
};

struct event
{
    std::uint64_t time{};
    net_id        net{};
    bool          value{};

    bool operator==(const event&) const = default;
};

/**
 * One NOT per complemented variable (variable order), one AND per multi-literal term (term order; single-literal terms
 * feed the OR directly) and one OR over all terms when there are two or more. Gate ids follow that order. Gates missing
 * from `delays` get delay 1. Throws std::invalid_argument for constant covers or delays of 0.
 */
gate_netlist sop_to_netlist(const cover& c, const delay_map& delays = {});

/// Delay keys (`not.B=2`) resolved against the netlist. Throws std::invalid_argument for unknown keys or bad values.
delay_map delays_from_keys(const gate_netlist& nl, const std::map<std::string, unsigned>& by_key);

/// Applies a delay map to a netlist. Throws std::invalid_argument for unknown gate ids or zero delays.
void apply_delays(gate_netlist& nl, const delay_map& delays);

/// Quiescent value of every net.
std::vector<bool> settle(const gate_netlist& nl, const assignment& a);

/**
 * Event-driven simulation with transport delays of a step from `from` to `to` at t = 0. Returns the value changes of
 * the primary output. Events at equal times are applied in ascending net order before any gate is re-evaluated.
 */
std::vector<event> simulate_transition(const gate_netlist& nl, const assignment& from, const assignment& to);

/// True iff an output event leaves `steady`. Throws std::invalid_argument if the trace does not end at `steady`.
bool detect_glitch(const std::vector<event>& output_events, bool steady);

/// Two-column `time value` table.
std::string format_events(const std::vector<event>& events);

}  // namespace qcahaz

#endif  // QCAHAZ_TIMING_HPP
