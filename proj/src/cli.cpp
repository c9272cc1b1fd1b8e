#include "qcahaz/cli.hpp"

#include "qcahaz/bistable.hpp"
#include "qcahaz/boolean.hpp"
#include "qcahaz/energy.hpp"
#include "qcahaz/layout.hpp"
#include "qcahaz/timing.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace qcahaz
{

std::uint64_t fnv1a(std::string_view data) noexcept
{
    std::uint64_t h = 14695981039346656037ULL;
    for (const unsigned char c : data)
    {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

namespace
{

using json = nlohmann::ordered_json;

// Raised for bad arguments detected after parsing; maps to exit_usage.
struct usage_error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

std::string hex_digest(std::string_view data)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(data)));
    return buf;
}

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5e", v);
    return buf;
}

std::string read_file(const std::string& path)
{
    std::ifstream in{path, std::ios::binary};
    if (!in)
    {
        throw usage_error("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream os{path, std::ios::binary};
    if (!os || !(os << text) || !os.flush())
    {
        throw usage_error("cannot write '" + path + "'");
    }
}

// `content` is what the digest covers: the expression itself, or the file's bytes.
json envelope(std::string_view command, std::string_view input, std::string_view content)
{
    json j;
    j["command"] = command;
    j["input"]   = input;
    j["digest"]  = hex_digest(content);
    return j;
}

std::vector<std::string> names_of(const cover& c)
{
    std::vector<std::string> out;
    for (const auto& v : c.variables())
    {
        out.push_back(v.name);
    }
    return out;
}

// analyze ------------------------------------------------------------------------------------------------------------

struct analyze_opts
{
    std::string expr;
    bool        as_json{false};
};

int cmd_analyze(const analyze_opts& o, std::ostream& out)
{
    const auto parsed = parse_expression_with_style(o.expr);
    const auto& c     = parsed.function;
    const auto report = detect_static1_hazards(c);
    const int  code   = report.hazard_free() ? exit_clean : exit_finding;

    if (o.as_json)
    {
        auto j         = envelope("analyze", o.expr, o.expr);
        j["function"]  = to_string(c, parsed.style);
        j["variables"] = names_of(c);
        j["hazards"]   = json::array();
        for (const auto& h : report.hazards)
        {
            j["hazards"].push_back({{"from", h.minterm_a.to_string()},
                                    {"to", h.minterm_b.to_string()},
                                    {"variable", h.toggled_variable.name},
                                    {"curing_term", to_string(h.curing_term, c.variables(), parsed.style)}});
        }
        j["added_terms"] = json::array();
        for (const auto& t : report.added_terms)
        {
            j["added_terms"].push_back(to_string(t, c.variables(), parsed.style));
        }
        j["hazard_free"] = report.hazard_free();
        j["warnings"]    = json::array();
        j["exit"]        = code;
        out << j.dump(2) << '\n';
        return code;
    }

    out << "function: " << to_string(c, parsed.style) << '\n';
    out << "static-1 hazards: " << report.hazards.size() << '\n';
    for (const auto& h : report.hazards)
    {
        out << "  " << h.minterm_a.to_string() << " <-> " << h.minterm_b.to_string() << " on "
            << h.toggled_variable.name << ", cured by "
            << to_string(h.curing_term, c.variables(), parsed.style) << '\n';
    }
    if (!report.added_terms.empty())
    {
        out << "added terms:";
        for (const auto& t : report.added_terms)
        {
            out << ' ' << to_string(t, c.variables(), parsed.style);
        }
        out << '\n';
    }
    out << "verdict: " << (report.hazard_free() ? "HAZARD-FREE" : "HAZARDS") << '\n';
    return code;
}

// fix ----------------------------------------------------------------------------------------------------------------

struct fix_opts
{
    std::string expr;
    bool        as_json{false};
};

int cmd_fix(const fix_opts& o, std::ostream& out)
{
    const auto parsed = parse_expression_with_style(o.expr);
    const auto fixed  = eliminate_hazards(parsed.function);
    const auto text   = to_string(fixed, parsed.style);
    if (o.as_json)
    {
        auto j        = envelope("fix", o.expr, o.expr);
        j["function"] = text;
        j["added"]    = fixed.terms().size() - parsed.function.terms().size();
        j["warnings"] = json::array();
        j["exit"]     = 0;
        out << j.dump(2) << '\n';
    }
    else
    {
        out << text << '\n';
    }
    return exit_clean;
}

// glitch -------------------------------------------------------------------------------------------------------------

struct glitch_opts
{
    std::string              expr;
    std::string              from;
    std::string              to;
    std::vector<std::string> delays;
    bool                     as_json{false};
};

std::map<std::string, unsigned> parse_delays(const std::vector<std::string>& items)
{
    std::map<std::string, unsigned> out;
    for (const auto& item : items)
    {
        std::stringstream ss{item};
        std::string       part;
        while (std::getline(ss, part, ','))
        {
            if (part.empty())
            {
                continue;
            }
            const auto eq = part.find('=');
            if (eq == std::string::npos || eq == 0 || eq + 1 == part.size())
            {
                throw usage_error("delay '" + part + "' is not of the form key=value");
            }
            const auto value = part.substr(eq + 1);
            if (!std::all_of(value.begin(), value.end(), [](char ch) { return ch >= '0' && ch <= '9'; }) ||
                value.size() > 6)
            {
                throw usage_error("delay '" + part + "' needs a positive integer value");
            }
            out[part.substr(0, eq)] = static_cast<unsigned>(std::stoul(value));
        }
    }
    return out;
}

int cmd_glitch(const glitch_opts& o, std::ostream& out)
{
    const auto parsed = parse_expression_with_style(o.expr);
    const auto& c     = parsed.function;
    auto        nl    = sop_to_netlist(c);
    apply_delays(nl, delays_from_keys(nl, parse_delays(o.delays)));

    const auto from = assignment::from_string(o.from);
    const auto to   = assignment::from_string(o.to);
    if (from.size() != c.num_variables() || to.size() != c.num_variables())
    {
        throw usage_error("assignments must have " + std::to_string(c.num_variables()) + " bits (one per variable " +
                          "in order of appearance)");
    }
    const auto events = simulate_transition(nl, from, to);
    const bool before = eval_cover(c, from);
    const bool after  = eval_cover(c, to);
    // static transitions glitch when the output leaves its value; dynamic ones when it changes more than once
    const bool glitch = before == after ? detect_glitch(events, before) : events.size() > 1;
    const int  code   = glitch ? exit_finding : exit_clean;

    if (o.as_json)
    {
        auto j          = envelope("glitch", o.expr, o.expr);
        j["function"]   = to_string(c, parsed.style);
        j["from"]       = from.to_string();
        j["to"]         = to.to_string();
        j["transition"] = before == after ? "static" : "dynamic";
        j["delays"]     = json::object();
        for (const auto& g : nl.gates)
        {
            j["delays"][g.key] = g.delay;
        }
        j["events"] = json::array();
        for (const auto& e : events)
        {
            j["events"].push_back({{"time", e.time}, {"value", e.value ? 1 : 0}});
        }
        j["verdict"]  = glitch ? "GLITCH" : "CLEAN";
        j["warnings"] = json::array();
        j["exit"]     = code;
        out << j.dump(2) << '\n';
        return code;
    }

    out << "function: " << to_string(c, parsed.style) << '\n';
    out << "transition: " << from.to_string() << " -> " << to.to_string() << " ("
        << (before == after ? "static" : "dynamic") << ")\n";
    out << "delays:";
    for (const auto& g : nl.gates)
    {
        out << ' ' << g.key << '=' << g.delay;
    }
    out << '\n' << format_events(events);
    out << "verdict: " << (glitch ? "GLITCH" : "CLEAN") << '\n';
    return code;
}

// synth --------------------------------------------------------------------------------------------------------------

struct synth_opts
{
    std::string expr;
    std::string output;
    bool        hazard_free{false};
    bool        as_json{false};
};

geometry environment_geometry()
{
    const char* path = std::getenv("QCAHAZ_GEOMETRY");
    if (path == nullptr || *path == '\0')
    {
        return {};
    }
    return load_geometry(read_file(path));
}

int cmd_synth(const synth_opts& o, std::ostream& out)
{
    const auto parsed = parse_expression_with_style(o.expr);
    const auto c      = o.hazard_free ? eliminate_hazards(parsed.function) : parsed.function;
    const auto layout = synthesize_sop(c, environment_geometry());
    const auto text   = save_layout(layout);

    std::size_t and_gates = 0;
    std::size_t or_gates  = 0;
    for (const auto& cell : layout.cells)
    {
        if (const auto* f = std::get_if<role::fixed>(&cell.role))
        {
            ++(f->polarization < 0 ? and_gates : or_gates);
        }
    }
    std::size_t inverters = 0;
    for (const auto& t : c.terms())
    {
        for (const auto& l : t.literals())
        {
            inverters += l.complemented ? 1 : 0;
        }
    }

    if (o.output.empty() && !o.as_json)
    {
        out << text;
        return exit_clean;
    }
    if (!o.output.empty())
    {
        write_file(o.output, text);
    }
    if (o.as_json)
    {
        auto j         = envelope("synth", o.expr, o.expr);
        j["function"]  = to_string(c, parsed.style);
        j["cells"]     = layout.cells.size();
        j["inputs"]    = json::array();
        for (const auto i : layout.input_cells())
        {
            j["inputs"].push_back(std::get<role::input>(layout.cells[i].role).label);
        }
        j["and_gates"] = and_gates;
        j["or_gates"]  = or_gates;
        j["inverters"] = inverters;
        if (o.output.empty())
        {
            j["layout"] = text;
        }
        else
        {
            j["file"] = o.output;
        }
        j["warnings"] = json::array();
        j["exit"]     = 0;
        out << j.dump(2) << '\n';
        return exit_clean;
    }
    out << "wrote " << o.output << ": " << layout.cells.size() << " cells, " << and_gates << " AND, " << or_gates
        << " OR, " << inverters << " inverters\n";
    return exit_clean;
}

// sim ----------------------------------------------------------------------------------------------------------------

struct sim_opts
{
    std::string                layout_file;
    std::string                trace_file;
    std::optional<std::size_t> samples;
    std::string                expect;
    bool                       trace_all{false};
    bool                       as_json{false};
};

int cmd_sim(const sim_opts& o, std::ostream& out, std::ostream& err)
{
    const auto text    = read_file(o.layout_file);
    const auto layout  = load_layout(text);
    const auto signals = input_signals(layout);

    sim_params p;
    p.samples   = o.samples.value_or(std::max<std::size_t>(12800, std::size_t{1600} << std::min<std::size_t>(signals.size(), 16)));
    p.trace_all = o.trace_all;

    std::optional<cover> expected;
    std::vector<std::size_t> var_of_signal;
    if (!o.expect.empty())
    {
        expected = parse_expression(o.expect);
        for (const auto& v : expected->variables())
        {
            if (std::find(signals.begin(), signals.end(), v.name) == signals.end())
            {
                throw usage_error("expected function uses '" + v.name + "', which is not an input of the layout");
            }
        }
    }

    const auto t    = run(layout, p);
    const auto rows = extract_truth_table(t);

    if (!o.trace_file.empty())
    {
        std::ostringstream csv;
        write_trace_csv(csv, t);
        write_file(o.trace_file, csv.str());
    }

    std::vector<std::string> output_labels;
    for (const auto& [cell, depth] : t.output_depths)
    {
        output_labels.push_back(std::get<role::output>(layout.cells[cell].role).label);
    }

    std::vector<std::string> warnings;
    std::size_t              mismatches = 0;
    std::vector<bool>        row_ok;
    for (const auto& r : rows)
    {
        bool ok = true;
        if (expected)
        {
            std::vector<bool> bits(expected->num_variables());
            for (std::size_t i = 0; i < signals.size(); ++i)
            {
                if (const auto v = expected->find_variable(signals[i]))
                {
                    bits[*v] = r.inputs[i];
                }
            }
            const bool want = eval_cover(*expected, assignment{bits});
            ok = std::all_of(r.outputs.begin(), r.outputs.end(), [want](bool b) { return b == want; });
        }
        mismatches += ok ? 0 : 1;
        row_ok.push_back(ok);
        for (std::size_t k = 0; k < r.weak.size(); ++k)
        {
            if (r.weak[k])
            {
                warnings.push_back("weak output " + output_labels[k] + " at " + r.inputs.to_string() +
                                   " (P = " + sci(r.polarization[k]) + ")");
            }
        }
    }
    const int code = mismatches == 0 ? exit_clean : exit_finding;

    if (o.as_json)
    {
        auto j                 = envelope("sim", o.layout_file, text);
        j["layout"]            = layout.name;
        j["cells"]             = layout.cells.size();
        j["inputs"]            = signals;
        j["outputs"]           = output_labels;
        j["samples"]           = t.samples;
        j["periods_per_input"] = t.periods_per_input;
        j["non_converged"]     = t.non_converged;
        j["truth_table"]       = json::array();
        for (std::size_t i = 0; i < rows.size(); ++i)
        {
            json row{{"inputs", rows[i].inputs.to_string()}, {"outputs", json::array()}, {"polarization", json::array()}};
            for (std::size_t k = 0; k < rows[i].outputs.size(); ++k)
            {
                row["outputs"].push_back(rows[i].outputs[k] ? 1 : 0);
                row["polarization"].push_back(rows[i].polarization[k]);
            }
            if (expected)
            {
                row["match"] = static_cast<bool>(row_ok[i]);
            }
            j["truth_table"].push_back(row);
        }
        if (expected)
        {
            j["expect"]  = o.expect;
            j["verdict"] = code == exit_clean ? "PASS" : "FAIL";
        }
        j["warnings"] = warnings;
        j["exit"]     = code;
        out << j.dump(2) << '\n';
        return code;
    }

    for (const auto& w : warnings)
    {
        err << "warning: " << w << '\n';
    }
    out << "layout: " << (layout.name.empty() ? o.layout_file : layout.name) << " (" << layout.cells.size()
        << " cells)\n";
    out << "samples: " << t.samples << ", clock periods per input: " << t.periods_per_input
        << ", non-converged samples: " << t.non_converged << '\n';
    for (const auto& s : signals)
    {
        out << s << ' ';
    }
    out << '|';
    for (const auto& l : output_labels)
    {
        out << ' ' << l;
    }
    out << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        for (std::size_t k = 0; k < signals.size(); ++k)
        {
            out << std::string(signals[k].size() - 1, ' ') << (rows[i].inputs[k] ? '1' : '0') << ' ';
        }
        out << '|';
        for (std::size_t k = 0; k < rows[i].outputs.size(); ++k)
        {
            out << ' ' << std::string(output_labels[k].size() - 1, ' ') << (rows[i].outputs[k] ? '1' : '0');
        }
        out << "   P =";
        for (const auto p : rows[i].polarization)
        {
            out << ' ' << sci(p);
        }
        if (expected && !row_ok[i])
        {
            out << "   MISMATCH";
        }
        out << '\n';
    }
    if (expected)
    {
        out << "expect " << o.expect << ": " << (code == exit_clean ? "PASS" : "FAIL") << '\n';
    }
    return code;
}

// kink ---------------------------------------------------------------------------------------------------------------

struct kink_opts
{
    std::string                layout_file;
    std::optional<std::size_t> cell_a;
    std::optional<std::size_t> cell_b;
    std::string                output_stage;
    double                     permittivity{1.0};
    bool                       search{false};
    bool                       as_json{false};
};

void print_energy(std::ostream& out, const stage_energy& e)
{
    out << "E_opp  = " << sci(e.e_opp) << " J\n";
    out << "E_same = " << sci(e.e_same) << " J\n";
    out << "E_kink = " << sci(e.e_kink) << " J\n";
}

json energy_json(const stage_energy& e)
{
    return {{"e_opp", e.e_opp}, {"e_same", e.e_same}, {"e_kink", e.e_kink}};
}

std::string offsets_text(const std::vector<std::pair<int, int>>& offsets)
{
    std::string s;
    for (const auto& [dx, dy] : offsets)
    {
        s += (s.empty() ? "" : " ") + std::string{"("} + std::to_string(dx) + "," + std::to_string(dy) + ")";
    }
    return s;
}

int cmd_kink_search(const kink_opts& o, std::ostream& out)
{
    const auto candidates = search_output_stage();
    const auto shown      = std::min<std::size_t>(5, candidates.size());
    const bool matched    = !candidates.empty() && candidates.front().error <= 0.01;
    if (o.as_json)
    {
        auto j         = envelope("kink", "--search", "--search");
        j["reference"] = {{"e_opp", reference_e_opp}, {"e_same", reference_e_same}, {"e_kink", reference_e_kink}};
        j["candidates_searched"] = candidates.size();
        j["within_1_percent"]    = matched;
        j["best"]                = json::array();
        for (std::size_t i = 0; i < shown; ++i)
        {
            const auto& c = candidates[i];
            j["best"].push_back({{"pitch", c.pitch},
                                 {"dot_spacing", c.dot_spacing},
                                 {"offsets", c.offsets},
                                 {"energy", energy_json(c.energy)},
                                 {"error", c.error}});
        }
        j["warnings"] = json::array();
        j["exit"]     = 0;
        out << j.dump(2) << '\n';
        return exit_clean;
    }
    out << "reference: E_opp " << sci(reference_e_opp) << " J, E_same " << sci(reference_e_same) << " J, E_kink "
        << sci(reference_e_kink) << " J\n";
    out << "searched " << candidates.size() << " output-stage candidates; "
        << (matched ? "a candidate is" : "none is") << " within 1%\n";
    for (std::size_t i = 0; i < shown; ++i)
    {
        const auto& c = candidates[i];
        out << "  pitch " << c.pitch << " nm, drivers " << offsets_text(c.offsets) << ": E_opp " << sci(c.energy.e_opp)
            << ", E_same " << sci(c.energy.e_same) << ", E_kink " << sci(c.energy.e_kink) << ", error "
            << sci(c.error) << '\n';
    }
    return exit_clean;
}

int cmd_kink(const kink_opts& o, std::ostream& out)
{
    if (o.search)
    {
        return cmd_kink_search(o, out);
    }
    if (o.layout_file.empty())
    {
        throw usage_error("kink needs a layout file (or --search)");
    }
    const bool pair_mode = o.cell_a.has_value() || o.cell_b.has_value();
    if (pair_mode == !o.output_stage.empty())
    {
        throw usage_error("give either --cell-a and --cell-b or --output-stage");
    }
    if (pair_mode && !(o.cell_a && o.cell_b))
    {
        throw usage_error("--cell-a and --cell-b must be given together");
    }
    if (!(o.permittivity > 0))
    {
        throw usage_error("--permittivity must be positive");
    }

    const auto          text   = read_file(o.layout_file);
    const auto          layout = load_layout(text);
    const energy_params params{coulomb_k_e2, o.permittivity};

    stage_energy             e;
    std::vector<std::size_t> drivers;
    if (pair_mode)
    {
        const auto n = layout.cells.size();
        if (*o.cell_a >= n || *o.cell_b >= n)
        {
            throw usage_error("cell index out of range (layout has " + std::to_string(n) + " cells)");
        }
        if (*o.cell_a == *o.cell_b)
        {
            throw usage_error("--cell-a and --cell-b must differ");
        }
        const auto& a      = layout.cells[*o.cell_a];
        const auto& b      = layout.cells[*o.cell_b];
        const auto  a_plus = make_charge_config(a, 1.0, layout.geometry);
        e.e_opp            = cells_interaction(a_plus, make_charge_config(b, -1.0, layout.geometry), params);
        e.e_same           = cells_interaction(a_plus, make_charge_config(b, 1.0, layout.geometry), params);
        e.e_kink           = e.e_opp - e.e_same;
    }
    else
    {
        const auto report = output_stage_kink(layout, o.output_stage, params);
        e                 = report.energy;
        drivers           = report.drivers;
    }

    if (o.as_json)
    {
        auto j = envelope("kink", o.layout_file, text);
        if (pair_mode)
        {
            j["cells"] = {*o.cell_a, *o.cell_b};
        }
        else
        {
            j["output_stage"] = o.output_stage;
            j["drivers"]      = drivers;
        }
        j["relative_permittivity"] = o.permittivity;
        j["energy"]                = energy_json(e);
        j["warnings"]              = json::array();
        j["exit"]                  = 0;
        out << j.dump(2) << '\n';
        return exit_clean;
    }
    if (!pair_mode)
    {
        out << "output stage " << o.output_stage << ": " << drivers.size() << " driver cells\n";
    }
    print_energy(out, e);
    return exit_clean;
}

// demo ---------------------------------------------------------------------------------------------------------------

struct demo_opts
{
    std::string name;
    std::string output;
};

std::optional<demo_layout> demo_alias(std::string_view name)
{
    static const std::map<std::string_view, demo_layout> aliases{
        {"fig12", demo_layout::with_hazard}, {"fig13", demo_layout::hazard_free}, {"and", demo_layout::and_gate},
        {"or", demo_layout::or_gate},
    };
    if (const auto it = aliases.find(name); it != aliases.end())
    {
        return it->second;
    }
    return demo_from_name(name);
}

int cmd_demo(const demo_opts& o, std::ostream& out)
{
    const auto which = demo_alias(o.name);
    if (!which)
    {
        throw usage_error("unknown demo '" + o.name +
                          "' (expected fig12, fig13, wire, inverter, majority, and, or)");
    }
    const auto text = demo_text(*which);
    if (o.output.empty())
    {
        out << text;
    }
    else
    {
        write_file(o.output, text);
    }
    return exit_clean;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Static hazard analysis, glitch simulation and QCA layout tools", "qcahaz"};
    app.require_subcommand(1);
    app.fallthrough(false);

    analyze_opts analyze;
    auto*        a = app.add_subcommand("analyze", "Report static-1 hazards and their curing terms");
    a->add_option("expr", analyze.expr, "Sum-of-products expression, e.g. \"AB' + BC'\"")->required();
    a->add_flag("--json", analyze.as_json, "Machine-readable report");

    fix_opts fix;
    auto*    f = app.add_subcommand("fix", "Add consensus terms until the cover is hazard-free");
    f->add_option("expr", fix.expr, "Sum-of-products expression")->required();
    f->add_flag("--json", fix.as_json, "Machine-readable report");

    glitch_opts glitch;
    auto*       g = app.add_subcommand("glitch", "Event-driven simulation of one input transition");
    g->add_option("expr", glitch.expr, "Sum-of-products expression")->required();
    g->add_option("--from", glitch.from, "Initial assignment, variable order of appearance (e.g. 100)")->required();
    g->add_option("--to", glitch.to, "Final assignment")->required();
    g->add_option("--delays", glitch.delays, "Gate delays as key=value (not.B, and.0, or), comma separated");
    g->add_flag("--json", glitch.as_json, "Machine-readable report");

    synth_opts synth;
    auto*      s = app.add_subcommand("synth", "Compile an expression into a QCA layout (.qcl)");
    s->add_option("expr", synth.expr, "Sum-of-products expression")->required();
    s->add_option("-o,--output", synth.output, "Layout file to write (stdout if omitted)");
    s->add_flag("--hazard-free", synth.hazard_free, "Eliminate static-1 hazards before synthesis");
    s->add_flag("--json", synth.as_json, "Machine-readable report");

    sim_opts sim;
    auto*    m = app.add_subcommand("sim", "Bistable simulation of a layout with truth-table extraction");
    m->add_option("layout", sim.layout_file, "Layout file (.qcl)")->required();
    m->add_option("-o,--output", sim.trace_file, "Trace CSV to write");
    m->add_option("--samples", sim.samples, "Number of samples (default max(12800, 1600 * 2^inputs))")
        ->check(CLI::PositiveNumber);
    m->add_option("--expect", sim.expect, "Expression the outputs must match");
    m->add_flag("--trace-all", sim.trace_all, "Trace every cell");
    m->add_flag("--json", sim.as_json, "Machine-readable report");

    kink_opts kink;
    auto*     k = app.add_subcommand("kink", "Kink energy between two cells or around an output cell");
    k->add_option("layout", kink.layout_file, "Layout file (.qcl)");
    k->add_option("--cell-a", kink.cell_a, "Index of the first cell");
    k->add_option("--cell-b", kink.cell_b, "Index of the second cell");
    k->add_option("--output-stage", kink.output_stage, "Label of the output cell");
    k->add_option("--permittivity", kink.permittivity, "Relative permittivity (default 1)");
    k->add_flag("--search", kink.search, "Search candidate output-stage geometries against the reference energies");
    k->add_flag("--json", kink.as_json, "Machine-readable report");

    demo_opts demo;
    auto*     d = app.add_subcommand("demo", "Write a shipped layout: fig12, fig13, wire, inverter, majority, and, or");
    d->add_option("name", demo.name, "Demo name")->required();
    d->add_option("-o,--output", demo.output, "Layout file to write (stdout if omitted)");

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_clean : exit_usage;
    }

    try
    {
        if (a->parsed())
        {
            return cmd_analyze(analyze, out);
        }
        if (f->parsed())
        {
            return cmd_fix(fix, out);
        }
        if (g->parsed())
        {
            return cmd_glitch(glitch, out);
        }
        if (s->parsed())
        {
            return cmd_synth(synth, out);
        }
        if (m->parsed())
        {
            return cmd_sim(sim, out, err);
        }
        if (k->parsed())
        {
            return cmd_kink(kink, out);
        }
        if (d->parsed())
        {
            return cmd_demo(demo, out);
        }
    }
    catch (const parse_error& e)
    {
        err << "parse error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const layout_parse_error& e)
    {
        err << "layout error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

}  // namespace qcahaz
