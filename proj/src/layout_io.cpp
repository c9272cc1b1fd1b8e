#include "qcahaz/layout.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace qcahaz
{

layout_parse_error::layout_parse_error(std::size_t line, const std::string& what) :
        std::runtime_error{line == 0 ? what : "line " + std::to_string(line) + ": " + what},
        line_no{line}
{}

namespace
{

std::string fmt3(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v == 0.0 ? 0.0 : v);
    return buf;
}

std::string role_text(const cell_role& r)
{
    if (const auto* f = std::get_if<role::fixed>(&r))
    {
        if (f->polarization == 1.0)
        {
            return "fixed:+1";
        }
        if (f->polarization == -1.0)
        {
            return "fixed:-1";
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "fixed:%+.3f", f->polarization);
        return buf;
    }
    if (const auto* in = std::get_if<role::input>(&r))
    {
        return "input:" + in->label;
    }
    if (const auto* out = std::get_if<role::output>(&r))
    {
        return "output:" + out->label;
    }
    return "normal";
}

std::vector<std::string_view> tokenize(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t                   i = 0;
    while (i < line.size())
    {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
        {
            ++i;
        }
        const auto begin = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r')
        {
            ++i;
        }
        if (i > begin)
        {
            out.push_back(line.substr(begin, i - begin));
        }
    }
    return out;
}

double parse_number(std::string_view tok, std::size_t line, std::string_view what)
{
    if (!tok.empty() && tok.front() == '+')
    {
        tok.remove_prefix(1);
    }
    double     v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(v))
    {
        throw layout_parse_error(line, "invalid " + std::string{what} + " '" + std::string{tok} + "'");
    }
    return v;
}

int parse_int(std::string_view tok, std::size_t line, std::string_view what)
{
    int        v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
    {
        throw layout_parse_error(line, "invalid " + std::string{what} + " '" + std::string{tok} + "'");
    }
    return v;
}

cell_role parse_role(std::string_view tok, std::size_t line)
{
    if (tok == "normal")
    {
        return role::normal{};
    }
    const auto colon = tok.find(':');
    const auto kind  = tok.substr(0, colon);
    const auto arg   = colon == std::string_view::npos ? std::string_view{} : tok.substr(colon + 1);
    if (colon != std::string_view::npos)
    {
        if (kind == "fixed")
        {
            return role::fixed{parse_number(arg, line, "fixed polarization")};
        }
        if (kind == "input")
        {
            return role::input{std::string{arg}};
        }
        if (kind == "output")
        {
            return role::output{std::string{arg}};
        }
    }
    throw layout_parse_error(line, "unknown cell role '" + std::string{tok} +
                                       "' (expected normal, fixed:+1, fixed:-1, input:LABEL or output:LABEL)");
}

// Applies a `param` line to `g`.
void apply_param(geometry& g, const std::vector<std::string_view>& tok, std::size_t line)
{
    if (tok.size() != 3)
    {
        throw layout_parse_error(line, "expected 'param NAME VALUE'");
    }
    const double v = parse_number(tok[2], line, "parameter value");
    if (tok[1] == "cell_size")
    {
        g.cell_size = v;
    }
    else if (tok[1] == "dot_diameter")
    {
        g.dot_diameter = v;
    }
    else if (tok[1] == "dot_spacing")
    {
        g.dot_spacing = v;
    }
    else if (tok[1] == "pitch")
    {
        g.pitch = v;
    }
    else
    {
        throw layout_parse_error(line, "unknown parameter '" + std::string{tok[1]} + "'");
    }
}

template <typename F>
void for_each_line(std::string_view text, F&& f)
{
    std::size_t line_no = 0;
    std::size_t start   = 0;
    while (start <= text.size())
    {
        const auto nl   = text.find('\n', start);
        auto       line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
        {
            line = line.substr(0, hash);
        }
        f(line_no, line);
        if (nl == std::string_view::npos)
        {
            break;
        }
        start = nl + 1;
    }
}

}  // namespace

std::string save_layout(const qca_layout& layout)
{
    std::ostringstream os;
    os << "qcl 1\n";
    if (!layout.name.empty())
    {
        os << "name " << layout.name << '\n';
    }
    const auto& g = layout.geometry;
    os << "param cell_size " << fmt3(g.cell_size) << '\n';
    os << "param dot_diameter " << fmt3(g.dot_diameter) << '\n';
    os << "param dot_spacing " << fmt3(g.dot_spacing) << '\n';
    os << "param pitch " << fmt3(g.pitch) << '\n';
    for (const auto& c : layout.cells)
    {
        os << "cell " << fmt3(c.center.x) << ' ' << fmt3(c.center.y) << ' '
           << (c.rotation == cell_rotation::rotated_45 ? 45 : 0) << ' ' << c.zone << ' ' << role_text(c.role) << '\n';
    }
    return os.str();
}

qca_layout load_layout(std::string_view text)
{
    qca_layout out;
    bool       header = false;
    for_each_line(text,
                  [&](std::size_t line_no, std::string_view line)
                  {
                      const auto tok = tokenize(line);
                      if (tok.empty())
                      {
                          return;
                      }
                      if (!header)
                      {
                          if (tok[0] != "qcl" || tok.size() != 2)
                          {
                              throw layout_parse_error(line_no, "missing 'qcl 1' header");
                          }
                          if (tok[1] != "1")
                          {
                              throw layout_parse_error(line_no,
                                                       "unsupported format version '" + std::string{tok[1]} + "'");
                          }
                          header = true;
                          return;
                      }
                      if (tok[0] == "name")
                      {
                          auto rest = line.substr(line.find("name") + 4);
                          while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t'))
                          {
                              rest.remove_prefix(1);
                          }
                          while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\t' || rest.back() == '\r'))
                          {
                              rest.remove_suffix(1);
                          }
                          out.name = std::string{rest};
                      }
                      else if (tok[0] == "param")
                      {
                          apply_param(out.geometry, tok, line_no);
                      }
                      else if (tok[0] == "cell")
                      {
                          if (tok.size() != 6)
                          {
                              throw layout_parse_error(line_no, "expected 'cell X Y ROTATION ZONE ROLE'");
                          }
                          qca_cell c;
                          c.center = {parse_number(tok[1], line_no, "x coordinate"),
                                      parse_number(tok[2], line_no, "y coordinate")};
                          if (tok[3] == "0")
                          {
                              c.rotation = cell_rotation::standard_90;
                          }
                          else if (tok[3] == "45")
                          {
                              c.rotation = cell_rotation::rotated_45;
                          }
                          else
                          {
                              throw layout_parse_error(line_no, "rotation must be 0 or 45, got '" +
                                                                    std::string{tok[3]} + "'");
                          }
                          c.zone = parse_int(tok[4], line_no, "clock zone");
                          c.role = parse_role(tok[5], line_no);
                          out.cells.push_back(std::move(c));
                      }
                      else
                      {
                          throw layout_parse_error(line_no, "unknown directive '" + std::string{tok[0]} + "'");
                      }
                  });
    if (!header)
    {
        throw layout_parse_error(0, "empty layout file (missing 'qcl 1' header)");
    }
    return out;
}

geometry load_geometry(std::string_view text)
{
    geometry g;
    for_each_line(text,
                  [&g](std::size_t line_no, std::string_view line)
                  {
                      const auto tok = tokenize(line);
                      if (tok.empty() || (tok[0] == "qcl" && tok.size() == 2))
                      {
                          return;
                      }
                      if (tok[0] != "param")
                      {
                          throw layout_parse_error(line_no, "geometry files may only contain 'param' lines");
                      }
                      apply_param(g, tok, line_no);
                  });
    if (const auto problem = check_geometry(g))
    {
        throw layout_parse_error(0, "invalid geometry: " + *problem);
    }
    return g;
}

}  // namespace qcahaz
