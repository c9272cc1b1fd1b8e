#include "qcahaz/boolean.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace qcahaz
{

parse_error::parse_error(kind k, std::size_t pos, const std::string& what) :
        std::runtime_error{what + " at position " + std::to_string(pos)},
        k{k},
        pos{pos}
{}

namespace
{

// A product while parsing: variable -> positive phase. `zero` marks a contradiction or a literal 0 factor.
struct raw_product
{
    std::map<std::size_t, bool> lits;
    bool                        zero{false};
};

using raw_sum = std::vector<raw_product>;

class parser
{
  public:
    explicit parser(std::string_view text) : src{text} {}

    parsed_expression run()
    {
        skip_space();
        if (at_end())
        {
            throw parse_error(parse_error::kind::syntax, pos, "empty expression");
        }
        auto sum = parse_sum();
        skip_space();
        if (!at_end())
        {
            throw parse_error(parse_error::kind::syntax, pos, std::string{"unexpected character '"} + src[pos] + "'");
        }

        std::vector<product_term> terms;
        for (const auto& p : sum)
        {
            if (p.zero)
            {
                continue;
            }
            std::vector<literal> lits;
            for (const auto& [var, positive] : p.lits)
            {
                lits.push_back({var, !positive});
            }
            product_term t{lits};
            if (std::find(terms.begin(), terms.end(), t) == terms.end())
            {
                terms.push_back(t);
            }
        }
        return {cover{names, std::move(terms)}, style};
    }

  private:
    std::string_view         src;
    std::size_t              pos{0};
    std::vector<std::string> names;
    expression_style         style;

    [[nodiscard]] bool at_end() const noexcept
    {
        return pos >= src.size();
    }

    void skip_space() noexcept
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(src[pos])))
        {
            ++pos;
        }
    }

    [[nodiscard]] bool starts_factor() const noexcept
    {
        if (at_end())
        {
            return false;
        }
        const char c = src[pos];
        return std::isalpha(static_cast<unsigned char>(c)) || c == '(' || c == '~' || c == '0' || c == '1';
    }

    raw_sum parse_sum()
    {
        auto sum = parse_product();
        skip_space();
        while (!at_end() && src[pos] == '+')
        {
            ++pos;
            skip_space();
            if (!starts_factor())
            {
                throw parse_error(parse_error::kind::syntax, pos,
                                  at_end() ? "expected a term after '+' but reached the end"
                                           : "expected a term after '+'");
            }
            auto more = parse_product();
            sum.insert(sum.end(), more.begin(), more.end());
            skip_space();
        }
        return sum;
    }

    raw_sum parse_product()
    {
        std::vector<std::pair<std::size_t, raw_sum>> factors;
        factors.emplace_back(pos, parse_factor());
        for (;;)
        {
            skip_space();
            if (!at_end() && src[pos] == '*')
            {
                style.explicit_and = true;
                ++pos;
                skip_space();
                if (!starts_factor())
                {
                    throw parse_error(parse_error::kind::syntax, pos, "expected a factor after '*'");
                }
            }
            else if (!starts_factor())
            {
                break;
            }
            factors.emplace_back(pos, parse_factor());
        }

        if (factors.size() == 1)
        {
            return std::move(factors.front().second);
        }
        raw_product acc;
        for (auto& [at, f] : factors)
        {
            if (f.size() > 1)
            {
                throw parse_error(parse_error::kind::non_two_level, at,
                                  "sum used as a factor of a product (expression is not two-level)");
            }
            if (f.empty())
            {
                acc.zero = true;
                continue;
            }
            const auto& p = f.front();
            acc.zero      = acc.zero || p.zero;
            for (const auto& [var, positive] : p.lits)
            {
                const auto [it, inserted] = acc.lits.emplace(var, positive);
                if (!inserted && it->second != positive)
                {
                    acc.zero = true;
                }
            }
        }
        return {acc};
    }

    raw_sum parse_factor()
    {
        skip_space();
        const auto start = pos;
        if (!at_end() && src[pos] == '~')
        {
            style.tilde_complement = true;
            ++pos;
            skip_space();
            if (!starts_factor())
            {
                throw parse_error(parse_error::kind::syntax, pos, "expected an operand after '~'");
            }
            return complement(parse_factor(), start);
        }
        auto f = parse_primary();
        for (;;)
        {
            skip_space();
            if (!at_end() && src[pos] == '\'')
            {
                ++pos;
                f = complement(std::move(f), start);
                continue;
            }
            return f;
        }
    }

    raw_sum parse_primary()
    {
        skip_space();
        if (at_end())
        {
            throw parse_error(parse_error::kind::syntax, pos, "unexpected end of expression");
        }
        const char c = src[pos];
        if (c == '0')
        {
            ++pos;
            return {};
        }
        if (c == '1')
        {
            ++pos;
            return {raw_product{}};
        }
        if (c == '(')
        {
            const auto open = pos;
            ++pos;
            skip_space();
            if (!starts_factor())
            {
                throw parse_error(parse_error::kind::syntax, pos, "expected an expression after '('");
            }
            auto inner = parse_sum();
            skip_space();
            if (at_end() || src[pos] != ')')
            {
                throw parse_error(parse_error::kind::syntax, pos,
                                  "unbalanced '(' opened at position " + std::to_string(open));
            }
            ++pos;
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c)))
        {
            const auto begin = pos;
            ++pos;
            while (!at_end() && (std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
            {
                ++pos;
            }
            const std::string name{src.substr(begin, pos - begin)};
            auto              it = std::find(names.begin(), names.end(), name);
            if (it == names.end())
            {
                if (names.size() == 32)
                {
                    throw parse_error(parse_error::kind::syntax, begin, "too many variables (limit 32)");
                }
                names.push_back(name);
                it = names.end() - 1;
            }
            raw_product p;
            p.lits.emplace(static_cast<std::size_t>(it - names.begin()), true);
            return {p};
        }
        throw parse_error(parse_error::kind::syntax, pos, std::string{"unexpected character '"} + c + "'");
    }

    static raw_sum complement(raw_sum f, std::size_t at)
    {
        if (f.empty())
        {
            return {raw_product{}};
        }
        if (f.size() == 1 && f.front().lits.empty() && !f.front().zero)
        {
            return {};
        }
        if (f.size() == 1 && f.front().lits.size() == 1 && !f.front().zero)
        {
            auto& lit  = *f.front().lits.begin();
            lit.second = !lit.second;
            return f;
        }
        throw parse_error(parse_error::kind::non_two_level, at,
                          "complement of a compound group (expression is not two-level)");
    }
};

}  // namespace

parsed_expression parse_expression_with_style(std::string_view text)
{
    return parser{text}.run();
}

cover parse_expression(std::string_view text)
{
    return parse_expression_with_style(text).function;
}

std::string to_string(const product_term& t, const std::vector<variable>& vars, const expression_style& style)
{
    if (t.empty())
    {
        return "1";
    }
    std::string out;
    bool        first = true;
    for (const auto& l : t.literals())
    {
        if (!first && style.explicit_and)
        {
            out += '*';
        }
        first = false;
        if (l.complemented && style.tilde_complement)
        {
            out += '~';
        }
        out += vars.at(l.var).name;
        if (l.complemented && !style.tilde_complement)
        {
            out += '\'';
        }
    }
    return out;
}

std::string to_string(const cover& c, const expression_style& style)
{
    if (c.terms().empty())
    {
        return "0";
    }
    std::string out;
    for (std::size_t i = 0; i < c.terms().size(); ++i)
    {
        if (i != 0)
        {
            out += " + ";
        }
        out += to_string(c.terms()[i], c.variables(), style);
    }
    return out;
}

}  // namespace qcahaz
