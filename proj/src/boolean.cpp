#include "qcahaz/boolean.hpp"

#include <algorithm>
#include <bit>
#include <tuple>
#include <unordered_set>

namespace qcahaz
{

product_term::product_term(const std::vector<literal>& lits)
{
    for (const auto& l : lits)
    {
        if (l.var >= 32)
        {
            throw std::invalid_argument("variable index out of range");
        }
        const auto bit = std::uint32_t{1} << l.var;
        if (care_mask & bit)
        {
            throw std::invalid_argument("variable occurs twice in a product term");
        }
        care_mask |= bit;
        if (!l.complemented)
        {
            phase_mask |= bit;
        }
    }
}

product_term product_term::from_masks(std::uint32_t care, std::uint32_t phase) noexcept
{
    product_term t;
    t.care_mask  = care;
    t.phase_mask = phase & care;
    return t;
}

std::size_t product_term::size() const noexcept
{
    return static_cast<std::size_t>(std::popcount(care_mask));
}

std::vector<literal> product_term::literals() const
{
    std::vector<literal> out;
    for (std::size_t v = 0; v < 32; ++v)
    {
        if (contains(v))
        {
            out.push_back({v, ((phase_mask >> v) & 1u) == 0});
        }
    }
    return out;
}

bool term_less(const product_term& a, const product_term& b) noexcept
{
    const auto la = a.literals();
    const auto lb = b.literals();
    return std::lexicographical_compare(la.begin(), la.end(), lb.begin(), lb.end(),
                                        [](const literal& x, const literal& y)
                                        { return std::tie(x.var, x.complemented) < std::tie(y.var, y.complemented); });
}

assignment assignment::from_bits(std::uint32_t bits, std::size_t size)
{
    std::vector<bool> v(size);
    for (std::size_t i = 0; i < size; ++i)
    {
        v[i] = (bits >> i) & 1u;
    }
    return assignment{std::move(v)};
}

assignment assignment::from_string(std::string_view text)
{
    std::vector<bool> v;
    v.reserve(text.size());
    for (const char c : text)
    {
        if (c != '0' && c != '1')
        {
            throw std::invalid_argument("assignment must consist of 0 and 1 characters: '" + std::string{text} + "'");
        }
        v.push_back(c == '1');
    }
    return assignment{std::move(v)};
}

std::uint32_t assignment::to_bits() const noexcept
{
    std::uint32_t bits = 0;
    for (std::size_t i = 0; i < bits_.size() && i < 32; ++i)
    {
        if (bits_[i])
        {
            bits |= std::uint32_t{1} << i;
        }
    }
    return bits;
}

std::string assignment::to_string() const
{
    std::string s;
    s.reserve(bits_.size());
    for (const bool b : bits_)
    {
        s.push_back(b ? '1' : '0');
    }
    return s;
}

cover::cover(std::vector<std::string> variable_names, std::vector<product_term> terms) : term_list{std::move(terms)}
{
    if (variable_names.size() > 32)
    {
        throw std::invalid_argument("at most 32 variables are supported");
    }
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < variable_names.size(); ++i)
    {
        if (!seen.insert(variable_names[i]).second)
        {
            throw std::invalid_argument("duplicate variable name '" + variable_names[i] + "'");
        }
        vars.push_back({i, std::move(variable_names[i])});
    }
    const auto declared = vars.size() == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << vars.size()) - 1;
    for (const auto& t : term_list)
    {
        if (t.care() & ~declared)
        {
            throw std::invalid_argument("product term references an undeclared variable");
        }
    }
}

std::optional<std::size_t> cover::find_variable(std::string_view name) const noexcept
{
    for (const auto& v : vars)
    {
        if (v.name == name)
        {
            return v.index;
        }
    }
    return std::nullopt;
}

bool cover::is_trivially_constant() const noexcept
{
    return term_list.empty() ||
           std::any_of(term_list.begin(), term_list.end(), [](const auto& t) { return t.empty(); });
}

bool cover::eval_bits(std::uint32_t bits) const noexcept
{
    return std::any_of(term_list.begin(), term_list.end(), [bits](const auto& t) { return t.covers(bits); });
}

bool eval_cover(const cover& c, const assignment& a)
{
    if (a.size() != c.num_variables())
    {
        throw std::invalid_argument("assignment has " + std::to_string(a.size()) + " bits but the cover has " +
                                    std::to_string(c.num_variables()) + " variables");
    }
    return c.eval_bits(a.to_bits());
}

std::optional<product_term> consensus(const product_term& t1, const product_term& t2) noexcept
{
    const auto shared  = t1.care() & t2.care();
    const auto opposed = (t1.phase() ^ t2.phase()) & shared;
    if (std::popcount(opposed) != 1)
    {
        return std::nullopt;
    }
    const auto care = (t1.care() | t2.care()) & ~opposed;
    return product_term::from_masks(care, (t1.phase() | t2.phase()) & care);
}

std::vector<bool> truth_table(const cover& c)
{
    if (c.num_variables() > max_enumerable_variables)
    {
        throw std::invalid_argument("exhaustive enumeration is limited to " +
                                    std::to_string(max_enumerable_variables) + " variables");
    }
    const std::uint32_t rows = std::uint32_t{1} << c.num_variables();
    std::vector<bool>   table(rows, false);
    for (const auto& t : c.terms())
    {
        // walk the sub-cube of t: iterate the free bits
        const auto free = (rows - 1) & ~t.care();
        std::uint32_t sub = 0;
        do
        {
            table[t.phase() | sub] = true;
            sub                    = (sub - free) & free;
        } while (sub != 0);
    }
    return table;
}

namespace
{

struct cube_pair
{
    std::uint32_t low;   // toggled bit clear
    std::uint32_t high;  // toggled bit set
    std::size_t   var;
};

std::uint32_t rank_to_bits(std::uint32_t rank, std::size_t n) noexcept
{
    std::uint32_t bits = 0;
    for (std::size_t i = 0; i < n; ++i)
    {
        if ((rank >> (n - 1 - i)) & 1u)
        {
            bits |= std::uint32_t{1} << i;
        }
    }
    return bits;
}

bool jointly_covered(const std::vector<product_term>& terms, const cube_pair& p) noexcept
{
    return std::any_of(terms.begin(), terms.end(),
                       [&p](const auto& t) { return t.covers(p.low) && t.covers(p.high); });
}

std::vector<cube_pair> uncovered_pairs(const std::vector<product_term>& terms, const std::vector<bool>& table,
                                       std::size_t n)
{
    std::vector<cube_pair> out;
    const std::uint32_t    rows = std::uint32_t{1} << n;
    for (std::uint32_t rank = 0; rank < rows; ++rank)
    {
        const auto m = rank_to_bits(rank, n);
        if (!table[m])
        {
            continue;
        }
        for (std::size_t v = 0; v < n; ++v)
        {
            const auto bit = std::uint32_t{1} << v;
            if ((m & bit) || !table[m | bit])
            {
                continue;
            }
            const cube_pair p{m, m | bit, v};
            if (!jointly_covered(terms, p))
            {
                out.push_back(p);
            }
        }
    }
    return out;
}

bool better_term(const product_term& a, const product_term& b) noexcept
{
    if (a.size() != b.size())
    {
        return a.size() < b.size();
    }
    return term_less(a, b);
}

/// All consensus terms of (t1 covering low, t2 covering high), sorted by preference and deduplicated.
std::vector<product_term> curing_candidates(const std::vector<product_term>& terms, const cube_pair& p)
{
    std::vector<product_term> out;
    for (const auto& t1 : terms)
    {
        if (!t1.covers(p.low))
        {
            continue;
        }
        for (const auto& t2 : terms)
        {
            if (!t2.covers(p.high))
            {
                continue;
            }
            if (const auto c = consensus(t1, t2); c && c->covers(p.low) && c->covers(p.high))
            {
                out.push_back(*c);
            }
        }
    }
    std::sort(out.begin(), out.end(), better_term);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_implicant(const product_term& t, const std::vector<bool>& table, std::size_t n)
{
    const std::uint32_t rows = std::uint32_t{1} << n;
    const auto          free = (rows - 1) & ~t.care();
    std::uint32_t       sub  = 0;
    do
    {
        if (!table[t.phase() | sub])
        {
            return false;
        }
        sub = (sub - free) & free;
    } while (sub != 0);
    return true;
}

/// Prime implicant containing both minterms of the pair, by dropping literals in ascending variable order.
product_term expand_to_prime(const cube_pair& p, const std::vector<bool>& table, std::size_t n)
{
    const std::uint32_t all  = (std::uint32_t{1} << n) - 1;
    auto                term = product_term::from_masks(all & ~(std::uint32_t{1} << p.var), p.low);
    for (std::size_t v = 0; v < n; ++v)
    {
        if (!term.contains(v))
        {
            continue;
        }
        const auto care      = term.care() & ~(std::uint32_t{1} << v);
        const auto candidate = product_term::from_masks(care, term.phase());
        if (is_implicant(candidate, table, n))
        {
            term = candidate;
        }
    }
    return term;
}

product_term curing_term(const std::vector<product_term>& terms, const cube_pair& p, const std::vector<bool>& table,
                         std::size_t n)
{
    const auto candidates = curing_candidates(terms, p);
    if (!candidates.empty())
    {
        return candidates.front();
    }
    return expand_to_prime(p, table, n);
}

std::vector<product_term> greedy_cure(std::vector<product_term> terms, const std::vector<bool>& table, std::size_t n)
{
    std::vector<product_term> added;
    for (auto pairs = uncovered_pairs(terms, table, n); !pairs.empty(); pairs = uncovered_pairs(terms, table, n))
    {
        std::vector<product_term> pool;
        for (const auto& p : pairs)
        {
            auto c = curing_candidates(terms, p);
            if (c.empty())
            {
                c.push_back(expand_to_prime(p, table, n));
            }
            pool.insert(pool.end(), c.begin(), c.end());
        }
        std::sort(pool.begin(), pool.end(), better_term);
        pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

        const product_term* best       = nullptr;
        std::size_t         best_cured = 0;
        for (const auto& cand : pool)
        {
            const auto cured = static_cast<std::size_t>(std::count_if(
                pairs.begin(), pairs.end(), [&cand](const auto& p) { return cand.covers(p.low) && cand.covers(p.high); }));
            // pool is already in tie-break order, so only a strictly larger count replaces the incumbent
            if (cured > best_cured)
            {
                best       = &cand;
                best_cured = cured;
            }
        }
        terms.push_back(*best);
        added.push_back(*best);
    }
    return added;
}

}  // namespace

hazard_report detect_static1_hazards(const cover& c)
{
    const auto  n     = c.num_variables();
    const auto  table = truth_table(c);
    hazard_report report;
    for (const auto& p : uncovered_pairs(c.terms(), table, n))
    {
        report.hazards.push_back({assignment::from_bits(p.low, n), assignment::from_bits(p.high, n),
                                  c.variables()[p.var], curing_term(c.terms(), p, table, n)});
    }
    if (!report.hazards.empty())
    {
        report.added_terms = greedy_cure(c.terms(), table, n);
    }
    return report;
}

cover eliminate_hazards(const cover& c)
{
    const auto report = detect_static1_hazards(c);
    if (report.added_terms.empty())
    {
        return c;
    }
    std::vector<std::string> names;
    for (const auto& v : c.variables())
    {
        names.push_back(v.name);
    }
    auto terms = c.terms();
    terms.insert(terms.end(), report.added_terms.begin(), report.added_terms.end());
    return cover{std::move(names), std::move(terms)};
}

}  // namespace qcahaz
