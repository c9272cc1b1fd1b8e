#ifndef QCAHAZ_BOOLEAN_HPP
#define QCAHAZ_BOOLEAN_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qcahaz
{

/// Largest variable count supported by exhaustive minterm enumeration.
inline constexpr std::size_t max_enumerable_variables = 20;

struct variable
{
    std::size_t index{};
    std::string name;

    bool operator==(const variable&) const = default;
};

struct literal
{
    std::size_t var{};
    bool        complemented{false};

    bool operator==(const literal&) const = default;
};

/**
 * A conjunction of literals stored as two bit masks over variable indices: `care` marks the variables that occur in
 * the term and `phase` marks the positive ones among them. Bit i corresponds to variable i. The empty term is the
 * constant 1.
 */
class product_term
{
  public:
    product_term() = default;

    /// Throws std::invalid_argument when a variable occurs twice.
    explicit product_term(const std::vector<literal>& lits);

    static product_term from_masks(std::uint32_t care, std::uint32_t phase) noexcept;

    [[nodiscard]] std::uint32_t care() const noexcept
    {
        return care_mask;
    }
    [[nodiscard]] std::uint32_t phase() const noexcept
    {
        return phase_mask;
    }
    [[nodiscard]] std::size_t size() const noexcept;
    [[nodiscard]] bool        empty() const noexcept
    {
        return care_mask == 0;
    }
    [[nodiscard]] bool contains(std::size_t var) const noexcept
    {
        return (care_mask >> var) & 1u;
    }

    /// Literals in ascending variable order.
    [[nodiscard]] std::vector<literal> literals() const;

    /// True iff the term evaluates to 1 on `bits` (bit i = value of variable i).
    [[nodiscard]] bool covers(std::uint32_t bits) const noexcept
    {
        return (bits & care_mask) == phase_mask;
    }

    bool operator==(const product_term&) const = default;

  private:
    std::uint32_t care_mask{0};
    std::uint32_t phase_mask{0};
};

/// Deterministic term order: literal sequences in variable order compared lexicographically, positive before
/// complemented, a proper prefix first.
bool term_less(const product_term& a, const product_term& b) noexcept;

/**
 * One boolean per variable. The string form lists variable 0 first, so `"100"` over (A, B, C) means A = 1.
 */
class assignment
{
  public:
    assignment() = default;
    explicit assignment(std::vector<bool> values) : bits_{std::move(values)} {}

    static assignment from_bits(std::uint32_t bits, std::size_t size);
    /// Parses a string of '0'/'1' characters.
    static assignment from_string(std::string_view text);

    [[nodiscard]] std::size_t size() const noexcept
    {
        return bits_.size();
    }
    [[nodiscard]] bool operator[](std::size_t i) const
    {
        return bits_.at(i);
    }
    [[nodiscard]] std::uint32_t to_bits() const noexcept;
    [[nodiscard]] std::string   to_string() const;

    bool operator==(const assignment&) const = default;

  private:
    std::vector<bool> bits_;
};

class cover
{
  public:
    cover() = default;
    /// Throws std::invalid_argument if names repeat, more than 32 variables are given, or a term references an
    /// undeclared variable.
    cover(std::vector<std::string> variable_names, std::vector<product_term> terms);

    [[nodiscard]] const std::vector<variable>& variables() const noexcept
    {
        return vars;
    }
    [[nodiscard]] const std::vector<product_term>& terms() const noexcept
    {
        return term_list;
    }
    [[nodiscard]] std::size_t num_variables() const noexcept
    {
        return vars.size();
    }
    [[nodiscard]] std::optional<std::size_t> find_variable(std::string_view name) const noexcept;

    /// Constant 0 (no terms) or constant 1 (an empty term present).
    [[nodiscard]] bool is_trivially_constant() const noexcept;

    /// Evaluates on packed bits (bit i = variable i).
    [[nodiscard]] bool eval_bits(std::uint32_t bits) const noexcept;

    bool operator==(const cover&) const = default;

  private:
    std::vector<variable>     vars;
    std::vector<product_term> term_list;
};

/// Throws std::invalid_argument on a length mismatch.
bool eval_cover(const cover& c, const assignment& a);

/// Three-input majority, AB + BC + CA.
constexpr bool majority(bool a, bool b, bool c) noexcept
{
    return (a && b) || (b && c) || (c && a);
}

/// Product of the remaining literals when the terms oppose in exactly one variable; otherwise absent.
std::optional<product_term> consensus(const product_term& t1, const product_term& t2) noexcept;

struct static1_hazard
{
    assignment   minterm_a;  ///< toggled variable is 0 here
    assignment   minterm_b;  ///< toggled variable is 1 here
    variable     toggled_variable;
    product_term curing_term;
};

struct hazard_report
{
    std::vector<static1_hazard> hazards;
    /// The terms eliminate_hazards() appends, in insertion order.
    std::vector<product_term> added_terms;

    [[nodiscard]] bool hazard_free() const noexcept
    {
        return hazards.empty();
    }
};

/**
 * Enumerates every unordered pair of adjacent true minterms and reports the pairs no single term covers. Pairs are
 * ordered by `minterm_a` read as a binary number with variable 0 most significant, then by toggled variable index.
 * Throws std::invalid_argument for covers with more than `max_enumerable_variables` variables.
 */
hazard_report detect_static1_hazards(const cover& c);

/// Appends consensus terms until no static-1 hazard remains. The function is unchanged.
cover eliminate_hazards(const cover& c);

/// Full truth table, indexed by packed bits.
std::vector<bool> truth_table(const cover& c);

// expression syntax -------------------------------------------------------------------------------------------------

class parse_error : public std::runtime_error
{
  public:
    enum class kind
    {
        syntax,
        non_two_level
    };

    parse_error(kind k, std::size_t pos, const std::string& what);

    [[nodiscard]] kind error_kind() const noexcept
    {
        return k;
    }
    /// Zero-based character offset.
    [[nodiscard]] std::size_t position() const noexcept
    {
        return pos;
    }

  private:
    kind        k;
    std::size_t pos;
};

/// Surface details of an expression, kept so rewritten covers print the way they were written.
struct expression_style
{
    bool tilde_complement{false};
    bool explicit_and{false};
};

struct parsed_expression
{
    cover            function;
    expression_style style;
};

/**
 * Parses a sum of products. Identifiers are a letter followed by digits or underscores, so `AB'` is A·B̄ and `x1x2`
 * is x1·x2. Complement is a postfix `'` or prefix `~`; AND is juxtaposition or `*`; OR is `+`. Parentheses may group
 * a product or a whole sum, but a sum used as a factor or a complemented group is rejected as non-two-level. The
 * digits 0 and 1 are constants.
 */
parsed_expression parse_expression_with_style(std::string_view text);

cover parse_expression(std::string_view text);

std::string to_string(const product_term& t, const std::vector<variable>& vars, const expression_style& style = {});
std::string to_string(const cover& c, const expression_style& style = {});

}  // namespace qcahaz

#endif  // QCAHAZ_BOOLEAN_HPP
