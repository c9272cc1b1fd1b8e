#include "oracles.hpp"

#include "qcahaz/boolean.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace qcahaz;

TEST_SUITE("boolean")
{
    TEST_CASE("expression parsing")
    {
        const auto c = parse_expression("AB' + BC'");
        REQUIRE(c.num_variables() == 3);
        CHECK(c.variables()[0].name == "A");
        CHECK(c.variables()[2].name == "C");
        REQUIRE(c.terms().size() == 2);
        CHECK(c.terms()[0] == product_term({{0, false}, {1, true}}));
        CHECK(c.terms()[1] == product_term({{1, false}, {2, true}}));

        CHECK(parse_expression("A*~B + B*~C") == c);
        CHECK(parse_expression("(A B') + (B C')") == c);
        CHECK(parse_expression("x1x2' + x2").num_variables() == 2);
        CHECK(parse_expression("0").terms().empty());
        CHECK(parse_expression("1").is_trivially_constant());
    }

    TEST_CASE("parse errors carry kind and position")
    {
        CHECK_THROWS_AS(parse_expression(""), parse_error);
        CHECK_THROWS_AS(parse_expression("A +"), parse_error);
        CHECK_THROWS_AS(parse_expression("A & B"), parse_error);
        try
        {
            parse_expression("A(B + C)");
            FAIL("expected a parse error");
        }
        catch (const parse_error& e)
        {
            CHECK(e.error_kind() == parse_error::kind::non_two_level);
        }
        try
        {
            parse_expression("AB + $");
            FAIL("expected a parse error");
        }
        catch (const parse_error& e)
        {
            CHECK(e.error_kind() == parse_error::kind::syntax);
            CHECK(e.position() == 5);
        }
    }

    TEST_CASE("printing keeps the input style")
    {
        const auto p = parse_expression_with_style("A*~B + B*~C");
        CHECK(to_string(eliminate_hazards(p.function), p.style) == "A*~B + B*~C + A*~C");
        CHECK(to_string(parse_expression("AB' + BC'")) == "AB' + BC'");
        const auto round = parse_expression(to_string(parse_expression("x1 x2' + x3")));
        CHECK(round == parse_expression("x1 x2' + x3"));
    }

    TEST_CASE("assignment strings list variable 0 first")
    {
        const auto a = assignment::from_string("100");
        CHECK(a[0]);
        CHECK_FALSE(a[1]);
        CHECK(a.to_bits() == 1u);
        CHECK(assignment::from_bits(6u, 3).to_string() == "011");
        CHECK_THROWS(assignment::from_string("10x"));
    }

    TEST_CASE("consensus")
    {
        const auto ab = product_term({{0, false}, {1, true}});
        const auto bc = product_term({{1, false}, {2, true}});
        CHECK(consensus(ab, bc) == product_term({{0, false}, {2, true}}));
        CHECK_FALSE(consensus(ab, ab).has_value());
        // two opposed variables
        CHECK_FALSE(consensus(product_term({{0, false}, {1, false}}), product_term({{0, true}, {1, true}})));
    }

    TEST_CASE("consensus is implied by its parents")
    {
        std::mt19937 rng{7};
        int          checked = 0;
        for (int i = 0; i < 400; ++i)
        {
            const auto c = oracle::random_cover(rng, 5, 2);
            if (c.terms().size() < 2)
            {
                continue;
            }
            const auto k = consensus(c.terms()[0], c.terms()[1]);
            if (!k)
            {
                continue;
            }
            ++checked;
            for (std::uint32_t m = 0; m < (1u << c.num_variables()); ++m)
            {
                if (oracle::term_true(*k, m, c.num_variables()))
                {
                    CHECK(oracle::cover_true(c, m));
                }
            }
        }
        CHECK(checked > 20);
    }

    TEST_CASE("the case-study cover has one static-1 hazard")
    {
        const auto c = parse_expression("AB' + BC'");
        const auto r = detect_static1_hazards(c);
        REQUIRE(r.hazards.size() == 1);
        CHECK(r.hazards[0].minterm_a.to_string() == "100");
        CHECK(r.hazards[0].minterm_b.to_string() == "110");
        CHECK(r.hazards[0].toggled_variable.name == "B");
        CHECK(r.hazards[0].curing_term == product_term({{0, false}, {2, true}}));
        REQUIRE(r.added_terms.size() == 1);

        const auto fixed = eliminate_hazards(c);
        CHECK(fixed.terms().size() == 3);
        CHECK(detect_static1_hazards(fixed).hazard_free());
        CHECK(truth_table(fixed) == oracle::table(c));
    }

    TEST_CASE("hazard detection agrees with the adjacent-minterm oracle")
    {
        std::mt19937 rng{2024};
        for (int i = 0; i < 300; ++i)
        {
            const auto c = oracle::random_cover(rng, 5, 5);
            CAPTURE(to_string(c));
            std::set<std::pair<std::uint32_t, std::uint32_t>> found;
            for (const auto& h : detect_static1_hazards(c).hazards)
            {
                found.emplace(h.minterm_a.to_bits(), h.minterm_b.to_bits());
            }
            CHECK(found == oracle::hazards(c));
        }
    }

    TEST_CASE("hazard elimination preserves the function and removes every hazard")
    {
        std::mt19937 rng{99};
        for (int i = 0; i < 300; ++i)
        {
            const auto c     = oracle::random_cover(rng, 5, 5);
            const auto fixed = eliminate_hazards(c);
            CAPTURE(to_string(c));
            CHECK(oracle::table(fixed) == oracle::table(c));
            CHECK(oracle::hazards(fixed).empty());
            // the original terms stay in front
            CHECK(std::equal(c.terms().begin(), c.terms().end(), fixed.terms().begin()));
        }
    }

    TEST_CASE("evaluation")
    {
        const auto c = parse_expression("AB' + BC'");
        CHECK(eval_cover(c, assignment::from_string("100")));
        CHECK_FALSE(eval_cover(c, assignment::from_string("111")));
        CHECK_THROWS_AS(eval_cover(c, assignment::from_string("10")), std::invalid_argument);
        CHECK(truth_table(c) == oracle::table(c));
        CHECK(majority(true, false, true));
        CHECK_FALSE(majority(false, false, true));
    }
}
