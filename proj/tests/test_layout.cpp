#include "oracles.hpp"

#include "qcahaz/layout.hpp"

#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

using namespace qcahaz;

namespace
{

std::string slurp(const std::string& path)
{
    std::ifstream      in{path, std::ios::binary};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool has(const std::vector<violation>& v, violation::kind k)
{
    return std::any_of(v.begin(), v.end(), [k](const auto& x) { return x.what == k; });
}

}  // namespace

TEST_SUITE("layout")
{
    TEST_CASE("primitives")
    {
        const auto maj = place_majority({100, 100}, 2);
        REQUIRE(maj.size() == 5);
        CHECK(maj[0].center == point{80, 100});
        CHECK(maj[1].center == point{100, 80});
        CHECK(maj[2].center == point{100, 120});
        CHECK(maj[3].center == point{100, 100});
        CHECK(maj[4].center == point{120, 100});
        for (const auto& c : maj)
        {
            CHECK(c.zone == 2);
        }

        const auto wire = place_wire({0, 0}, {80, 0}, {{2, 0}, {3, 1}});
        REQUIRE(wire.size() == 5);
        CHECK(wire[1].zone == 0);
        CHECK(wire[2].zone == 1);
        CHECK(wire[4].center == point{80, 0});

        const auto inv = place_inverter({0, 0}, 1);
        REQUIRE(inv.size() == 2);
        CHECK(inv[1].center == point{20, 20});
    }

    TEST_CASE("validation")
    {
        qca_layout l;
        l.cells = place_wire({0, 0}, {60, 0}, {{4, 0}});
        l.cells.front().role = role::input{"A"};
        l.cells.back().role  = role::output{"f"};
        CHECK(validate(l).empty());

        auto overlap = l;
        overlap.cells.push_back(overlap.cells[1]);
        CHECK(has(validate(overlap), violation::kind::overlap));

        auto zone = l;
        zone.cells[1].zone = 4;
        CHECK(has(validate(zone), violation::kind::zone_range));

        auto fixed = l;
        fixed.cells[1].role = role::fixed{0.3};
        CHECK(has(validate(fixed), violation::kind::fixed_polarization));

        auto dup = l;
        dup.cells[1].role = role::output{"f"};
        CHECK(has(validate(dup), violation::kind::duplicate_label));

        auto lonely = l;
        lonely.cells.push_back({{400, 400}});
        CHECK(has(validate(lonely), violation::kind::isolated));

        auto off = l;
        off.cells[2].center.x += 3;
        CHECK(has(validate(off), violation::kind::off_grid));

        auto geom = l;
        geom.geometry.cell_size = 30;
        CHECK(has(validate(geom), violation::kind::bad_geometry));
    }

    TEST_CASE("replica labels share a signal")
    {
        CHECK(signal_of_label("A.2") == "A");
        CHECK(signal_of_label("A") == "A");
        CHECK(signal_of_label("x1.10") == "x1");
        CHECK(signal_of_label("A.b") == "A.b");
        const auto l = synthesize_sop(parse_expression("AB + A'C + AC'"));
        CHECK(input_signals(l) == std::vector<std::string>{"A", "B", "C"});
    }

    TEST_CASE("qcl round trip")
    {
        for (const auto which : {demo_layout::with_hazard, demo_layout::hazard_free, demo_layout::wire,
                                 demo_layout::inverter, demo_layout::majority, demo_layout::and_gate,
                                 demo_layout::or_gate})
        {
            const auto l = builtin_demo(which);
            CAPTURE(demo_name(which));
            CHECK(load_layout(save_layout(l)) == l);
            CHECK(save_layout(load_layout(demo_text(which))) == demo_text(which));
            CHECK(validate(l).empty());
        }

        qca_layout odd;
        odd.name     = "odd";
        odd.geometry = {16.0, 4.0, 8.0, 19.0};
        odd.cells    = {{{0, 0}, cell_rotation::rotated_45, 3, role::input{"x_1"}},
                        {{19, 0}, cell_rotation::standard_90, 1, role::fixed{-1.0}},
                        {{38, 0}, cell_rotation::standard_90, 2, role::output{"out"}}};
        CHECK(load_layout(save_layout(odd)) == odd);
    }

    TEST_CASE("shipped data files match the built-in demos")
    {
        for (const auto which : {demo_layout::with_hazard, demo_layout::hazard_free, demo_layout::wire,
                                 demo_layout::inverter, demo_layout::majority, demo_layout::and_gate,
                                 demo_layout::or_gate})
        {
            const auto path = std::string{QCAHAZ_DATA_DIR} + "/" + std::string{demo_name(which)} + ".qcl";
            CAPTURE(path);
            CHECK(slurp(path) == demo_text(which));
        }
    }

    TEST_CASE("qcl parse errors")
    {
        auto line_of = [](const std::string& text)
        {
            try
            {
                load_layout(text);
            }
            catch (const layout_parse_error& e)
            {
                return e.line();
            }
            return std::size_t{999};
        };
        CHECK(line_of("") == 0);
        CHECK(line_of("cell 0 0 0 0 normal\n") == 1);
        CHECK(line_of("qcl 2\n") == 1);
        CHECK(line_of("qcl 1\ncell 0 0 0\n") == 2);
        CHECK(line_of("qcl 1\ncell 0 0 30 0 normal\n") == 2);
        CHECK(line_of("qcl 1\ncell 0 0 0 0 blob\n") == 2);
        CHECK(line_of("qcl 1\ncell 0 0 0 x normal\n") == 2);
        CHECK(line_of("qcl 1\nparam pitch\n") == 2);
        CHECK(line_of("qcl 1\nparam colour 3\n") == 2);
        CHECK(line_of("qcl 1\n# comment\n\nwire 0 0\n") == 4);
        CHECK(line_of("qcl 1\ncell 0 0 0 0 fixed:abc\n") == 2);
        CHECK(line_of("qcl 1\ncell 0 0 0 0 normal\n") == 999);
    }

    TEST_CASE("geometry files")
    {
        const auto g = load_geometry("param pitch 22\nparam dot_spacing 10\n");
        CHECK(g.pitch == 22.0);
        CHECK(g.dot_spacing == 10.0);
        CHECK(g.cell_size == 18.0);
        CHECK_THROWS_AS(load_geometry("cell 0 0 0 0 normal\n"), layout_parse_error);
        CHECK_THROWS_AS(load_geometry("param cell_size 40\n"), layout_parse_error);
        CHECK(check_geometry({}) == std::nullopt);
        CHECK(check_geometry({18, 5, 20, 20}).has_value());
    }

    TEST_CASE("synthesized layouts are valid and scale with the geometry")
    {
        std::mt19937 rng{11};
        for (int i = 0; i < 60; ++i)
        {
            const auto c = oracle::random_cover(rng, 4, 4);
            CAPTURE(to_string(c));
            const auto l = synthesize_sop(c);
            CHECK(validate(l).empty());
            CHECK(l.find_output("f").has_value());
            CHECK(load_layout(save_layout(l)) == l);
        }
        geometry wide;
        wide.pitch = 25;
        const auto a = synthesize_sop(parse_expression("AB' + BC'"));
        const auto b = synthesize_sop(parse_expression("AB' + BC'"), wide);
        REQUIRE(a.cells.size() == b.cells.size());
        for (std::size_t i = 0; i < a.cells.size(); ++i)
        {
            CHECK(b.cells[i].center.x == doctest::Approx(a.cells[i].center.x * 1.25));
            CHECK(b.cells[i].zone == a.cells[i].zone);
        }
        CHECK_THROWS_AS(synthesize_sop(parse_expression("1")), std::invalid_argument);
        CHECK_THROWS_AS(synthesize_sop(parse_expression("ABCDEFGHI")), std::invalid_argument);
    }
}
