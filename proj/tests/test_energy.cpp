#include "oracles.hpp"

#include "qcahaz/energy.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace qcahaz;

namespace
{

double rel(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

qca_cell at(double x, double y)
{
    return {{x, y}};
}

// +1/2 on occupied dots, -1/2 on empty ones; also returns the sum of |terms|, the scale rounding errors live on
std::pair<double, double> neutral_oracle(point a, double pa, point b, double pb, double s)
{
    auto dots = [s](point c, double p)
    {
        const auto occ  = oracle::electrons(c, p, s);
        const auto free = oracle::electrons(c, -p, s);
        return std::array<std::pair<point, double>, 4>{
            {{occ[0], 0.5}, {occ[1], 0.5}, {free[0], -0.5}, {free[1], -0.5}}};
    };
    double e     = 0;
    double scale = 0;
    for (const auto& [p, q1] : dots(a, pa))
    {
        for (const auto& [r, q2] : dots(b, pb))
        {
            const double term = q1 * q2 * oracle::k_e2 / (std::hypot(p.x - r.x, p.y - r.y) * oracle::nm);
            e += term;
            scale += std::abs(term);
        }
    }
    return {e, scale};
}

}  // namespace

TEST_SUITE("energy")
{
    TEST_CASE("pair interaction")
    {
        for (const double eps : {1.0, 12.9})
        {
            for (const double r : {1.0, 9.0, 20.0, 63.7})
            {
                const double e = pair_interaction({0, 0}, {r * 0.6, r * 0.8}, {coulomb_k_e2, eps});
                CHECK(rel(e, 23.04e-29 / (eps * r * 1e-9)) <= 1e-12);
            }
        }
        CHECK_THROWS_AS(pair_interaction({1, 1}, {1, 1}, {}), energy_error);
    }

    TEST_CASE("electron sites")
    {
        const geometry g;
        const auto     plus = electron_positions(at(0, 0), 1.0, g);
        CHECK(plus[0] == point{4.5, 4.5});
        CHECK(plus[1] == point{-4.5, -4.5});
        const auto minus = electron_positions(at(0, 0), -1.0, g);
        const bool other_diagonal = (minus[0] == point{4.5, -4.5} && minus[1] == point{-4.5, 4.5}) ||
                                    (minus[1] == point{4.5, -4.5} && minus[0] == point{-4.5, 4.5});
        CHECK(other_diagonal);
        CHECK_THROWS_AS(electron_positions(at(0, 0), 0.5, g), energy_error);
    }

    TEST_CASE("cell energies match the brute-force pair sum")
    {
        std::mt19937                           rng{3};
        std::uniform_real_distribution<double> pos(-80.0, 80.0);
        const geometry                         g;
        int                                    done = 0;
        while (done < 500)
        {
            const point a{pos(rng), pos(rng)};
            const point b{pos(rng), pos(rng)};
            if (std::hypot(a.x - b.x, a.y - b.y) < 20)
            {
                continue;
            }
            ++done;
            for (const double pa : {-1.0, 1.0})
            {
                for (const double pb : {-1.0, 1.0})
                {
                    const auto ca = make_charge_config(at(a.x, a.y), pa, g);
                    const auto cb = make_charge_config(at(b.x, b.y), pb, g);
                    CHECK(rel(cells_interaction(ca, cb, {}), oracle::pair_sum(a, pa, b, pb, 9.0)) <= 1e-12);
                    CHECK(rel(cells_interaction(ca, cb, {coulomb_k_e2, 12.9}),
                              oracle::pair_sum(a, pa, b, pb, 9.0, 12.9)) <= 1e-12);
                    const auto [neutral, scale] = neutral_oracle(a, pa, b, pb, 9.0);
                    CHECK(std::abs(cells_interaction(ca, cb, {}, charge_model::neutralized) - neutral) <=
                          1e-12 * scale);
                }
            }
            CHECK(rel(kink_energy(at(a.x, a.y), at(b.x, b.y), g, {}), oracle::kink(a, b, 9.0)) <= 1e-12);
        }
    }

    TEST_CASE("kink energy symmetry, translation and scaling")
    {
        const geometry g;
        for (const auto& [dx, dy] : std::vector<std::pair<double, double>>{{20, 0}, {0, 20}, {20, 20}, {40, -20}})
        {
            const auto a = at(0, 0);
            const auto b = at(dx, dy);
            const double e = kink_energy(a, b, g, {});
            CHECK(rel(kink_energy(b, a, g, {}), e) <= 1e-12);
            CHECK(rel(kink_energy(at(137, -52), at(137 + dx, -52 + dy), g, {}), e) <= 1e-12);

            // all lengths doubled: every distance doubles, so the energy halves
            geometry g2 = g;
            g2.dot_spacing *= 2;
            g2.cell_size *= 2;
            g2.dot_diameter *= 2;
            g2.pitch *= 2;
            CHECK(rel(kink_energy(at(0, 0), at(2 * dx, 2 * dy), g2, {}), e / 2) <= 1e-12);
        }
        CHECK(kink_energy(at(0, 0), at(20, 0), g, {}) > 0);
        CHECK_THROWS_AS(kink_energy(at(0, 0), at(0, 0), g, {}), energy_error);
    }

    TEST_CASE("neighbourhood energy is the sum of pair energies")
    {
        const geometry g;
        const auto     target = at(0, 0);
        std::vector<cell_charge_config> drivers{make_charge_config(at(-20, 0), 1, g),
                                                make_charge_config(at(0, -20), 1, g),
                                                make_charge_config(at(0, 20), -1, g)};
        const double e = neighborhood_energy(target, -1, drivers, g, {});
        const double expect = oracle::pair_sum({0, 0}, -1, {-20, 0}, 1, 9) +
                              oracle::pair_sum({0, 0}, -1, {0, -20}, 1, 9) +
                              oracle::pair_sum({0, 0}, -1, {0, 20}, -1, 9);
        CHECK(rel(e, expect) <= 1e-12);
    }

    TEST_CASE("output stage energies")
    {
        for (const auto which : {demo_layout::with_hazard, demo_layout::hazard_free})
        {
            const auto layout = builtin_demo(which);
            const auto r      = output_stage_kink(layout, "f");
            CHECK(r.energy.e_kink == r.energy.e_opp - r.energy.e_same);
            REQUIRE_FALSE(r.drivers.empty());

            const auto& target = layout.cells[r.output_cell].center;
            double      opp    = 0;
            double      same   = 0;
            for (const auto d : r.drivers)
            {
                const auto& c = layout.cells[d].center;
                opp += oracle::pair_sum(target, -1, c, 1, 9);
                same += oracle::pair_sum(target, 1, c, 1, 9);
            }
            CHECK(rel(r.energy.e_opp, opp) <= 1e-12);
            CHECK(rel(r.energy.e_same, same) <= 1e-12);
        }
        CHECK_THROWS_AS(output_stage_kink(builtin_demo(demo_layout::wire), "nope"), std::invalid_argument);
    }

    TEST_CASE("stage energies and the geometry search")
    {
        const auto e = stage_energies(20, 9, {{-1, 0}, {0, -1}});
        CHECK(rel(e.e_opp, oracle::pair_sum({0, 0}, -1, {-20, 0}, 1, 9) + oracle::pair_sum({0, 0}, -1, {0, -20}, 1, 9)) <=
              1e-12);
        CHECK(e.e_kink == e.e_opp - e.e_same);

        const auto candidates = search_output_stage();
        CHECK(candidates.size() == 2 * (56 + 70));
        for (std::size_t i = 1; i < candidates.size(); ++i)
        {
            CHECK(candidates[i - 1].error <= candidates[i].error);
        }
        for (const auto& c : candidates)
        {
            CHECK(c.energy.e_kink == c.energy.e_opp - c.energy.e_same);
        }
    }
}
