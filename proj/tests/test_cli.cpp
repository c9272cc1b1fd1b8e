#include "oracles.hpp"

#include "qcahaz/cli.hpp"
#include "qcahaz/layout.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace qcahaz;

namespace
{

struct result
{
    int         code;
    std::string out;
    std::string err;
};

result cli(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int          code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream      in{p, std::ios::binary};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path scratch(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / "qcahaz_cli_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_SUITE("cli")
{
    TEST_CASE("fnv1a")
    {
        CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
        CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
        CHECK(fnv1a("foobar") == 0x85944171f73967e8ULL);
    }

    TEST_CASE("analyze")
    {
        const auto r = cli({"analyze", "AB' + BC'"});
        CHECK(r.code == exit_finding);
        CHECK(r.out.find("100 <-> 110 on B, cured by AC'") != std::string::npos);
        CHECK(cli({"analyze", "AB' + BC' + AC'"}).code == exit_clean);
        CHECK(cli({"analyze", "A +"}).code == exit_usage);
        CHECK(cli({"analyze"}).code == exit_usage);

        const auto j = nlohmann::json::parse(cli({"analyze", "AB' + BC'", "--json"}).out);
        CHECK(j["command"] == "analyze");
        CHECK(j["hazards"].size() == 1);
        CHECK(j["hazards"][0]["variable"] == "B");
        CHECK(j["added_terms"][0] == "AC'");
        CHECK(j["exit"] == 1);
        CHECK(j["digest"].get<std::string>().size() == 16);
    }

    TEST_CASE("fix keeps the input style")
    {
        CHECK(cli({"fix", "AB' + BC'"}).out == "AB' + BC' + AC'\n");
        CHECK(cli({"fix", "A*~B + B*~C"}).out == "A*~B + B*~C + A*~C\n");
    }

    TEST_CASE("glitch")
    {
        const auto bad = cli({"glitch", "AB' + BC'", "--from", "100", "--to", "110", "--delays",
                              "not.B=1,and.0=1,and.1=3,or=1"});
        CHECK(bad.code == exit_finding);
        CHECK(bad.out.find("time value\n3 0\n4 1\n") != std::string::npos);
        CHECK(bad.out.find("GLITCH") != std::string::npos);

        const auto good = cli({"glitch", "AB' + BC' + AC'", "--from", "100", "--to", "110", "--delays",
                               "and.1=3"});
        CHECK(good.code == exit_clean);
        CHECK(good.out.find("CLEAN") != std::string::npos);

        // dynamic transition: a single clean edge
        const auto dyn = cli({"glitch", "AB' + BC'", "--from", "000", "--to", "100"});
        CHECK(dyn.code == exit_clean);
        CHECK(dyn.out.find("(dynamic)") != std::string::npos);

        const auto same = cli({"glitch", "AB' + BC'", "--from", "100", "--to", "100"});
        CHECK(same.code == exit_clean);
        CHECK(same.out.find("time value\nverdict: CLEAN") != std::string::npos);

        CHECK(cli({"glitch", "AB' + BC'", "--from", "10", "--to", "110"}).code == exit_usage);
        CHECK(cli({"glitch", "AB' + BC'", "--from", "100", "--to", "110", "--delays", "and.9=2"}).code == exit_usage);
        CHECK(cli({"glitch", "AB' + BC'", "--from", "100", "--to", "110", "--delays", "or=x"}).code == exit_usage);
        CHECK(cli({"glitch", "AB' + BC'", "--from", "100"}).code == exit_usage);
    }

    TEST_CASE("synth, sim and kink")
    {
        const auto file = scratch("f.qcl");
        REQUIRE(cli({"synth", "AB' + BC'", "-o", file.string()}).code == exit_clean);
        const auto text = slurp(file);
        CHECK(text == cli({"synth", "AB' + BC'"}).out);
        CHECK(load_layout(text) == synthesize_sop(parse_expression("AB' + BC'")));

        const auto sim = cli({"sim", file.string(), "--expect", "AB' + BC'"});
        CHECK(sim.code == exit_clean);
        CHECK(sim.out.find("PASS") != std::string::npos);
        CHECK(sim.err.empty());
        const auto wrong = cli({"sim", file.string(), "--expect", "AB + BC'"});
        CHECK(wrong.code == exit_finding);
        CHECK(wrong.out.find("MISMATCH") != std::string::npos);
        CHECK(cli({"sim", file.string(), "--expect", "AB' + D"}).code == exit_usage);
        CHECK(cli({"sim", scratch("missing.qcl").string()}).code == exit_usage);

        const auto js = nlohmann::json::parse(cli({"sim", file.string(), "--json"}).out);
        CHECK(js["truth_table"].size() == 8);
        CHECK(js["inputs"] == nlohmann::json::array({"A", "B", "C"}));

        const auto k1 = cli({"kink", file.string(), "--cell-a", "3", "--cell-b", "4"});
        const auto k2 = cli({"kink", file.string(), "--cell-a", "4", "--cell-b", "3"});
        CHECK(k1.code == exit_clean);
        CHECK(k1.out == k2.out);
        CHECK(cli({"kink", file.string(), "--output-stage", "f"}).out.find("E_kink") != std::string::npos);
        CHECK(cli({"kink", file.string(), "--cell-a", "3"}).code == exit_usage);
        CHECK(cli({"kink", file.string(), "--cell-a", "3", "--cell-b", "99999"}).code == exit_usage);
        CHECK(cli({"kink", file.string(), "--output-stage", "f", "--cell-a", "1", "--cell-b", "2"}).code ==
              exit_usage);
        CHECK(cli({"kink", "--search"}).out.find("none is within 1%") != std::string::npos);
    }

    TEST_CASE("fix output always analyzes clean")
    {
        std::mt19937 rng{31};
        for (int i = 0; i < 100; ++i)
        {
            const auto expr  = to_string(oracle::random_cover(rng, 5, 5));
            const auto fixed = cli({"fix", expr});
            REQUIRE(fixed.code == exit_clean);
            const auto once = fixed.out.substr(0, fixed.out.size() - 1);
            CAPTURE(expr);
            CHECK(cli({"analyze", once}).code == exit_clean);
            CHECK(cli({"fix", once}).out == fixed.out);
        }
    }

    TEST_CASE("hazard-free synthesis simulates to the expression")
    {
        std::mt19937 rng{41};
        const auto   file = scratch("e2e.qcl");
        int          done = 0;
        while (done < 12)
        {
            const auto c  = oracle::random_cover(rng, 3, 3);
            const auto tt = oracle::table(c);
            if (std::all_of(tt.begin(), tt.end(), [&](bool b) { return b == tt.front(); }))
            {
                continue;
            }
            ++done;
            const auto expr = to_string(c);
            CAPTURE(expr);
            REQUIRE(cli({"synth", expr, "--hazard-free", "-o", file.string()}).code == exit_clean);
            const auto r = cli({"sim", file.string(), "--expect", cli({"fix", expr}).out});
            CHECK(r.code == exit_clean);
            CHECK(r.err.empty());
        }
    }

    TEST_CASE("synth honours QCAHAZ_GEOMETRY")
    {
        const auto geom = scratch("geom.txt");
        std::ofstream{geom} << "param pitch 25\n";
        setenv("QCAHAZ_GEOMETRY", geom.string().c_str(), 1);
        const auto text = cli({"synth", "AB"}).out;
        unsetenv("QCAHAZ_GEOMETRY");
        CHECK(load_layout(text).geometry.pitch == 25.0);
        CHECK(load_layout(cli({"synth", "AB"}).out).geometry.pitch == 20.0);
    }

    TEST_CASE("demo")
    {
        CHECK(cli({"demo", "fig12"}).out == demo_text(demo_layout::with_hazard));
        CHECK(cli({"demo", "fig13"}).out == demo_text(demo_layout::hazard_free));
        CHECK(cli({"demo", "and"}).out == demo_text(demo_layout::and_gate));
        CHECK(cli({"demo", "majority"}).out == demo_text(demo_layout::majority));
        CHECK(cli({"demo", "spiral"}).code == exit_usage);

        const auto wire = scratch("wire.qcl");
        REQUIRE(cli({"synth", "A", "-o", wire.string()}).code == exit_clean);
        for (const auto& cell : load_layout(slurp(wire)).cells)
        {
            CHECK_FALSE(cell.is_fixed());
        }
    }

    TEST_CASE("help and unknown commands")
    {
        const auto h = cli({"--help"});
        CHECK(h.code == exit_clean);
        CHECK(h.out.find("analyze") != std::string::npos);
        CHECK(cli({}).code == exit_usage);
        CHECK(cli({"frobnicate"}).code == exit_usage);
    }

    TEST_CASE("repeated runs are byte-identical")
    {
        const auto a = scratch("a.csv");
        const auto b = scratch("b.csv");
        const auto layout = scratch("demo.qcl");
        cli({"demo", "fig13", "-o", layout.string()});
        const auto r1 = cli({"sim", layout.string(), "-o", a.string(), "--json"});
        const auto r2 = cli({"sim", layout.string(), "-o", b.string(), "--json"});
        CHECK(r1.out == r2.out);
        CHECK(slurp(a) == slurp(b));
    }
}
