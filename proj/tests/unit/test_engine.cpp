#include "doctest.h"

#include "fungal/engine.hpp"
#include "fungal/error.hpp"
#include "fungal/grid_io.hpp"

#include <random>

using namespace fungal;

namespace
{

const auto kFixed = ThresholdMode::FixedFour;
const auto kAdaptive = ThresholdMode::Adaptive;

ChipGrid random_grid(std::mt19937_64& rng, int size, ChipCount max_count)
{
    std::uniform_int_distribution<int> pos(0, size - 1);
    std::uniform_int_distribution<ChipCount> count(1, max_count);
    std::uniform_int_distribution<int> cells(1, size * size / 2 + 1);
    ChipGrid g;
    const int n = cells(rng);
    for (int i = 0; i < n; ++i)
    {
        g.set({pos(rng), pos(rng)}, count(rng));
    }
    return g;
}

}  // namespace

TEST_CASE("a lone four under the all-open gate spreads to its four neighbours")
{
    const ChipGrid g{{{0, 0}, 4}};
    const ChipGrid expected{{{1, 0}, 1}, {{-1, 0}, 1}, {{0, 1}, 1}, {{0, -1}, 1}};
    CHECK(step(g, GateStep::All, kFixed) == expected);
}

TEST_CASE("a lone four under H keeps two chips and sends one east and one west")
{
    const ChipGrid g{{{0, 0}, 4}};
    const ChipGrid expected{{{0, 0}, 2}, {{1, 0}, 1}, {{-1, 0}, 1}};
    CHECK(step(g, GateStep::H, kFixed) == expected);
    const ChipGrid expected_v{{{0, 0}, 2}, {{0, 1}, 1}, {{0, -1}, 1}};
    CHECK(step(g, GateStep::V, kFixed) == expected_v);
}

TEST_CASE("cells below threshold do not move")
{
    const ChipGrid g{{{0, 0}, 3}};
    CHECK(step(g, GateStep::H, kFixed) == g);
    CHECK(step(g, GateStep::All, kFixed) == g);
}

TEST_CASE("adaptive threshold fires two chips under V")
{
    const ChipGrid g{{{0, 0}, 2}};
    const ChipGrid expected{{{0, 1}, 1}, {{0, -1}, 1}};
    CHECK(step(g, GateStep::V, kAdaptive) == expected);
    CHECK(step(g, GateStep::All, kAdaptive) == g);
}

TEST_CASE("adjacent firing cells exchange chips simultaneously")
{
    const ChipGrid g{{{0, 0}, 4}, {{1, 0}, 4}};
    const ChipGrid expected{{{0, 0}, 3}, {{1, 0}, 3}, {{-1, 0}, 1}, {{2, 0}, 1}};
    CHECK(step(g, GateStep::H, kFixed) == expected);
}

TEST_CASE("a cell holding eight fires once per step")
{
    const ChipGrid g{{{0, 0}, 8}};
    const ChipGrid once{{{0, 0}, 4}, {{1, 0}, 1}, {{-1, 0}, 1}, {{0, 1}, 1}, {{0, -1}, 1}};
    CHECK(step(g, GateStep::All, kFixed) == once);
    const ChipGrid twice{{{1, 0}, 2}, {{-1, 0}, 2}, {{0, 1}, 2}, {{0, -1}, 2}};
    CHECK(run(g, Schedule::parse("A"), 2, kFixed) == twice);
}

TEST_CASE("block gates open only the sides inside each 2x2 block")
{
    const ChipGrid g{{{0, 0}, 4}};
    const ChipGrid even{{{0, 0}, 2}, {{1, 0}, 1}, {{0, 1}, 1}};
    CHECK(step(g, GateStep::BlockEven, kFixed) == even);
    const ChipGrid odd{{{0, 0}, 2}, {{-1, 0}, 1}, {{0, -1}, 1}};
    CHECK(step(g, GateStep::BlockOdd, kFixed) == odd);
    const ChipGrid neg{{{-3, -4}, 4}};
    const ChipGrid neg_even{{{-3, -4}, 2}, {{-4, -4}, 1}, {{-3, -3}, 1}};
    CHECK(step(neg, GateStep::BlockEven, kFixed) == neg_even);
}

TEST_CASE("side openness is symmetric for every gate kind")
{
    for (const GateStep g : {GateStep::H, GateStep::V, GateStep::All, GateStep::BlockEven, GateStep::BlockOdd})
    {
        for (int x = -3; x <= 3; ++x)
        {
            for (int y = -3; y <= 3; ++y)
            {
                const Coord c{x, y};
                CHECK(side_open(g, c, Direction::East) == side_open(g, c + Coord{1, 0}, Direction::West));
                CHECK(side_open(g, c, Direction::South) == side_open(g, c + Coord{0, 1}, Direction::North));
            }
        }
    }
}

TEST_CASE("run composes steps along the cyclic word")
{
    const ChipGrid g{{{0, 0}, 4}};
    const Schedule hv = Schedule::parse("HV");
    CHECK(run(g, hv, 0, kFixed) == g);
    CHECK(run(g, hv, 2, kFixed) == step(step(g, GateStep::H, kFixed), GateStep::V, kFixed));
}

TEST_CASE("trace starts with the input and matches run at every frame")
{
    const ChipGrid g{{{0, 0}, 4}};
    const auto frames0 = trace(g, Schedule::parse("H"), 0, kFixed);
    REQUIRE(frames0.size() == 1);
    CHECK(frames0[0] == g);
    const auto frames1 = trace(g, Schedule::parse("H"), 1, kFixed);
    REQUIRE(frames1.size() == 2);
    CHECK(frames1[1] == ChipGrid{{{0, 0}, 2}, {{1, 0}, 1}, {{-1, 0}, 1}});
}

TEST_CASE("probe reports the first step at which the site is nonzero")
{
    CHECK(probe(ChipGrid{{{0, 0}, 4}}, Schedule::parse("H"), 1, {1, 0}, kFixed) == 1U);
    CHECK(probe(ChipGrid{{{0, 0}, 3}}, Schedule::parse("HV"), 10, {1, 0}, kFixed) == std::nullopt);
    try
    {
        (void)probe(ChipGrid{{{1, 0}, 1}}, Schedule::parse("H"), 1, {1, 0}, kFixed);
        FAIL("expected PROBE_NOT_EMPTY");
    }
    catch (const Error& e)
    {
        CHECK(e.code() == ErrorCode::ProbeNotEmpty);
    }
}

TEST_CASE("total chip count")
{
    CHECK(total_chips(ChipGrid{}) == 0);
    CHECK(total_chips(ChipGrid{{{0, 0}, 4}, {{2, 3}, 1}}) == 5);
}

TEST_CASE("schedule text round trip and repetition")
{
    const Schedule s = Schedule::parse("H^4V^4");
    CHECK(s.length() == 8);
    CHECK(s.at(3) == GateStep::H);
    CHECK(s.at(4) == GateStep::V);
    CHECK(s.at(8) == GateStep::H);
    CHECK(s.to_string() == "H^4V^4");
    CHECK(Schedule::parse("HHVV").to_string() == "H^2V^2");
    CHECK(Schedule::parse("AEO").length() == 3);
    CHECK(s.transposed() == Schedule::parse("V^4H^4"));
    CHECK(s.cyclically_equal(Schedule::parse("V^4H^4")));
    CHECK_THROWS_AS((void)Schedule::parse(""), Error);
    CHECK_THROWS_AS((void)Schedule::parse("H^0"), Error);
    CHECK_THROWS_AS((void)Schedule::parse("HX"), Error);
}

TEST_CASE("grid text parses comments and rejects duplicates")
{
    const ChipGrid g = parse_grid("# header\n0 0 4\n 2 -3 1  # trailing\n\n");
    CHECK(g == ChipGrid{{{0, 0}, 4}, {{2, -3}, 1}});
    CHECK(format_grid(g) == "2 -3 1\n0 0 4\n");
    try
    {
        (void)parse_grid("0 0 1\n0 0 2\n");
        FAIL("expected DUPLICATE_COORD");
    }
    catch (const Error& e)
    {
        CHECK(e.code() == ErrorCode::DuplicateCoord);
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS((void)parse_grid("0 0 0\n"), Error);
    CHECK_THROWS_AS((void)parse_grid("0 0\n"), Error);
}

TEST_CASE("ascii rendering")
{
    const ChipGrid g{{{0, 0}, 4}, {{2, 0}, 12}, {{1, 1}, 1}};
    CHECK(render_ascii(g) == "4.+\n.1.\n");
}

TEST_CASE("dense simulator agrees with the sparse reference step")
{
    std::mt19937_64 rng(7);
    const std::vector<std::string> words{"H^4V^4", "HV", "A", "EO", "HHVVA"};
    for (int trial = 0; trial < 60; ++trial)
    {
        const ChipGrid g = random_grid(rng, 12, 8);
        const Schedule s = Schedule::parse(words[static_cast<std::size_t>(trial) % words.size()]);
        for (const ThresholdMode mode : {kFixed, kAdaptive})
        {
            ChipGrid ref = g;
            Simulator sim(g, s, mode);
            for (std::uint64_t t = 0; t < 40; ++t)
            {
                ref = step(ref, s.at(t), mode);
                sim.step();
            }
            CHECK(sim.grid() == ref);
            CHECK(sim.total() == total_chips(g));
        }
    }
}

TEST_CASE("injection between steps matches adding chips to the grid")
{
    const Schedule s = Schedule::parse("H^4V^4");
    ChipGrid g{{{0, 0}, 3}, {{1, 0}, 3}, {{2, 0}, 3}};
    Simulator sim(g, s, kFixed);
    sim.run(3);
    sim.add({-1, 0}, 4);
    ChipGrid ref = run(g, s, 3, kFixed);
    ref.add({-1, 0}, 4);
    for (std::uint64_t t = 3; t < 12; ++t)
    {
        ref = step(ref, s.at(t), kFixed);
    }
    sim.run(9);
    CHECK(sim.grid() == ref);
}
