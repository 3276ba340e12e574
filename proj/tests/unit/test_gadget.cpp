#include "doctest.h"

#include "fungal/designs.hpp"
#include "fungal/engine.hpp"
#include "fungal/error.hpp"
#include "fungal/gadget.hpp"
#include "fungal/grid_io.hpp"

#include <filesystem>

using namespace fungal;

namespace
{

const std::vector<Gadget>& shipped()
{
    static const std::vector<Gadget> gadgets = load_catalog(default_catalog_dir());
    return gadgets;
}

const Gadget& shipped(std::string_view name)
{
    const Gadget* g = find_gadget(shipped(), name);
    REQUIRE(g != nullptr);
    return *g;
}

std::vector<std::vector<bool>> observed_table(const VerificationReport& r)
{
    std::vector<std::vector<bool>> out;
    for (const auto& c : r.combinations)
    {
        out.push_back(c.observed);
    }
    return out;
}

}  // namespace

TEST_CASE("gadget text round trip")
{
    for (const Gadget& g : shipped())
    {
        CAPTURE(g.name);
        CHECK(parse_gadget(format_gadget(g)) == g);
    }
}

TEST_CASE("gadget parser reports missing headers and bad lines")
{
    CHECK_THROWS_AS(static_cast<void>(parse_gadget("name x\n")), Error);
    const std::string ok = "name w\nword HV\nmode fixed4\nperiod 2\nlatency 3\nfunction WIRE\nport in -1 0 E 0\n0 0 3\n";
    CHECK_NOTHROW(static_cast<void>(parse_gadget(ok)));
    try
    {
        static_cast<void>(parse_gadget(ok + "0 0 3\n"));
        FAIL("duplicate cell accepted");
    }
    catch (const Error& e)
    {
        CHECK(e.code() == ErrorCode::DuplicateCoord);
        CHECK(e.line() == 9);
    }
    try
    {
        static_cast<void>(parse_gadget(ok + "port in 0 0 Q 0\n"));
        FAIL("bad direction accepted");
    }
    catch (const Error& e)
    {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(e.line() == 9);
    }
    CHECK_THROWS_AS(static_cast<void>(parse_gadget(ok + "port out 0 0 E 7\n")), Error);
    CHECK_THROWS_AS(static_cast<void>(parse_gadget(ok + "function NAND\n")), Error);
}

TEST_CASE("instantiate translates and rotates")
{
    const Gadget& wire = shipped("h4v4_wire");
    const PlacedGadget same = instantiate(wire, {0, 0}, 0);
    CHECK(same.grid == wire.footprint);
    CHECK(same.inputs == wire.inputs);

    const PlacedGadget moved = instantiate(wire, {10, 5}, 0);
    CHECK(moved.grid == wire.footprint.translated({10, 5}));
    CHECK(moved.inputs[0].offset == wire.inputs[0].offset + Coord{10, 5});

    try
    {
        static_cast<void>(instantiate(wire, {0, 0}, 1));
        FAIL("quarter turn accepted");
    }
    catch (const Error& e)
    {
        CHECK(e.code() == ErrorCode::RotationWordMismatch);
    }
    const Schedule swapped = Schedule::parse("V^4H^4");
    const PlacedGadget turned = instantiate(wire, {0, 0}, 1, swapped);
    CHECK(turned.inputs[0].direction == Direction::South);
    CHECK(turned.inputs[0].offset == rotate_cw(wire.inputs[0].offset));
    CHECK_NOTHROW(static_cast<void>(instantiate(wire, {0, 0}, 2)));

    Gadget rotated = wire;
    rotated.word = swapped;
    rotated.footprint = turned.grid;
    rotated.inputs = turned.inputs;
    rotated.outputs = turned.outputs;
    CHECK(verify_gadget(rotated, wire.latency + 2).passed(rotated));
}

TEST_CASE("assert_signal adds a packet or nothing")
{
    const Gadget& wire = shipped("h4v4_wire");
    const Port& in = wire.inputs[0];
    CHECK(assert_signal(wire.footprint, in, false) == wire.footprint);
    const ChipGrid one = assert_signal(wire.footprint, in, true);
    CHECK(one.at(in.offset) == wire.footprint.at(in.offset) + 4);
    CHECK(assert_signal(one, in, true).at(in.offset) == 8);
}

TEST_CASE("band gates have the expected truth tables")
{
    using Table = std::vector<std::vector<bool>>;
    const Gadget& g_and = shipped("h4v4_and2");
    const auto and_report = verify_gadget(g_and, g_and.latency + 1);
    CHECK(observed_table(and_report) == Table{{false}, {false}, {false}, {true}});
    CHECK(and_report.passed(g_and));

    const Gadget& g_or = shipped("h4v4_or2");
    const auto or_report = verify_gadget(g_or, g_or.latency + 1);
    CHECK(observed_table(or_report) == Table{{false}, {true}, {true}, {true}});
    CHECK(or_report.passed(g_or));

    const Gadget& cross = shipped("h4v4_cross");
    const auto cross_report = verify_gadget(cross, cross.latency + 1);
    CHECK(observed_table(cross_report) == Table{{false, false}, {false, true}, {true, false}, {true, true}});
    CHECK(cross_report.passed(cross));
}

TEST_CASE("an OR junction declared as AND fails its contract")
{
    Gadget g = shipped("h4v4_or2");
    g.function = GadgetFunction::And2;
    CHECK_FALSE(verify_gadget(g, g.latency + 1).function_matches());
}

TEST_CASE("verification preconditions")
{
    Gadget g = shipped("hv_wire");
    CHECK_THROWS_AS(static_cast<void>(verify_gadget(g, g.latency)), Error);
    g.period = 3;
    try
    {
        static_cast<void>(verify_gadget(g, 10));
        FAIL("period mismatch accepted");
    }
    catch (const Error& e)
    {
        CHECK(e.code() == ErrorCode::PeriodMismatch);
    }
}

TEST_CASE("backward allowance is enforced")
{
    Gadget g = shipped("a_or2");
    REQUIRE(g.backward > 0);
    const auto report = verify_gadget(g, g.latency + 1);
    CHECK(report.passed(g));
    CHECK(report.backward_extent() == g.backward);
    g.backward = 0;
    CHECK_FALSE(report.passed(g));
}

TEST_CASE("moving an output off the signal path breaks the function")
{
    Gadget g = shipped("hv_wire");
    g.outputs[0].offset = {40, 40};
    const auto report = verify_gadget(g, g.latency + 1);
    CHECK_FALSE(report.function_matches());
    CHECK_FALSE(report.passed(g));
}

TEST_CASE("catalog lookup by word and mode")
{
    const auto h4v4 = catalog(Schedule::parse("H^4V^4"), ThresholdMode::FixedFour);
    CHECK(provides(h4v4, GadgetFunction::Cross));
    CHECK(provides(h4v4, GadgetFunction::And2));
    CHECK(provides(h4v4, GadgetFunction::Or2));
    CHECK(provides(h4v4, GadgetFunction::Wire));

    for (const char* word : {"HV", "H^2V^2", "H^3V^3", "A"})
    {
        CAPTURE(word);
        const auto family = catalog(Schedule::parse(word), ThresholdMode::FixedFour);
        CHECK(provides(family, GadgetFunction::Wire));
        CHECK(provides(family, GadgetFunction::And2));
        CHECK(provides(family, GadgetFunction::Or2));
        CHECK_FALSE(provides(family, GadgetFunction::Cross));
    }
    const auto adaptive = catalog(Schedule::parse("H^4V^4"), ThresholdMode::Adaptive);
    CHECK(provides(adaptive, GadgetFunction::Wire));
    CHECK(provides(adaptive, GadgetFunction::And2));
    CHECK_FALSE(provides(adaptive, GadgetFunction::Cross));

    try
    {
        static_cast<void>(catalog(Schedule::parse("HHV"), ThresholdMode::FixedFour));
        FAIL("unknown word accepted");
    }
    catch (const Error& e)
    {
        CHECK(e.code() == ErrorCode::UnsupportedWord);
    }
}

TEST_CASE("every shipped gadget is quiescent and passes verification")
{
    for (const Gadget& g : shipped())
    {
        CAPTURE(g.name);
        CHECK(run(g.footprint, g.word, g.period, g.mode) == g.footprint);
        const auto report = verify_gadget(g, 2 * g.latency + 2);
        CHECK(report.passed(g));
    }
}

TEST_CASE("catalog files are exactly what the generator produces")
{
    const auto generated = designs::catalog_gadgets();
    CHECK(generated.size() == shipped().size());
    for (const Gadget& g : generated)
    {
        CAPTURE(g.name);
        const auto path = default_catalog_dir() / (g.name + ".gadget");
        REQUIRE(std::filesystem::exists(path));
        CHECK(read_file(path) == format_gadget(g));
    }
}

TEST_CASE("only the OR gates of the staircase and open families send signals backwards")
{
    for (const Gadget& g : shipped())
    {
        CAPTURE(g.name);
        if (g.function != GadgetFunction::Or2)
        {
            CHECK(g.backward == 0);
        }
    }
    CHECK(shipped("a_or2").backward > 0);
    CHECK(shipped("h4v4_or2").backward == 0);
}

TEST_CASE("two band wires abutted end to end verify as one longer wire")
{
    const Gadget& wire = shipped("h4v4_wire");
    const Bounds box = *wire.footprint.bounds();
    const Coord shift{box.width(), 0};
    Gadget twice = wire;
    twice.name = "h4v4_wire_x2";
    twice.footprint.merge(wire.footprint.translated(shift));
    twice.outputs[0].offset = wire.outputs[0].offset + shift;
    twice.latency = 2 * wire.latency;
    const auto report = verify_gadget(twice, twice.latency + 1);
    CHECK(report.function_matches());
    CHECK(report.contained());
    CHECK(report.quiescent);
}

TEST_CASE("band wire moves four cells per word")
{
    const Gadget& wire = shipped("h4v4_wire");
    Simulator sim(assert_signal(wire.footprint, wire.inputs[0], true), wire.word, wire.mode);
    const Bounds corridor{{-27 + 8, -3}, {32 - 8, 3}};
    sim.run(8);
    ChipGrid previous = sim.grid(corridor.expanded(4));
    for (int period = 0; period < 8; ++period)
    {
        sim.run(8);
        const ChipGrid now = sim.grid(corridor.expanded(4));
        for (std::int64_t y = corridor.min.y; y <= corridor.max.y; ++y)
        {
            for (std::int64_t x = corridor.min.x + 4; x <= corridor.max.x; ++x)
            {
                CHECK(now.at({x, y}) == previous.at({x - 4, y}));
            }
        }
        previous = now;
    }
}

TEST_CASE("catalog directory errors")
{
    CHECK_THROWS_AS(static_cast<void>(load_catalog("/nonexistent/catalog")), Error);
}
