#include "doctest.h"

#include "fungal/error.hpp"
#include "fungal/netlist.hpp"

#include <functional>

using namespace fungal;

namespace
{

ErrorCode code_of(std::string_view text)
{
    try
    {
        static_cast<void>(parse_netlist(text));
    }
    catch (const Error& e)
    {
        return e.code();
    }
    FAIL("netlist accepted: " << text);
    return ErrorCode::ParseError;
}

std::size_t line_of(std::string_view text)
{
    try
    {
        static_cast<void>(parse_netlist(text));
    }
    catch (const Error& e)
    {
        return e.line();
    }
    return 0;
}

// recursive evaluation straight from the gate definitions, ignoring the stored order
bool brute_force(const Netlist& n, std::uint64_t index)
{
    std::map<std::string, const NetGate*> by_id;
    for (const auto& g : n.gates)
    {
        by_id[g.id] = &g;
    }
    std::function<bool(const std::string&)> value = [&](const std::string& name) -> bool {
        for (std::size_t i = 0; i < n.inputs.size(); ++i)
        {
            if (n.inputs[i] == name)
            {
                return ((index >> (n.inputs.size() - 1 - i)) & 1U) != 0;
            }
        }
        const NetGate& g = *by_id.at(name);
        return g.kind == GateKind::And ? value(g.a) && value(g.b) : value(g.a) || value(g.b);
    };
    return value(n.output);
}

}  // namespace

TEST_CASE("two-input AND netlist")
{
    const Netlist n = parse_netlist("input a\ninput b\ngate g AND a b\noutput g\n");
    CHECK(n.inputs == std::vector<std::string>{"a", "b"});
    REQUIRE(n.gates.size() == 1);
    CHECK(n.gates[0] == NetGate{"g", GateKind::And, "a", "b"});
    CHECK(n.output == "g");
    CHECK_FALSE(evaluate_netlist(n, {{"a", true}, {"b", false}}));
    CHECK(evaluate_netlist(n, {{"a", true}, {"b", true}}));
}

TEST_CASE("OR of one and zero is one")
{
    const Netlist n = parse_netlist("input a\ninput b\ngate g OR a b\noutput g\n");
    CHECK(evaluate_netlist(n, {{"a", true}, {"b", false}}));
    CHECK_FALSE(evaluate_netlist(n, {{"a", false}, {"b", false}}));
}

TEST_CASE("comments, blank lines and a bare input as output")
{
    const Netlist n = parse_netlist("# wire\n\ninput a   # the only input\noutput a\n");
    CHECK(n.gates.empty());
    CHECK(evaluate_netlist(n, {{"a", true}}));
    CHECK_FALSE(evaluate_netlist(n, {{"a", false}}));
}

TEST_CASE("forward references are ordered by dependency")
{
    const Netlist n = parse_netlist("input a\ninput b\ngate top OR mid b\ngate mid AND a b\noutput top\n");
    REQUIRE(n.gates.size() == 2);
    CHECK(n.gates[0].id == "mid");
    CHECK(n.gates[1].id == "top");
    CHECK(netlist_depth(n) == 2);
}

TEST_CASE("netlist errors carry codes and lines")
{
    CHECK(code_of("output z\n") == ErrorCode::UnknownId);
    CHECK(line_of("output z\n") == 1);
    CHECK(code_of("input a\ngate g AND a q\noutput g\n") == ErrorCode::UnknownId);
    CHECK(line_of("input a\ngate g AND a q\noutput g\n") == 2);
    CHECK(code_of("input a\ngate g AND a\noutput g\n") == ErrorCode::Arity);
    CHECK(code_of("input a\ngate g OR a a a\noutput g\n") == ErrorCode::Arity);
    CHECK(code_of("input a\ngate g AND a a\n") == ErrorCode::NoOutput);
    CHECK(code_of("input a\ngate g AND a h\ngate h OR g a\noutput h\n") == ErrorCode::Cycle);
    CHECK(code_of("input a\ngate g XOR a a\noutput g\n") == ErrorCode::ParseError);
    CHECK(code_of("input a\ninput a\noutput a\n") == ErrorCode::ParseError);
    CHECK(code_of("wire a\n") == ErrorCode::ParseError);
    CHECK(code_of("input a\noutput a\noutput a\n") == ErrorCode::ParseError);
}

TEST_CASE("missing input values are reported")
{
    const Netlist n = parse_netlist("input a\ninput b\ngate g AND a b\noutput g\n");
    try
    {
        static_cast<void>(evaluate_netlist(n, {{"a", true}}));
        FAIL("missing input accepted");
    }
    catch (const Error& e)
    {
        CHECK(e.code() == ErrorCode::MissingInput);
    }
}

TEST_CASE("assignments put the first input in the top bit")
{
    const Netlist n = parse_netlist("input a\ninput b\ninput c\ngate g AND a b\noutput g\n");
    const Assignment x = assignment_from_index(n, 0b100);
    CHECK(x.at("a"));
    CHECK_FALSE(x.at("b"));
    CHECK_FALSE(x.at("c"));
}

TEST_CASE("random netlists round trip through text")
{
    for (std::uint64_t seed = 0; seed < 50; ++seed)
    {
        CAPTURE(seed);
        const Netlist n = random_netlist(seed, 20, 8);
        CHECK(n.gates.size() >= 1);
        CHECK(n.gates.size() <= 20);
        CHECK(n.inputs.size() >= 1);
        CHECK(n.inputs.size() <= 8);
        CHECK(parse_netlist(emit_netlist(n)) == n);
        CHECK(random_netlist(seed, 20, 8) == n);
    }
}

TEST_CASE("a twenty-gate random netlist matches brute force on every assignment")
{
    std::uint64_t seed = 0;
    Netlist n = random_netlist(seed, 20, 8);
    while (n.gates.size() != 20 || n.inputs.size() != 8)
    {
        n = random_netlist(++seed, 20, 8);
    }
    CHECK(parse_netlist(emit_netlist(n)) == n);
    for (std::uint64_t i = 0; i < 256; ++i)
    {
        CAPTURE(i);
        const bool got = evaluate_netlist(n, assignment_from_index(n, i));
        CHECK(got == brute_force(n, i));
    }
    // a monotone circuit sends all-zero to zero and all-one to one
    CHECK_FALSE(evaluate_netlist(n, assignment_from_index(n, 0)));
    CHECK(evaluate_netlist(n, assignment_from_index(n, 255)));
}

TEST_CASE("random netlists are brute-force consistent across seeds")
{
    for (std::uint64_t seed = 100; seed < 120; ++seed)
    {
        const Netlist n = random_netlist(seed, 20, 8);
        const std::uint64_t count = std::uint64_t{1} << n.inputs.size();
        for (std::uint64_t i = 0; i < count; ++i)
        {
            REQUIRE(evaluate_netlist(n, assignment_from_index(n, i)) == brute_force(n, i));
        }
    }
}
