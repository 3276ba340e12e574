#include "doctest.h"

#include "fungal/engine.hpp"
#include "fungal/error.hpp"
#include "fungal/gadget.hpp"
#include "fungal/search.hpp"

using namespace fungal;

namespace
{

SearchSpec spec_for(std::string_view word, std::int64_t w, std::int64_t h, Contract contract)
{
    SearchSpec s;
    s.word = Schedule::parse(word);
    s.width = w;
    s.height = h;
    s.contract = contract;
    return s;
}

std::uint64_t count_candidates(const SearchSpec& spec)
{
    std::uint64_t n = 0;
    static_cast<void>(enumerate_candidates(spec, [&n](const ChipGrid&) {
        ++n;
        return true;
    }));
    return n;
}

ChipGrid shipped_footprint(std::string_view name, Coord shift)
{
    const auto gadgets = load_catalog(default_catalog_dir());
    const Gadget* g = find_gadget(gadgets, name);
    REQUIRE(g != nullptr);
    return g->footprint.translated(shift);
}

}  // namespace

TEST_CASE("candidate counts with and without pruning")
{
    SearchSpec s = spec_for("HV", 1, 1, Contract::QuiescentWire);
    s.prune = false;
    CHECK(raw_space_size(s) == 5);
    CHECK(count_candidates(s) == 5);
    s.prune = true;
    CHECK(count_candidates(s) == 4);

    s = spec_for("HV", 2, 1, Contract::QuiescentWire);
    s.prune = false;
    CHECK(count_candidates(s) == 25);

    s = spec_for("HV", 3, 3, Contract::Cross);
    CHECK(raw_space_size(s) == 1953125);
    std::uint64_t seen = 0;
    const auto stats = enumerate_candidates(s, [&seen](const ChipGrid&) {
        ++seen;
        return true;
    });
    CHECK(seen == 262144);
    CHECK(stats.yielded == 262144);
    CHECK(stats.visited == raw_space_size(s));
    CHECK(stats.pruned + stats.yielded == stats.visited);
}

TEST_CASE("enumeration order puts the first cell most significant")
{
    SearchSpec s = spec_for("HV", 2, 1, Contract::QuiescentWire);
    s.max_chips = 2;
    std::vector<std::pair<ChipCount, ChipCount>> order;
    static_cast<void>(enumerate_candidates(s, [&order](const ChipGrid& g) {
        order.emplace_back(g.at({0, 0}), g.at({1, 0}));
        return true;
    }));
    const std::vector<std::pair<ChipCount, ChipCount>> expected{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1},
                                                                {1, 2}, {2, 0}, {2, 1}, {2, 2}};
    CHECK(order == expected);
}

TEST_CASE("pruned candidates would fail the contract anyway")
{
    SearchSpec s = spec_for("HV", 2, 1, Contract::QuiescentWire);
    s.prune = false;
    std::size_t checked = 0;
    static_cast<void>(enumerate_candidates(s, [&](const ChipGrid& g) {
        bool hot = false;
        for (const auto& [c, n] : g)
        {
            hot = hot || n >= 4;
        }
        if (hot)
        {
            CHECK_FALSE(check_contract(g, s).passed);
            ++checked;
        }
        return true;
    }));
    CHECK(checked == 9);
}

TEST_CASE("empty window carries nothing")
{
    const SearchSpec s = spec_for("HV", 3, 4, Contract::QuiescentWire);
    const auto r = check_contract(ChipGrid{}, s);
    CHECK_FALSE(r.passed);
    CHECK_FALSE(r.witness.empty());
}

TEST_CASE("known gadgets satisfy the search contracts")
{
    const SearchSpec wire = spec_for("HV", 3, 4, Contract::QuiescentWire);
    const auto w = check_contract(shipped_footprint("hv_wire", {-1, 0}), wire);
    CHECK(w.passed);
    CHECK(w.witness.empty());

    const SearchSpec gate = spec_for("A", 9, 5, Contract::And2);
    ChipGrid junction = shipped_footprint("a_and2", {4, 0});
    CHECK(check_contract(junction, gate).passed);
    junction.set({4, 0}, 3);
    const auto as_or = check_contract(junction, gate);
    CHECK_FALSE(as_or.passed);
    CHECK_FALSE(as_or.witness.empty());
}

TEST_CASE("search finds the smallest staircase wire")
{
    const SearchSpec s = spec_for("HV", 2, 2, Contract::QuiescentWire);
    const auto r = search(s);
    REQUIRE(r.gadget.has_value());
    const ChipGrid expected{{{0, 0}, 3}, {{0, 1}, 3}, {{1, 1}, 3}};
    CHECK(r.gadget->footprint == expected);
    CHECK(verify_gadget(*r.gadget, r.gadget->latency + 1).passed(*r.gadget));
}

TEST_CASE("search results are sound and deterministic")
{
    for (const auto& s : {spec_for("A", 3, 1, Contract::QuiescentWire), spec_for("A", 3, 2, Contract::And2)})
    {
        const auto first = search(s);
        const auto second = search(s);
        REQUIRE(first.gadget.has_value());
        CHECK(first.gadget == second.gadget);
        CHECK(first.checked == second.checked);
        CHECK(search_manifest(s, first) == search_manifest(s, second));
        CHECK(verify_gadget(*first.gadget, first.gadget->latency + 1).passed(*first.gadget));
    }
}

TEST_CASE("search reports an empty result and budget exhaustion")
{
    // a lone cell holding 2 gets one chip from each input packet and reaches 4 only when both fire
    const auto junction = search(spec_for("A", 1, 1, Contract::And2));
    REQUIRE(junction.gadget.has_value());
    CHECK(junction.gadget->footprint == ChipGrid{{{0, 0}, 2}});
    CHECK(junction.checked == 3);

    const auto none = search(spec_for("A", 1, 1, Contract::Cross));
    CHECK_FALSE(none.gadget.has_value());
    CHECK(none.checked == 4);

    SearchSpec s = spec_for("HV", 3, 3, Contract::Cross);
    s.budget = 10;
    try
    {
        static_cast<void>(search(s));
        FAIL("budget ignored");
    }
    catch (const Error& e)
    {
        CHECK(e.code() == ErrorCode::BudgetExhausted);
    }
}

TEST_CASE("contract names")
{
    CHECK(parse_contract("QUIESCENT_WIRE") == Contract::QuiescentWire);
    CHECK(parse_contract("WIRE") == Contract::QuiescentWire);
    CHECK(parse_contract("AND2") == Contract::And2);
    CHECK(to_string(Contract::Cross) == "CROSS");
    CHECK_THROWS_AS(static_cast<void>(parse_contract("NAND")), Error);
}
