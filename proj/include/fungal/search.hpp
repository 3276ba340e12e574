#pragma once

#include "fungal/chip_grid.hpp"
#include "fungal/gadget.hpp"
#include "fungal/schedule.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fungal
{

enum class Contract : std::uint8_t
{
    QuiescentWire,
    Or2,
    And2,
    Cross
};

std::string_view to_string(Contract c) noexcept;
Contract parse_contract(std::string_view s);

/**
 * A bounded search problem. Candidates are all grids on the window
 * [0, width) x [0, height) with at most `max_chips` per cell; the contract fixes
 * where the ports sit relative to the window (see contract_ports).
 */
struct SearchSpec
{
    Schedule word{std::vector<GateStep>{GateStep::H}};
    ThresholdMode mode{ThresholdMode::FixedFour};
    std::int64_t width{1};
    std::int64_t height{1};
    ChipCount max_chips{4};
    Contract contract{Contract::QuiescentWire};
    /// Largest number of candidates handed to check_contract (0: unlimited).
    std::uint64_t budget{0};
    /// Skip candidates that cannot be quiescent.
    bool prune{true};
};

/**
 * Ports for a window. Wire: in west of the top-left cell, out at the bottom-right
 * cell. Gates: inputs west and east of the top row, junction column in the middle,
 * out at the bottom of that column. Cross: west-to-east along the middle row and
 * north-to-south along the middle column.
 */
struct ContractPorts
{
    std::vector<Port> inputs;
    std::vector<Port> outputs;
    GadgetFunction function{GadgetFunction::Wire};
};
[[nodiscard]] ContractPorts contract_ports(const SearchSpec& spec);

struct EnumerationStats
{
    /// Points of the raw space that were passed, whether pruned or yielded.
    std::uint64_t visited{0};
    std::uint64_t pruned{0};
    std::uint64_t yielded{0};
};

/// Size of the unpruned space, saturating at UINT64_MAX.
[[nodiscard]] std::uint64_t raw_space_size(const SearchSpec& spec);

/**
 * Calls `visit` for every candidate in row-major order with counts ascending
 * (the first cell is the most significant digit). Stops early when `visit`
 * returns false. Pruning never changes the relative order of survivors.
 */
EnumerationStats enumerate_candidates(const SearchSpec& spec, const std::function<bool(const ChipGrid&)>& visit);

struct ContractResult
{
    bool passed{false};
    /// The candidate wrapped as a calibrated gadget (valid even on failure).
    Gadget gadget;
    /// Human-readable trace of the first violated clause; empty on success.
    std::string witness;
};

[[nodiscard]] ContractResult check_contract(const ChipGrid& candidate, const SearchSpec& spec);

struct SearchResult
{
    std::optional<Gadget> gadget;
    EnumerationStats stats;
    std::uint64_t checked{0};
};

/**
 * First candidate, in enumeration order, that passes its contract. Throws
 * BUDGET_EXHAUSTED (with the number of candidates checked) when the budget runs
 * out before the space does.
 */
[[nodiscard]] SearchResult search(const SearchSpec& spec);

/// Deterministic JSON manifest describing the spec and the outcome.
[[nodiscard]] std::string search_manifest(const SearchSpec& spec, const SearchResult& result);

}  // namespace fungal
