#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace fungal
{

enum class GateKind : std::uint8_t
{
    And,
    Or
};

std::string_view to_string(GateKind k) noexcept;

struct NetGate
{
    std::string id;
    GateKind kind{GateKind::And};
    std::string a;
    std::string b;

    friend bool operator==(const NetGate&, const NetGate&) = default;
};

/// Monotone circuit: named inputs, two-input gates in dependency order, one output.
struct Netlist
{
    std::vector<std::string> inputs;
    std::vector<NetGate> gates;
    std::string output;

    friend bool operator==(const Netlist&, const Netlist&) = default;
};

using Assignment = std::map<std::string, bool>;

/**
 * Reads `input <name>`, `gate <id> AND|OR <arg> <arg>` and `output <id>` lines.
 * Arguments may be defined later in the file; gates are stored in dependency
 * order (file order among independent gates). Errors: UNKNOWN_ID, CYCLE, ARITY,
 * NO_OUTPUT, and PARSE_ERROR for anything else malformed.
 */
[[nodiscard]] Netlist parse_netlist(std::string_view text);
[[nodiscard]] std::string emit_netlist(const Netlist& n);

/// MISSING_INPUT when the assignment does not cover every input.
[[nodiscard]] bool evaluate_netlist(const Netlist& n, const Assignment& assignment);

/// The `index`-th assignment, first input as the most significant bit.
[[nodiscard]] Assignment assignment_from_index(const Netlist& n, std::uint64_t index);

/// Longest input-to-output gate count.
[[nodiscard]] std::size_t netlist_depth(const Netlist& n);

/**
 * Seeded random monotone netlist with 1..max_inputs inputs and 1..max_gates gates;
 * the last gate is the output. Uses only the raw generator output, so the result
 * is the same on every platform.
 */
[[nodiscard]] Netlist random_netlist(std::uint64_t seed, std::size_t max_gates, std::size_t max_inputs);

}  // namespace fungal
