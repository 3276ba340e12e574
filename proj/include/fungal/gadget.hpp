#pragma once

#include "fungal/chip_grid.hpp"
#include "fungal/schedule.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fungal
{

/// Boolean behaviour a gadget promises. WIRE copies its single input to every output.
enum class GadgetFunction : std::uint8_t
{
    Wire,
    Or2,
    And2,
    Cross
};

std::string_view to_string(GadgetFunction f) noexcept;
GadgetFunction parse_gadget_function(std::string_view s);

/// Output bits `f` promises for one input assignment.
[[nodiscard]] std::vector<bool> expected_outputs(GadgetFunction f, const std::vector<bool>& inputs,
                                                 std::size_t output_count);

/**
 * Where a signal enters or leaves a gadget. `direction` is the direction the
 * signal travels there; `phase` is the step within the word at which an input
 * is driven or an output is sampled.
 */
struct Port
{
    Coord offset;
    Direction direction{Direction::East};
    std::uint32_t phase{0};

    friend bool operator==(const Port&, const Port&) = default;
};

struct Gadget
{
    std::string name;
    Schedule word{std::vector<GateStep>{GateStep::H}};
    ThresholdMode mode{ThresholdMode::FixedFour};
    ChipGrid footprint;
    std::vector<Port> inputs;
    std::vector<Port> outputs;
    std::uint32_t period{1};
    /// Every asserted output fires before the end of this many ticks.
    std::uint32_t latency{1};
    GadgetFunction function{GadgetFunction::Wire};
    /// Cells behind an input port that a returning signal may reach (0: none tolerated).
    std::uint32_t backward{0};

    friend bool operator==(const Gadget&, const Gadget&) = default;
};

/// Chips a signal packet carries.
inline constexpr ChipCount kSignalChips = 4;

[[nodiscard]] Gadget parse_gadget(std::string_view text);
[[nodiscard]] std::string format_gadget(const Gadget& g);
[[nodiscard]] Gadget load_gadget(const std::filesystem::path& path);

struct PlacedGadget
{
    ChipGrid grid;
    std::vector<Port> inputs;
    std::vector<Port> outputs;
};

/**
 * Rotates the gadget by `rotation` clockwise quarter-turns and moves its origin to `origin`.
 * A quarter-turn swaps the roles of H and V, so odd rotations are only allowed
 * when the transposed word equals `target_word` (by default the gadget's own word).
 */
[[nodiscard]] PlacedGadget instantiate(const Gadget& g, Coord origin, int rotation,
                                       const std::optional<Schedule>& target_word = std::nullopt);

/// Adds a signal packet at the port site when `value` is set.
[[nodiscard]] ChipGrid assert_signal(const ChipGrid& grid, const Port& port, bool value);

struct CombinationReport
{
    std::vector<bool> inputs;
    std::vector<bool> expected;
    std::vector<bool> observed;
    /// First step at which each output site held a firing load on its sampling phase.
    std::vector<std::optional<std::uint64_t>> first_fire;
    /// Sites outside the allowed region that ever held chips.
    std::size_t escaped_cells{0};
    /// Cells that fired while nearer to an idle input port than to any other port.
    std::size_t backward_extent{0};
};

struct VerificationReport
{
    std::string gadget;
    std::uint32_t ticks{0};
    bool quiescent{false};
    std::vector<CombinationReport> combinations;

    [[nodiscard]] bool function_matches() const;
    [[nodiscard]] bool within_latency(const Gadget& g) const;
    [[nodiscard]] bool contained() const;
    [[nodiscard]] std::size_t backward_extent() const;
    [[nodiscard]] bool passed(const Gadget& g) const;
};

/**
 * Simulates every input assignment for `ticks` full words. Throws PERIOD_MISMATCH
 * when the word length does not divide the period and CONTRACT_VIOLATION when
 * `ticks` does not exceed the latency.
 */
[[nodiscard]] VerificationReport verify_gadget(const Gadget& g, std::uint32_t ticks);
[[nodiscard]] std::string format_report(const Gadget& g, const VerificationReport& report);

/// Directory the build points at; overridable with the FUNGAL_CATALOG environment variable.
[[nodiscard]] std::filesystem::path default_catalog_dir();

/// Every gadget file (`*.gadget`) in `dir`, in file-name order.
[[nodiscard]] std::vector<Gadget> load_catalog(const std::filesystem::path& dir);

/// Gadgets for exactly this word and mode; UNSUPPORTED_WORD when there are none.
[[nodiscard]] std::vector<Gadget> catalog(const Schedule& word, ThresholdMode mode,
                                          const std::filesystem::path& dir = default_catalog_dir());

/// The gadget called `name` in `gadgets`, or nullptr.
[[nodiscard]] const Gadget* find_gadget(const std::vector<Gadget>& gadgets, std::string_view name);

/// Whether any gadget in the list implements `f`.
[[nodiscard]] bool provides(const std::vector<Gadget>& gadgets, GadgetFunction f);

}  // namespace fungal
