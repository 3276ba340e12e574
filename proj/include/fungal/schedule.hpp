#pragma once

#include "fungal/coord.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fungal
{

/**
 * Which cell sides are open during one step.
 *
 * H opens the east and west sides of every cell, so chips flow horizontally;
 * V opens north and south. All opens every side (the classic sandpile).
 * BlockEven / BlockOdd open only the sides interior to the 2x2 blocks
 * {2i,2i+1}x{2j,2j+1}, respectively the same blocks shifted by (1,1).
 */
enum class GateStep : std::uint8_t
{
    H,
    V,
    All,
    BlockEven,
    BlockOdd
};

enum class ThresholdMode : std::uint8_t
{
    FixedFour,  // fire at >= 4 chips
    Adaptive    // fire at >= number of open sides
};

/// Number of sides a cell has open under `g`. Every cell has the same count.
constexpr int open_sides(GateStep g) noexcept { return g == GateStep::All ? 4 : 2; }

constexpr std::uint32_t firing_threshold(GateStep g, ThresholdMode m) noexcept
{
    return m == ThresholdMode::FixedFour ? 4U : static_cast<std::uint32_t>(open_sides(g));
}

/// Whether the side of `cell` facing `dir` is open under `g`. Symmetric across the side.
bool side_open(GateStep g, Coord cell, Direction dir) noexcept;

char to_char(GateStep g) noexcept;
GateStep parse_gate_step(char c);

std::string_view to_string(ThresholdMode m) noexcept;
ThresholdMode parse_mode(std::string_view s);

/// Nonempty word over gate steps, applied cyclically: step t uses word[t mod length].
class Schedule
{
  public:
    explicit Schedule(std::vector<GateStep> word);

    /// Parses letters H V A E O with `^k` repetition, e.g. "H^4V^4".
    static Schedule parse(std::string_view text);

    [[nodiscard]] GateStep at(std::uint64_t t) const noexcept { return word_[t % word_.size()]; }
    [[nodiscard]] std::size_t length() const noexcept { return word_.size(); }
    [[nodiscard]] const std::vector<GateStep>& word() const noexcept { return word_; }

    /// Canonical text: runs of two or more letters are written as X^k.
    [[nodiscard]] std::string to_string() const;

    /// The word with H and V exchanged, i.e. how the schedule looks after a quarter-turn.
    [[nodiscard]] Schedule transposed() const;

    /// Same word up to a cyclic shift.
    [[nodiscard]] bool cyclically_equal(const Schedule& other) const;

    friend bool operator==(const Schedule&, const Schedule&) = default;

  private:
    std::vector<GateStep> word_;
};

}  // namespace fungal
