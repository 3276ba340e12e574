#pragma once

#include "fungal/chip_grid.hpp"
#include "fungal/schedule.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace fungal
{

/**
 * One synchronous update. The firing set is read from `grid` alone; every firing
 * cell loses one chip per open side and each open neighbour gains one chip.
 * A cell fires at most once per step, however many chips it holds.
 */
[[nodiscard]] ChipGrid step(const ChipGrid& grid, GateStep gate, ThresholdMode mode);

/// Applies the first `steps` letters of the cyclically extended word.
[[nodiscard]] ChipGrid run(const ChipGrid& grid, const Schedule& schedule, std::uint64_t steps,
                           ThresholdMode mode);

/// Frames 0..steps; frame t equals run(grid, schedule, t, mode).
[[nodiscard]] std::vector<ChipGrid> trace(const ChipGrid& grid, const Schedule& schedule,
                                          std::uint64_t steps, ThresholdMode mode);

/**
 * Earliest t in 1..steps with a nonzero count at `site`, or nullopt.
 * Throws PROBE_NOT_EMPTY when the site starts with chips.
 */
[[nodiscard]] std::optional<std::uint64_t> probe(const ChipGrid& grid, const Schedule& schedule,
                                                 std::uint64_t steps, Coord site, ThresholdMode mode);

/**
 * Dense, stateful simulator used by everything that runs many steps.
 *
 * Cells live in a rectangular window that grows whenever a firing cell comes
 * within one cell of its border, so results never depend on the window.
 * Only cells holding at least the smallest threshold of the word are visited,
 * which makes a step cost proportional to activity rather than area.
 */
class Simulator
{
  public:
    Simulator(const ChipGrid& grid, Schedule schedule, ThresholdMode mode, std::uint64_t start_time = 0);

    /// Applies word[time() mod length] and advances the clock.
    void step();
    void run(std::uint64_t steps);

    [[nodiscard]] std::uint64_t time() const noexcept { return time_; }
    [[nodiscard]] const Schedule& schedule() const noexcept { return schedule_; }
    [[nodiscard]] ThresholdMode mode() const noexcept { return mode_; }

    [[nodiscard]] ChipCount at(Coord c) const noexcept;
    /// Places extra chips between steps (signal assertion).
    void add(Coord c, ChipCount n);

    /// True when no cell can fire under any letter of the word, so the state is final.
    [[nodiscard]] bool dormant() const noexcept { return hot_.empty(); }
    /// Number of cells that fired during the most recent step.
    [[nodiscard]] std::size_t last_firings() const noexcept { return last_firings_; }
    /// Sites that fired during the most recent step.
    [[nodiscard]] std::vector<Coord> last_fired() const;

    [[nodiscard]] ChipGrid grid() const;
    /// Cells inside `region` only.
    [[nodiscard]] ChipGrid grid(const Bounds& region) const;
    [[nodiscard]] std::uint64_t total() const noexcept;
    /// Bounding box of every cell that has ever been nonzero or been allocated.
    [[nodiscard]] Bounds window() const noexcept { return window_; }

  private:
    [[nodiscard]] bool inside(Coord c) const noexcept { return window_.contains(c); }
    [[nodiscard]] std::size_t index(Coord c) const noexcept
    {
        return static_cast<std::size_t>(c.y - window_.min.y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(c.x - window_.min.x);
    }
    void ensure(Bounds needed);
    void rebuild_hot();
    void mark_hot(std::size_t i);

    Schedule schedule_;
    ThresholdMode mode_;
    std::uint64_t time_;
    ChipCount min_threshold_;

    Bounds window_{};
    std::int64_t width_{0};
    std::vector<ChipCount> cells_;
    std::vector<std::uint8_t> in_hot_;
    std::vector<std::size_t> hot_;
    std::vector<std::size_t> firing_;
    std::size_t last_firings_{0};
};

}  // namespace fungal
