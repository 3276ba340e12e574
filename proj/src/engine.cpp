#include "fungal/engine.hpp"

#include "fungal/error.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace fungal
{

namespace
{

constexpr std::array<Direction, 4> kDirections{Direction::East, Direction::West, Direction::North,
                                               Direction::South};

constexpr std::int64_t kInitialMargin = 8;

ChipCount smallest_threshold(const Schedule& schedule, ThresholdMode mode)
{
    ChipCount lowest = 4;
    for (const GateStep g : schedule.word())
    {
        lowest = std::min(lowest, firing_threshold(g, mode));
    }
    return lowest;
}

}  // namespace

ChipGrid step(const ChipGrid& grid, GateStep gate, ThresholdMode mode)
{
    const ChipCount threshold = firing_threshold(gate, mode);
    const auto alpha = static_cast<ChipCount>(open_sides(gate));

    std::vector<Coord> firing;
    for (const auto& [c, n] : grid)
    {
        if (n >= threshold)
        {
            firing.push_back(c);
        }
    }

    ChipGrid next = grid;
    for (const Coord c : firing)
    {
        next.remove(c, alpha);
        for (const Direction d : kDirections)
        {
            if (side_open(gate, c, d))
            {
                next.add(c + unit(d), 1);
            }
        }
    }
    return next;
}

ChipGrid run(const ChipGrid& grid, const Schedule& schedule, std::uint64_t steps, ThresholdMode mode)
{
    if (steps == 0)
    {
        return grid;
    }
    Simulator sim(grid, schedule, mode);
    sim.run(steps);
    return sim.grid();
}

std::vector<ChipGrid> trace(const ChipGrid& grid, const Schedule& schedule, std::uint64_t steps,
                            ThresholdMode mode)
{
    std::vector<ChipGrid> frames;
    frames.reserve(steps + 1);
    frames.push_back(grid);
    Simulator sim(grid, schedule, mode);
    for (std::uint64_t t = 0; t < steps; ++t)
    {
        sim.step();
        frames.push_back(sim.grid());
    }
    return frames;
}

std::optional<std::uint64_t> probe(const ChipGrid& grid, const Schedule& schedule, std::uint64_t steps,
                                   Coord site, ThresholdMode mode)
{
    if (grid.at(site) != 0)
    {
        throw Error(ErrorCode::ProbeNotEmpty, "probe site (" + std::to_string(site.x) + "," +
                                                  std::to_string(site.y) + ") holds " +
                                                  std::to_string(grid.at(site)) + " chips");
    }
    Simulator sim(grid, schedule, mode);
    for (std::uint64_t t = 1; t <= steps; ++t)
    {
        sim.step();
        if (sim.at(site) != 0)
        {
            return t;
        }
        if (sim.dormant())
        {
            break;
        }
    }
    return std::nullopt;
}

Simulator::Simulator(const ChipGrid& grid, Schedule schedule, ThresholdMode mode, std::uint64_t start_time)
    : schedule_(std::move(schedule)),
      mode_(mode),
      time_(start_time),
      min_threshold_(smallest_threshold(schedule_, mode))
{
    const Bounds content = grid.bounds().value_or(Bounds{{0, 0}, {0, 0}});
    window_ = content.expanded(kInitialMargin);
    width_ = window_.width();
    cells_.assign(static_cast<std::size_t>(width_ * window_.height()), 0);
    in_hot_.assign(cells_.size(), 0);
    for (const auto& [c, n] : grid)
    {
        cells_[index(c)] = n;
    }
    rebuild_hot();
}

void Simulator::rebuild_hot()
{
    hot_.clear();
    std::fill(in_hot_.begin(), in_hot_.end(), 0);
    for (std::size_t i = 0; i < cells_.size(); ++i)
    {
        if (cells_[i] >= min_threshold_)
        {
            in_hot_[i] = 1;
            hot_.push_back(i);
        }
    }
}

void Simulator::mark_hot(std::size_t i)
{
    if (in_hot_[i] == 0 && cells_[i] >= min_threshold_)
    {
        in_hot_[i] = 1;
        hot_.push_back(i);
    }
}

void Simulator::ensure(Bounds needed)
{
    if (window_.contains(needed.min) && window_.contains(needed.max))
    {
        return;
    }
    const std::int64_t grow = std::max<std::int64_t>(16, std::max(window_.width(), window_.height()) / 2);
    Bounds next = window_.merged(needed);
    if (needed.min.x < window_.min.x) next.min.x -= grow;
    if (needed.min.y < window_.min.y) next.min.y -= grow;
    if (needed.max.x > window_.max.x) next.max.x += grow;
    if (needed.max.y > window_.max.y) next.max.y += grow;

    const std::int64_t new_width = next.width();
    std::vector<ChipCount> cells(static_cast<std::size_t>(new_width * next.height()), 0);
    for (std::int64_t y = window_.min.y; y <= window_.max.y; ++y)
    {
        const auto src = cells_.begin() + static_cast<std::ptrdiff_t>(index({window_.min.x, y}));
        const auto dst = static_cast<std::size_t>((y - next.min.y) * new_width + (window_.min.x - next.min.x));
        std::copy(src, src + width_, cells.begin() + static_cast<std::ptrdiff_t>(dst));
    }
    window_ = next;
    width_ = new_width;
    cells_ = std::move(cells);
    in_hot_.assign(cells_.size(), 0);
    rebuild_hot();
    firing_.clear();
}

void Simulator::step()
{
    const GateStep gate = schedule_.at(time_);
    const ChipCount threshold = firing_threshold(gate, mode_);

    // make room first so that every neighbour write below stays in the window
    std::optional<Bounds> reach;
    for (const std::size_t i : hot_)
    {
        if (cells_[i] < threshold)
        {
            continue;
        }
        const auto w = static_cast<std::size_t>(width_);
        const Coord c{static_cast<std::int64_t>(i % w) + window_.min.x,
                      static_cast<std::int64_t>(i / w) + window_.min.y};
        if (c.x - 1 <= window_.min.x || c.x + 1 >= window_.max.x || c.y - 1 <= window_.min.y ||
            c.y + 1 >= window_.max.y)
        {
            const Bounds around = Bounds{c, c}.expanded(2);
            reach = reach ? reach->merged(around) : around;
        }
    }
    if (reach)
    {
        ensure(*reach);
    }

    firing_.clear();
    for (const std::size_t i : hot_)
    {
        if (cells_[i] >= threshold)
        {
            firing_.push_back(i);
        }
    }

    const auto alpha = static_cast<ChipCount>(open_sides(gate));
    const auto w = static_cast<std::size_t>(width_);
    for (const std::size_t i : firing_)
    {
        cells_[i] -= alpha;
        switch (gate)
        {
            case GateStep::H:
                ++cells_[i - 1];
                ++cells_[i + 1];
                mark_hot(i - 1);
                mark_hot(i + 1);
                break;
            case GateStep::V:
                ++cells_[i - w];
                ++cells_[i + w];
                mark_hot(i - w);
                mark_hot(i + w);
                break;
            case GateStep::All:
                ++cells_[i - 1];
                ++cells_[i + 1];
                ++cells_[i - w];
                ++cells_[i + w];
                mark_hot(i - 1);
                mark_hot(i + 1);
                mark_hot(i - w);
                mark_hot(i + w);
                break;
            case GateStep::BlockEven:
            case GateStep::BlockOdd:
            {
                const std::int64_t anchor = gate == GateStep::BlockEven ? 0 : 1;
                const std::int64_t x = static_cast<std::int64_t>(i % w) + window_.min.x;
                const std::int64_t y = static_cast<std::int64_t>(i / w) + window_.min.y;
                const std::size_t px = (((x - anchor) % 2) + 2) % 2 == 0 ? i + 1 : i - 1;
                const std::size_t py = (((y - anchor) % 2) + 2) % 2 == 0 ? i + w : i - w;
                ++cells_[px];
                ++cells_[py];
                mark_hot(px);
                mark_hot(py);
                break;
            }
        }
    }
    last_firings_ = firing_.size();

    std::size_t keep = 0;
    for (const std::size_t i : hot_)
    {
        if (cells_[i] >= min_threshold_)
        {
            hot_[keep++] = i;
        }
        else
        {
            in_hot_[i] = 0;
        }
    }
    hot_.resize(keep);
    ++time_;
}

void Simulator::run(std::uint64_t steps)
{
    for (std::uint64_t t = 0; t < steps; ++t)
    {
        if (hot_.empty())
        {
            // nothing can ever fire again; only the clock moves
            time_ += steps - t;
            last_firings_ = 0;
            return;
        }
        step();
    }
}

ChipCount Simulator::at(Coord c) const noexcept
{
    return inside(c) ? cells_[index(c)] : 0;
}

void Simulator::add(Coord c, ChipCount n)
{
    if (n == 0)
    {
        return;
    }
    ensure(Bounds{c, c}.expanded(2));
    const std::size_t i = index(c);
    cells_[i] += n;
    mark_hot(i);
}

std::vector<Coord> Simulator::last_fired() const
{
    std::vector<Coord> sites;
    if (firing_.size() != last_firings_)
    {
        return sites;
    }
    const auto w = static_cast<std::size_t>(width_);
    sites.reserve(firing_.size());
    for (const std::size_t i : firing_)
    {
        sites.push_back({static_cast<std::int64_t>(i % w) + window_.min.x, static_cast<std::int64_t>(i / w) + window_.min.y});
    }
    return sites;
}

ChipGrid Simulator::grid() const
{
    return grid(window_);
}

ChipGrid Simulator::grid(const Bounds& region) const
{
    ChipGrid out;
    const std::int64_t y0 = std::max(region.min.y, window_.min.y);
    const std::int64_t y1 = std::min(region.max.y, window_.max.y);
    const std::int64_t x0 = std::max(region.min.x, window_.min.x);
    const std::int64_t x1 = std::min(region.max.x, window_.max.x);
    for (std::int64_t y = y0; y <= y1; ++y)
    {
        for (std::int64_t x = x0; x <= x1; ++x)
        {
            const ChipCount n = cells_[index({x, y})];
            if (n != 0)
            {
                out.set({x, y}, n);
            }
        }
    }
    return out;
}

std::uint64_t Simulator::total() const noexcept
{
    std::uint64_t sum = 0;
    for (const ChipCount n : cells_)
    {
        sum += n;
    }
    return sum;
}

}  // namespace fungal
