#include "fungal/schedule.hpp"

#include "fungal/error.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace fungal
{

namespace
{

constexpr std::int64_t floor_mod2(std::int64_t v) noexcept { return ((v % 2) + 2) % 2; }

}  // namespace

bool side_open(GateStep g, Coord cell, Direction dir) noexcept
{
    const bool horizontal = dir == Direction::East || dir == Direction::West;
    switch (g)
    {
        case GateStep::H: return horizontal;
        case GateStep::V: return !horizontal;
        case GateStep::All: return true;
        case GateStep::BlockEven:
        case GateStep::BlockOdd:
        {
            // the open side of a cell along each axis points at its block partner
            const std::int64_t anchor = g == GateStep::BlockEven ? 0 : 1;
            const std::int64_t v = horizontal ? cell.x : cell.y;
            const bool low_half = floor_mod2(v - anchor) == 0;
            const bool towards_high = dir == Direction::East || dir == Direction::South;
            return low_half == towards_high;
        }
    }
    return false;
}

char to_char(GateStep g) noexcept
{
    switch (g)
    {
        case GateStep::H: return 'H';
        case GateStep::V: return 'V';
        case GateStep::All: return 'A';
        case GateStep::BlockEven: return 'E';
        case GateStep::BlockOdd: return 'O';
    }
    return '?';
}

GateStep parse_gate_step(char c)
{
    switch (c)
    {
        case 'H': return GateStep::H;
        case 'V': return GateStep::V;
        case 'A': return GateStep::All;
        case 'E': return GateStep::BlockEven;
        case 'O': return GateStep::BlockOdd;
        default: break;
    }
    throw Error(ErrorCode::ParseError, std::string("unknown gate letter '") + c + "'");
}

std::string_view to_string(ThresholdMode m) noexcept
{
    return m == ThresholdMode::FixedFour ? "fixed4" : "adaptive";
}

ThresholdMode parse_mode(std::string_view s)
{
    if (s == "fixed4" || s == "FIXED_FOUR") return ThresholdMode::FixedFour;
    if (s == "adaptive" || s == "ADAPTIVE") return ThresholdMode::Adaptive;
    throw Error(ErrorCode::ParseError, "unknown threshold mode '" + std::string(s) + "'");
}

Schedule::Schedule(std::vector<GateStep> word) : word_(std::move(word))
{
    if (word_.empty())
    {
        throw Error(ErrorCode::ParseError, "schedule word must be nonempty");
    }
}

Schedule Schedule::parse(std::string_view text)
{
    std::vector<GateStep> word;
    std::size_t i = 0;
    while (i < text.size())
    {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c)) != 0)
        {
            ++i;
            continue;
        }
        const GateStep g = parse_gate_step(c);
        ++i;
        std::size_t repeat = 1;
        if (i < text.size() && text[i] == '^')
        {
            ++i;
            const std::size_t start = i;
            std::size_t k = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])) != 0)
            {
                k = k * 10 + static_cast<std::size_t>(text[i] - '0');
                if (k > 1'000'000)
                {
                    throw Error(ErrorCode::ParseError, "repetition count too large");
                }
                ++i;
            }
            if (i == start || k == 0)
            {
                throw Error(ErrorCode::ParseError, "'^' must be followed by a positive count");
            }
            repeat = k;
        }
        word.insert(word.end(), repeat, g);
    }
    if (word.empty())
    {
        throw Error(ErrorCode::ParseError, "empty schedule word");
    }
    return Schedule(std::move(word));
}

std::string Schedule::to_string() const
{
    std::string out;
    std::size_t i = 0;
    while (i < word_.size())
    {
        std::size_t j = i;
        while (j < word_.size() && word_[j] == word_[i])
        {
            ++j;
        }
        out += to_char(word_[i]);
        if (j - i > 1)
        {
            out += '^';
            out += std::to_string(j - i);
        }
        i = j;
    }
    return out;
}

Schedule Schedule::transposed() const
{
    std::vector<GateStep> w = word_;
    for (auto& g : w)
    {
        if (g == GateStep::H)
        {
            g = GateStep::V;
        }
        else if (g == GateStep::V)
        {
            g = GateStep::H;
        }
    }
    return Schedule(std::move(w));
}

bool Schedule::cyclically_equal(const Schedule& other) const
{
    if (other.word_.size() != word_.size())
    {
        return false;
    }
    const std::size_t n = word_.size();
    for (std::size_t shift = 0; shift < n; ++shift)
    {
        bool same = true;
        for (std::size_t i = 0; i < n && same; ++i)
        {
            same = word_[(i + shift) % n] == other.word_[i];
        }
        if (same)
        {
            return true;
        }
    }
    return false;
}

}  // namespace fungal
