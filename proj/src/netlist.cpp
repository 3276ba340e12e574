#include "fungal/netlist.hpp"

#include "fungal/error.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <unordered_map>

namespace fungal
{

namespace
{

struct RawGate
{
    NetGate gate;
    std::size_t line;
};

}  // namespace

std::string_view to_string(GateKind k) noexcept { return k == GateKind::And ? "AND" : "OR"; }

Netlist parse_netlist(std::string_view text)
{
    Netlist n;
    std::vector<RawGate> raw;
    std::set<std::string> names;
    std::size_t output_line = 0;

    for (const auto& line : detail::split_lines(text))
    {
        const auto& w = line.words;
        if (w.empty())
        {
            continue;
        }
        if (w[0] == "input")
        {
            if (w.size() != 2)
            {
                throw Error(ErrorCode::ParseError, "expected 'input <name>'", line.number);
            }
            if (!names.insert(std::string(w[1])).second)
            {
                throw Error(ErrorCode::ParseError, "name '" + std::string(w[1]) + "' defined twice", line.number);
            }
            n.inputs.emplace_back(w[1]);
        }
        else if (w[0] == "gate")
        {
            if (w.size() < 3)
            {
                throw Error(ErrorCode::ParseError, "expected 'gate <id> AND|OR <arg> <arg>'", line.number);
            }
            GateKind kind{};
            if (w[2] == "AND")
            {
                kind = GateKind::And;
            }
            else if (w[2] == "OR")
            {
                kind = GateKind::Or;
            }
            else
            {
                throw Error(ErrorCode::ParseError, "unknown gate kind '" + std::string(w[2]) + "'", line.number);
            }
            if (w.size() != 5)
            {
                throw Error(ErrorCode::Arity,
                            "gate " + std::string(w[1]) + " has " + std::to_string(w.size() - 3) +
                                " arguments; fan-in must be exactly 2",
                            line.number);
            }
            if (!names.insert(std::string(w[1])).second)
            {
                throw Error(ErrorCode::ParseError, "name '" + std::string(w[1]) + "' defined twice", line.number);
            }
            raw.push_back({{std::string(w[1]), kind, std::string(w[3]), std::string(w[4])}, line.number});
        }
        else if (w[0] == "output")
        {
            if (w.size() != 2)
            {
                throw Error(ErrorCode::ParseError, "expected 'output <id>'", line.number);
            }
            if (output_line != 0)
            {
                throw Error(ErrorCode::ParseError, "second output line (first on line " + std::to_string(output_line) + ")",
                            line.number);
            }
            n.output = std::string(w[1]);
            output_line = line.number;
        }
        else
        {
            throw Error(ErrorCode::ParseError, "unknown statement '" + std::string(w[0]) + "'", line.number);
        }
    }

    for (const auto& r : raw)
    {
        for (const auto& arg : {r.gate.a, r.gate.b})
        {
            if (!names.contains(arg))
            {
                throw Error(ErrorCode::UnknownId, "gate " + r.gate.id + " uses undefined '" + arg + "'", r.line);
            }
        }
    }
    if (output_line == 0)
    {
        throw Error(ErrorCode::NoOutput, "netlist has no output line");
    }
    if (!names.contains(n.output))
    {
        throw Error(ErrorCode::UnknownId, "output '" + n.output + "' is not defined", output_line);
    }

    // depth-first topological order, visiting gates in file order
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < raw.size(); ++i)
    {
        index[raw[i].gate.id] = i;
    }
    std::vector<int> state(raw.size(), 0);  // 0 new, 1 on stack, 2 done
    std::function<void(std::size_t)> visit = [&](std::size_t i) {
        if (state[i] == 2)
        {
            return;
        }
        if (state[i] == 1)
        {
            throw Error(ErrorCode::Cycle, "gate " + raw[i].gate.id + " depends on itself", raw[i].line);
        }
        state[i] = 1;
        for (const auto& arg : {raw[i].gate.a, raw[i].gate.b})
        {
            if (const auto it = index.find(arg); it != index.end())
            {
                visit(it->second);
            }
        }
        state[i] = 2;
        n.gates.push_back(raw[i].gate);
    };
    for (std::size_t i = 0; i < raw.size(); ++i)
    {
        visit(i);
    }
    return n;
}

std::string emit_netlist(const Netlist& n)
{
    std::string out;
    for (const auto& in : n.inputs)
    {
        out += "input " + in + "\n";
    }
    for (const auto& g : n.gates)
    {
        out += "gate " + g.id + " " + std::string(to_string(g.kind)) + " " + g.a + " " + g.b + "\n";
    }
    out += "output " + n.output + "\n";
    return out;
}

bool evaluate_netlist(const Netlist& n, const Assignment& assignment)
{
    std::unordered_map<std::string, bool> value;
    for (const auto& in : n.inputs)
    {
        const auto it = assignment.find(in);
        if (it == assignment.end())
        {
            throw Error(ErrorCode::MissingInput, "no value for input '" + in + "'");
        }
        value[in] = it->second;
    }
    for (const auto& g : n.gates)
    {
        const bool a = value.at(g.a);
        const bool b = value.at(g.b);
        value[g.id] = g.kind == GateKind::And ? (a && b) : (a || b);
    }
    return value.at(n.output);
}

Assignment assignment_from_index(const Netlist& n, std::uint64_t index)
{
    Assignment a;
    const std::size_t k = n.inputs.size();
    for (std::size_t i = 0; i < k; ++i)
    {
        a[n.inputs[i]] = ((index >> (k - 1 - i)) & 1U) != 0;
    }
    return a;
}

std::size_t netlist_depth(const Netlist& n)
{
    std::unordered_map<std::string, std::size_t> depth;
    for (const auto& g : n.gates)
    {
        const auto da = depth.contains(g.a) ? depth[g.a] : 0;
        const auto db = depth.contains(g.b) ? depth[g.b] : 0;
        depth[g.id] = std::max(da, db) + 1;
    }
    return depth.contains(n.output) ? depth[n.output] : 0;
}

Netlist random_netlist(std::uint64_t seed, std::size_t max_gates, std::size_t max_inputs)
{
    std::mt19937_64 rng(seed);
    auto below = [&rng](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };

    Netlist n;
    const std::size_t inputs = 1 + below(std::max<std::size_t>(1, max_inputs));
    const std::size_t gates = 1 + below(std::max<std::size_t>(1, max_gates));
    std::vector<std::string> values;
    for (std::size_t i = 0; i < inputs; ++i)
    {
        n.inputs.push_back("x" + std::to_string(i));
        values.push_back(n.inputs.back());
    }
    for (std::size_t i = 0; i < gates; ++i)
    {
        NetGate g;
        g.id = "g" + std::to_string(i);
        g.kind = below(2) == 0 ? GateKind::And : GateKind::Or;
        // half the time the first argument is the newest value
        g.a = below(2) == 0 ? values.back() : values[below(values.size())];
        g.b = values[below(values.size())];
        n.gates.push_back(g);
        values.push_back(g.id);
    }
    n.output = n.gates.back().id;
    return n;
}

}  // namespace fungal
