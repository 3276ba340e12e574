#include "fungal/error.hpp"

namespace fungal
{

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code)
    {
        case ErrorCode::ParseError: return "PARSE_ERROR";
        case ErrorCode::DuplicateCoord: return "DUPLICATE_COORD";
        case ErrorCode::ProbeNotEmpty: return "PROBE_NOT_EMPTY";
        case ErrorCode::RotationWordMismatch: return "ROTATION_WORD_MISMATCH";
        case ErrorCode::PeriodMismatch: return "PERIOD_MISMATCH";
        case ErrorCode::UnsupportedWord: return "UNSUPPORTED_WORD";
        case ErrorCode::BudgetExhausted: return "BUDGET_EXHAUSTED";
        case ErrorCode::Cycle: return "CYCLE";
        case ErrorCode::UnknownId: return "UNKNOWN_ID";
        case ErrorCode::Arity: return "ARITY";
        case ErrorCode::NoOutput: return "NO_OUTPUT";
        case ErrorCode::MissingInput: return "MISSING_INPUT";
        case ErrorCode::NonplanarWithoutCrossover: return "NONPLANAR_WITHOUT_CROSSOVER";
        case ErrorCode::PlacementOverflow: return "PLACEMENT_OVERFLOW";
        case ErrorCode::ContractViolation: return "CONTRACT_VIOLATION";
        case ErrorCode::Io: return "IO_ERROR";
    }
    return "UNKNOWN";
}

namespace
{

std::string decorate(ErrorCode code, const std::string& message, std::size_t line)
{
    std::string out(to_string(code));
    if (line != 0)
    {
        out += " (line " + std::to_string(line) + ")";
    }
    out += ": ";
    out += message;
    return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::size_t line)
    : std::runtime_error(decorate(code, message, line)), code_(code), line_(line)
{
}

}  // namespace fungal
