#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fungal
{

enum class ErrorCode
{
    ParseError,
    DuplicateCoord,
    ProbeNotEmpty,
    RotationWordMismatch,
    PeriodMismatch,
    UnsupportedWord,
    BudgetExhausted,
    Cycle,
    UnknownId,
    Arity,
    NoOutput,
    MissingInput,
    NonplanarWithoutCrossover,
    PlacementOverflow,
    ContractViolation,
    Io
};

std::string_view to_string(ErrorCode code) noexcept;

/**
 * Every failure raised by the library. Carries a machine-readable code and, for
 * text formats, the 1-based line the problem was found on (0 when not applicable).
 */
class Error : public std::runtime_error
{
  public:
    Error(ErrorCode code, const std::string& message, std::size_t line = 0);

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

  private:
    ErrorCode code_;
    std::size_t line_;
};

}  // namespace fungal
