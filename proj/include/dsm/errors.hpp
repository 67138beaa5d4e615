#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dsm {

enum class ErrorCode {
    NotSquare,
    SizeMismatch,
    InvalidArgument,
    OrderTooLarge,
    WrongOrder,
    NegativeEntry,
    RowSumMismatch,
    ColSumMismatch,
    NegativeDiscriminant,
    NotDoublyStochastic,
    ZeroCellMissing,
    DenominatorTooLarge,
};

inline const char* to_string(ErrorCode c) {
    switch (c) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OrderTooLarge: return "OrderTooLarge";
    case ErrorCode::WrongOrder: return "WrongOrder";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::RowSumMismatch: return "RowSumMismatch";
    case ErrorCode::ColSumMismatch: return "ColSumMismatch";
    case ErrorCode::NegativeDiscriminant: return "NegativeDiscriminant";
    case ErrorCode::NotDoublyStochastic: return "NotDoublyStochastic";
    case ErrorCode::ZeroCellMissing: return "ZeroCellMissing";
    case ErrorCode::DenominatorTooLarge: return "DenominatorTooLarge";
    }
    return "Unknown";
}

/// A well-formed request the mathematics rejects (not DS, order cap
/// exceeded, point outside the disc, ...).
class DomainError : public std::runtime_error {
public:
    DomainError(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Malformed matrix text.  line and column are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace dsm
