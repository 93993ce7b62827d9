#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace pfk {

enum class ErrorKind {
    UnboundVariable,
    UnknownConstant,
    NotAFunction,
    SortError,
    TypeMismatch,
    BudgetExhausted,
    IllFormedContext,
    NonLinearPattern,
    HeadNotConstant,
    UnsupportedPattern,
    InvalidRule,
    TypePreservationFailure,
    PreludeViolation,
    DuplicateConstant,
    HoleInTerm,
    MissingParameter,
    UnknownParameter,
    DuplicateParameter,
    KindPlusUnsupported,
    TransferFailure,
    ParseError,
    IoError,
    RequireCycle,
};

std::string_view to_string(ErrorKind kind);

struct SourcePos {
    std::string file;
    int line = 0;
    int column = 0;

    bool known() const { return line > 0; }
    std::string str() const;
};

/// Every failure raised by the kernel, the front end, and the translator.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, SourcePos pos = {})
        : std::runtime_error(message), kind_(kind), pos_(std::move(pos)) {}

    ErrorKind kind() const { return kind_; }
    const SourcePos& pos() const { return pos_; }
    void set_pos(SourcePos pos) { pos_ = std::move(pos); }

    /// "Kind: message" plus the position when known.
    std::string describe() const;

private:
    ErrorKind kind_;
    SourcePos pos_;
};

}  // namespace pfk
