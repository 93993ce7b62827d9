#include "pfk/error.hpp"

namespace pfk {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::UnboundVariable: return "UnboundVariable";
        case ErrorKind::UnknownConstant: return "UnknownConstant";
        case ErrorKind::NotAFunction: return "NotAFunction";
        case ErrorKind::SortError: return "SortError";
        case ErrorKind::TypeMismatch: return "TypeMismatch";
        case ErrorKind::BudgetExhausted: return "BudgetExhausted";
        case ErrorKind::IllFormedContext: return "IllFormedContext";
        case ErrorKind::NonLinearPattern: return "NonLinearPattern";
        case ErrorKind::HeadNotConstant: return "HeadNotConstant";
        case ErrorKind::UnsupportedPattern: return "UnsupportedPattern";
        case ErrorKind::InvalidRule: return "InvalidRule";
        case ErrorKind::TypePreservationFailure: return "TypePreservationFailure";
        case ErrorKind::PreludeViolation: return "PreludeViolation";
        case ErrorKind::DuplicateConstant: return "DuplicateConstant";
        case ErrorKind::HoleInTerm: return "HoleInTerm";
        case ErrorKind::MissingParameter: return "MissingParameter";
        case ErrorKind::UnknownParameter: return "UnknownParameter";
        case ErrorKind::DuplicateParameter: return "DuplicateParameter";
        case ErrorKind::KindPlusUnsupported: return "KindPlusUnsupported";
        case ErrorKind::TransferFailure: return "TransferFailure";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::RequireCycle: return "RequireCycle";
    }
    return "Unknown";
}

std::string SourcePos::str() const {
    std::string out = file.empty() ? std::string("<input>") : file;
    if (known()) out += ":" + std::to_string(line) + ":" + std::to_string(column);
    return out;
}

std::string Error::describe() const {
    std::string out(to_string(kind_));
    out += ": ";
    out += what();
    if (pos_.known()) out += " (at " + pos_.str() + ")";
    return out;
}

}  // namespace pfk
