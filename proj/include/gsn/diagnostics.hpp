#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gsn {

/// Position of a construct in an input document. Lines and columns are 1-based.
struct SourceLocation {
    std::string file;
    int line = 1;
    int column = 1;

    std::string str() const {
        std::string out = file.empty() ? std::string("<input>") : file;
        out += ':';
        out += std::to_string(line);
        out += ':';
        out += std::to_string(column);
        return out;
    }

    friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
};

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// A document could not be parsed. Always carries the offending location.
class ParseError : public Error {
public:
    ParseError(const std::string& message, SourceLocation location)
        : Error(location.str() + ": " + message),
          location_(std::move(location)),
          detail_(message) {}

    const SourceLocation& location() const { return location_; }
    const std::string& detail() const { return detail_; }

private:
    SourceLocation location_;
    std::string detail_;
};

enum class Severity { Warning, Violation };

/// One broken structural rule, reported as data by the validators.
struct StructuralViolation {
    std::string rule;      // stable rule identifier, e.g. "support-cycle"
    Severity severity = Severity::Violation;
    std::string subject;   // element or artifact id the rule fired on
    std::string message;
    std::vector<std::string> members;  // cycle members, when applicable

    friend bool operator==(const StructuralViolation&, const StructuralViolation&) = default;
};

inline bool is_violation(const StructuralViolation& v) {
    return v.severity == Severity::Violation;
}

}  // namespace gsn
