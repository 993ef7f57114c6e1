#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tonekit {

struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Silent or zero-power input where a ratio or scale is required.
struct DegenerateSignal : std::domain_error {
    using std::domain_error::domain_error;
};

struct MissingData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Text errors carry line/column; binary errors carry a byte offset (line = 0).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error(what), line_(line), column_(column) {}

    static ParseError at_offset(const std::string& what, std::size_t offset) {
        ParseError e("byte " + std::to_string(offset) + ": " + what, 0, 0);
        e.offset_ = offset;
        return e;
    }

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t line_ = 0;
    std::size_t column_ = 0;
    std::size_t offset_ = 0;
};

} // namespace tonekit
