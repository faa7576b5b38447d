#pragma once

#include <stdexcept>
#include <string>

namespace astride {

// Malformed input data: ragged rows, unparsable fields, empty files.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// A parameter is outside its valid range (w, A, indices, unknown tags).
class InvalidParameter : public std::runtime_error {
public:
    explicit InvalidParameter(const std::string& what) : std::runtime_error(what) {}
};

// Two operands whose dimensions must agree do not.
class ShapeError : public std::runtime_error {
public:
    explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace astride
