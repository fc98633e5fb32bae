#pragma once

#include <stdexcept>
#include <string>

namespace latred {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularMatrix : Error {
    using Error::Error;
};

struct ConstructionFailure : Error {
    using Error::Error;
};

struct ValidationFailure : Error {
    using Error::Error;
};

struct InternalInconsistency : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string& msg, long line)
        : Error("parse error at line " + std::to_string(line) + ": " + msg), line(line) {}
    long line;
};

struct TautologyError : Error {
    using Error::Error;
};

struct WidthError : Error {
    using Error::Error;
};

struct GadgetMismatch : Error {
    using Error::Error;
};

struct ParameterError : Error {
    using Error::Error;
};

struct LimitExceeded : Error {
    using Error::Error;
};

struct FormatError : Error {
    explicit FormatError(const std::string& field)
        : Error("bad or missing field: " + field), field(field) {}
    std::string field;
};

struct UnknownClause : Error {
    using Error::Error;
};

}  // namespace latred
