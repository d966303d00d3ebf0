#pragma once

#include <stdexcept>
#include <string>

namespace quermass {

enum class ErrorKind {
    DegenerateHull,
    DimensionMismatch,
    WrongArity,
    InvalidArgument,
    LevelTooHigh,
    IndexOutOfRange,
    OriginNotInterior,
    GridTooCoarse,
    NotNested,
    HypothesisViolated,
    CannotNest,
    ConstructionFailed,
    ParseError,
};

const char* to_string(ErrorKind kind);

class GeometryError : public std::runtime_error {
public:
    GeometryError(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace quermass
