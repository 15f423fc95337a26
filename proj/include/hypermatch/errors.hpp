#pragma once

#include <stdexcept>
#include <string>

namespace hypermatch {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An argument violates an operation's precondition.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// A size limit (vertex cap, complete-hypergraph cap) was exceeded.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Malformed instance text. `kind()` distinguishes the failure cases.
class ParseError : public Error {
public:
    enum class Kind {
        MalformedHeader,
        MissingEdges,
        TrailingContent,
        EmptyEdge,
        VertexOutOfRange,
        UnsortedVertices,
        DuplicateEdge,
    };

    ParseError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// An enumeration guard tripped (brute-force edge cap, combination budget).
class GuardError : public Error {
public:
    using Error::Error;
};

/// Fewer data points than a statistic requires.
class StatisticsError : public Error {
public:
    using Error::Error;
};

/// Plot rendering cannot proceed (e.g. empty input).
class RenderError : public Error {
public:
    using Error::Error;
};

} // namespace hypermatch
