#ifndef FONDPS_ERRORS_H
#define FONDPS_ERRORS_H

#include <stdexcept>
#include <string>

namespace fondps {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// fond-parse
struct ParseError : Error {
    int line;
    int column;
    ParseError(const std::string &msg, int line = -1, int column = -1)
        : Error(line >= 0 ? "parse error at " + std::to_string(line) + ":" +
                                std::to_string(column) + ": " + msg
                          : "parse error: " + msg),
          line(line),
          column(column) {}
};

struct UnsupportedFeature : Error {
    explicit UnsupportedFeature(const std::string &construct)
        : Error("unsupported construct: " + construct) {}
};

struct GroundingExplosion : Error {
    explicit GroundingExplosion(const std::string &msg) : Error(msg) {}
};

struct SchemaError : Error {
    using Error::Error;
};

struct DanglingStateReference : Error {
    explicit DanglingStateReference(const std::string &name)
        : Error("reference to undeclared state: " + name) {}
};

struct IoError : Error {
    using Error::Error;
};

// policy algebra
struct NotApplicable : Error {
    using Error::Error;
};

struct AlreadyMapped : Error {
    using Error::Error;
};

struct GoalStateMapped : Error {
    using Error::Error;
};

struct NotInDomain : Error {
    using Error::Error;
};

// generic bad argument (concretizer input, malformed configs)
struct InvalidInput : Error {
    using Error::Error;
};

struct InvalidWeight : Error {
    using Error::Error;
};

// oracles and exact solvers
struct OracleTooLarge : Error {
    using Error::Error;
};

struct SolverBudgetExceeded : Error {
    using Error::Error;
};

struct OrbitBudgetExceeded : Error {
    using Error::Error;
};

} // namespace fondps

#endif
