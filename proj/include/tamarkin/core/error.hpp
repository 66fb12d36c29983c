#pragma once

#include <stdexcept>
#include <string>

namespace tamarkin {

/// Base class of every error raised by the library. The kind is used by the
/// command-line tool to pick an exit status.
class Error : public std::runtime_error {
public:
    enum class Kind {
        parameter,     // an argument violates a documented precondition
        structure,     // malformed matrices, non-exact sequences, d*d != 0
        input,         // unparsable file or inconsistent input data
        oracle_scope,  // instance exceeds the exhaustive search bound
        precision,     // Novikov precision exhausted
        verification,  // a produced certificate failed its own check
        unsupported,   // valid input outside the computable scope
        undefined,     // quantity is undefined for this input
    };

    Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

inline Error parameter_error(const std::string& what) { return Error(Error::Kind::parameter, what); }
inline Error structure_error(const std::string& what) { return Error(Error::Kind::structure, what); }
inline Error oracle_scope_error(const std::string& what) { return Error(Error::Kind::oracle_scope, what); }
inline Error precision_error(const std::string& what) { return Error(Error::Kind::precision, what); }
inline Error verification_error(const std::string& what) { return Error(Error::Kind::verification, what); }
inline Error unsupported_error(const std::string& what) { return Error(Error::Kind::unsupported, what); }
inline Error undefined_error(const std::string& what) { return Error(Error::Kind::undefined, what); }

/// Parse failure with a 1-based source position.
class ParseError : public Error {
public:
    ParseError(std::string source, int line, int column, const std::string& message)
        : Error(Kind::input, source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                                 ": " + message),
          line_(line),
          column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace tamarkin
