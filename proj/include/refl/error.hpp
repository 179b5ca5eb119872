#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace refl {

/// Broad failure classes; the CLI maps each one to a stable exit code.
enum class ErrorKind {
    Input,      ///< malformed text, unknown identifiers, bad arguments
    Numerical,  ///< quadrature budget, singular systems, domain errors
    Resonance,  ///< uniqueness/solvability conditions violated
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Syntax error in an expression; `offset` is the byte offset into the source.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(ErrorKind::Input, what + " at offset " + std::to_string(offset)),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class UnknownIdentifierError : public ParseError {
public:
    UnknownIdentifierError(const std::string& name, std::size_t offset)
        : ParseError("unknown identifier '" + name + "'", offset), name_(name) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// Partial function evaluated outside its domain (ln of x <= 0, sqrt of x < 0, x/0).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

/// Raised when a kernel cannot exist (resonance, degenerate half-width, ...).
class ResonanceError : public Error {
public:
    explicit ResonanceError(const std::string& what) : Error(ErrorKind::Resonance, what) {}
};

class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(ErrorKind::Input, what) {}
};

/// Process exit code for an error kind: 2 input, 3 numerical, 4 resonance / no solution.
int exit_code_for(ErrorKind kind) noexcept;

}  // namespace refl
