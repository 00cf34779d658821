#ifndef ADIAVAC_ERRORS_HPP
#define ADIAVAC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace adiavac {

enum class ErrorKind {
    BasePointMismatch,
    DivisionByZeroJet,
    NonPositiveLeadingCoefficient,
    OrderExhausted,
    SmoothnessExceeded,
    HadamardViolation,
    DomainError,
    NotAffine,
    DegenerateSlope,
    WronskianBroken,
    ModeMismatch,
    StepFailure,
    PositivityLoss,
    ParseError,
    InvariantFailure,
};

const char* error_kind_name(ErrorKind kind);

/// Process exit code associated with an error kind (see the CLI docs).
int exit_code_for(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

/// (H3) failure: the squared frequency went non-positive at the base point.
class HadamardError : public Error {
public:
    HadamardError(int order_n, double omega_sq, const std::string& msg)
        : Error(ErrorKind::HadamardViolation, msg), order_n_(order_n), omega_sq_(omega_sq) {}

    int order_n() const { return order_n_; }
    double omega_sq() const { return omega_sq_; }

private:
    int order_n_;
    double omega_sq_;
};

/// Jet budget ran out: the requested iteration needs more derivative orders
/// than the inputs carry.
class OrderError : public Error {
public:
    OrderError(int order_n, int demanded_order, const std::string& msg)
        : Error(ErrorKind::OrderExhausted, msg), order_n_(order_n), demanded_order_(demanded_order) {}

    int order_n() const { return order_n_; }
    int demanded_order() const { return demanded_order_; }

private:
    int order_n_;
    int demanded_order_;
};

} // namespace adiavac

#endif
