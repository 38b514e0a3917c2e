#pragma once

#include <stdexcept>
#include <string>

namespace rbinom {

/// Argument outside the documented domain of an operation.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Quantity diverges (e.g. an upper restriction within 1e-12 of one).
class OverflowError : public std::overflow_error {
public:
    explicit OverflowError(const std::string& what) : std::overflow_error(what) {}
};

/// Iterative procedure failed: no bracketed root, continued fraction did not converge.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rbinom
