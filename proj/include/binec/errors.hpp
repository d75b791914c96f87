#pragma once

#include <stdexcept>
#include <string>

namespace binec {

// A computation exceeding a size guard (coset table, enumeration count,
// survivor set).
class GuardError : public std::runtime_error {
public:
    explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

// A parameter lies outside the regime where a bound is defined.
class RegimeError : public std::domain_error {
public:
    explicit RegimeError(const std::string& what) : std::domain_error(what) {}
};

} // namespace binec
