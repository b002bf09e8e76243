#pragma once

#include <stdexcept>
#include <string>

namespace splab {

// Thrown when a run would exceed the default desk-scale ceilings and no
// explicit override was given.
class CostGuardError : public std::runtime_error {
public:
    explicit CostGuardError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when two enumeration engines that must agree produce different
// counts for the same inputs.
class EngineMismatchError : public std::runtime_error {
public:
    explicit EngineMismatchError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace splab
