#pragma once

#include <stdexcept>
#include <string>

namespace noc {

/// Invalid or inconsistent configuration (bad file, out-of-range parameter).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition, e.g. dequeue on an empty buffer.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A model invariant failed while a cycle was executing.
class EngineFault : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An exploration or propagation ran past its state budget.
class StateBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace noc
