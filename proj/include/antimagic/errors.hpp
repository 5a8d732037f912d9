#ifndef ANTIMAGIC_ERRORS_HPP
#define ANTIMAGIC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace antimagic {

// Malformed or out-of-contract input (bad vertex, non-canonical caterpillar, ...).
class input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A structural property the construction guarantees did not hold. Always a bug.
class invariant_violation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A request exceeds a configured resource limit (oracle cap).
class resource_refusal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace antimagic

#endif  // ANTIMAGIC_ERRORS_HPP
