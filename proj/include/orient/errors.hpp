#pragma once

#include <stdexcept>
#include <string>

namespace orient {

// Malformed input: bad file lines, invalid vertex ids, violated preconditions.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An enumeration or memo cap was exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace orient
