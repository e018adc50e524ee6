#pragma once

#include <stdexcept>

namespace htasp {

//! Raised on violated preconditions (non-ground input, unsupported modes, bad levels).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace htasp
