#pragma once

#include <stdexcept>
#include <string>

namespace q2seg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A request touched dimensions beyond an object's cap.
struct CapExceeded : Error {
    using Error::Error;
};

struct InvalidArgument : Error {
    using Error::Error;
};

// Search or enumeration hit its node/size budget before finishing.
struct BudgetExceeded : Error {
    using Error::Error;
};

}  // namespace q2seg
