#pragma once

#include <stdexcept>
#include <string>

namespace polyiter {

/// Root of every exception thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class parse_error : public error {
public:
    using error::error;
};

class invalid_field : public error {
public:
    using error::error;
};

class field_mismatch : public error {
public:
    using error::error;
};

class division_by_zero : public error {
public:
    division_by_zero() : error("division by zero") {}
};

class exponent_overflow : public error {
public:
    exponent_overflow() : error("epsilon exponent overflow") {}
};

class zero_specialization : public error {
public:
    zero_specialization()
        : error("cannot specialize epsilon = 0 with negative exponents present") {}
};

class field_too_small : public error {
public:
    using error::error;
};

class invalid_anchors : public error {
public:
    using error::error;
};

// Raised when two independent computations of the same object disagree.
class internal_consistency : public error {
public:
    using error::error;
};

class verification_failed : public error {
public:
    using error::error;
};

class enumeration_limit : public error {
public:
    using error::error;
};

class iteration_cap : public error {
public:
    using error::error;
};

class empty_word : public error {
public:
    empty_word() : error("empty word") {}
};

} // namespace polyiter
