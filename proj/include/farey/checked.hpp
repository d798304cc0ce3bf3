#pragma once

#include <concepts>
#include <cstdint>

#include "farey/error.hpp"

namespace farey::detail {

template <std::integral T>
T checked_add(T a, T b) {
    T out;
    if (__builtin_add_overflow(a, b, &out)) throw OverflowError("integer overflow in addition");
    return out;
}

template <std::integral T>
T checked_mul(T a, T b) {
    T out;
    if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("integer overflow in multiplication");
    return out;
}

// Arbitrary-precision types cannot overflow.
template <class T>
    requires(!std::integral<T>)
T checked_add(const T& a, const T& b) {
    return a + b;
}

template <class T>
    requires(!std::integral<T>)
T checked_mul(const T& a, const T& b) {
    return a * b;
}

}  // namespace farey::detail
