#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace parityq {

// Thrown when vector/matrix dimensions do not conform.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when an input violates a problem promise (e.g. odd-parity PHP input).
struct PromiseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a graph/tree structural precondition fails.
struct StructureError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a request exceeds a hard capacity limit (qubits, enumeration width).
struct CapacityError : std::length_error {
    using std::length_error::length_error;
};

inline int parity_u64(uint64_t x) { return __builtin_parityll(x); }
inline int popcount_u64(uint64_t x) { return __builtin_popcountll(x); }

inline std::size_t words_for_bits(std::size_t nbits) { return (nbits + 63) / 64; }

} // namespace parityq
