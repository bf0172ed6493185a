#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sslab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// The requested enumeration or table does not fit the configured limits.
class CapacityError : public Error {
public:
    using Error::Error;
};

// A documented precondition of a solver was violated by the caller.
class ContractError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

// A file could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

// Raised by the bit-length reduction when t < 2n: such instances are solved
// in polynomial time by the pseudo-polynomial table instead.
class UseDynamicProgramming : public Error {
public:
    using Error::Error;
};

// Memory cap for tables and enumerations, in bytes. Read from the
// SSLAB_MEM_LIMIT_MB environment variable; defaults to 2048 MB.
std::uint64_t memory_limit_bytes();

// Throws CapacityError when `bytes` exceeds memory_limit_bytes().
void require_memory(std::uint64_t bytes, const std::string& what);

}  // namespace sslab
