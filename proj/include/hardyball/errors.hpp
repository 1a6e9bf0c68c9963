#pragma once

#include <stdexcept>
#include <string>

namespace hardyball {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (zero log, branch cut, boundary point).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Precondition on a structured argument violated (non-Hermitian input, size mismatch).
class ContractError : public Error {
public:
    using Error::Error;
};

class NotRankOne : public Error {
public:
    explicit NotRankOne(int rank)
        : Error("matrix has numerical rank " + std::to_string(rank) + ", expected 1"), rank_(rank) {}
    int rank() const noexcept { return rank_; }

private:
    int rank_;
};

class NotPositive : public Error {
public:
    using Error::Error;
};

/// Source and target configurations do not share a Gram matrix.
class NotIsometricData : public Error {
public:
    using Error::Error;
};

class DuplicatePoints : public Error {
public:
    DuplicatePoints(std::size_t i, std::size_t j)
        : Error("points " + std::to_string(i) + " and " + std::to_string(j) + " coincide"), first_(i), second_(j) {}
    std::size_t first() const noexcept { return first_; }
    std::size_t second() const noexcept { return second_; }

private:
    std::size_t first_;
    std::size_t second_;
};

class NotAFunctionSpace : public Error {
public:
    using Error::Error;
};

/// Assignment search refused because the point count exceeds the configured cap.
class CapExceeded : public Error {
public:
    CapExceeded(std::size_t n, std::size_t cap)
        : Error("point count " + std::to_string(n) + " exceeds search cap " + std::to_string(cap)), n_(n), cap_(cap) {}
    std::size_t count() const noexcept { return n_; }
    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t n_;
    std::size_t cap_;
};

class InconsistentData : public Error {
public:
    using Error::Error;
};

/// A result landed within the boundary guard of the ball.
class NumericalBreakdown : public Error {
public:
    using Error::Error;
};

/// An operation declines to produce an object that provably does not exist.
class Refusal : public Error {
public:
    using Error::Error;
};

}  // namespace hardyball
