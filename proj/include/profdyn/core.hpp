#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/rational.hpp>

namespace profdyn {

/// Dense index of a group element at a fixed tower level, in 0..order-1.
using Element = std::int64_t;

/// Tower level index; level 0 is always the trivial group.
using Level = int;

using Rational = boost::rational<std::int64_t>;

/// Largest order any single level may have.
inline constexpr Element kMaxOrder = 2147483647;  // 2^31 - 1

/// Largest level order for which dense per-level map tables are materialized.
inline constexpr Element kMaxTableOrder = Element{1} << 22;

/// An element together with the level (precision) it is known at.
struct Point {
  Element value = 0;
  Level level = 0;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A map's level-wise property (homomorphism, surjectivity) required by an operation is missing.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Raised when a precision-contracted computation needs a level the tower does not have.
class PrecisionExhausted : public Error {
 public:
  PrecisionExhausted(Level required, Level available)
      : Error("precision exhausted: input needed at level " + std::to_string(required) +
              " but only level " + std::to_string(available) + " is available"),
        required_level(required),
        available_level(available) {}

  Level required_level;
  Level available_level;
};

std::string to_string(const Rational& r);

/// x mod m in 0..m-1 for any sign of x.
inline Element mod_reduce(std::int64_t x, Element m) {
  auto r = x % m;
  return r < 0 ? r + m : r;
}

inline Element mul_mod(Element a, Element b, Element m) {
  return static_cast<Element>((static_cast<__int128>(a) * b) % m);
}

/// Inverse of a unit mod m via the extended Euclidean algorithm; throws if gcd(a, m) != 1.
Element inverse_mod(Element a, Element m);

/// p^k, or CapacityError if it exceeds kMaxOrder.
Element checked_power(Element p, int k);

}  // namespace profdyn
