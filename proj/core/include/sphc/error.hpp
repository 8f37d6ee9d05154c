#pragma once

#include <stdexcept>
#include <string>

namespace sphc {

/// Thrown for invalid input to a library operation (bad type, malformed label,
/// root not in the system, ...). Internal consistency failures use
/// InternalError instead.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A computed object violated an invariant the library guarantees, e.g. a
/// Bruhat cell extraction produced a permutation outside the Weyl group.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// A configured resource bound (memory, enumeration size) was exceeded.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace sphc
