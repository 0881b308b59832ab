#pragma once

#include <stdexcept>
#include <string>

namespace metazeta {

// Bad user input: non-prime p, out-of-range index, mismatched bases.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration or oracle bound would be exceeded.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A lemma's hypotheses do not hold; the caller must take another route.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The requested closed formula is not provided (oracle fallback required).
class UnsupportedCase : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A structural assumption about the input group failed to hold.
class InternalInconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace metazeta
