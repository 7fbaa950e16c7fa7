#pragma once

#include <stdexcept>
#include <string>

namespace framebound {

/// Invalid argument values (out-of-range order, negative weight, ...).
class domain_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A documented operation precondition was violated by the caller.
class precondition_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A resource cap was exceeded (e.g. group closure blew past its element cap).
class resource_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An iterative numerical procedure failed to converge or to verify.
class numerical_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Two independent internal routes disagreed. Must never fire.
class consistency_error : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Malformed input file; message carries file and line context.
class parse_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace framebound
