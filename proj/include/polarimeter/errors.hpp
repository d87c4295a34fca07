#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polarimeter {

// Bad user input: malformed files, invalid parameters. The CLI maps this to
// exit code 1.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}

  InputError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what) {}
};

// A library invariant did not hold. Indicates a bug, not bad input; the CLI
// maps this to exit code 2.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace polarimeter
