#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace convexchar {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input: Newick, character text, instance JSON.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::size_t position = npos)
      : Error(position == npos ? what : what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// The brute-force oracle refuses inputs whose Bell number would not finish.
class GuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace convexchar
