#pragma once

#include <stdexcept>
#include <string>

namespace dilates {

// Arithmetic left the 64-bit coordinate budget. CLI exit code 3.
class overflow_error : public std::runtime_error {
public:
  explicit overflow_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text: set files, index sets, config files. CLI exit code 2.
class parse_error : public std::runtime_error {
public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// An operation was invoked outside its contract (index out of range,
// non-compressed input where compression is required, empty set). Exit code 2.
class precondition_error : public std::runtime_error {
public:
  explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// A configured resource cap would be exceeded. Exit code 3.
class cap_exceeded : public std::runtime_error {
public:
  explicit cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dilates
