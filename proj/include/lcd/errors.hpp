#pragma once

#include <stdexcept>
#include <string>

namespace lcd {

// Bad or unreadable input data (files, ids, empty graphs).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical routine failed to produce a usable answer.
class AlgorithmError : public std::runtime_error {
 public:
  explicit AlgorithmError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lcd
