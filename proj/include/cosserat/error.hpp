#pragma once

#include <stdexcept>
#include <string>

namespace cosserat {

//! Raised on precondition violations and inadmissible inputs.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cosserat
