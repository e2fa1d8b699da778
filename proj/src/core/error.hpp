#pragma once

#include <stdexcept>
#include <string>

namespace shapval {

enum class ErrorCode {
  InvalidArgument,  // bad parameters, violated preconditions
  Data,             // file or schema problems
  SizeCap,          // exact solver asked to exceed its player cap
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace shapval
