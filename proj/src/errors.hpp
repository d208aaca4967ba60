#pragma once

#include <stdexcept>
#include <string>

namespace hyperwave {

enum class ErrorCode {
  domain = 1,
  invalid_point,
  pole,
  ill_conditioned,
  accuracy,
  config,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorCode::domain, w) {}
};
struct InvalidPointError : Error {
  explicit InvalidPointError(const std::string& w) : Error(ErrorCode::invalid_point, w) {}
};
struct PoleError : Error {
  explicit PoleError(const std::string& w) : Error(ErrorCode::pole, w) {}
};
struct IllConditionedError : Error {
  explicit IllConditionedError(const std::string& w) : Error(ErrorCode::ill_conditioned, w) {}
};

}  // namespace hyperwave
