#ifndef OPNIL_ERRORS_HPP
#define OPNIL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace opnil {

// Error taxonomy shared by the library and the CLI exit-code mapping.
enum class ErrorKind {
  Parse,      // malformed input text
  Arity,      // incompatible (k, n) or mixed-arity operands
  Cap,        // answer would need data above a truncation cap
  Resource,   // configured resource ceiling exceeded
  Input,      // unknown name, bad flag value, unusable parameter
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

} // namespace opnil

#endif
