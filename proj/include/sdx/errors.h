#ifndef SDX_ERRORS_H_
#define SDX_ERRORS_H_

#include <stdexcept>
#include <string>

namespace sdx {

// Malformed or semantically invalid input. `where` is a JSON-pointer-ish
// location ("/twin/3") or empty when not tied to a position.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what),
        where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// A checked bound or an oracle cross-check failed. Never expected on
// correct code; carries a diagnostic message.
class FatalDiagnostic : public std::runtime_error {
 public:
  explicit FatalDiagnostic(const std::string& what)
      : std::runtime_error(what) {}
};

// Parameter guard of a brute-force or enumeration routine tripped.
class GuardTripped : public std::runtime_error {
 public:
  explicit GuardTripped(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sdx

#endif  // SDX_ERRORS_H_
