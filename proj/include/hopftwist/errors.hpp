#ifndef HOPFTWIST_ERRORS_HPP
#define HOPFTWIST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hopftwist {

enum class Errc {
  NotDivisible,
  ZeroG,
  DimensionMismatch,
  InvalidCocycle,
  NotCrossed,
  NotIso,
  NotInKernel,
  NotIntegral,
  UnsupportedGenerator,
  IndexOutOfRange,
  DegreeOverflow,
  NonFinite,
  OutOfDomain,
  QuadratureDiverged,
  UnsupportedSymbol,
  Parse,
  InvalidArgument,
};

const char* errc_name(Errc c);

// Every module reports failures through this one type; code() carries the
// error kind so callers (and the CLI) can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc c, const std::string& what);
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace hopftwist

#endif
