#ifndef COAGRAPH_ERRORS_HPP_
#define COAGRAPH_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace coagraph {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonProbabilityError : Error {
  using Error::Error;
};
struct ZeroSupportError : Error {
  using Error::Error;
};
struct OddStubCountError : Error {
  using Error::Error;
};
struct TooLargeError : Error {
  using Error::Error;
};
struct InvalidCodeError : Error {
  using Error::Error;
};
struct StubOutOfRangeError : Error {
  using Error::Error;
};
struct TruncationTooSmallError : Error {
  using Error::Error;
};
struct NegativeConcentrationError : Error {
  using Error::Error;
};
struct BlowUpError : Error {
  using Error::Error;
};
struct CensoredExcessError : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};

}  // namespace coagraph

#endif  // COAGRAPH_ERRORS_HPP_
