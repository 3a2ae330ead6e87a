#ifndef HKST_ERROR_HPP
#define HKST_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hkst {

enum class ErrorCode {
  InvalidArgument,
  Io,
  Format,
  ShapeMismatch,
  SizeLimit,
  Numeric,
};

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

enum class PgmFault {
  MalformedHeader,
  UnsupportedMaxval,
  TruncatedPayload,
};

/// PGM decoding failure; `offset` is the byte position where decoding stopped.
class PgmError : public Error {
 public:
  PgmError(PgmFault fault, std::size_t offset, const std::string& what)
      : Error(ErrorCode::Format, what + " (byte offset " + std::to_string(offset) + ")"),
        fault_(fault),
        offset_(offset) {}

  PgmFault fault() const noexcept { return fault_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  PgmFault fault_;
  std::size_t offset_;
};

}  // namespace hkst

#endif  // HKST_ERROR_HPP
