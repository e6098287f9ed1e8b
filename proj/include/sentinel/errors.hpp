#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sentinel {

enum class ErrorKind {
  DegenerateInput,
  ShapeError,
  SingularKernel,
  NotReducible,
  NoLeftInverse,
  ZeroBehavior,
  NotObservable,
  NotMaximallySecure,
  InconsistentIndex,
  HorizonTooShort,
  MajorityTie,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library. `subset` carries the witness for
// NotReducible (0-based column indices); `tally` carries class sizes for
// MajorityTie.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::vector<std::size_t> subset = {},
        std::vector<std::size_t> tally = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::size_t>& subset() const noexcept { return subset_; }
  const std::vector<std::size_t>& tally() const noexcept { return tally_; }

 private:
  ErrorKind kind_;
  std::vector<std::size_t> subset_;
  std::vector<std::size_t> tally_;
};

}  // namespace sentinel
