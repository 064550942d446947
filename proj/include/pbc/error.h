// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pbc {

enum class ErrorCode {
  kAllWildcards,
  kNonConforming,
  kTruncated,
  kOverflow,
  kEmptyPattern,
  kTooLarge,
  kInsufficientSample,
  kUnknownPatternId,
  kMalformedPayload,
  kEmptyStats,
  kBadMagic,
  kUnsupportedVersion,
  kChecksumMismatch,
  kMalformedToken,
  kIndexOutOfRange,
  kInvalidArgument,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure the library reports carries one of the codes above so callers
// (and tests) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pbc
