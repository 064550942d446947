// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

// Little-endian base-128 varints, big-endian fixed-width integers, and a
// bounds-checked read cursor. Shared by every wire format in the project.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "pbc/error.h"

namespace pbc {

inline constexpr std::size_t kMaxVarUIntBytes = 10;

void PutVarUInt(std::string& out, std::uint64_t value);
std::size_t VarUIntSize(std::uint64_t value);
void PutBigEndian(std::string& out, std::uint64_t value, std::size_t width);

class ByteReader {
 public:
  explicit ByteReader(std::string_view data) : data_(data) {}

  std::uint8_t ReadByte();
  // Throws Truncated on a short stream, Overflow beyond 64 bits.
  std::uint64_t ReadVarUInt();
  std::uint64_t ReadBigEndian(std::size_t width);
  std::string_view ReadBytes(std::size_t count);

  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return data_.size() - pos_; }
  bool at_end() const { return pos_ == data_.size(); }
  std::string_view rest() const { return data_.substr(pos_); }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace pbc
