// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

// Dictionary file layout:
//
//   "PBCD" version:u8 postcoder:u8 count:VarUInt pattern*
//   [huffman: 257 code lengths, present iff postcoder == 1]
//   [training: VarUInt length, then VarUInt sample_bytes, u8 criterion, VarUInt k]
//   crc32:u32be over everything before it
//
//   pattern := tokens:VarUInt token*
//   token   := 0x00 byte | 0x01 encoder
//   encoder := 0x00 (VARCHAR) | 0x01 (VARINT) | 0x02 n:VarUInt (CHAR)
//            | 0x03 n:VarUInt m:VarUInt (INT)
//
// The training section is optional and present iff bytes remain before the
// checksum. Readers accept only the canonical form the writer produces.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "pbc/bytes.h"
#include "pbc/model.h"

namespace pbc {

inline constexpr char kDictMagic[4] = {'P', 'B', 'C', 'D'};
inline constexpr std::uint8_t kDictVersion = 1;

std::uint32_t Crc32(std::string_view data);

std::string WriteDict(const PatternDictionary& dict);

// Checks magic, then checksum, then version, then the body. Throws BadMagic,
// ChecksumMismatch, UnsupportedVersion or MalformedToken.
PatternDictionary ReadDict(std::string_view bytes);

// VarUInt that must use its shortest encoding; MalformedToken otherwise.
std::uint64_t ReadCanonicalVarUInt(ByteReader& in);

}  // namespace pbc
