// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

// Residual field encoders:
//
//   CHAR(n)   the n raw bytes
//   INT(n,m)  exactly n ASCII digits, stored as an m-byte big-endian integer
//   VARINT    1..19 digits without a leading zero, stored as a VarUInt
//   VARCHAR   VarUInt length header followed by the raw bytes
//
// These layouts are part of the compressed-record wire format.

#pragma once

#include <span>
#include <string>
#include <string_view>

#include "pbc/bytes.h"
#include "pbc/model.h"

namespace pbc {

bool Conforms(std::string_view value, const FieldEncoder& encoder);

// Appends the encoding of value to out. Throws NonConforming when value is
// outside the encoder's character class.
void EncodeField(std::string_view value, const FieldEncoder& encoder, std::string& out);
std::string EncodeField(std::string_view value, const FieldEncoder& encoder);

// Encoded byte count of a conforming value.
std::size_t EncodedFieldSize(std::string_view value, const FieldEncoder& encoder);

// Reads one value back; INT re-pads to n digits. Throws Truncated, Overflow,
// or MalformedPayload (an INT value wider than n digits).
std::string DecodeField(ByteReader& in, const FieldEncoder& encoder);

// Cheapest eligible encoder for the sample of one field. Ties prefer
// INT, then VARINT, then CHAR, then VARCHAR.
FieldEncoder InferEncoder(std::span<const std::string> values);
FieldEncoder InferEncoder(std::span<const std::string_view> values);

}  // namespace pbc
