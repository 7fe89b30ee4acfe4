#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tmis {

using BigInt = boost::multiprecision::cpp_int;
using Bytes = std::vector<std::uint8_t>;

/// Minimal big-endian magnitude; zero encodes as an empty vector.
Bytes to_bytes(const BigInt& value);
/// Big-endian, left-padded to exactly `width` octets.
Bytes to_bytes(const BigInt& value, std::size_t width);
BigInt from_bytes(const Bytes& bytes);

std::string to_hex(const BigInt& value);
std::string to_hex(const Bytes& bytes);

unsigned bit_length(const BigInt& value);
/// Keeps the low `bits` bits.
BigInt truncate_bits(const BigInt& value, unsigned bits);

}  // namespace tmis
