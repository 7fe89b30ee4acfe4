#include "tmis/bigint.hpp"

#include <iterator>

#include "tmis/errors.hpp"

namespace tmis {

Bytes to_bytes(const BigInt& value) {
  if (value < 0) throw Error(ErrorCode::OutOfRange, "negative integer has no byte encoding");
  Bytes out;
  if (value == 0) return out;
  boost::multiprecision::export_bits(value, std::back_inserter(out), 8);
  return out;
}

Bytes to_bytes(const BigInt& value, std::size_t width) {
  Bytes raw = to_bytes(value);
  if (raw.size() > width) throw Error(ErrorCode::OutOfRange, "integer wider than requested encoding");
  Bytes out(width - raw.size(), 0);
  out.insert(out.end(), raw.begin(), raw.end());
  return out;
}

BigInt from_bytes(const Bytes& bytes) {
  BigInt value = 0;
  if (bytes.empty()) return value;
  boost::multiprecision::import_bits(value, bytes.begin(), bytes.end(), 8);
  return value;
}

std::string to_hex(const Bytes& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

std::string to_hex(const BigInt& value) {
  if (value == 0) return "0x0";
  if (value < 0) return "-" + to_hex(BigInt(-value));
  std::string digits = to_hex(to_bytes(value));
  auto first = digits.find_first_not_of('0');
  return "0x" + digits.substr(first);
}

unsigned bit_length(const BigInt& value) {
  if (value == 0) return 0;
  BigInt magnitude = value < 0 ? BigInt(-value) : value;
  return static_cast<unsigned>(boost::multiprecision::msb(magnitude)) + 1;
}

BigInt truncate_bits(const BigInt& value, unsigned bits) {
  BigInt mask = (BigInt(1) << bits) - 1;
  return value & mask;
}

}  // namespace tmis
