#include <numeric>

#include "tmis/crypto.hpp"
#include "tmis/errors.hpp"

namespace tmis::crypto {

unsigned PackLayout::total_width() const {
  return std::accumulate(fields_.begin(), fields_.end(), 0u,
                         [](unsigned acc, const PackField& f) { return acc + f.width; });
}

std::size_t PackLayout::index_of(std::string_view tag) const {
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (fields_[i].tag == tag) return i;
  }
  throw Error(ErrorCode::OutOfRange, "no packed field named " + std::string(tag));
}

PackedPlaintext::PackedPlaintext(PackLayout layout, std::vector<BigInt> values)
    : layout_(std::move(layout)), values_(std::move(values)) {
  if (values_.size() != layout_.fields().size()) {
    throw Error(ErrorCode::InvalidParameters, "value count does not match the packing layout");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const auto& field = layout_.fields()[i];
    if (values_[i] < 0 || bit_length(values_[i]) > field.width) {
      throw Error(ErrorCode::PackingOverflow, "field " + field.tag + " exceeds its " +
                                                  std::to_string(field.width) + "-bit slot");
    }
  }
}

const BigInt& PackedPlaintext::get(std::string_view tag) const {
  return values_[layout_.index_of(tag)];
}

BigInt PackedPlaintext::encode() const {
  BigInt packed = 0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    packed <<= layout_.fields()[i].width;
    packed |= values_[i];
  }
  return packed;
}

BigInt PackedPlaintext::encode_for(const BigInt& modulus) const {
  if (total_width() + 8 >= bit_length(modulus)) {
    throw Error(ErrorCode::PackingOverflow, std::to_string(total_width()) +
                                                "-bit plaintext does not fit a " +
                                                std::to_string(bit_length(modulus)) + "-bit modulus");
  }
  return encode();
}

PackedPlaintext PackedPlaintext::decode(const PackLayout& layout, const BigInt& packed) {
  if (packed < 0 || bit_length(packed) > layout.total_width()) {
    throw Error(ErrorCode::OutOfRange, "value is wider than the packing layout");
  }
  std::vector<BigInt> values(layout.fields().size());
  BigInt rest = packed;
  for (std::size_t i = values.size(); i-- > 0;) {
    unsigned width = layout.fields()[i].width;
    values[i] = truncate_bits(rest, width);
    rest >>= width;
  }
  return PackedPlaintext(layout, std::move(values));
}

}  // namespace tmis::crypto
