#include "qsdc/bits.hpp"

#include <stdexcept>

namespace qsdc {

std::vector<Bit> bits_from_hex(std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  std::vector<Bit> bits;
  bits.reserve(hex.size() * 4);
  for (char c : hex) {
    int v;
    if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      v = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      v = c - 'A' + 10;
    } else {
      throw std::invalid_argument(std::string("invalid hex digit '") + c + "'");
    }
    for (int shift = 3; shift >= 0; --shift) bits.push_back(static_cast<Bit>((v >> shift) & 1));
  }
  return bits;
}

std::vector<Bit> bits_from_string(std::string_view text) {
  std::vector<Bit> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument(std::string("invalid bit character '") + c + "'");
    }
    bits.push_back(static_cast<Bit>(c - '0'));
  }
  return bits;
}

std::string bits_to_hex(const std::vector<Bit>& bits) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < bits.size(); i += 4) {
    int v = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      v = (v << 1) | (i + k < bits.size() ? bits[i + k] : 0);
    }
    out.push_back(kDigits[v]);
  }
  return out;
}

std::string bits_to_string(const std::vector<Bit>& bits) {
  std::string out;
  out.reserve(bits.size());
  for (Bit b : bits) out.push_back(b ? '1' : '0');
  return out;
}

}  // namespace qsdc
