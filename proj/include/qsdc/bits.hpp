#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qsdc/random.hpp"

namespace qsdc {

/// "a3" -> 1,0,1,0,0,0,1,1 (most significant bit first). Throws
/// std::invalid_argument on non-hex characters.
std::vector<Bit> bits_from_hex(std::string_view hex);
/// "0110" -> 0,1,1,0. Throws std::invalid_argument on other characters.
std::vector<Bit> bits_from_string(std::string_view text);

/// Packs bits MSB-first into lowercase hex, zero-padding the final nibble.
std::string bits_to_hex(const std::vector<Bit>& bits);
std::string bits_to_string(const std::vector<Bit>& bits);

}  // namespace qsdc
