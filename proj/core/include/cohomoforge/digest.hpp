#pragma once

#include "cohomoforge/cochain.hpp"

#include <string_view>

namespace cohomoforge {

[[nodiscard]] std::string sha256_hex(std::string_view data);

// over (p, |G|, degree, values)
[[nodiscard]] std::string cochain_hash(const Cochain& c);

} // namespace cohomoforge
