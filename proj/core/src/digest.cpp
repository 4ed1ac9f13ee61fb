#include "cohomoforge/digest.hpp"

#include <openssl/evp.h>

#include <array>
#include <memory>

namespace cohomoforge {

std::string sha256_hex(std::string_view data) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1
        || EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1
        || EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1)
        throw std::runtime_error("sha256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 15]);
    }
    return out;
}

std::string cochain_hash(const Cochain& c) {
    std::string buf = std::to_string(c.prime()) + ":" + std::to_string(c.group()->order()) + ":"
        + std::to_string(c.degree()) + ":";
    buf.reserve(buf.size() + 2 * c.size());
    for (std::uint16_t v : c.raw()) {
        buf.push_back(static_cast<char>(v & 0xff));
        buf.push_back(static_cast<char>(v >> 8));
    }
    return sha256_hex(buf);
}

} // namespace cohomoforge
