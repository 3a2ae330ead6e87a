#include "hkst/digest.hpp"

#include <openssl/evp.h>

#include <array>

#include "hkst/error.hpp"
#include "hkst/image.hpp"

namespace hkst {

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::Numeric, "SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0xF];
  }
  return out;
}

std::string sha256_file_hex(const std::filesystem::path& path) {
  return sha256_hex(read_file_bytes(path));
}

}  // namespace hkst
