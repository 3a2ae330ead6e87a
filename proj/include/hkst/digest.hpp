#ifndef HKST_DIGEST_HPP
#define HKST_DIGEST_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

namespace hkst {

std::string sha256_hex(std::span<const std::uint8_t> bytes);
std::string sha256_file_hex(const std::filesystem::path& path);

}  // namespace hkst

#endif  // HKST_DIGEST_HPP
