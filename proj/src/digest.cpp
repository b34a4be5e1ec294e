#include "fragmark/digest.hpp"

#include <openssl/evp.h>

#include "fragmark/error.hpp"

namespace fragmark {

Digest sha256(std::span<const std::uint8_t> bytes) {
    Digest out{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
        len != out.size()) {
        throw Error(ErrorCode::InvalidArgument, "sha256 failed");
    }
    return out;
}

}  // namespace fragmark
