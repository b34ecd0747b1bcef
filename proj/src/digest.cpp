#include "claimcheck/digest.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdint>
#include <memory>

#include "claimcheck/error.hpp"

namespace claimcheck {

namespace {

struct MdCtxDeleter {
    void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

class Sha256 {
public:
    Sha256() : ctx_(EVP_MD_CTX_new()) {
        if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1)
            throw Error(ErrorKind::Io, "sha256 init failed");
    }

    void update(std::string_view bytes) {
        if (EVP_DigestUpdate(ctx_.get(), bytes.data(), bytes.size()) != 1)
            throw Error(ErrorKind::Io, "sha256 update failed");
    }

    std::string hex() {
        std::array<unsigned char, EVP_MAX_MD_SIZE> out{};
        unsigned int len = 0;
        if (EVP_DigestFinal_ex(ctx_.get(), out.data(), &len) != 1)
            throw Error(ErrorKind::Io, "sha256 final failed");
        static constexpr char kHex[] = "0123456789abcdef";
        std::string s;
        s.reserve(len * 2);
        for (unsigned int i = 0; i < len; ++i) {
            s.push_back(kHex[out[i] >> 4]);
            s.push_back(kHex[out[i] & 0xf]);
        }
        return s;
    }

private:
    std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx_;
};

}  // namespace

std::string sha256_hex(std::string_view bytes) {
    Sha256 h;
    h.update(bytes);
    return h.hex();
}

std::string framed_digest(std::initializer_list<std::string_view> fields) {
    Sha256 h;
    for (auto f : fields) {
        std::uint64_t n = f.size();
        std::array<char, 8> len{};
        for (auto& b : len) {
            b = static_cast<char>(n & 0xff);
            n >>= 8;
        }
        h.update(std::string_view(len.data(), len.size()));
        h.update(f);
    }
    return h.hex();
}

}  // namespace claimcheck
