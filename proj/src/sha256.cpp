#include "polycert/sha256.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace polycert {

struct Sha256::Ctx {
  EVP_MD_CTX* md = nullptr;
  Ctx() : md(EVP_MD_CTX_new()) {
    if (!md || EVP_DigestInit_ex(md, EVP_sha256(), nullptr) != 1) throw std::runtime_error("SHA-256 init failed");
  }
  ~Ctx() { EVP_MD_CTX_free(md); }
  Ctx(const Ctx&) = delete;
  Ctx& operator=(const Ctx&) = delete;
};

Sha256::Sha256() : ctx_(std::make_unique<Ctx>()) {}

Sha256::Sha256(const Sha256& other) : ctx_(std::make_unique<Ctx>()) {
  if (EVP_MD_CTX_copy_ex(ctx_->md, other.ctx_->md) != 1) throw std::runtime_error("SHA-256 copy failed");
}

Sha256& Sha256::operator=(const Sha256& other) {
  if (this != &other) {
    if (EVP_MD_CTX_copy_ex(ctx_->md, other.ctx_->md) != 1) throw std::runtime_error("SHA-256 copy failed");
  }
  return *this;
}

Sha256::~Sha256() = default;
Sha256::Sha256(Sha256&&) noexcept = default;
Sha256& Sha256::operator=(Sha256&&) noexcept = default;

void Sha256::update(const std::uint8_t* data, std::size_t n) {
  if (n && EVP_DigestUpdate(ctx_->md, data, n) != 1) throw std::runtime_error("SHA-256 update failed");
}

Sha256::Digest Sha256::peek() const {
  Sha256 fork(*this);
  Digest d{};
  unsigned len = 0;
  if (EVP_DigestFinal_ex(fork.ctx_->md, d.data(), &len) != 1 || len != d.size()) {
    throw std::runtime_error("SHA-256 final failed");
  }
  return d;
}

Sha256::Digest Sha256::hash(const std::vector<std::uint8_t>& b) {
  Sha256 h;
  h.update(b);
  return h.peek();
}

}  // namespace polycert
