// Incremental SHA-256 over OpenSSL's EVP interface. Copyable, so a running
// hash state can be forked to squeeze challenges without disturbing it.
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

namespace polycert {

class Sha256 {
 public:
  using Digest = std::array<std::uint8_t, 32>;

  Sha256();
  Sha256(const Sha256& other);
  Sha256& operator=(const Sha256& other);
  Sha256(Sha256&&) noexcept;
  Sha256& operator=(Sha256&&) noexcept;
  ~Sha256();

  void update(const std::uint8_t* data, std::size_t n);
  void update(const std::vector<std::uint8_t>& b) { update(b.data(), b.size()); }
  // Digest of everything absorbed so far; the state stays usable.
  Digest peek() const;

  static Digest hash(const std::vector<std::uint8_t>& b);

 private:
  struct Ctx;
  std::unique_ptr<Ctx> ctx_;
};

}  // namespace polycert
