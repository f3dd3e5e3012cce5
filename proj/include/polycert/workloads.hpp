// Seeded instance generators: random matrices, planted ranks, planted
// memberships and normal forms, and a true instance for every protocol.
#pragma once

#include <random>
#include <stdexcept>

#include "polycert/protocols.hpp"

namespace polycert {

class SpecInvalid : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Poly random_poly(const Modulus& m, int deg, std::mt19937_64& rng);  // exact degree, or zero for deg < 0
PolyVec random_polyvec(const Modulus& m, std::size_t n, int deg, std::mt19937_64& rng);
PolyMat random_polymat(const Modulus& m, std::size_t rows, std::size_t cols, int deg, std::mt19937_64& rng);
// Product of random rows x r and r x cols factors; rank r with high probability.
PolyMat planted_rank(const Modulus& m, std::size_t rows, std::size_t cols, std::size_t r, int deg,
                     std::mt19937_64& rng);

enum class InstanceKind { Random, PlantedRank, PlantedMembership, PlantedNormalForm };
std::optional<InstanceKind> kind_from_name(const std::string& s);

struct InstanceSpec {
  InstanceKind kind = InstanceKind::Random;
  std::size_t m = 4, n = 4, r = 2;
  int d = 2;
  u64 seed = 0;
  std::string protocol;  // Random kind only: a true instance of this protocol
};

// Deterministic under spec.seed. Planted kinds fill Instance::witness.
Instance generate(const Modulus& m, const InstanceSpec& spec);

// A true statement for `protocol` with dimensions in [1, max_dim] and entry
// degrees in [0, max_deg].
Instance true_instance(const std::string& protocol, const Modulus& m, std::size_t max_dim, int max_deg,
                       std::mt19937_64& rng);

}  // namespace polycert
