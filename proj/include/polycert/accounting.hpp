// Communication accounting over stored transcripts.
#pragma once

#include "polycert/protocols.hpp"

namespace polycert {

struct Communication {
  std::size_t prover_elements = 0;    // field elements and indices sent by the prover
  std::size_t verifier_elements = 0;  // challenges
  std::size_t messages = 0;           // markers excluded
  std::size_t total() const { return prover_elements + verifier_elements; }
};

Communication count_communication(const Transcript& t);

// The asymptotic communication of a protocol with constants and logarithms
// dropped, evaluated at the instance's dimensions: n for the rank and
// determinant certificates, m d for full-rank membership, m d + n t for row
// space membership and everything built on it, 0 for the products.
double communication_shape(const Instance& inst, u64 sigma);

}  // namespace polycert
