// The verifier side of every certificate, their composition, parameter
// bounds, and the entry points that run or replay a whole exchange.
//
// Verifier code evaluates polynomial matrices and checks shapes; it never
// computes ranks, normal forms or solutions over F[x].
#pragma once

#include <optional>
#include <stdexcept>

#include "polycert/oracle.hpp"
#include "polycert/session.hpp"

namespace polycert {

const std::vector<std::string>& protocol_ids();
bool is_protocol_id(const std::string& id);

class InstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Instance {
  std::string protocol;
  Modulus modulus;
  PublicInputs inputs;
  PublicInputs witness;  // ground truth for planted instances; never sent

  bool has(const std::string& name) const;
  const Payload& input(const std::string& name) const;  // throws InstanceError

  template <class T>
  const T& get(const std::string& name) const {
    const Payload& p = input(name);
    if (const T* t = std::get_if<T>(&p)) return *t;
    throw InstanceError("input '" + name + "' has type " + payload_tag(p));
  }
};

// Names and payload tags each protocol expects, in canonical order.
const std::vector<std::pair<std::string, std::string>>& input_layout(const std::string& protocol);

// Empty when names, types and dimensions fit the protocol.
std::string validate_instance(const Instance& inst);

// Smallest #S for which every honest run completes and the error is at most 1/2.
u64 strict_sigma_bound(const Instance& inst);
// Theoretical error at this sigma from dimensions alone (ranks bounded by
// min(m, n)), capped at 1. Recorded in transcripts for information.
double soundness_bound(const Instance& inst, u64 sigma);

// Number of Toeplitz compressions for row-space membership:
// 1 + ceil(log_{sigma/rho}(2 rho d)) with d = max(1, deg A), at least 2.
// nullopt when sigma <= rho, where the probability argument is vacuous.
std::optional<std::size_t> rsm_rounds(u64 sigma, u64 rho, int deg_a);

namespace verify {

Verdict singularity(Channel& ch, const OracleRef& a);
Verdict nonsingularity(Channel& ch, const OracleRef& a);
Verdict rank_lb(Channel& ch, const OracleRef& a, u64 rho);
Verdict rank_ub(Channel& ch, const OracleRef& a, u64 rho);
Verdict rank(Channel& ch, const OracleRef& a, u64 rho);
Verdict determinant(Channel& ch, const OracleRef& a, const Poly& delta);
Verdict field_det(Channel& ch, const FieldMat& b, u64 beta);
Verdict system_solve(Channel& ch, const OracleRef& a, const PolyVec& b, const PolyVec& v, const Poly& delta);
Verdict matmul(Channel& ch, const OracleRef& a, const OracleRef& b, const OracleRef& c);
Verdict inverse(Channel& ch, const OracleRef& a, const OracleRef& b);
Verdict frrsm(Channel& ch, const OracleRef& a, const PolyVec& v);
Verdict coprime(Channel& ch, const PolyVec& f);
Verdict rsm(Channel& ch, const OracleRef& a, const PolyVec& v);
Verdict rs_subset(Channel& ch, const OracleRef& a, const OracleRef& b);
Verdict rs_equality(Channel& ch, const OracleRef& a, const OracleRef& b);
Verdict row_basis(Channel& ch, const OracleRef& a, const OracleRef& b);
Verdict hermite(Channel& ch, const OracleRef& a, const PolyMat& h);
Verdict spopov(Channel& ch, const OracleRef& a, const Shift& s, const PolyMat& p);
Verdict saturated(Channel& ch, const OracleRef& a);
Verdict sat_basis(Channel& ch, const OracleRef& a, const OracleRef& b);
Verdict unimod_completable(Channel& ch, const OracleRef& a);
Verdict kernel_basis(Channel& ch, const OracleRef& a, const OracleRef& b);

// Dispatches on inst.protocol. Assumes validate_instance passed.
Verdict top_level(Channel& ch, const Instance& inst);

}  // namespace verify

// Checks parameters and the instance, then runs the verifier against the
// prover. ParamsInvalid verdicts carry an empty message list.
SessionResult run_protocol(const Instance& inst, const Params& params, Prover& prover);

Instance instance_of(const Transcript& t);
Verdict verify_transcript(const Transcript& t);

}  // namespace polycert
