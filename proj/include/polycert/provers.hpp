// Prover strategies. The honest ones run the heavy computations (Bareiss rank
// profiles, rational solving, PLUQ) that the verifier never does.
#pragma once

#include <functional>
#include <memory>
#include <random>

#include "polycert/protocols.hpp"

namespace polycert {

class Strategy;
using ProverPtr = std::unique_ptr<Prover>;

// Shared by a prover and all of its children: field, parameters, the
// prover's own randomness (Toeplitz entries, coprime combinations), and the
// strategy that builds every child prover.
struct ProverCtx {
  Modulus m;
  Params params;
  std::shared_ptr<std::mt19937_64> rng;
  std::shared_ptr<const Strategy> strategy;

  static ProverCtx make(const Modulus& m, const Params& params, std::shared_ptr<const Strategy> s = nullptr);
  u64 sample() const { return uniform_below(*rng, params.sigma); }
  const Strategy& use() const { return *strategy; }
};
using RespondFn = std::function<Payload(const std::string& label, const Scope& scope)>;
using EnterFn = std::function<ProverPtr(const std::string& id, std::size_t index, const Scope& scope)>;

// Prover assembled from callbacks; either may be empty, in which case the
// corresponding request makes the prover give up.
ProverPtr make_prover(RespondFn respond, EnterFn enter);
ProverPtr silent_prover();

std::size_t count_label(const Scope& s, const std::string& label);

// One accepted round of the compression search: t full-rank compressions C_i A, the
// common denominators d_i of the solutions u_i (C_i A) = v, and the
// polynomial numerators d_i u_i.
struct CompressionRound {
  std::vector<ToeplitzSpec> C;
  std::vector<PolyMat> CA;
  PolyVec d;
  std::vector<PolyVec> numer;
};

// Draws full-rank rho x m Toeplitz compressions until t are found; gives up
// after 20 t draws, or when v is outside the rational row space.
CompressionRound draw_compressions(const ProverCtx& ctx, const PolyMat& a, const PolyVec& v, u64 rho, std::size_t t);
// Repeats rounds until the denominators are coprime, at most 20 times.
CompressionRound coprime_compressions(const ProverCtx& ctx, const PolyMat& a, const PolyVec& v, u64 rho, std::size_t t);

// Bezout pair for f1 and h with the degree bounds the coprime check expects;
// nullopt when gcd(f1, h) != 1.
std::optional<std::pair<Poly, Poly>> bezout_pair(const Poly& f1, const Poly& h);

// One prover per protocol. The base class is the honest strategy; composite
// provers build their children through ctx.strategy, so a subclass that
// overrides a leaf protocol changes it everywhere it is nested.
class Strategy {
 public:
  virtual ~Strategy() = default;

  virtual ProverPtr singularity(const ProverCtx& ctx, const PolyMat& a) const;
  virtual ProverPtr nonsingularity(const ProverCtx& ctx, const PolyMat& a) const;
  virtual ProverPtr rank_lb(const ProverCtx& ctx, const PolyMat& a, u64 rho) const;
  virtual ProverPtr rank_ub(const ProverCtx& ctx, const PolyMat& a, u64 rho) const;
  virtual ProverPtr rank(const ProverCtx& ctx, const PolyMat& a, u64 rho) const;
  virtual ProverPtr determinant(const ProverCtx& ctx, const PolyMat& a, const Poly& delta) const;
  virtual ProverPtr field_det(const ProverCtx& ctx, const FieldMat& b, u64 beta) const;
  virtual ProverPtr inverse(const ProverCtx& ctx) const;
  // numer, when given, is a polynomial u with u A = v.
  virtual ProverPtr frrsm(const ProverCtx& ctx, const PolyMat& a, const PolyVec& v,
                          std::optional<PolyVec> numer = std::nullopt) const;
  virtual ProverPtr coprime(const ProverCtx& ctx, const PolyVec& f) const;
  virtual ProverPtr rsm(const ProverCtx& ctx, const PolyMat& a, const PolyVec& v) const;
  virtual ProverPtr rs_subset(const ProverCtx& ctx, const PolyMat& a, const PolyMat& b) const;
  virtual ProverPtr rs_equality(const ProverCtx& ctx, const PolyMat& a, const PolyMat& b) const;
  virtual ProverPtr row_basis(const ProverCtx& ctx, const PolyMat& a, const PolyMat& b) const;
  virtual ProverPtr normal_form(const ProverCtx& ctx, const PolyMat& a, const PolyMat& h) const;
  virtual ProverPtr saturated(const ProverCtx& ctx, const PolyMat& a) const;
  virtual ProverPtr sat_basis(const ProverCtx& ctx, const PolyMat& a, const PolyMat& b) const;
  virtual ProverPtr unimod_completable(const ProverCtx& ctx, const PolyMat& a) const;
  virtual ProverPtr kernel_basis(const ProverCtx& ctx, const PolyMat& a, const PolyMat& b) const;

  // Top-level prover for an instance of any protocol.
  ProverPtr for_instance(const ProverCtx& ctx, const Instance& inst) const;
};

ProverPtr honest_prover(const Instance& inst, const Params& params);

// lambda A with a constant row vector lambda.
PolyVec combine_rows(const PolyMat& a, const FieldVec& lambda);

}  // namespace polycert
