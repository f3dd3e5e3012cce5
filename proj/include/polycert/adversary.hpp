// Cheating provers and soundness experiments.
//
// A cheater is a Strategy whose leaf provers first ask the ground-truth
// oracles whether their own claim holds. True sub-claims are proved honestly;
// false ones get the best forgery we know for that protocol. Composite
// protocols inherit the cheat through the children they build.
#pragma once

#include <stdexcept>

#include "polycert/json_io.hpp"
#include "polycert/provers.hpp"

namespace polycert {

class InstanceActuallyTrue : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Ground truth for the claim an instance makes, decided with the heavy
// oracles (Bareiss rank, rational solving, normal forms).
bool statement_holds(const Instance& inst);

class CheatingStrategy : public Strategy {
 public:
  ProverPtr singularity(const ProverCtx& ctx, const PolyMat& a) const override;
  ProverPtr nonsingularity(const ProverCtx& ctx, const PolyMat& a) const override;
  ProverPtr rank_lb(const ProverCtx& ctx, const PolyMat& a, u64 rho) const override;
  ProverPtr rank_ub(const ProverCtx& ctx, const PolyMat& a, u64 rho) const override;
  ProverPtr field_det(const ProverCtx& ctx, const FieldMat& b, u64 beta) const override;
  ProverPtr frrsm(const ProverCtx& ctx, const PolyMat& a, const PolyVec& v,
                  std::optional<PolyVec> numer = std::nullopt) const override;
  ProverPtr coprime(const ProverCtx& ctx, const PolyVec& f) const override;
  ProverPtr rsm(const ProverCtx& ctx, const PolyMat& a, const PolyVec& v) const override;
};

// Throws InstanceActuallyTrue when the instance's claim holds.
ProverPtr cheating_prover(const Instance& inst, const Params& params);

// Per-protocol error bound with the instance's actual degrees and rank:
// singularity n d, rank_ub r d + 1, matmul d_A + d_B + 1, frrsm
// 3 m d_A + d_v + 1, coprime 2 d - 1, rsm 4 r d_A + d_v + 1, and so on, over
// #S. Composite protocols fall back to the transcript bound. Capped at 1.
double experiment_bound(const Instance& inst, u64 sigma);

struct SoundnessReport {
  std::string protocol;
  std::string fixture;
  u64 sigma = 0;
  std::size_t trials = 0;
  std::size_t accepts = 0;
  std::size_t gave_up = 0;  // counted as rejections
  double rate = 0;
  double bound = 0;
  double tolerance = 0;  // 3 standard errors of a Bernoulli(bound) mean
  bool pass = false;

  Json to_json() const;
};

// Interactive-mode runs of the cheater against fresh verifier seeds derived
// from `seed`. Parallel over trials; the result does not depend on the
// thread count.
SoundnessReport run_soundness_experiment(const Instance& false_instance, u64 sigma, std::size_t trials, u64 seed,
                                         const std::string& fixture = {});

struct SoundnessFixture {
  std::string name;
  Instance instance;
};

// Small false instances on which the cheaters win as often as the bounds
// allow, one or more per base protocol.
std::vector<SoundnessFixture> soundness_fixtures(const Modulus& m);

}  // namespace polycert
