#include "polycert/provers.hpp"

#include <algorithm>

#include "polycert/polymat_oracles.hpp"

namespace polycert {

namespace {

class CallbackProver final : public Prover {
 public:
  CallbackProver(RespondFn r, EnterFn e) : respond_(std::move(r)), enter_(std::move(e)) {}

  Payload respond(const std::string& label, const Scope& scope) override {
    if (!respond_) throw ProverGaveUp("no answer for '" + label + "'");
    return respond_(label, scope);
  }
  ProverPtr enter(const std::string& id, std::size_t index, const Scope& scope) override {
    if (!enter_) throw ProverGaveUp("no strategy for sub-protocol " + id);
    return enter_(id, index, scope);
  }

 private:
  RespondFn respond_;
  EnterFn enter_;
};

[[noreturn]] void unexpected(const std::string& what) { throw ProverGaveUp("unexpected request " + what); }

int dpos(int d) { return d < 0 ? 0 : d; }

}  // namespace

ProverCtx ProverCtx::make(const Modulus& m, const Params& params, std::shared_ptr<const Strategy> s) {
  if (!s) s = std::make_shared<Strategy>();
  return {m, params, std::make_shared<std::mt19937_64>(params.seed ^ 0x9e3779b97f4a7c15ULL), std::move(s)};
}

ProverPtr make_prover(RespondFn respond, EnterFn enter) {
  return std::make_unique<CallbackProver>(std::move(respond), std::move(enter));
}

ProverPtr silent_prover() { return make_prover({}, {}); }

std::size_t count_label(const Scope& s, const std::string& label) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [&](const Message& m) { return m.label == label; }));
}

PolyVec combine_rows(const PolyMat& a, const FieldVec& lambda) {
  PolyVec out = zero_vec(a.modulus(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (lambda[i] == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += a.at(i, j).scaled(lambda[i]);
  }
  return out;
}

CompressionRound draw_compressions(const ProverCtx& ctx, const PolyMat& a, const PolyVec& v, u64 rho, std::size_t t) {
  CompressionRound round;
  const std::size_t m = a.rows();
  std::size_t draws = 0;
  while (round.C.size() < t) {
    if (++draws > 20 * t) throw ProverGaveUp("no full-rank Toeplitz compression within 20 t draws");
    FieldVec e(static_cast<std::size_t>(rho) + m - 1);
    for (auto& x : e) x = ctx.sample();
    ToeplitzSpec c(rho, m, std::move(e));
    PolyMat ca = c.apply(a);
    RationalSolve sol = rational_solve_left(ca, v);
    if (sol.outcome == SolveOutcome::LowRank) continue;
    if (sol.outcome == SolveOutcome::NoSolution) throw ProverGaveUp("v is not in the rational row space of A");
    round.d.push_back(sol.u.common_den());
    round.numer.push_back(sol.u.numerators());
    round.C.push_back(std::move(c));
    round.CA.push_back(std::move(ca));
  }
  return round;
}

CompressionRound coprime_compressions(const ProverCtx& ctx, const PolyMat& a, const PolyVec& v, u64 rho, std::size_t t) {
  for (int outer = 0; outer < 20; ++outer) {
    CompressionRound round = draw_compressions(ctx, a, v, rho, t);
    Poly g(a.modulus());
    for (const auto& d : round.d) g = gcd(g, d);
    if (g.is_one()) return round;
  }
  throw ProverGaveUp("denominators stayed non-coprime for 20 rounds");
}

std::optional<std::pair<Poly, Poly>> bezout_pair(const Poly& f1, const Poly& h) {
  const Modulus& m = f1.modulus();
  if (!f1.is_zero() && f1.deg() == 0) return std::pair{Poly::constant(m, m.inv(f1.lc())), Poly(m)};
  if (!h.is_zero() && h.deg() == 0) return std::pair{Poly(m), Poly::constant(m, m.inv(h.lc()))};
  if (f1.is_zero() || h.is_zero()) return std::nullopt;
  Xgcd x = xgcd(f1, h);
  if (!x.g.is_one()) return std::nullopt;
  return std::pair{std::move(x.s), std::move(x.t)};
}

ProverPtr Strategy::singularity(const ProverCtx&, const PolyMat& a) const {
  return make_prover(
      [a](const std::string& label, const Scope& s) -> Payload {
        if (label != "v") unexpected(label);
        auto v = nullvector_left(eval_mat(a, scope_scalar(s, "alpha")));
        if (!v) throw ProverGaveUp("A(alpha) is nonsingular");
        return FieldVector{std::move(*v)};
      },
      {});
}

ProverPtr Strategy::nonsingularity(const ProverCtx& ctx, const PolyMat& a) const {
  return make_prover(
      [ctx, a](const std::string& label, const Scope& s) -> Payload {
        if (label == "alpha") {
          // det A has at most n d roots, so n d + 1 points of S suffice.
          const u64 limit = std::min<u64>(ctx.params.sigma, a.rows() * static_cast<u64>(dpos(a.deg())) + 1);
          for (u64 x = 0; x < limit; ++x) {
            if (det_field(eval_mat(a, x)) != 0) return FieldScalar{x};
          }
          throw ProverGaveUp("det A vanishes on the scanned part of S");
        }
        if (label == "w") {
          auto w = solve_right(eval_mat(a, scope_scalar(s, "alpha")), scope_vector(s, "b"));
          if (!w) throw ProverGaveUp("A(alpha) w = b has no solution");
          return FieldVector{std::move(*w)};
        }
        unexpected(label);
      },
      {});
}

ProverPtr Strategy::rank_lb(const ProverCtx& ctx, const PolyMat& a, u64 rho) const {
  auto rp = std::make_shared<RankProfile>(rank_and_profile(a));
  if (rp->rank < rho) {
    return make_prover([](const std::string&, const Scope&) -> Payload { throw ProverGaveUp("rank(A) < rho"); }, {});
  }
  std::vector<std::size_t> I(rp->rows.begin(), rp->rows.begin() + static_cast<std::ptrdiff_t>(rho));
  std::vector<std::size_t> J(rp->columns.begin(), rp->columns.begin() + static_cast<std::ptrdiff_t>(rho));
  auto to_set = [](const std::vector<std::size_t>& x) { return IndexSet{{x.begin(), x.end()}}; };
  return make_prover(
      [I, J, to_set](const std::string& label, const Scope&) -> Payload {
        if (label == "I") return to_set(I);
        if (label == "J") return to_set(J);
        unexpected(label);
      },
      [ctx, a, I, J](const std::string& id, std::size_t, const Scope&) -> ProverPtr {
        if (id != "nonsingularity") unexpected(id);
        return ctx.use().nonsingularity(ctx, a.select(I, J));
      });
}

ProverPtr Strategy::rank_ub(const ProverCtx&, const PolyMat& a, u64 rho) const {
  return make_prover(
      [a, rho](const std::string& label, const Scope& s) -> Payload {
        if (label != "gamma") unexpected(label);
        auto g = sparse_representative(eval_mat(a, scope_scalar(s, "alpha")), scope_vector(s, "v"), rho);
        if (!g) throw ProverGaveUp("rank(A(alpha)) > rho");
        return FieldVector{std::move(*g)};
      },
      {});
}

ProverPtr Strategy::rank(const ProverCtx& ctx, const PolyMat& a, u64 rho) const {
  return make_prover({}, [ctx, a, rho](const std::string& id, std::size_t, const Scope&) -> ProverPtr {
    if (id == "rank_lb") return ctx.use().rank_lb(ctx, a, rho);
    if (id == "rank_ub") return ctx.use().rank_ub(ctx, a, rho);
    unexpected(id);
  });
}

ProverPtr Strategy::determinant(const ProverCtx& ctx, const PolyMat& a, const Poly& delta) const {
  return make_prover({}, [ctx, a, delta](const std::string& id, std::size_t, const Scope& s) -> ProverPtr {
    if (id != "field_det") unexpected(id);
    const u64 alpha = scope_scalar(s, "alpha");
    return ctx.use().field_det(ctx, eval_mat(a, alpha), delta.eval(alpha));
  });
}

ProverPtr Strategy::field_det(const ProverCtx&, const FieldMat& b, u64) const {
  auto f = std::make_shared<SquarePluq>(square_pluq(b));
  auto to_set = [](const std::vector<std::size_t>& x) { return IndexSet{{x.begin(), x.end()}}; };
  return make_prover(
      [f, to_set](const std::string& label, const Scope&) -> Payload {
        if (label == "P") return to_set(f->P);
        if (label == "L") return f->L;
        if (label == "U") return f->U;
        if (label == "Q") return to_set(f->Q);
        unexpected(label);
      },
      {});
}

ProverPtr Strategy::inverse(const ProverCtx&) const {
  return make_prover({}, [](const std::string& id, std::size_t, const Scope&) -> ProverPtr {
    if (id != "matmul") unexpected(id);
    return silent_prover();
  });
}

ProverPtr Strategy::frrsm(const ProverCtx&, const PolyMat& a, const PolyVec& v, std::optional<PolyVec> numer) const {
  auto u = std::make_shared<std::optional<PolyVec>>(std::move(numer));
  auto solve = [u, a, v]() -> const PolyVec& {
    if (u->has_value()) return **u;
    if (vec_is_zero(v)) {
      *u = zero_vec(a.modulus(), a.rows());
      return **u;
    }
    RationalSolve sol = rational_solve_left(a, v);
    if (sol.outcome != SolveOutcome::Solved || !sol.u.is_poly()) {
      throw ProverGaveUp("v has no polynomial solution u A = v");
    }
    *u = sol.u.numerators();
    return **u;
  };
  return make_prover(
      [solve](const std::string& label, const Scope& s) -> Payload {
        const PolyVec& uu = solve();
        if (label == "g") {
          const FieldVec& c = scope_vector(s, "c");
          Poly g(uu.empty() ? Modulus() : uu[0].modulus());
          for (std::size_t i = 0; i < uu.size(); ++i) g += uu[i].scaled(c[i]);
          return g;
        }
        if (label == "w") return FieldVector{eval_vec(uu, scope_scalar(s, "alpha"))};
        unexpected(label);
      },
      {});
}

ProverPtr Strategy::coprime(const ProverCtx& ctx, const PolyVec& f) const {
  struct Cert {
    Poly s1, s2;
    FieldVec betas;
  };
  auto cert = std::make_shared<std::optional<Cert>>();
  auto build = [ctx, cert, f]() -> const Cert& {
    if (cert->has_value()) return **cert;
    const Modulus& m = f.front().modulus();
    const std::size_t t = f.size();
    for (int attempt = 0; attempt < 20; ++attempt) {
      FieldVec betas(t > 2 ? t - 2 : 0);
      Poly h = t > 1 ? f[1] : Poly(m);
      for (std::size_t i = 2; i < t; ++i) {
        betas[i - 2] = ctx.sample();
        h += f[i].scaled(betas[i - 2]);
      }
      if (auto st = bezout_pair(f[0], h)) {
        *cert = Cert{std::move(st->first), std::move(st->second), std::move(betas)};
        return **cert;
      }
      if (t <= 2) break;  // nothing random to retry
    }
    throw ProverGaveUp("no combination h with gcd(f1, h) = 1");
  };
  return make_prover(
      [build](const std::string& label, const Scope&) -> Payload {
        const Cert& c = build();
        if (label == "s1") return c.s1;
        if (label == "s2") return c.s2;
        if (label == "betas") return FieldVector{c.betas};
        unexpected(label);
      },
      {});
}

ProverPtr Strategy::rsm(const ProverCtx& ctx, const PolyMat& a, const PolyVec& v) const {
  struct State {
    u64 rho = 0;
    std::optional<CompressionRound> round;
  };
  auto st = std::make_shared<State>();
  st->rho = rank_and_profile(a).rank;
  auto cert = [ctx, st, a, v]() -> const CompressionRound& {
    if (!st->round) {
      const auto t = rsm_rounds(ctx.params.sigma, st->rho, a.deg());
      if (!t) throw ProverGaveUp("sigma <= rank(A)");
      st->round = coprime_compressions(ctx, a, v, st->rho, *t);
    }
    return *st->round;
  };
  return make_prover(
      [st, cert](const std::string& label, const Scope& s) -> Payload {
        if (label == "rho") return RankClaim{st->rho};
        if (label == "C") return cert().C.at(count_label(s, "C"));
        if (label == "d") return cert().d;
        unexpected(label);
      },
      [ctx, st, cert, a, v](const std::string& id, std::size_t k, const Scope&) -> ProverPtr {
        if (id == "rank_ub") return ctx.use().rank_ub(ctx, a, st->rho);
        const CompressionRound& c = cert();
        if (id == "rank_lb") return ctx.use().rank_lb(ctx, c.CA.at(k), st->rho);
        if (id == "coprime") return ctx.use().coprime(ctx, c.d);
        if (id == "frrsm") return ctx.use().frrsm(ctx, c.CA.at(k), vec_scaled(v, c.d.at(k)), c.numer.at(k));
        unexpected(id);
      });
}

ProverPtr Strategy::rs_subset(const ProverCtx& ctx, const PolyMat& a, const PolyMat& b) const {
  return make_prover({}, [ctx, a, b](const std::string& id, std::size_t, const Scope& s) -> ProverPtr {
    if (id != "rsm") unexpected(id);
    return ctx.use().rsm(ctx, b, combine_rows(a, scope_vector(s, "lambda")));
  });
}

ProverPtr Strategy::rs_equality(const ProverCtx& ctx, const PolyMat& a, const PolyMat& b) const {
  return make_prover({}, [ctx, a, b](const std::string& id, std::size_t k, const Scope&) -> ProverPtr {
    if (id != "rs_subset") unexpected(id);
    return k == 0 ? ctx.use().rs_subset(ctx, a, b) : ctx.use().rs_subset(ctx, b, a);
  });
}

ProverPtr Strategy::row_basis(const ProverCtx& ctx, const PolyMat& a, const PolyMat& b) const {
  return make_prover({}, [ctx, a, b](const std::string& id, std::size_t, const Scope&) -> ProverPtr {
    if (id == "rank_lb") return ctx.use().rank_lb(ctx, b, b.rows());
    if (id == "rs_equality") return ctx.use().rs_equality(ctx, a, b);
    unexpected(id);
  });
}

ProverPtr Strategy::saturated(const ProverCtx& ctx, const PolyMat& a) const {
  return make_prover({}, [ctx, a](const std::string& id, std::size_t, const Scope&) -> ProverPtr {
    if (id != "rs_subset") unexpected(id);
    if (a.rows() <= a.cols()) return ctx.use().rs_subset(ctx, PolyMat::identity(a.modulus(), a.rows()), a.transpose());
    return ctx.use().rs_subset(ctx, PolyMat::identity(a.modulus(), a.cols()), a);
  });
}

ProverPtr Strategy::sat_basis(const ProverCtx& ctx, const PolyMat& a, const PolyMat& b) const {
  return make_prover({}, [ctx, a, b](const std::string& id, std::size_t, const Scope&) -> ProverPtr {
    if (id == "rank_lb") return ctx.use().rank_lb(ctx, a, b.rows());
    if (id == "rs_subset") return ctx.use().rs_subset(ctx, a, b);
    if (id == "saturated") return ctx.use().saturated(ctx, b);
    unexpected(id);
  });
}

ProverPtr Strategy::unimod_completable(const ProverCtx& ctx, const PolyMat& a) const {
  return make_prover({}, [ctx, a](const std::string& id, std::size_t, const Scope&) -> ProverPtr {
    if (id == "rank_lb") return ctx.use().rank_lb(ctx, a, a.rows());
    if (id == "saturated") return ctx.use().saturated(ctx, a);
    unexpected(id);
  });
}

ProverPtr Strategy::kernel_basis(const ProverCtx& ctx, const PolyMat& a, const PolyMat& b) const {
  return make_prover({}, [ctx, a, b](const std::string& id, std::size_t k, const Scope&) -> ProverPtr {
    if (id == "rank_lb") return k == 0 ? ctx.use().rank_lb(ctx, b, b.rows()) : ctx.use().rank_lb(ctx, a, a.rows() - b.rows());
    if (id == "matmul") return silent_prover();
    if (id == "saturated") return ctx.use().saturated(ctx, b);
    unexpected(id);
  });
}

ProverPtr Strategy::normal_form(const ProverCtx& ctx, const PolyMat& a, const PolyMat& h) const {
  return make_prover({}, [ctx, a, h](const std::string& id, std::size_t, const Scope&) -> ProverPtr {
    if (id != "rs_equality") unexpected(id);
    return ctx.use().rs_equality(ctx, a, h);
  });
}

ProverPtr Strategy::for_instance(const ProverCtx& ctx, const Instance& inst) const {
  const std::string& id = inst.protocol;
  auto mat = [&](const char* n) { return inst.get<PolyMat>(n); };
  auto rho = [&] { return inst.get<RankClaim>("rho").rank; };
  if (id == "singularity") return singularity(ctx, mat("A"));
  if (id == "nonsingularity") return nonsingularity(ctx, mat("A"));
  if (id == "rank_lb") return rank_lb(ctx, mat("A"), rho());
  if (id == "rank_ub") return rank_ub(ctx, mat("A"), rho());
  if (id == "rank") return rank(ctx, mat("A"), rho());
  if (id == "determinant") return determinant(ctx, mat("A"), inst.get<Poly>("delta"));
  if (id == "field_det") return field_det(ctx, inst.get<FieldMat>("B"), inst.get<FieldScalar>("beta").value);
  if (id == "system_solve" || id == "matmul") return silent_prover();
  if (id == "inverse") return inverse(ctx);
  if (id == "frrsm") return frrsm(ctx, mat("A"), inst.get<PolyVec>("v"));
  if (id == "coprime") return coprime(ctx, inst.get<PolyVec>("f"));
  if (id == "rsm") return rsm(ctx, mat("A"), inst.get<PolyVec>("v"));
  if (id == "rs_subset") return rs_subset(ctx, mat("A"), mat("B"));
  if (id == "rs_equality") return rs_equality(ctx, mat("A"), mat("B"));
  if (id == "row_basis") return row_basis(ctx, mat("A"), mat("B"));
  if (id == "hermite") return normal_form(ctx, mat("A"), mat("H"));
  if (id == "spopov") return normal_form(ctx, mat("A"), mat("P"));
  if (id == "saturated") return saturated(ctx, mat("A"));
  if (id == "sat_basis") return sat_basis(ctx, mat("A"), mat("B"));
  if (id == "unimod_completable") return unimod_completable(ctx, mat("A"));
  if (id == "kernel_basis") return kernel_basis(ctx, mat("A"), mat("B"));
  throw InstanceError("unknown protocol '" + id + "'");
}

ProverPtr honest_prover(const Instance& inst, const Params& params) {
  const ProverCtx ctx = ProverCtx::make(inst.modulus, params);
  return ctx.use().for_instance(ctx, inst);
}

}  // namespace polycert
