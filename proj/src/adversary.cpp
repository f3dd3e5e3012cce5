#include "polycert/adversary.hpp"

#include <algorithm>
#include <cmath>

#include "polycert/polymat_oracles.hpp"

namespace polycert {

namespace {

int dpos(int d) { return d < 0 ? 0 : d; }

bool rows_in(const PolyMat& a, const PolyMat& b) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (!row_membership_oracle(b, a.row(i))) return false;
  }
  return true;
}

// What the saturation check certifies: A X = I for m <= n, or that the rows
// of A generate all of F[x]^n when m > n.
bool saturated_claim(const PolyMat& a) {
  const std::size_t m = a.rows(), n = a.cols();
  if (m <= n) return rows_in(PolyMat::identity(a.modulus(), m), a.transpose());
  return rows_in(PolyMat::identity(a.modulus(), n), a);
}

std::size_t rank_of(const PolyMat& a) { return rank_and_profile(a).rank; }

bool coprime_claim(const PolyVec& f) {
  Poly g(f.front().modulus());
  for (const auto& x : f) g = gcd(g, x);
  return g.is_one();
}

bool poly_member(const PolyMat& a, const PolyVec& v) {
  return vec_is_zero(v) || polynomial_solve_left(a, v).has_value();
}

// w with w [a | c] = [v | g]; failing that w a = v; failing that zero.
FieldVec best_left_solution(const FieldMat& a, const FieldVec& v, const FieldVec& c, u64 g) {
  const Modulus& m = a.modulus();
  FieldMat joint(m, a.cols() + 1, a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) joint.at(j, i) = a.at(i, j);
    joint.at(a.cols(), i) = c[i];
  }
  FieldVec rhs = v;
  rhs.push_back(g);
  if (auto w = solve_right(joint, rhs)) return *w;
  if (auto w = solve_right(a.transpose(), v)) return *w;
  return FieldVec(a.rows(), 0);
}

}  // namespace

bool statement_holds(const Instance& inst) {
  const std::string& id = inst.protocol;
  auto mat = [&](const char* n) -> const PolyMat& { return inst.get<PolyMat>(n); };
  auto rho = [&] { return inst.get<RankClaim>("rho").rank; };
  if (id == "singularity") return det_bareiss(mat("A")).is_zero();
  if (id == "nonsingularity") return !det_bareiss(mat("A")).is_zero();
  if (id == "rank_lb") return rank_of(mat("A")) >= rho();
  if (id == "rank_ub") return rank_of(mat("A")) <= rho();
  if (id == "rank") return rank_of(mat("A")) == rho();
  if (id == "determinant") return det_bareiss(mat("A")) == inst.get<Poly>("delta");
  if (id == "field_det") return det_field(inst.get<FieldMat>("B")) == inst.get<FieldScalar>("beta").value;
  if (id == "system_solve") {
    return mat_times(mat("A"), inst.get<PolyVec>("v")) == vec_scaled(inst.get<PolyVec>("b"), inst.get<Poly>("delta"));
  }
  if (id == "matmul") return mat("A") * mat("B") == mat("C");
  if (id == "inverse") return mat("A") * mat("B") == PolyMat::identity(inst.modulus, mat("A").rows());
  if (id == "frrsm") return poly_member(mat("A"), inst.get<PolyVec>("v"));
  if (id == "coprime") return coprime_claim(inst.get<PolyVec>("f"));
  if (id == "rsm") return row_membership_oracle(mat("A"), inst.get<PolyVec>("v"));
  if (id == "rs_subset") return rows_in(mat("A"), mat("B"));
  if (id == "rs_equality") return rows_in(mat("A"), mat("B")) && rows_in(mat("B"), mat("A"));
  if (id == "row_basis") {
    const PolyMat& b = mat("B");
    return rank_of(b) == b.rows() && rows_in(mat("A"), b) && rows_in(b, mat("A"));
  }
  if (id == "hermite" || id == "spopov") {
    const PolyMat& a = mat("A");
    const PolyMat& h = mat(id == "hermite" ? "H" : "P");
    const ShapeCheck sc = id == "hermite" ? check_hermite_shape(h) : check_popov_shape(h, inst.get<ShiftVector>("s").values);
    return h.rows() <= a.rows() && sc.ok && rows_in(a, h) && rows_in(h, a);
  }
  if (id == "saturated") return saturated_claim(mat("A"));
  if (id == "sat_basis") {
    const PolyMat &a = mat("A"), &b = mat("B");
    return b.rows() <= std::min(a.rows(), a.cols()) && rank_of(a) >= b.rows() && rows_in(a, b) && saturated_claim(b);
  }
  if (id == "unimod_completable") {
    const PolyMat& a = mat("A");
    return a.rows() < a.cols() && rank_of(a) == a.rows() && saturated_claim(a);
  }
  if (id == "kernel_basis") {
    const PolyMat &a = mat("A"), &b = mat("B");
    const std::size_t m = a.rows(), l = b.rows();
    return l <= m && rank_of(b) >= l && rank_of(a) >= m - l && (b * a).is_zero() && saturated_claim(b);
  }
  throw InstanceError("unknown protocol '" + id + "'");
}

ProverPtr CheatingStrategy::singularity(const ProverCtx& ctx, const PolyMat& a) const {
  if (det_bareiss(a).is_zero()) return Strategy::singularity(ctx, a);
  return make_prover(
      [a](const std::string& label, const Scope& s) -> Payload {
        if (label != "v") throw ProverGaveUp("unexpected request " + label);
        if (auto v = nullvector_left(eval_mat(a, scope_scalar(s, "alpha")))) return FieldVector{*v};
        FieldVec e(a.rows(), 0);
        e[0] = 1;
        return FieldVector{e};
      },
      {});
}

ProverPtr CheatingStrategy::nonsingularity(const ProverCtx& ctx, const PolyMat& a) const {
  if (!det_bareiss(a).is_zero()) return Strategy::nonsingularity(ctx, a);
  return make_prover(
      [ctx, a](const std::string& label, const Scope& s) -> Payload {
        if (label == "alpha") {
          // The largest image of A(alpha) catches the most b.
          u64 best = 0;
          std::size_t best_rank = 0;
          for (u64 x = 0; x < std::min<u64>(ctx.params.sigma, 64); ++x) {
            const std::size_t r = polycert::rank(eval_mat(a, x));
            if (r > best_rank) best = x, best_rank = r;
          }
          return FieldScalar{best};
        }
        if (label == "w") {
          const FieldMat ev = eval_mat(a, scope_scalar(s, "alpha"));
          if (auto w = solve_right(ev, scope_vector(s, "b"))) return FieldVector{*w};
          return FieldVector{FieldVec(a.cols(), 0)};
        }
        throw ProverGaveUp("unexpected request " + label);
      },
      {});
}

ProverPtr CheatingStrategy::rank_lb(const ProverCtx& ctx, const PolyMat& a, u64 rho) const {
  const RankProfile rp = rank_and_profile(a);
  if (rp.rank >= rho) return Strategy::rank_lb(ctx, a, rho);
  if (rho > std::min(a.rows(), a.cols())) {
    return make_prover([](const std::string&, const Scope&) -> Payload { throw ProverGaveUp("rho exceeds min(m, n)"); }, {});
  }
  // Pad the rank profile to rho indices; the submatrix is singular, so the
  // nested nonsingularity proof is where the cheat happens.
  auto pad = [rho](std::vector<std::size_t> x, std::size_t bound) {
    for (std::size_t i = 0; i < bound && x.size() < rho; ++i) {
      if (std::find(x.begin(), x.end(), i) == x.end()) x.push_back(i);
    }
    return x;
  };
  const auto I = pad(rp.rows, a.rows()), J = pad(rp.columns, a.cols());
  auto to_set = [](const std::vector<std::size_t>& x) { return IndexSet{{x.begin(), x.end()}}; };
  return make_prover(
      [I, J, to_set](const std::string& label, const Scope&) -> Payload {
        if (label == "I") return to_set(I);
        if (label == "J") return to_set(J);
        throw ProverGaveUp("unexpected request " + label);
      },
      [ctx, a, I, J](const std::string& id, std::size_t, const Scope&) -> ProverPtr {
        if (id != "nonsingularity") throw ProverGaveUp("unexpected sub-protocol " + id);
        return ctx.use().nonsingularity(ctx, a.select(I, J));
      });
}

ProverPtr CheatingStrategy::rank_ub(const ProverCtx& ctx, const PolyMat& a, u64 rho) const {
  if (rank_of(a) <= rho) return Strategy::rank_ub(ctx, a, rho);
  return make_prover(
      [a, rho](const std::string& label, const Scope& s) -> Payload {
        if (label != "gamma") throw ProverGaveUp("unexpected request " + label);
        const FieldMat ev = eval_mat(a, scope_scalar(s, "alpha"));
        const FieldVec& v = scope_vector(s, "v");
        const FieldVec target = ev.apply(v);
        const std::size_t n = a.cols(), k = std::min<std::size_t>(rho, n);
        // Search every k-subset of columns for a representative of A(alpha) v.
        std::vector<std::size_t> cols(k);
        for (std::size_t i = 0; i < k; ++i) cols[i] = i;
        std::vector<std::size_t> all_rows(ev.rows());
        for (std::size_t i = 0; i < all_rows.size(); ++i) all_rows[i] = i;
        for (std::size_t tries = 0; tries < 5000; ++tries) {
          if (auto y = solve_right(ev.select(all_rows, cols), target)) {
            FieldVec g(n, 0);
            for (std::size_t i = 0; i < k; ++i) g[cols[i]] = (*y)[i];
            return FieldVector{g};
          }
          std::size_t i = k;
          while (i > 0 && cols[i - 1] == n - k + i - 1) --i;
          if (i == 0) break;
          ++cols[i - 1];
          for (std::size_t j = i; j < k; ++j) cols[j] = cols[j - 1] + 1;
        }
        // The verifier still checks the weight; send v with its tail cut off.
        FieldVec g = v;
        std::size_t kept = 0;
        for (auto& x : g) {
          if (x != 0 && ++kept > rho) x = 0;
        }
        return FieldVector{g};
      },
      {});
}

ProverPtr CheatingStrategy::field_det(const ProverCtx& ctx, const FieldMat& b, u64 beta) const {
  if (det_field(b) == beta) return Strategy::field_det(ctx, b, beta);
  const Modulus& m = b.modulus();
  SquarePluq f = square_pluq(b);
  const std::size_t n = b.rows();
  if (n > 0) {
    // Rescale the diagonal of U so the product is beta. The factors then
    // differ from B by a few rank-one terms that Freivalds' check rarely misses.
    u64 prod = permutation_sign(f.P) * permutation_sign(f.Q) > 0 ? 1 : m.neg(1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (f.U.at(i, i) == 0) f.U.at(i, i) = 1;
      prod = m.mul(prod, f.U.at(i, i));
    }
    f.U.at(n - 1, n - 1) = m.mul(beta, m.inv(prod));
  }
  auto fp = std::make_shared<SquarePluq>(std::move(f));
  auto to_set = [](const std::vector<std::size_t>& x) { return IndexSet{{x.begin(), x.end()}}; };
  return make_prover(
      [fp, to_set](const std::string& label, const Scope&) -> Payload {
        if (label == "P") return to_set(fp->P);
        if (label == "L") return fp->L;
        if (label == "U") return fp->U;
        if (label == "Q") return to_set(fp->Q);
        throw ProverGaveUp("unexpected request " + label);
      },
      {});
}

ProverPtr CheatingStrategy::frrsm(const ProverCtx& ctx, const PolyMat& a, const PolyVec& v,
                                  std::optional<PolyVec> numer) const {
  if (numer || poly_member(a, v)) return Strategy::frrsm(ctx, a, v, std::move(numer));
  auto sol = std::make_shared<RationalSolve>(rational_solve_left(a, v));
  const u64 sigma = ctx.params.sigma;
  const Modulus md = a.modulus();
  return make_prover(
      [sol, a, v, sigma, md](const std::string& label, const Scope& s) -> Payload {
        const FieldVec& c = scope_vector(s, "c");
        if (label == "g") {
          if (sol->outcome != SolveOutcome::Solved) return Poly(md);
          // Interpolate u c at as many points of S as the degree bound allows,
          // so g(alpha) = (u c)(alpha) for every one of them.
          const auto nums = sol->u.numerators();
          Poly num(md);
          for (std::size_t i = 0; i < nums.size(); ++i) num += nums[i].scaled(c[i]);
          const Poly& den = sol->u.common_den();
          const u64 bound = a.rows() * static_cast<u64>(dpos(a.deg())) + static_cast<u64>(dpos(vec_deg(v)));
          std::vector<std::pair<u64, u64>> pts;
          for (u64 x = 0; x < sigma && pts.size() <= bound; ++x) {
            const u64 dx = den.eval(x);
            if (dx != 0) pts.emplace_back(x, md.mul(num.eval(x), md.inv(dx)));
          }
          return interpolate(md, pts);
        }
        if (label == "w") {
          const u64 alpha = scope_scalar(s, "alpha");
          return FieldVector{best_left_solution(eval_mat(a, alpha), eval_vec(v, alpha), c, scope_poly(s, "g").eval(alpha))};
        }
        throw ProverGaveUp("unexpected request " + label);
      },
      {});
}

ProverPtr CheatingStrategy::coprime(const ProverCtx& ctx, const PolyVec& f) const {
  if (coprime_claim(f)) return Strategy::coprime(ctx, f);
  struct Forgery {
    Poly s1, s2;
    FieldVec betas;
  };
  auto forge = [ctx, f]() {
    const Modulus& m = f.front().modulus();
    const std::size_t t = f.size();
    Forgery out{Poly(m), Poly(m), FieldVec(t > 2 ? t - 2 : 0)};
    Poly h = t > 1 ? f[1] : Poly(m);
    int rest = kNegInf;
    for (std::size_t i = 1; i < t; ++i) rest = std::max(rest, f[i].deg());
    for (std::size_t i = 2; i < t; ++i) {
      out.betas[i - 2] = ctx.sample();
      h += f[i].scaled(out.betas[i - 2]);
    }
    // Coefficients of s1 and s2 within the degree bounds, chosen so that
    // f1 s1 + h s2 = 1 on as many points of S as a linear solve allows.
    const std::size_t k1 = static_cast<std::size_t>(std::max(1, rest));
    const std::size_t k2 = static_cast<std::size_t>(std::max(1, f[0].deg()));
    const std::size_t unknowns = k1 + k2;
    std::vector<FieldVec> rows;
    FieldVec solution(unknowns, 0);
    const u64 limit = std::min<u64>(ctx.params.sigma, 4 * unknowns + 16);
    for (u64 x = 0; x < limit; ++x) {
      FieldVec row(unknowns);
      const u64 fx = f[0].eval(x), hx = h.eval(x);
      u64 pw = 1;
      for (std::size_t i = 0; i < std::max(k1, k2); ++i) {
        if (i < k1) row[i] = m.mul(fx, pw);
        if (i < k2) row[k1 + i] = m.mul(hx, pw);
        pw = m.mul(pw, x);
      }
      rows.push_back(row);
      std::vector<u64> entries;
      for (const auto& r : rows) entries.insert(entries.end(), r.begin(), r.end());
      const FieldMat sys(m, rows.size(), unknowns, std::move(entries));
      if (auto sol = solve_right(sys, FieldVec(rows.size(), 1))) {
        solution = *sol;
      } else {
        rows.pop_back();
      }
    }
    out.s1 = Poly(m, FieldVec(solution.begin(), solution.begin() + static_cast<std::ptrdiff_t>(k1)));
    out.s2 = Poly(m, FieldVec(solution.begin() + static_cast<std::ptrdiff_t>(k1), solution.end()));
    return out;
  };
  auto cert = std::make_shared<std::optional<Forgery>>();
  return make_prover(
      [cert, forge](const std::string& label, const Scope&) -> Payload {
        if (!*cert) *cert = forge();
        if (label == "s1") return (*cert)->s1;
        if (label == "s2") return (*cert)->s2;
        if (label == "betas") return FieldVector{(*cert)->betas};
        throw ProverGaveUp("unexpected request " + label);
      },
      {});
}

ProverPtr CheatingStrategy::rsm(const ProverCtx& ctx, const PolyMat& a, const PolyVec& v) const {
  if (row_membership_oracle(a, v)) return Strategy::rsm(ctx, a, v);
  // Honest compressions and denominators, except that d_1 is forged to 1 so
  // the coprimality proof goes through; frrsm #0 then carries the lie.
  struct State {
    u64 rho = 0;
    std::optional<CompressionRound> round;
  };
  auto st = std::make_shared<State>();
  st->rho = rank_of(a);
  auto build = [ctx, st, a, v]() -> const CompressionRound& {
    if (st->round) return *st->round;
    const auto t = rsm_rounds(ctx.params.sigma, st->rho, a.deg());
    if (!t) throw ProverGaveUp("sigma <= rank(A)");
    CompressionRound r;
    const std::size_t m = a.rows();
    for (std::size_t draws = 0; r.C.size() < *t; ++draws) {
      if (draws > 20 * *t) throw ProverGaveUp("no full-rank Toeplitz compression within 20 t draws");
      FieldVec e(static_cast<std::size_t>(st->rho) + m - 1);
      for (auto& x : e) x = ctx.sample();
      ToeplitzSpec c(st->rho, m, std::move(e));
      PolyMat ca = c.apply(a);
      const RationalSolve sol = rational_solve_left(ca, v);
      if (sol.outcome == SolveOutcome::LowRank) continue;
      const bool solved = sol.outcome == SolveOutcome::Solved;
      r.d.push_back(solved ? sol.u.common_den() : Poly::constant(a.modulus(), 1));
      r.numer.push_back(solved ? sol.u.numerators() : PolyVec{});
      r.C.push_back(std::move(c));
      r.CA.push_back(std::move(ca));
    }
    r.d[0] = Poly::constant(a.modulus(), 1);
    st->round = std::move(r);
    return *st->round;
  };
  return make_prover(
      [st, build](const std::string& label, const Scope& s) -> Payload {
        if (label == "rho") return RankClaim{st->rho};
        if (label == "C") return build().C.at(count_label(s, "C"));
        if (label == "d") return build().d;
        throw ProverGaveUp("unexpected request " + label);
      },
      [ctx, st, build, a, v](const std::string& id, std::size_t k, const Scope&) -> ProverPtr {
        if (id == "rank_ub") return ctx.use().rank_ub(ctx, a, st->rho);
        const CompressionRound& c = build();
        if (id == "rank_lb") return ctx.use().rank_lb(ctx, c.CA.at(k), st->rho);
        if (id == "coprime") return ctx.use().coprime(ctx, c.d);
        if (id == "frrsm") return ctx.use().frrsm(ctx, c.CA.at(k), vec_scaled(v, c.d.at(k)));
        throw ProverGaveUp("unexpected sub-protocol " + id);
      });
}

ProverPtr cheating_prover(const Instance& inst, const Params& params) {
  if (statement_holds(inst)) throw InstanceActuallyTrue(inst.protocol + " instance is true; nothing to forge");
  const ProverCtx ctx = ProverCtx::make(inst.modulus, params, std::make_shared<CheatingStrategy>());
  return ctx.use().for_instance(ctx, inst);
}

double experiment_bound(const Instance& inst, u64 sigma) {
  const std::string& id = inst.protocol;
  const double s = static_cast<double>(sigma);
  auto deg = [&](const char* n) { return static_cast<double>(dpos(inst.get<PolyMat>(n).deg())); };
  double e;
  if (id == "singularity") {
    e = static_cast<double>(inst.get<PolyMat>("A").rows()) * deg("A") / s;
  } else if (id == "nonsingularity" || id == "rank_lb" || id == "field_det") {
    e = 1 / s;
  } else if (id == "rank_ub" || id == "rank") {
    e = (static_cast<double>(rank_of(inst.get<PolyMat>("A"))) * deg("A") + 1) / s;
  } else if (id == "determinant") {
    e = (static_cast<double>(inst.get<PolyMat>("A").rows()) * deg("A") + 1) / s;
  } else if (id == "system_solve") {
    const double d = std::max({deg("A"), static_cast<double>(dpos(vec_deg(inst.get<PolyVec>("b")))),
                               static_cast<double>(dpos(vec_deg(inst.get<PolyVec>("v")))),
                               static_cast<double>(dpos(inst.get<Poly>("delta").deg()))});
    e = 2 * d / s;
  } else if (id == "matmul") {
    e = (deg("A") + deg("B") + 1) / s;
  } else if (id == "frrsm") {
    const double m = static_cast<double>(inst.get<PolyMat>("A").rows());
    e = (3 * m * deg("A") + static_cast<double>(dpos(vec_deg(inst.get<PolyVec>("v")))) + 1) / s;
  } else if (id == "coprime") {
    int d = 0;
    for (const auto& f : inst.get<PolyVec>("f")) d = std::max(d, f.deg());
    e = (2.0 * d - 1) / s;
  } else if (id == "rsm") {
    const double r = static_cast<double>(rank_of(inst.get<PolyMat>("A")));
    e = (4 * r * deg("A") + static_cast<double>(dpos(vec_deg(inst.get<PolyVec>("v")))) + 1) / s;
  } else {
    e = soundness_bound(inst, sigma);
  }
  return std::clamp(e, 0.0, 1.0);
}

Json SoundnessReport::to_json() const {
  Json j;
  j["protocol"] = protocol;
  j["fixture"] = fixture;
  j["sigma"] = sigma;
  j["trials"] = trials;
  j["accepts"] = accepts;
  j["gave_up"] = gave_up;
  j["rate"] = rate;
  j["bound"] = bound;
  j["tolerance"] = tolerance;
  j["pass"] = pass;
  return j;
}

SoundnessReport run_soundness_experiment(const Instance& inst, u64 sigma, std::size_t trials, u64 seed,
                                         const std::string& fixture) {
  if (statement_holds(inst)) throw InstanceActuallyTrue(inst.protocol + " instance is true; nothing to forge");
  SoundnessReport rep;
  rep.protocol = inst.protocol;
  rep.fixture = fixture;
  rep.sigma = sigma;
  rep.trials = trials;
  std::size_t accepts = 0, gave_up = 0;
  const auto n = static_cast<long long>(trials);
#pragma omp parallel for reduction(+ : accepts, gave_up) schedule(dynamic, 16)
  for (long long i = 0; i < n; ++i) {
    Params params;
    params.p = inst.modulus.value();
    params.sigma = sigma;
    params.mode = Mode::Interactive;
    params.strict = false;
    std::seed_seq seq{seed, static_cast<u64>(i)};
    std::mt19937_64 mix(seq);
    params.seed = mix();
    ProverPtr prover = cheating_prover(inst, params);
    const SessionResult r = run_protocol(inst, params, *prover);
    if (r.prover_gave_up) {
      ++gave_up;
    } else if (r.verdict.accepted) {
      ++accepts;
    }
  }
  rep.accepts = accepts;
  rep.gave_up = gave_up;
  rep.rate = trials ? static_cast<double>(accepts) / static_cast<double>(trials) : 0.0;
  rep.bound = experiment_bound(inst, sigma);
  rep.tolerance = trials ? 3 * std::sqrt(rep.bound * (1 - rep.bound) / static_cast<double>(trials)) : 0.0;
  rep.pass = rep.rate <= rep.bound + rep.tolerance;
  return rep;
}

std::vector<SoundnessFixture> soundness_fixtures(const Modulus& m) {
  auto pm = [&](const std::vector<std::vector<std::vector<i64>>>& rows) { return PolyMat::from_ints(m, rows); };
  auto p = [&](std::initializer_list<i64> c) { return Poly::from_ints(m, c); };
  auto inst = [&](const char* id, PublicInputs in) { return Instance{id, m, std::move(in), {}}; };
  // x(x-1) and (x-2)(x-3): det A vanishes at 0, 1, 2, 3.
  const PolyMat diag_roots = pm({{{0, -1, 1}, {}}, {{}, {6, -5, 1}}});
  // Rank one: second row is x times the first.
  const PolyMat rank_one = pm({{{1}, {0, 1}}, {{0, 1}, {0, 0, 1}}});
  const PolyMat diag_lin = pm({{{0, 1}, {}}, {{}, {-1, 1}}});  // diag(x, x - 1)
  return {
      {"diag(x(x-1), (x-2)(x-3))", inst("singularity", {{"A", diag_roots}})},
      {"[[1, x], [x, x^2]]", inst("nonsingularity", {{"A", rank_one}})},
      {"[[1, x], [x, x^2]], rho = 2", inst("rank_lb", {{"A", rank_one}, {"rho", RankClaim{2}}})},
      {"diag(x, x-1), rho = 1", inst("rank_ub", {{"A", diag_lin}, {"rho", RankClaim{1}}})},
      {"diag(x, x-1), delta = det + (x-2)(x-3)",
       inst("determinant", {{"A", diag_lin}, {"delta", p({0, -1, 1}) + p({6, -5, 1})}})},
      // A v - delta b = (x - 1)(x - 2).
      {"[x] v = [x], delta = 3x - 2, b = [1]",
       inst("system_solve", {{"A", pm({{{0, 1}}})}, {"b", PolyVec{p({1})}}, {"v", PolyVec{p({0, 1})}}, {"delta", p({-2, 3})}})},
      // C - A B = (x - 1)(x - 2).
      {"[x] [x] = [2x^2 - 3x + 2]", inst("matmul", {{"A", pm({{{0, 1}}})}, {"B", pm({{{0, 1}}})}, {"C", pm({{{2, -3, 2}}})}})},
      {"[x], v = [1]", inst("frrsm", {{"A", pm({{{0, 1}}})}, {"v", PolyVec{p({1})}}})},
      {"(x(x-1), x(x-2))", inst("coprime", {{"f", PolyVec{p({0, -1, 1}), p({0, -2, 1})}}})},
      {"[x], v = [1]", inst("rsm", {{"A", pm({{{0, 1}}})}, {"v", PolyVec{p({1})}}})},
      {"[[1, 1 + x^2], [0, x^2]], v = [0, x]",
       inst("rsm", {{"A", pm({{{1}, {1, 0, 1}}, {{}, {0, 0, 1}}})}, {"v", PolyVec{p({}), p({0, 1})}}})},
  };
}

}  // namespace polycert
