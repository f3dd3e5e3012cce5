#include "polycert/acceptance.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <random>
#include <sstream>

#include "polycert/accounting.hpp"
#include "polycert/adversary.hpp"
#include "polycert/polymat_oracles.hpp"
#include "polycert/workloads.hpp"

namespace polycert {

namespace {

const Modulus kP(kDefaultPrime);

std::string fmt(double x, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << x;
  return os.str();
}

u64 mix(u64 seed, u64 a, u64 b = 0) {
  std::seed_seq seq{seed, a, b};
  u64 out[1];
  seq.generate(reinterpret_cast<std::uint32_t*>(out), reinterpret_cast<std::uint32_t*>(out) + 2);
  return out[0];
}

Params fiat_shamir() { return Params{}; }

Params interactive(u64 sigma, u64 seed, bool strict = true) {
  Params p;
  p.sigma = sigma;
  p.mode = Mode::Interactive;
  p.seed = seed;
  p.strict = strict;
  return p;
}

std::string outcome(const SessionResult& r) {
  if (r.prover_gave_up) return "gave up (" + r.gave_up_reason + ")";
  if (r.verdict.accepted) return "accept";
  std::string s = std::string("reject ") + reason_name(r.verdict.reason);
  if (!r.verdict.subprotocol.empty()) s += " in " + r.verdict.subprotocol;
  return s;
}

// ---------------------------------------------------------------- criterion 1

CriterionResult completeness(const AcceptanceOptions& opts) {
  CriterionResult res{1, "perfect completeness", false, {}, {}, Json::array(), 0};
  constexpr int kTrials = 100;
  const auto& ids = protocol_ids();
  std::size_t total = 0, bad = 0;
  for (std::size_t pi = 0; pi < ids.size(); ++pi) {
    const std::string& id = ids[pi];
    std::vector<std::string> fails(kTrials);
    // Each trial runs twice: Fiat-Shamir at #S = p, and interactively at the
    // smallest #S the strict check admits.
    std::vector<u64> min_sigma(kTrials);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < kTrials; ++i) {
      std::mt19937_64 rng(mix(opts.seed, pi, static_cast<u64>(i)));
      const Instance inst = true_instance(id, kP, 8, 4, rng);
      std::string why;
      try {
        ProverPtr prover = honest_prover(inst, fiat_shamir());
        const SessionResult r = run_protocol(inst, fiat_shamir(), *prover);
        if (!r.verdict.accepted || r.prover_gave_up) why = "fiat-shamir: " + outcome(r);
        const u64 sigma = strict_sigma_bound(inst);
        min_sigma[i] = sigma;
        const Params small = interactive(sigma, mix(opts.seed, pi, 1000 + i));
        ProverPtr p2 = honest_prover(inst, small);
        const SessionResult r2 = run_protocol(inst, small, *p2);
        if (!r2.verdict.accepted || r2.prover_gave_up) {
          why += (why.empty() ? "" : "; ") + std::string("interactive #S=") + std::to_string(sigma) + ": " + outcome(r2);
        }
      } catch (const std::exception& e) {
        why = std::string("exception: ") + e.what();
      }
      fails[i] = why;
    }
    std::size_t n_bad = 0;
    for (int i = 0; i < kTrials; ++i) {
      if (fails[i].empty()) continue;
      ++n_bad;
      res.details.push_back(id + " trial " + std::to_string(i) + ": " + fails[i]);
    }
    total += 2 * kTrials;
    bad += n_bad;
    const auto [lo, hi] = std::minmax_element(min_sigma.begin(), min_sigma.end());
    res.report.push_back({{"protocol", id},
                          {"trials", kTrials},
                          {"failures", n_bad},
                          {"strict_sigma_min", *lo},
                          {"strict_sigma_max", *hi}});
    res.details.push_back(id + ": " + std::to_string(kTrials - n_bad) + "/" + std::to_string(kTrials) +
                          " accept in both modes, strict #S in [" + std::to_string(*lo) + ", " +
                          std::to_string(*hi) + "]");
  }
  res.pass = bad == 0;
  res.summary = std::to_string(total - 2 * bad) + "/" + std::to_string(total) + " honest runs accepted over " +
                std::to_string(ids.size()) + " protocols";
  return res;
}

// ---------------------------------------------------------------- criterion 2

CriterionResult soundness(const AcceptanceOptions& opts) {
  CriterionResult res{2, "soundness bounds", true, {}, {}, Json::array(), 0};
  constexpr std::size_t kTrials = 2000;
  std::size_t failed = 0, count = 0;
  for (const u64 sigma : {u64{32}, u64{64}}) {
    for (const auto& fx : soundness_fixtures(kP)) {
      const SoundnessReport r = run_soundness_experiment(fx.instance, sigma, kTrials, mix(opts.seed, sigma, count), fx.name);
      ++count;
      if (!r.pass) ++failed;
      res.report.push_back(r.to_json());
      res.details.push_back(std::string(r.pass ? "ok   " : "FAIL ") + r.protocol + " [" + r.fixture +
                            "] #S=" + std::to_string(sigma) + ": rate " + fmt(r.rate) + " vs bound " + fmt(r.bound) +
                            " + " + fmt(r.tolerance));
    }
  }
  res.pass = failed == 0;
  res.summary = std::to_string(count - failed) + "/" + std::to_string(count) +
                " cheater experiments within bound + 3 SE (" + std::to_string(kTrials) + " trials each)";
  for (const auto& d : res.details) {
    if (d.starts_with("FAIL")) res.summary += "; " + d.substr(5);
  }
  return res;
}

// ---------------------------------------------------------------- criterion 3

CriterionResult worked_example(const AcceptanceOptions& opts) {
  CriterionResult res{3, "worked example M1, M2", true, {}, {}, Json::object(), 0};
  const PolyMat m1 = PolyMat::from_ints(kP, {{{1}, {1}}, {{0, 0, 1}, {0, 1, 1}}, {{0, 1}, {0, 1}}});
  const PolyMat m2 = PolyMat::from_ints(kP, {{{1}, {1, 0, 1}}, {{}, {0, 0, 1}}});
  const PolyVec target{Poly(kP), Poly::x(kP)};
  const PolyMat i2 = PolyMat::identity(kP, 2);
  auto check = [&](const std::string& what, bool ok, const std::string& note) {
    res.details.push_back(std::string(ok ? "ok   " : "FAIL ") + what + ": " + note);
    res.report[what] = {{"pass", ok}, {"note", note}};
    res.pass = res.pass && ok;
  };

  check("saturation_basis(M1) = I2", saturation_basis(m1) == i2, "");
  check("saturation_basis(M2) = I2", saturation_basis(m2) == i2, "");

  constexpr int kRuns = 100;
  auto honest_runs = [&](const Instance& inst) {
    int acc = 0;
    ProverPtr p = honest_prover(inst, fiat_shamir());
    if (run_protocol(inst, fiat_shamir(), *p).verdict.accepted) ++acc;
    for (int s = 1; s < kRuns; ++s) {
      const Params pr = interactive(kDefaultPrime, mix(opts.seed, 3, s));
      ProverPtr q = honest_prover(inst, pr);
      if (run_protocol(inst, pr, *q).verdict.accepted) ++acc;
    }
    return acc;
  };
  auto cheater_runs = [&](const Instance& inst, std::string& last) {
    int acc = 0;
    for (int s = 0; s < kRuns; ++s) {
      const Params pr = interactive(kDefaultPrime, mix(opts.seed, 4, s));
      ProverPtr q = cheating_prover(inst, pr);
      const SessionResult r = run_protocol(inst, pr, *q);
      if (r.verdict.accepted && !r.prover_gave_up) ++acc;
      last = outcome(r);
    }
    return acc;
  };

  const Instance rsm1{"rsm", kP, {{"A", m1}, {"v", target}}, {}};
  const int a1 = honest_runs(rsm1);
  check("row membership (M1, [0, x]) accepts", a1 == kRuns, std::to_string(a1) + "/" + std::to_string(kRuns) + " accept");

  const Instance rsm2{"rsm", kP, {{"A", m2}, {"v", target}}, {}};
  {
    ProverPtr p = honest_prover(rsm2, fiat_shamir());
    const SessionResult r = run_protocol(rsm2, fiat_shamir(), *p);
    check("honest prover on (M2, [0, x]) cannot proceed", r.prover_gave_up || !r.verdict.accepted, outcome(r));
    std::string last;
    const int acc = cheater_runs(rsm2, last);
    check("row membership (M2, [0, x]) rejects the cheater", acc == 0,
          std::to_string(kRuns - acc) + "/" + std::to_string(kRuns) + " reject, last: " + last);
  }

  const Instance sat2{"saturated", kP, {{"A", m2}}, {}};
  {
    std::string last;
    const int acc = cheater_runs(sat2, last);
    check("saturated(M2) rejects the cheater", acc == 0,
          std::to_string(kRuns - acc) + "/" + std::to_string(kRuns) + " reject, last: " + last);
  }

  const Instance basis1{"sat_basis", kP, {{"A", m1}, {"B", i2}}, {}};
  const int a2 = honest_runs(basis1);
  check("saturation basis (M1, I2) accepts", a2 == kRuns, std::to_string(a2) + "/" + std::to_string(kRuns) + " accept");

  const auto n_ok = std::count_if(res.details.begin(), res.details.end(), [](const auto& d) { return d.starts_with("ok"); });
  res.summary = std::to_string(n_ok) + "/" + std::to_string(res.details.size()) + " checks at p = 2^31-1";
  return res;
}

// ---------------------------------------------------------------- criterion 4

CriterionResult normal_forms(const AcceptanceOptions& opts) {
  CriterionResult res{4, "normal-form uniqueness", false, {}, {}, Json::object(), 0};
  constexpr int kCases = 100;
  int herm_ok = 0, popov_ok = 0, corr_ok = 0, corr_h_ok = 0, deg_h_exceeds = 0;
  std::string first_counterexample;
  std::mt19937_64 rng(mix(opts.seed, 4));
  for (int c = 0; c < kCases; ++c) {
    const std::size_t m = 1 + rng() % 4, n = 1 + rng() % 4;
    const int d = static_cast<int>(rng() % 3);
    const PolyMat a = random_polymat(kP, m, n, d, rng);
    const PolyMat u = random_unimodular(kP, m, 6, 2, rng);
    const PolyMat ua = u * a;

    const HermiteResult h = hermite_form(a);
    if (hermite_form(ua).H == h.H) ++herm_ok;

    Shift zero(n, 0), pos(n), mixed(n);
    for (auto& s : pos) s = static_cast<i64>(rng() % 4);
    for (auto& s : mixed) s = static_cast<i64>(rng() % 5) - 2;
    bool pv = true;
    for (const Shift& s : {zero, pos, mixed}) pv = pv && popov_form(ua, s) == popov_form(a, s);
    if (pv) ++popov_ok;

    const i64 t = std::max(0, a.deg()) + 1;
    if (popov_form(a, hermite_shift(n, t)) == h.H) {
      ++corr_ok;
    } else {
      if (h.H.deg() > a.deg()) ++deg_h_exceeds;
      if (first_counterexample.empty()) {
        first_counterexample = "case " + std::to_string(c) + " (" + std::to_string(m) + "x" + std::to_string(n) +
                             ", deg A " + std::to_string(a.deg()) + ", deg H " + std::to_string(h.H.deg()) + ")";
      }
    }
    const i64 th = std::max({0, a.deg(), h.H.deg()}) + 1;
    if (popov_form(a, hermite_shift(n, th)) == h.H) ++corr_h_ok;
  }
  auto line = [&](const char* what, int ok) {
    res.details.push_back(std::string(ok == kCases ? "ok   " : "FAIL ") + what + ": " + std::to_string(ok) + "/" +
                          std::to_string(kCases));
  };
  line("hermite_form(U A) = hermite_form(A)", herm_ok);
  line("popov_form(U A, s) = popov_form(A, s) for 3 shifts", popov_ok);
  line("popov_form(A, (nt..t)) = H with t = deg(A)+1", corr_ok);
  res.details.push_back("info popov_form(A, (nt..t)) = H with t = max(deg A, deg H)+1: " + std::to_string(corr_h_ok) +
                        "/" + std::to_string(kCases));
  if (!first_counterexample.empty()) {
    res.details.push_back("info first t = deg(A)+1 mismatch: " + first_counterexample);
    res.details.push_back("info mismatches with deg H > deg A: " + std::to_string(deg_h_exceeds) + "/" +
                          std::to_string(kCases - corr_ok));
  }
  res.report = {{"cases", kCases},
                {"hermite_invariant", herm_ok},
                {"popov_invariant", popov_ok},
                {"hermite_shift_deg_a", corr_ok},
                {"hermite_shift_deg_h", corr_h_ok},
                {"mismatch_deg_h_exceeds", deg_h_exceeds}};
  res.pass = herm_ok == kCases && popov_ok == kCases && corr_ok == kCases;
  res.summary = "Hermite " + std::to_string(herm_ok) + "/100, Popov " + std::to_string(popov_ok) +
                "/100, shift correspondence at t = deg(A)+1 " + std::to_string(corr_ok) +
                "/100 (at t = deg(H)+1: " + std::to_string(corr_h_ok) + "/100)";
  return res;
}

// ---------------------------------------------------------------- criterion 5

// Literal search over u in (F_q[x]_{<= bound})^m for u A = v. Coefficient
// vectors of x^k A_i are precomputed and the candidates are walked as an
// odometer, so each step adds or removes O(1) amortized vectors.
bool enumerate_membership(const PolyMat& a, const PolyVec& v, int bound, std::size_t& visited) {
  const u64 q = a.modulus().value();
  const std::size_t m = a.rows(), n = a.cols();
  const int da = std::max(0, a.deg());
  const std::size_t width = static_cast<std::size_t>(bound + da + 1);
  const std::size_t len = n * width;
  const std::size_t digits = m * static_cast<std::size_t>(bound + 1);

  std::vector<std::vector<u64>> basis(digits, std::vector<u64>(len, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (int k = 0; k <= bound; ++k) {
      auto& b = basis[i * static_cast<std::size_t>(bound + 1) + static_cast<std::size_t>(k)];
      for (std::size_t j = 0; j < n; ++j) {
        const auto& c = a.at(i, j).coeffs();
        for (std::size_t e = 0; e < c.size(); ++e) b[j * width + static_cast<std::size_t>(k) + e] = c[e];
      }
    }
  }
  // diff = u A - v; `off` counts its nonzero coordinates.
  std::vector<u64> diff(len, 0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& c = v[j].coeffs();
    if (c.size() > width) return false;  // deg v beyond every candidate
    for (std::size_t e = 0; e < c.size(); ++e) diff[j * width + e] = (q - c[e]) % q;
  }
  std::size_t off = static_cast<std::size_t>(std::count_if(diff.begin(), diff.end(), [](u64 x) { return x != 0; }));
  auto add = [&](const std::vector<u64>& b, u64 times) {
    for (std::size_t z = 0; z < len; ++z) {
      if (b[z] == 0) continue;
      const u64 before = diff[z];
      diff[z] = (diff[z] + times * b[z]) % q;
      off += (diff[z] != 0) - (before != 0);
    }
  };
  std::vector<u64> digit(digits, 0);
  visited = 0;
  while (true) {
    ++visited;
    if (off == 0) return true;
    std::size_t k = 0;
    while (k < digits && digit[k] == q - 1) {
      digit[k] = 0;
      add(basis[k], 1);  // (q-1) + 1 wraps to 0
      ++k;
    }
    if (k == digits) return false;
    ++digit[k];
    add(basis[k], 1);
  }
}

Poly small_poly(const Modulus& md, int max_deg, std::mt19937_64& rng) {
  const int d = static_cast<int>(rng() % static_cast<u64>(max_deg + 2)) - 1;
  return random_poly(md, d, rng);
}

CriterionResult small_fields(const AcceptanceOptions& opts) {
  CriterionResult res{5, "oracle vs exhaustive enumeration", false, {}, {}, Json::array(), 0};
  constexpr int kPerField = 300;
  constexpr double kMaxSpace = 1 << 20;
  std::size_t agree = 0, cases = 0, members = 0, resampled = 0, visited_total = 0;
  for (const u64 q : {u64{2}, u64{3}}) {
    const Modulus md(q);
    std::mt19937_64 rng(mix(opts.seed, 5, q));
    std::size_t field_agree = 0, field_members = 0;
    for (int c = 0; c < kPerField;) {
      const std::size_t m = 1 + rng() % 3, n = 1 + rng() % 3;
      std::vector<Poly> e;
      for (std::size_t z = 0; z < m * n; ++z) e.push_back(small_poly(md, 2, rng));
      const PolyMat a(md, m, n, std::move(e));
      PolyVec v;
      if (rng() % 2 == 0) {
        PolyVec u;
        for (std::size_t z = 0; z < m; ++z) u.push_back(small_poly(md, 1, rng));
        v = row_times(u, a);
      } else {
        for (std::size_t z = 0; z < n; ++z) v.push_back(small_poly(md, 2, rng));
      }
      int dv = -1;
      for (const auto& p : v) dv = std::max(dv, p.deg());
      const int bound = std::max(0, dv) + static_cast<int>(m) * std::max(0, a.deg());
      if (std::pow(static_cast<double>(q), static_cast<double>(m) * (bound + 1)) > kMaxSpace) {
        ++resampled;
        continue;
      }
      std::size_t visited = 0;
      const bool found = enumerate_membership(a, v, bound, visited);
      const bool oracle = row_membership_oracle(a, v);
      visited_total += visited;
      ++cases;
      ++c;
      if (found) ++field_members;
      if (found == oracle) {
        ++field_agree;
      } else {
        std::ostringstream os;
        os << "F_" << q << " case " << c << ": " << m << "x" << n << " deg A " << a.deg() << ", deg v " << dv
           << ", enumeration " << found << ", oracle " << oracle;
        res.details.push_back(os.str());
      }
    }
    agree += field_agree;
    members += field_members;
    res.report.push_back({{"q", q}, {"cases", kPerField}, {"agree", field_agree}, {"members", field_members}});
    res.details.push_back("F_" + std::to_string(q) + ": " + std::to_string(field_agree) + "/" +
                          std::to_string(kPerField) + " agree, " + std::to_string(field_members) + " members");
  }
  res.details.push_back("resampled " + std::to_string(resampled) + " cases with search space above 2^20; " +
                        std::to_string(visited_total) + " candidates visited");
  res.pass = agree == cases && cases >= 500;
  res.summary = std::to_string(agree) + "/" + std::to_string(cases) + " cases agree (" + std::to_string(members) +
                " members, " + std::to_string(cases - members) + " non-members)";
  return res;
}

// ---------------------------------------------------------------- criterion 6

// Rank over F(x) estimated from evaluations, independent of the Bareiss code.
std::size_t rank_by_evaluation(const PolyMat& a, std::mt19937_64& rng) {
  std::size_t r = 0;
  for (int k = 0; k < 3; ++k) r = std::max(r, rank(eval_mat(a, rng() % kP.value())));
  return r;
}

CriterionResult rational_solve(const AcceptanceOptions& opts) {
  CriterionResult res{6, "rational_solve_left contract", false, {}, {}, Json::object(), 0};
  constexpr int kCases = 500;
  std::mt19937_64 rng(mix(opts.seed, 6));
  int counts[3] = {0, 0, 0};
  int contract_ok = 0, eval_rank_agree = 0;
  for (int c = 0; c < kCases; ++c) {
    const std::size_t n = 1 + rng() % 5;
    const int d = static_cast<int>(rng() % 4);
    PolyMat a;
    PolyVec v;
    switch (c % 3) {
      case 0: {  // rank-deficient rows
        const std::size_t m = 2 + rng() % 4;
        a = planted_rank(kP, m, n, rng() % std::min(m, n), d, rng);
        v = random_polyvec(kP, n, d, rng);
        break;
      }
      case 1: {  // v in the rational row space
        const std::size_t m = 1 + rng() % n;
        a = random_polymat(kP, m, n, d, rng);
        const PolyVec u = random_polyvec(kP, m, d, rng);
        v = row_times(u, a);
        if (rng() % 2 == 0) v = vec_scaled(v, random_poly(kP, 1, rng));
        break;
      }
      default: {  // generic v against fewer rows than columns
        const std::size_t m = n == 1 ? 1 : 1 + rng() % (n - 1);
        a = random_polymat(kP, m, n, d, rng);
        v = random_polyvec(kP, n, d, rng);
        break;
      }
    }
    const RankProfile prof = rank_and_profile(a);
    if (prof.rank == rank_by_evaluation(a, rng)) ++eval_rank_agree;
    const RationalSolve s = rational_solve_left(a, v);
    bool ok = false;
    std::string what;
    switch (s.outcome) {
      case SolveOutcome::LowRank:
        ++counts[0];
        ok = prof.rank < a.rows();
        what = "LOW_RANK";
        break;
      case SolveOutcome::Solved: {
        ++counts[1];
        const Poly& den = s.u.common_den();
        ok = prof.rank == a.rows() && !den.is_zero() && row_times(s.u.numerators(), a) == vec_scaled(v, den);
        what = "SOLVED";
        break;
      }
      case SolveOutcome::NoSolution: {
        ++counts[2];
        const PolyMat aug = a.stacked(PolyMat::row_matrix(kP, v));
        ok = prof.rank == a.rows() && rank_and_profile(aug).rank > prof.rank;
        what = "NO_SOLUTION";
        break;
      }
    }
    if (ok) {
      ++contract_ok;
    } else {
      res.details.push_back("case " + std::to_string(c) + ": " + what + " with rank " + std::to_string(prof.rank) +
                            " of " + std::to_string(a.rows()) + " rows");
    }
  }
  res.details.push_back("outcomes: LOW_RANK " + std::to_string(counts[0]) + ", SOLVED " + std::to_string(counts[1]) +
                        ", NO_SOLUTION " + std::to_string(counts[2]));
  res.details.push_back("Bareiss rank matches evaluation rank on " + std::to_string(eval_rank_agree) + "/" +
                        std::to_string(kCases));
  res.report = {{"cases", kCases},       {"low_rank", counts[0]}, {"solved", counts[1]},
                {"no_solution", counts[2]}, {"contract_ok", contract_ok}, {"eval_rank_agree", eval_rank_agree}};
  res.pass = contract_ok == kCases && counts[0] > 0 && counts[1] > 0 && counts[2] > 0 && eval_rank_agree == kCases;
  res.summary = std::to_string(contract_ok) + "/" + std::to_string(kCases) + " contract checks (LOW_RANK " +
                std::to_string(counts[0]) + ", SOLVED " + std::to_string(counts[1]) + ", NO_SOLUTION " +
                std::to_string(counts[2]) + ")";
  return res;
}

// ---------------------------------------------------------------- criterion 7

CriterionResult communication(const AcceptanceOptions& opts) {
  CriterionResult res{7, "communication scaling", false, {}, {}, Json::array(), 0};
  struct Row {
    std::size_t m, n;
    int d;
    double comm, shape, object;
  };
  std::vector<Row> rows;
  bool all_accept = true;
  for (const std::size_t m : {4, 8, 16}) {
    for (const std::size_t n : {4, 8, 16}) {
      for (const int d : {2, 4, 8}) {
        InstanceSpec spec;
        spec.kind = InstanceKind::PlantedMembership;
        spec.m = m;
        spec.n = n;
        spec.d = d;
        spec.seed = mix(opts.seed, 7, m * 1000 + n * 10 + static_cast<std::size_t>(d));
        const Instance inst = generate(kP, spec);
        ProverPtr prover = honest_prover(inst, fiat_shamir());
        const SessionResult r = run_protocol(inst, fiat_shamir(), *prover);
        all_accept = all_accept && r.verdict.accepted && !r.prover_gave_up;
        const Communication c = count_communication(r.transcript);
        const double shape = communication_shape(inst, fiat_shamir().sigma);
        const double object = static_cast<double>(m * n) * (d + 1);
        rows.push_back({m, n, d, static_cast<double>(c.total()), shape, object});
        res.report.push_back({{"m", m},
                              {"n", n},
                              {"d", d},
                              {"prover_elements", c.prover_elements},
                              {"verifier_elements", c.verifier_elements},
                              {"total", c.total()},
                              {"shape", shape},
                              {"object_size", object}});
      }
    }
  }
  double lo = 1e300, hi = 0;
  for (const Row& r : rows) {
    lo = std::min(lo, r.comm / r.shape);
    hi = std::max(hi, r.comm / r.shape);
    std::ostringstream os;
    os << "m=" << r.m << " n=" << r.n << " d=" << r.d << ": " << r.comm << " elements, shape " << r.shape << ", ratio "
       << fmt(r.comm / r.shape, 3) << ", mn(d+1)/comm " << fmt(r.object / r.comm, 3);
    res.details.push_back(os.str());
  }

  // comm ~ a md + b n t + c, and log comm against log mn(d+1).
  const Eigen::Index k = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd x(k, 3), lx(k, 2);
  Eigen::VectorXd y(k), ly(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const Row& r = rows[static_cast<std::size_t>(i)];
    const double md = static_cast<double>(r.m) * r.d;
    x.row(i) << md, r.shape - md, 1.0;
    y(i) = r.comm;
    lx.row(i) << std::log(r.object), 1.0;
    ly(i) = std::log(r.comm);
  }
  const Eigen::VectorXd coef = x.colPivHouseholderQr().solve(y);
  const double r2 = 1.0 - (y - x * coef).squaredNorm() / (y.array() - y.mean()).square().sum();
  const Eigen::VectorXd slope = lx.colPivHouseholderQr().solve(ly);

  const double spread = hi / lo;
  res.details.push_back("fit comm = " + fmt(coef(0)) + " md + " + fmt(coef(1)) + " nt + " + fmt(coef(2)) +
                        ", R^2 = " + fmt(r2));
  res.details.push_back("log-log slope of comm against mn(d+1): " + fmt(slope(0)));
  res.pass = all_accept && spread <= 4.0 && slope(0) < 1.0;
  res.summary = "comm/(md+nt) in [" + fmt(lo, 3) + ", " + fmt(hi, 3) + "], spread " + fmt(spread, 3) +
                " (limit 4); growth exponent vs mn(d+1) " + fmt(slope(0), 3) + (all_accept ? "" : "; a run rejected");
  return res;
}

// ---------------------------------------------------------------- criterion 8

std::size_t slot_count(const Payload& p) {
  return std::visit(
      [](const auto& x) -> std::size_t {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FieldScalar> || std::is_same_v<T, RankClaim> || std::is_same_v<T, BoolFlag>) {
          return 1;
        } else if constexpr (std::is_same_v<T, FieldVector> || std::is_same_v<T, ShiftVector>) {
          return x.values.size();
        } else if constexpr (std::is_same_v<T, FieldMat>) {
          return x.data().size();
        } else if constexpr (std::is_same_v<T, Poly>) {
          return x.coeffs().size();
        } else if constexpr (std::is_same_v<T, PolyVec>) {
          std::size_t s = 0;
          for (const auto& q : x) s += q.coeffs().size();
          return s;
        } else if constexpr (std::is_same_v<T, PolyMat>) {
          std::size_t s = 0;
          for (const auto& q : x.entries()) s += q.coeffs().size();
          return s;
        } else if constexpr (std::is_same_v<T, IndexSet>) {
          return x.indices.size();
        } else if constexpr (std::is_same_v<T, ToeplitzSpec>) {
          return x.entries.size();
        } else {
          return 0;  // markers carry no values
        }
      },
      p);
}

u64 other_value(u64 old, u64 range, std::mt19937_64& rng) {
  return (old + 1 + rng() % (range - 1)) % range;
}

void mutate_poly(Poly& q, std::size_t k, std::mt19937_64& rng) {
  std::vector<u64> c = q.coeffs();
  c[k] = other_value(c[k], q.modulus().value(), rng);
  q = Poly(q.modulus(), std::move(c));
}

// Changes the k-th value of the payload to a different one.
void mutate_slot(Payload& p, std::size_t k, u64 field, std::mt19937_64& rng) {
  std::visit(
      [&](auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FieldScalar>) {
          x.value = other_value(x.value, field, rng);
        } else if constexpr (std::is_same_v<T, RankClaim>) {
          x.rank = x.rank == 0 ? 1 : x.rank + (rng() % 2 ? 1 : -1);
        } else if constexpr (std::is_same_v<T, BoolFlag>) {
          x.value = !x.value;
        } else if constexpr (std::is_same_v<T, FieldVector>) {
          x.values[k] = other_value(x.values[k], field, rng);
        } else if constexpr (std::is_same_v<T, ShiftVector>) {
          x.values[k] += rng() % 2 ? 1 : -1;
        } else if constexpr (std::is_same_v<T, FieldMat>) {
          auto& e = x.at(k / x.cols(), k % x.cols());
          e = other_value(e, field, rng);
        } else if constexpr (std::is_same_v<T, Poly>) {
          mutate_poly(x, k, rng);
        } else if constexpr (std::is_same_v<T, PolyVec>) {
          for (auto& q : x) {
            if (k < q.coeffs().size()) return mutate_poly(q, k, rng);
            k -= q.coeffs().size();
          }
        } else if constexpr (std::is_same_v<T, PolyMat>) {
          for (std::size_t i = 0; i < x.rows(); ++i) {
            for (std::size_t j = 0; j < x.cols(); ++j) {
              Poly& q = x.at(i, j);
              if (k < q.coeffs().size()) return mutate_poly(q, k, rng);
              k -= q.coeffs().size();
            }
          }
        } else if constexpr (std::is_same_v<T, IndexSet>) {
          const u64 old = x.indices[k];
          x.indices[k] = other_value(old, std::max<u64>(old + 2, 2 * x.indices.size() + 2), rng);
        } else if constexpr (std::is_same_v<T, ToeplitzSpec>) {
          x.entries[k] = other_value(x.entries[k], field, rng);
        }
      },
      p);
}

bool rejects(const Transcript& t, std::string& why) {
  try {
    const Verdict v = verify_transcript(t);
    why = v.accepted ? "accept" : reason_name(v.reason);
    return !v.accepted;
  } catch (const std::exception& e) {
    why = std::string("exception: ") + e.what();
    return true;
  }
}

CriterionResult fiat_shamir_integrity(const AcceptanceOptions& opts) {
  CriterionResult res{8, "Fiat-Shamir integrity", false, {}, {}, Json::object(), 0};
  constexpr int kMutations = 100;
  std::size_t stored = 0, stored_ok = 0, fresh_ok = 0, mutated = 0, caught = 0, digest_caught = 0, redrawn = 0;

  if (!opts.transcript_dir.empty() && std::filesystem::is_directory(opts.transcript_dir)) {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(opts.transcript_dir)) {
      if (e.path().extension() == ".json") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      ++stored;
      std::string why;
      try {
        const Transcript t = parse_transcript(read_file(f.string()));
        const Verdict v = verify_transcript(t);
        const bool ok = v.accepted && t.verdict && *t.verdict == v;
        why = v.accepted ? "accept" : reason_name(v.reason);
        if (ok) ++stored_ok;
      } catch (const std::exception& e) {
        why = e.what();
      }
      res.details.push_back("stored " + f.filename().string() + ": " + why);
    }
  }

  Json per_protocol = Json::object();
  const auto& ids = protocol_ids();
  for (std::size_t pi = 0; pi < ids.size(); ++pi) {
    const std::string& id = ids[pi];
    std::mt19937_64 rng(mix(opts.seed, 8, pi));
    // Degenerate instances are redrawn: a zero matrix makes every nonzero
    // vector a valid null vector, so an edited certificate is still a proof,
    // and a rank claim of 0 leaves nothing in the transcript to edit.
    Instance inst;
    SessionResult run;
    for (int tries = 0;; ++tries) {
      inst = true_instance(id, kP, 4, 2, rng);
      const bool zero_a = inst.has("A") && inst.get<PolyMat>("A").is_zero();
      const bool zero_rho = inst.has("rho") && inst.get<RankClaim>("rho").rank == 0;
      if (zero_a || zero_rho) {
        ++redrawn;
        continue;
      }
      ProverPtr prover = honest_prover(inst, fiat_shamir());
      run = run_protocol(inst, fiat_shamir(), *prover);
      break;
    }
    const std::string text = dump_transcript(run.transcript);
    const Transcript back = parse_transcript(text);
    const Verdict again = verify_transcript(back);
    const bool fresh = run.verdict.accepted && again.accepted && dump_transcript(back) == text;
    if (fresh) ++fresh_ok;

    std::vector<std::pair<std::size_t, std::size_t>> slots;  // (message, value)
    for (std::size_t mi = 0; mi < back.messages.size(); ++mi) {
      if (back.messages[mi].sender == Sender::Marker) continue;
      for (std::size_t k = 0; k < slot_count(back.messages[mi].payload); ++k) slots.emplace_back(mi, k);
    }
    std::size_t got = 0;
    std::map<std::string, std::size_t> reasons;
    for (int i = 0; i < kMutations && !slots.empty(); ++i) {
      const auto [mi, k] = slots[rng() % slots.size()];
      Transcript t = back;
      mutate_slot(t.messages[mi].payload, k, kP.value(), rng);
      std::string why;
      if (rejects(t, why)) {
        ++got;
      } else {
        res.details.push_back(id + ": mutation of message " + std::to_string(mi) + " ('" + t.messages[mi].label +
                              "') value " + std::to_string(k) + " still accepts");
      }
      ++reasons[why.starts_with("exception") ? "exception" : why];
      ++mutated;
    }
    caught += got;

    // The same edit made to the stored JSON text is refused by the digest.
    Json j = Json::parse(text);
    for (auto& m : j["messages"]) {
      if (m.value("sender", "") == "marker") continue;
      m["label"] = m["label"].get<std::string>() + "'";
      break;
    }
    try {
      (void)parse_transcript(j.dump());
    } catch (const DigestMismatch&) {
      ++digest_caught;
    } catch (const std::exception&) {
    }

    per_protocol[id] = {{"messages", back.messages.size()}, {"mutations", kMutations}, {"rejected", got}, {"reasons", reasons}};
    res.details.push_back(id + ": fresh transcript " + (fresh ? "re-verifies" : "FAILS") + ", " + std::to_string(got) +
                          "/" + std::to_string(kMutations) + " mutations rejected");
  }
  res.report = {{"stored", stored},          {"stored_ok", stored_ok},    {"fresh_ok", fresh_ok},
                {"mutations", mutated},      {"rejected", caught},        {"digest_refused", digest_caught},
                {"degenerate_redrawn", redrawn},
                {"per_protocol", per_protocol}};
  res.details.push_back("redrew " + std::to_string(redrawn) + " degenerate instances (zero A or zero rank claim)");
  res.pass = stored_ok == stored && fresh_ok == ids.size() && mutated == kMutations * ids.size() && caught == mutated &&
             digest_caught == ids.size();
  res.summary = std::to_string(stored_ok) + "/" + std::to_string(stored) + " stored and " + std::to_string(fresh_ok) +
                "/" + std::to_string(ids.size()) + " fresh transcripts re-verify; " + std::to_string(caught) + "/" +
                std::to_string(mutated) + " single-value mutations rejected; digest refuses " +
                std::to_string(digest_caught) + "/" + std::to_string(ids.size()) + " edited files";
  return res;
}

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  switch (id) {
    case 1: r = completeness(opts); break;
    case 2: r = soundness(opts); break;
    case 3: r = worked_example(opts); break;
    case 4: r = normal_forms(opts); break;
    case 5: r = small_fields(opts); break;
    case 6: r = rational_solve(opts); break;
    case 7: r = communication(opts); break;
    case 8: r = fiat_shamir_integrity(opts); break;
    default: throw std::out_of_range("criterion " + std::to_string(id) + " does not exist");
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (id == 1 && r.seconds >= 120) {
    r.pass = false;
    r.summary += "; over the 120 s budget";
  }
  return r;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "[PASS]" : "[FAIL]") << " C" << r.id << " " << r.title << ": " << r.summary << " (" << fmt(r.seconds, 3)
     << " s)";
  return os.str();
}

}  // namespace polycert
