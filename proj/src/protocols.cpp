#include "polycert/protocols.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>

namespace polycert {

namespace {

using Layout = std::vector<std::pair<std::string, std::string>>;

const std::map<std::string, Layout>& layouts() {
  static const std::map<std::string, Layout> k = {
      {"singularity", {{"A", "pmatrix"}}},
      {"nonsingularity", {{"A", "pmatrix"}}},
      {"rank_lb", {{"A", "pmatrix"}, {"rho", "rank"}}},
      {"rank_ub", {{"A", "pmatrix"}, {"rho", "rank"}}},
      {"rank", {{"A", "pmatrix"}, {"rho", "rank"}}},
      {"determinant", {{"A", "pmatrix"}, {"delta", "poly"}}},
      {"field_det", {{"B", "fmatrix"}, {"beta", "scalar"}}},
      {"system_solve", {{"A", "pmatrix"}, {"b", "polyvec"}, {"v", "polyvec"}, {"delta", "poly"}}},
      {"matmul", {{"A", "pmatrix"}, {"B", "pmatrix"}, {"C", "pmatrix"}}},
      {"inverse", {{"A", "pmatrix"}, {"B", "pmatrix"}}},
      {"frrsm", {{"A", "pmatrix"}, {"v", "polyvec"}}},
      {"coprime", {{"f", "polyvec"}}},
      {"rsm", {{"A", "pmatrix"}, {"v", "polyvec"}}},
      {"rs_subset", {{"A", "pmatrix"}, {"B", "pmatrix"}}},
      {"rs_equality", {{"A", "pmatrix"}, {"B", "pmatrix"}}},
      {"row_basis", {{"A", "pmatrix"}, {"B", "pmatrix"}}},
      {"hermite", {{"A", "pmatrix"}, {"H", "pmatrix"}}},
      {"spopov", {{"A", "pmatrix"}, {"s", "shift"}, {"P", "pmatrix"}}},
      {"saturated", {{"A", "pmatrix"}}},
      {"sat_basis", {{"A", "pmatrix"}, {"B", "pmatrix"}}},
      {"unimod_completable", {{"A", "pmatrix"}}},
      {"kernel_basis", {{"A", "pmatrix"}, {"B", "pmatrix"}}},
  };
  return k;
}

int dpos(int deg) { return deg < 0 ? 0 : deg; }

Verdict fail(Reason r, std::string why) { return Verdict::reject(r, std::move(why)); }

void need(bool ok, const std::string& what) {
  if (!ok) throw Malformed(what);
}

u64 dot(const Modulus& m, const FieldVec& a, const FieldVec& b) {
  u64 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = m.mul_add(a[i], b[i], s);
  return s;
}

std::vector<std::size_t> to_indices(const IndexSet& s) { return {s.indices.begin(), s.indices.end()}; }

}  // namespace

const std::vector<std::string>& protocol_ids() {
  static const std::vector<std::string> k = {
      "singularity", "nonsingularity", "rank_lb",  "rank_ub",   "rank",      "determinant",
      "field_det",   "system_solve",   "matmul",   "inverse",   "frrsm",     "coprime",
      "rsm",         "rs_subset",      "rs_equality", "row_basis", "hermite",  "spopov",
      "saturated",   "sat_basis",      "unimod_completable", "kernel_basis"};
  return k;
}

bool is_protocol_id(const std::string& id) { return layouts().count(id) != 0; }

const std::vector<std::pair<std::string, std::string>>& input_layout(const std::string& protocol) {
  const auto it = layouts().find(protocol);
  if (it == layouts().end()) throw InstanceError("unknown protocol '" + protocol + "'");
  return it->second;
}

bool Instance::has(const std::string& name) const {
  return std::any_of(inputs.begin(), inputs.end(), [&](const NamedPayload& p) { return p.name == name; });
}

const Payload& Instance::input(const std::string& name) const {
  for (const auto& p : inputs) {
    if (p.name == name) return p.payload;
  }
  throw InstanceError("missing input '" + name + "'");
}

std::string validate_instance(const Instance& inst) {
  if (!is_protocol_id(inst.protocol)) return "unknown protocol '" + inst.protocol + "'";
  const Layout& lay = input_layout(inst.protocol);
  if (inst.inputs.size() != lay.size()) return "expected " + std::to_string(lay.size()) + " inputs";
  for (std::size_t i = 0; i < lay.size(); ++i) {
    if (inst.inputs[i].name != lay[i].first) return "input " + std::to_string(i) + " should be '" + lay[i].first + "'";
    if (payload_tag(inst.inputs[i].payload) != lay[i].second) {
      return "input '" + lay[i].first + "' should have type " + lay[i].second;
    }
  }
  const std::string& id = inst.protocol;
  auto mat = [&](const char* n) -> const PolyMat& { return inst.get<PolyMat>(n); };
  for (const auto& np : inst.inputs) {
    if (const auto* a = std::get_if<PolyMat>(&np.payload); a && a->modulus() != inst.modulus) {
      return "input '" + np.name + "' uses another modulus";
    }
  }
  if (id == "field_det") {
    const auto& b = inst.get<FieldMat>("B");
    if (b.rows() != b.cols()) return "B must be square";
    return {};
  }
  if (id == "coprime") return inst.get<PolyVec>("f").empty() ? "f must hold at least one polynomial" : "";
  const PolyMat& a = mat("A");
  if (id == "singularity" || id == "nonsingularity" || id == "determinant") {
    return a.rows() == a.cols() ? "" : "A must be square";
  }
  if (id == "inverse") {
    const PolyMat& b = mat("B");
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) return "A and B must be square of one size";
    return {};
  }
  if (id == "system_solve") {
    if (inst.get<PolyVec>("v").size() != a.cols()) return "v must have one entry per column of A";
    if (inst.get<PolyVec>("b").size() != a.rows()) return "b must have one entry per row of A";
    return {};
  }
  if (id == "matmul") {
    const PolyMat& b = mat("B");
    const PolyMat& c = mat("C");
    if (a.cols() != b.rows()) return "A and B have incompatible dimensions";
    if (c.rows() != a.rows() || c.cols() != b.cols()) return "C must be rows(A) x cols(B)";
    return {};
  }
  if (id == "frrsm" || id == "rsm") {
    return inst.get<PolyVec>("v").size() == a.cols() ? "" : "v must have one entry per column of A";
  }
  if (id == "kernel_basis") return mat("B").cols() == a.rows() ? "" : "B must have one column per row of A";
  if (id == "hermite") return mat("H").cols() == a.cols() ? "" : "H must have the column count of A";
  if (id == "spopov") {
    if (inst.get<ShiftVector>("s").values.size() != a.cols()) return "s must have one entry per column of A";
    return mat("P").cols() == a.cols() ? "" : "P must have the column count of A";
  }
  if (inst.has("B") && mat("B").cols() != a.cols()) return "B must have the column count of A";
  return {};
}

namespace {

int max_input_degree(const Instance& inst) {
  int d = kNegInf;
  for (const auto& np : inst.inputs) {
    if (const auto* a = std::get_if<PolyMat>(&np.payload)) d = std::max(d, a->deg());
    if (const auto* f = std::get_if<Poly>(&np.payload)) d = std::max(d, f->deg());
    if (const auto* v = std::get_if<PolyVec>(&np.payload)) d = std::max(d, vec_deg(*v));
  }
  return d;
}

struct Dims {
  u64 m = 0, n = 0, l = 0, d = 1, rho = 0;
};

Dims dims_of(const Instance& inst) {
  Dims k;
  k.d = static_cast<u64>(working_degree(max_input_degree(inst)));
  if (inst.has("A")) {
    if (const auto* a = std::get_if<PolyMat>(&inst.input("A"))) {
      k.m = a->rows();
      k.n = a->cols();
    }
  }
  for (const char* b : {"B", "H", "P"}) {
    if (inst.has(b)) {
      if (const auto* x = std::get_if<PolyMat>(&inst.input(b))) k.l = x->rows();
    }
  }
  if (inst.has("rho")) k.rho = inst.get<RankClaim>("rho").rank;
  return k;
}

}  // namespace

u64 strict_sigma_bound(const Instance& inst) {
  const std::string& id = inst.protocol;
  const Dims k = dims_of(inst);
  const u64 d = k.d, m = k.m, n = k.n;
  const u64 r = std::min(m, n);
  // Row-space comparisons between A (m x n) and B (l x n): ranks are at most
  // min(max(m, l), n).
  const u64 r2 = std::min(std::max(m, k.l), n);
  if (id == "singularity") return 2 * n * d;
  if (id == "nonsingularity") return n * d + 1;
  if (id == "rank_lb") return k.rho * d + 1;
  if (id == "rank_ub" || id == "rank") return 2 * r * d + 2;
  if (id == "determinant") return 2 * n * d + 2;
  if (id == "field_det") return 2;
  if (id == "system_solve") return 4 * d;
  if (id == "matmul" || id == "inverse") return 4 * d + 2;
  if (id == "frrsm") return 6 * m * d + 2 * d + 2;
  if (id == "coprime") return 2 * d;
  if (id == "rsm") return 8 * r * d + 2 * d + 2;
  if (id == "rs_subset" || id == "rs_equality" || id == "hermite" || id == "spopov") return 8 * r2 * d + 2 * d + 4;
  if (id == "row_basis") return 8 * r2 * d + 2 * d + 6;
  if (id == "saturated") return 8 * r * d + 4;
  if (id == "sat_basis") return 8 * n * d + 2 * d + 4;
  if (id == "unimod_completable" || id == "kernel_basis") return 8 * m * d + 4;
  throw InstanceError("unknown protocol '" + id + "'");
}

double soundness_bound(const Instance& inst, u64 sigma) {
  const std::string& id = inst.protocol;
  const Dims k = dims_of(inst);
  const double s = static_cast<double>(sigma);
  const double m = static_cast<double>(k.m), n = static_cast<double>(k.n), d = static_cast<double>(k.d);
  const double r = std::min(m, n);
  double e;
  if (id == "singularity") {
    e = n * d / s;
  } else if (id == "nonsingularity" || id == "rank_lb" || id == "field_det") {
    e = 1 / s;
  } else if (id == "rank_ub" || id == "rank") {
    e = (r * d + 1) / s;
  } else if (id == "determinant") {
    e = (n * d + 1) / s;
  } else if (id == "system_solve") {
    e = 2 * d / s;
  } else if (id == "matmul" || id == "inverse") {
    e = (2 * d + 1) / s;
  } else if (id == "frrsm") {
    e = (3 * m * d + d + 1) / s;
  } else if (id == "coprime") {
    e = (2 * d - 1) / s;
  } else if (id == "rsm") {
    e = (4 * r * d + d + 1) / s;
  } else {
    // Composite certificates: #S is sized so that the error is 1/2.
    e = static_cast<double>(strict_sigma_bound(inst)) / (2 * s);
  }
  return std::min(1.0, e);
}

std::optional<std::size_t> rsm_rounds(u64 sigma, u64 rho, int deg_a) {
  using boost::multiprecision::cpp_int;
  if (rho == 0 || sigma <= rho) return std::nullopt;
  const cpp_int target = cpp_int(2) * rho * static_cast<u64>(working_degree(deg_a));
  // Smallest k with (sigma/rho)^k >= target, kept exact in integers.
  cpp_int lhs = 1, rhs = target;
  std::size_t k = 0;
  while (lhs < rhs) {
    lhs *= sigma;
    rhs *= rho;
    ++k;
  }
  return std::max<std::size_t>(2, 1 + k);
}

namespace verify {

Verdict singularity(Channel& ch, const OracleRef& a) {
  const std::size_t n = a->rows();
  const u64 alpha = ch.challenge("alpha");
  const FieldVec v = ch.receive<FieldVector>("v").values;
  need(v.size() == n, "v has the wrong length");
  if (is_zero(v)) return fail(Reason::EvaluationCheckFailed, "v is zero");
  if (!is_zero(a->eval(alpha).apply_left(v))) return fail(Reason::EvaluationCheckFailed, "v A(alpha) is nonzero");
  return Verdict::accept();
}

Verdict nonsingularity(Channel& ch, const OracleRef& a) {
  const std::size_t n = a->rows();
  const u64 alpha = ch.receive<FieldScalar>("alpha").value;
  if (alpha >= ch.sigma()) return fail(Reason::EvaluationCheckFailed, "alpha is outside S");
  const FieldVec b = ch.challenge_vector("b", n);
  const FieldVec w = ch.receive<FieldVector>("w").values;
  need(w.size() == n, "w has the wrong length");
  if (a->eval(alpha).apply(w) != b) return fail(Reason::EvaluationCheckFailed, "A(alpha) w differs from b");
  return Verdict::accept();
}

Verdict rank_lb(Channel& ch, const OracleRef& a, u64 rho) {
  if (rho == 0) return Verdict::accept();
  if (rho > std::min(a->rows(), a->cols())) return fail(Reason::RankCheckFailed, "rho exceeds min(m, n)");
  const IndexSet I = ch.receive<IndexSet>("I");
  const IndexSet J = ch.receive<IndexSet>("J");
  auto distinct_below = [](std::vector<u64> s, std::size_t bound) {
    std::sort(s.begin(), s.end());
    return std::adjacent_find(s.begin(), s.end()) == s.end() && (s.empty() || s.back() < bound);
  };
  if (I.indices.size() != rho || J.indices.size() != rho) {
    return fail(Reason::RankCheckFailed, "index sets do not have rho elements");
  }
  need(distinct_below(I.indices, a->rows()) && distinct_below(J.indices, a->cols()),
       "index sets must be distinct in-range indices");
  const OracleRef sub = submatrix(a, to_indices(I), to_indices(J));
  return ch.call("nonsingularity", [&](Channel& c) { return nonsingularity(c, sub); });
}

Verdict rank_ub(Channel& ch, const OracleRef& a, u64 rho) {
  const std::size_t n = a->cols();
  const u64 alpha = ch.challenge("alpha");
  const FieldVec v = ch.challenge_vector("v", n);
  const FieldVec gamma = ch.receive<FieldVector>("gamma").values;
  need(gamma.size() == n, "gamma has the wrong length");
  if (hamming_weight(gamma) > rho) return fail(Reason::RankCheckFailed, "gamma has more than rho nonzero entries");
  const FieldMat ev = a->eval(alpha);
  if (ev.apply(gamma) != ev.apply(v)) return fail(Reason::EvaluationCheckFailed, "A(alpha) gamma differs from A(alpha) v");
  return Verdict::accept();
}

Verdict rank(Channel& ch, const OracleRef& a, u64 rho) {
  Verdict v = ch.call("rank_lb", [&](Channel& c) { return rank_lb(c, a, rho); });
  if (!v.accepted) return v;
  return ch.call("rank_ub", [&](Channel& c) { return rank_ub(c, a, rho); });
}

Verdict determinant(Channel& ch, const OracleRef& a, const Poly& delta) {
  const std::size_t n = a->rows();
  if (!delta.is_zero() && static_cast<u64>(delta.deg()) > n * static_cast<u64>(dpos(a->degree_bound()))) {
    return fail(Reason::DegreeCheckFailed, "deg(delta) exceeds n deg(A)");
  }
  const u64 alpha = ch.challenge("alpha");
  const FieldMat b = a->eval(alpha);
  const u64 beta = delta.eval(alpha);
  return ch.call("field_det", [&](Channel& c) { return field_det(c, b, beta); });
}

Verdict field_det(Channel& ch, const FieldMat& b, u64 beta) {
  const Modulus& m = b.modulus();
  const std::size_t n = b.rows();
  const IndexSet P = ch.receive<IndexSet>("P");
  const FieldMat L = ch.receive<FieldMat>("L");
  const FieldMat U = ch.receive<FieldMat>("U");
  const IndexSet Q = ch.receive<IndexSet>("Q");
  need(L.rows() == n && L.cols() == n && U.rows() == n && U.cols() == n, "factors must be n x n");
  need(P.indices.size() == n && Q.indices.size() == n, "permutations must have n entries");
  const auto p = to_indices(P), q = to_indices(Q);
  if (!is_permutation(p, n) || !is_permutation(q, n)) return fail(Reason::ShapeCheckFailed, "P or Q is not a permutation");
  for (std::size_t i = 0; i < n; ++i) {
    if (L.at(i, i) != 1) return fail(Reason::ShapeCheckFailed, "L is not unit diagonal");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (L.at(i, j) != 0) return fail(Reason::ShapeCheckFailed, "L is not lower triangular");
      if (U.at(j, i) != 0) return fail(Reason::ShapeCheckFailed, "U is not upper triangular");
    }
  }
  u64 prod = permutation_sign(p) * permutation_sign(q) > 0 ? 1 : m.neg(1);
  for (std::size_t i = 0; i < n; ++i) prod = m.mul(prod, U.at(i, i));
  if (prod != beta) return fail(Reason::EvaluationCheckFailed, "factors do not give beta");
  const FieldVec v = ch.challenge_vector("v", n);
  if (apply_pluq(p, L, U, q, v) != b.apply(v)) return fail(Reason::EvaluationCheckFailed, "P L U Q v differs from B v");
  return Verdict::accept();
}

Verdict system_solve(Channel& ch, const OracleRef& a, const PolyVec& b, const PolyVec& v, const Poly& delta) {
  const Modulus& m = a->modulus();
  const u64 alpha = ch.challenge("alpha");
  const FieldVec lhs = a->eval(alpha).apply(eval_vec(v, alpha));
  const FieldVec bv = eval_vec(b, alpha);
  const u64 da = delta.eval(alpha);
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (lhs[i] != m.mul(da, bv[i])) return fail(Reason::EvaluationCheckFailed, "A(alpha) v(alpha) differs from delta(alpha) b(alpha)");
  }
  return Verdict::accept();
}

Verdict matmul(Channel& ch, const OracleRef& a, const OracleRef& b, const OracleRef& c) {
  const int dc = c->degree_bound();
  if (dc != kNegInf) {
    const int da = a->degree_bound(), db = b->degree_bound();
    if (da == kNegInf || db == kNegInf || dc > da + db) return fail(Reason::DegreeCheckFailed, "deg(C) exceeds deg(A) + deg(B)");
  }
  const u64 alpha = ch.challenge("alpha");
  const FieldVec v = ch.challenge_vector("v", c->cols());
  if (a->eval(alpha).apply(b->eval(alpha).apply(v)) != c->eval(alpha).apply(v)) {
    return fail(Reason::EvaluationCheckFailed, "A(alpha) B(alpha) v differs from C(alpha) v");
  }
  return Verdict::accept();
}

Verdict inverse(Channel& ch, const OracleRef& a, const OracleRef& b) {
  const OracleRef id = explicit_oracle(PolyMat::identity(a->modulus(), a->rows()));
  return ch.call("matmul", [&](Channel& c) { return matmul(c, a, b, id); });
}

Verdict frrsm(Channel& ch, const OracleRef& a, const PolyVec& v) {
  const std::size_t m = a->rows();
  const FieldVec c = ch.challenge_vector("c", m);
  const Poly g = ch.receive<Poly>("g");
  const u64 bound = m * static_cast<u64>(dpos(a->degree_bound())) + static_cast<u64>(dpos(vec_deg(v)));
  if (!g.is_zero() && static_cast<u64>(g.deg()) > bound) return fail(Reason::DegreeCheckFailed, "deg(g) exceeds m deg(A) + deg(v)");
  const u64 alpha = ch.challenge("alpha");
  const FieldVec w = ch.receive<FieldVector>("w").values;
  need(w.size() == m, "w has the wrong length");
  if (a->eval(alpha).apply_left(w) != eval_vec(v, alpha)) return fail(Reason::EvaluationCheckFailed, "w A(alpha) differs from v(alpha)");
  if (dot(a->modulus(), w, c) != g.eval(alpha)) return fail(Reason::EvaluationCheckFailed, "w c differs from g(alpha)");
  return Verdict::accept();
}

Verdict coprime(Channel& ch, const PolyVec& f) {
  const Modulus& m = f.front().modulus();
  const std::size_t t = f.size();
  const Poly s1 = ch.receive<Poly>("s1");
  const Poly s2 = ch.receive<Poly>("s2");
  const FieldVec beta = ch.receive<FieldVector>("betas").values;
  need(beta.size() == (t > 2 ? t - 2 : 0), "betas has the wrong length");
  int rest = kNegInf;
  for (std::size_t i = 1; i < t; ++i) rest = std::max(rest, f[i].deg());
  if (!s1.is_zero() && s1.deg() >= std::max(1, rest)) return fail(Reason::DegreeCheckFailed, "deg(s1) too large");
  if (!s2.is_zero() && s2.deg() >= std::max(1, f[0].deg())) return fail(Reason::DegreeCheckFailed, "deg(s2) too large");
  const u64 alpha = ch.challenge("alpha");
  u64 h = t > 1 ? f[1].eval(alpha) : 0;
  for (std::size_t i = 2; i < t; ++i) h = m.mul_add(beta[i - 2], f[i].eval(alpha), h);
  if (m.mul_add(f[0].eval(alpha), s1.eval(alpha), m.mul(h, s2.eval(alpha))) != 1) {
    return fail(Reason::EvaluationCheckFailed, "f1 s1 + h s2 is not 1 at alpha");
  }
  return Verdict::accept();
}

Verdict rsm(Channel& ch, const OracleRef& a, const PolyVec& v) {
  const std::size_t m = a->rows(), n = a->cols();
  const u64 rho = ch.receive<RankClaim>("rho").rank;
  if (rho > std::min(m, n)) return fail(Reason::RankCheckFailed, "rho exceeds min(m, n)");
  if (rho == 0) {
    return vec_is_zero(v) ? Verdict::accept() : fail(Reason::RankCheckFailed, "rank 0 claimed for a nonzero v");
  }
  const auto t = rsm_rounds(ch.sigma(), rho, a->degree_bound());
  if (!t) return fail(Reason::ParamsInvalid, "sigma must exceed rho");
  std::vector<ToeplitzSpec> cs;
  for (std::size_t i = 0; i < *t; ++i) {
    cs.push_back(ch.receive<ToeplitzSpec>("C"));
    need(cs.back().rows == rho && cs.back().cols == m, "Toeplitz compressor must be rho x m");
  }
  const PolyVec d = ch.receive<PolyVec>("d");
  need(d.size() == *t, "expected one denominator per compressor");
  const u64 dbound = rho * static_cast<u64>(dpos(a->degree_bound()));
  for (const auto& di : d) {
    if (!di.is_zero() && static_cast<u64>(di.deg()) > dbound) return fail(Reason::DegreeCheckFailed, "deg(d_i) exceeds rho deg(A)");
  }
  Verdict r = ch.call("rank_ub", [&](Channel& c) { return rank_ub(c, a, rho); });
  if (!r.accepted) return r;
  std::vector<OracleRef> ca;
  for (const auto& c : cs) ca.push_back(toeplitz_product(c, a));
  for (const auto& x : ca) {
    r = ch.call("rank_lb", [&](Channel& c) { return rank_lb(c, x, rho); });
    if (!r.accepted) return r;
  }
  r = ch.call("coprime", [&](Channel& c) { return coprime(c, d); });
  if (!r.accepted) return r;
  for (std::size_t i = 0; i < *t; ++i) {
    const PolyVec dv = vec_scaled(v, d[i]);
    r = ch.call("frrsm", [&](Channel& c) { return frrsm(c, ca[i], dv); });
    if (!r.accepted) return r;
  }
  return Verdict::accept();
}

Verdict rs_subset(Channel& ch, const OracleRef& a, const OracleRef& b) {
  const FieldVec lambda = ch.challenge_vector("lambda", a->rows());
  const PolyVec v = a->left_combination(lambda);
  return ch.call("rsm", [&](Channel& c) { return rsm(c, b, v); });
}

Verdict rs_equality(Channel& ch, const OracleRef& a, const OracleRef& b) {
  Verdict r = ch.call("rs_subset", [&](Channel& c) { return rs_subset(c, a, b); });
  if (!r.accepted) return r;
  return ch.call("rs_subset", [&](Channel& c) { return rs_subset(c, b, a); });
}

Verdict row_basis(Channel& ch, const OracleRef& a, const OracleRef& b) {
  Verdict r = ch.call("rank_lb", [&](Channel& c) { return rank_lb(c, b, b->rows()); });
  if (!r.accepted) return r;
  return ch.call("rs_equality", [&](Channel& c) { return rs_equality(c, a, b); });
}

Verdict hermite(Channel& ch, const OracleRef& a, const PolyMat& h) {
  if (h.rows() > a->rows()) return fail(Reason::ShapeCheckFailed, "H has more rows than A");
  const ShapeCheck sc = check_hermite_shape(h);
  if (!sc.ok) return fail(Reason::ShapeCheckFailed, sc.why);
  const OracleRef ho = explicit_oracle(h);
  return ch.call("rs_equality", [&](Channel& c) { return rs_equality(c, a, ho); });
}

Verdict spopov(Channel& ch, const OracleRef& a, const Shift& s, const PolyMat& p) {
  if (p.rows() > a->rows()) return fail(Reason::ShapeCheckFailed, "P has more rows than A");
  const ShapeCheck sc = check_popov_shape(p, s);
  if (!sc.ok) return fail(Reason::ShapeCheckFailed, sc.why);
  const OracleRef po = explicit_oracle(p);
  return ch.call("rs_equality", [&](Channel& c) { return rs_equality(c, a, po); });
}

Verdict saturated(Channel& ch, const OracleRef& a) {
  const std::size_t m = a->rows(), n = a->cols();
  const Modulus& md = a->modulus();
  if (m <= n) {
    const OracleRef id = explicit_oracle(PolyMat::identity(md, m));
    const OracleRef at = transposed(a);
    return ch.call("rs_subset", [&](Channel& c) { return rs_subset(c, id, at); });
  }
  const OracleRef id = explicit_oracle(PolyMat::identity(md, n));
  return ch.call("rs_subset", [&](Channel& c) { return rs_subset(c, id, a); });
}

Verdict sat_basis(Channel& ch, const OracleRef& a, const OracleRef& b) {
  const std::size_t l = b->rows();
  if (l > std::min(a->rows(), a->cols())) return fail(Reason::RankCheckFailed, "B has more than min(m, n) rows");
  Verdict r = ch.call("rank_lb", [&](Channel& c) { return rank_lb(c, a, l); });
  if (!r.accepted) return r;
  r = ch.call("rs_subset", [&](Channel& c) { return rs_subset(c, a, b); });
  if (!r.accepted) return r;
  return ch.call("saturated", [&](Channel& c) { return saturated(c, b); });
}

Verdict unimod_completable(Channel& ch, const OracleRef& a) {
  if (a->rows() >= a->cols()) return fail(Reason::ShapeCheckFailed, "A must have fewer rows than columns");
  Verdict r = ch.call("rank_lb", [&](Channel& c) { return rank_lb(c, a, a->rows()); });
  if (!r.accepted) return r;
  return ch.call("saturated", [&](Channel& c) { return saturated(c, a); });
}

Verdict kernel_basis(Channel& ch, const OracleRef& a, const OracleRef& b) {
  const std::size_t m = a->rows(), l = b->rows();
  if (l > m) return fail(Reason::ShapeCheckFailed, "B has more rows than A");
  Verdict r = ch.call("rank_lb", [&](Channel& c) { return rank_lb(c, b, l); });
  if (!r.accepted) return r;
  r = ch.call("rank_lb", [&](Channel& c) { return rank_lb(c, a, m - l); });
  if (!r.accepted) return r;
  const OracleRef zero = explicit_oracle(PolyMat(a->modulus(), l, a->cols()));
  r = ch.call("matmul", [&](Channel& c) { return matmul(c, b, a, zero); });
  if (!r.accepted) return r;
  return ch.call("saturated", [&](Channel& c) { return saturated(c, b); });
}

Verdict top_level(Channel& ch, const Instance& inst) {
  const std::string& id = inst.protocol;
  auto mat = [&](const char* n) { return explicit_oracle(inst.get<PolyMat>(n)); };
  auto rho = [&] { return inst.get<RankClaim>("rho").rank; };
  if (id == "singularity") return singularity(ch, mat("A"));
  if (id == "nonsingularity") return nonsingularity(ch, mat("A"));
  if (id == "rank_lb") return rank_lb(ch, mat("A"), rho());
  if (id == "rank_ub") return rank_ub(ch, mat("A"), rho());
  if (id == "rank") return rank(ch, mat("A"), rho());
  if (id == "determinant") return determinant(ch, mat("A"), inst.get<Poly>("delta"));
  if (id == "field_det") return field_det(ch, inst.get<FieldMat>("B"), inst.get<FieldScalar>("beta").value);
  if (id == "system_solve") {
    return system_solve(ch, mat("A"), inst.get<PolyVec>("b"), inst.get<PolyVec>("v"), inst.get<Poly>("delta"));
  }
  if (id == "matmul") return matmul(ch, mat("A"), mat("B"), mat("C"));
  if (id == "inverse") return inverse(ch, mat("A"), mat("B"));
  if (id == "frrsm") return frrsm(ch, mat("A"), inst.get<PolyVec>("v"));
  if (id == "coprime") return coprime(ch, inst.get<PolyVec>("f"));
  if (id == "rsm") return rsm(ch, mat("A"), inst.get<PolyVec>("v"));
  if (id == "rs_subset") return rs_subset(ch, mat("A"), mat("B"));
  if (id == "rs_equality") return rs_equality(ch, mat("A"), mat("B"));
  if (id == "row_basis") return row_basis(ch, mat("A"), mat("B"));
  if (id == "hermite") return hermite(ch, mat("A"), inst.get<PolyMat>("H"));
  if (id == "spopov") return spopov(ch, mat("A"), inst.get<ShiftVector>("s").values, inst.get<PolyMat>("P"));
  if (id == "saturated") return saturated(ch, mat("A"));
  if (id == "sat_basis") return sat_basis(ch, mat("A"), mat("B"));
  if (id == "unimod_completable") return unimod_completable(ch, mat("A"));
  if (id == "kernel_basis") return kernel_basis(ch, mat("A"), mat("B"));
  throw InstanceError("unknown protocol '" + id + "'");
}

}  // namespace verify

namespace {

std::optional<Verdict> check_params(const Instance& inst, const Params& params) {
  if (params.p != inst.modulus.value()) return fail(Reason::ParamsInvalid, "p differs from the instance modulus");
  if (params.sigma < 1 || params.sigma > params.p) return fail(Reason::ParamsInvalid, "sigma must lie in [1, p]");
  if (const std::string why = validate_instance(inst); !why.empty()) return fail(Reason::ParamsInvalid, why);
  if (params.strict) {
    const u64 need_sigma = strict_sigma_bound(inst);
    if (params.sigma < need_sigma) {
      return fail(Reason::ParamsInvalid, "strict mode needs sigma >= " + std::to_string(need_sigma));
    }
  }
  return std::nullopt;
}

}  // namespace

SessionResult run_protocol(const Instance& inst, const Params& params, Prover& prover) {
  if (auto bad = check_params(inst, params)) {
    SessionResult r;
    r.transcript.protocol_id = inst.protocol;
    r.transcript.params = params;
    r.transcript.public_inputs = inst.inputs;
    r.transcript.verdict = *bad;
    r.verdict = *bad;
    return r;
  }
  SessionResult r = run_session(inst.protocol, inst.modulus, inst.inputs, params, prover,
                                [&](Channel& ch) { return verify::top_level(ch, inst); });
  r.transcript.soundness_bound = soundness_bound(inst, params.sigma);
  return r;
}

Instance instance_of(const Transcript& t) {
  return {t.protocol_id, Modulus(t.params.p), t.public_inputs, {}};
}

Verdict verify_transcript(const Transcript& t) {
  if (!is_protocol_id(t.protocol_id)) return fail(Reason::ParamsInvalid, "unknown protocol '" + t.protocol_id + "'");
  if (!is_prime_u64(t.params.p) || t.params.p < 2) return fail(Reason::ParamsInvalid, "p is not prime");
  const Instance inst = instance_of(t);
  if (auto bad = check_params(inst, t.params)) return *bad;
  return replay_session(t, inst.modulus, [&](Channel& ch) { return verify::top_level(ch, inst); });
}

}  // namespace polycert
