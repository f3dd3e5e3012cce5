#include "polycert/accounting.hpp"

#include <algorithm>

namespace polycert {

Communication count_communication(const Transcript& t) {
  Communication c;
  for (const auto& msg : t.messages) {
    if (msg.sender == Sender::Marker) continue;
    ++c.messages;
    (msg.sender == Sender::Prover ? c.prover_elements : c.verifier_elements) += payload_size(msg.payload);
  }
  return c;
}

double communication_shape(const Instance& inst, u64 sigma) {
  const std::string& id = inst.protocol;
  double m = 0, n = 0, d = 1, rho = 0;
  if (inst.has("A")) {
    if (const auto* a = std::get_if<PolyMat>(&inst.input("A"))) {
      m = static_cast<double>(a->rows());
      n = static_cast<double>(a->cols());
      d = std::max(1, a->deg());
    }
  }
  if (inst.has("rho")) rho = static_cast<double>(inst.get<RankClaim>("rho").rank);
  const double r = std::min(m, n);
  auto rounds = [&](double rank) {
    const auto t = rsm_rounds(sigma, static_cast<u64>(std::max(1.0, rank)), static_cast<int>(d));
    return static_cast<double>(t.value_or(2));
  };
  if (id == "singularity" || id == "nonsingularity" || id == "rank_ub" || id == "rank") return n;
  if (id == "rank_lb") return rho;
  // The PLUQ certificate sends two n x n factors.
  if (id == "determinant") return n * n;
  if (id == "field_det") {
    const double b = static_cast<double>(inst.get<FieldMat>("B").rows());
    return b * b;
  }
  if (id == "system_solve" || id == "matmul" || id == "inverse") return 0;
  if (id == "frrsm") return m * d;
  if (id == "coprime") {
    double fd = 1;
    for (const auto& f : inst.get<PolyVec>("f")) fd = std::max(fd, static_cast<double>(f.deg()));
    return fd;
  }
  if (id == "saturated" || id == "unimod_completable" || id == "sat_basis") return (m <= n ? n : m) * d;
  if (id == "kernel_basis") return m * d;
  return m * d + n * rounds(r);
}

}  // namespace polycert
