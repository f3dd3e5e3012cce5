// polycert: generate instances, prove and verify certificates, run
// experiments. Exit status: 0 accept, 1 reject or prover gave up, 2 usage or
// parameter error.
#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "polycert/acceptance.hpp"
#include "polycert/accounting.hpp"
#include "polycert/adversary.hpp"
#include "polycert/instance_io.hpp"
#include "polycert/workloads.hpp"

using namespace polycert;

namespace {

constexpr int kAccept = 0;
constexpr int kReject = 1;
constexpr int kUsage = 2;

struct Options {
  std::string protocol;
  std::string instance_path;
  std::string out;
  std::string mode = "fiat-shamir";
  std::string kind = "random";
  std::string suite;
  u64 modulus = kDefaultPrime;
  u64 seed = 0;
  std::optional<u64> sigma;
  bool strict = true;
  bool cheat = false;
  std::size_t trials = 2000;
  std::size_t m = 4, n = 4, r = 2;
  int d = 2;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

Instance load_instance(const Options& o) {
  if (o.instance_path.empty()) throw UsageError("--instance is required");
  Instance inst = parse_instance(read_file(o.instance_path));
  if (!o.protocol.empty()) inst.protocol = o.protocol;
  if (inst.protocol.empty()) throw UsageError("the instance names no protocol; pass --protocol");
  if (const std::string why = validate_instance(inst); !why.empty()) throw UsageError(inst.protocol + ": " + why);
  return inst;
}

Params session_params(const Options& o, const Instance& inst) {
  Params p;
  p.p = inst.modulus.value();
  p.sigma = o.sigma.value_or(p.p);
  const auto mode = mode_from_name(o.mode);
  if (!mode) throw UsageError("unknown mode '" + o.mode + "'");
  p.mode = *mode;
  p.seed = o.seed;
  p.strict = o.strict;
  return p;
}

int verdict_code(const SessionResult& r) {
  if (r.prover_gave_up) {
    std::cout << "prover gave up: " << r.gave_up_reason << '\n';
    return kReject;
  }
  if (r.verdict.accepted) {
    std::cout << "accept\n";
    return kAccept;
  }
  std::cout << "reject: " << reason_name(r.verdict.reason);
  if (!r.verdict.subprotocol.empty()) std::cout << " in " << r.verdict.subprotocol;
  if (!r.verdict.detail.empty()) std::cout << " (" << r.verdict.detail << ")";
  std::cout << '\n';
  return r.verdict.reason == Reason::ParamsInvalid ? kUsage : kReject;
}

void print_accounting(const Instance& inst, const Transcript& t) {
  const Communication c = count_communication(t);
  const double shape = communication_shape(inst, t.params.sigma);
  std::cout << "communication: prover " << c.prover_elements << " elements, verifier " << c.verifier_elements
            << " elements, " << c.messages << " messages, total " << c.total() << '\n';
  std::cout << "asymptotic shape " << shape;
  if (shape > 0) std::cout << ", ratio " << static_cast<double>(c.total()) / shape;
  std::cout << "\nsoundness bound at #S = " << t.params.sigma << ": " << t.soundness_bound << '\n';
}

ProverPtr pick_prover(const Options& o, const Instance& inst, const Params& p) {
  if (!o.cheat) return honest_prover(inst, p);
  try {
    return cheating_prover(inst, p);
  } catch (const InstanceActuallyTrue&) {
    throw UsageError("the claim holds; the cheating prover only forges false claims");
  }
}

int cmd_gen(const Options& o) {
  const auto kind = kind_from_name(o.kind);
  if (!kind) throw UsageError("unknown kind '" + o.kind + "'");
  InstanceSpec spec;
  spec.kind = *kind;
  spec.m = o.m;
  spec.n = o.n;
  spec.r = o.r;
  spec.d = o.d;
  spec.seed = o.seed;
  spec.protocol = o.protocol;
  try {
    emit(o.out, dump_instance(generate(Modulus(o.modulus), spec)));
  } catch (const SpecInvalid& e) {
    throw UsageError(e.what());
  }
  return kAccept;
}

int cmd_prove(const Options& o, bool show_accounting) {
  const Instance inst = load_instance(o);
  const Params p = session_params(o, inst);
  ProverPtr prover = pick_prover(o, inst, p);
  const SessionResult r = run_protocol(inst, p, *prover);
  if (!o.out.empty()) {
    emit(o.out, dump_transcript(r.transcript));
    std::cout << "transcript " << o.out << " digest " << transcript_digest(r.transcript) << '\n';
  }
  if (show_accounting) print_accounting(inst, r.transcript);
  return verdict_code(r);
}

int cmd_verify(const std::string& path) {
  Transcript t;
  try {
    t = parse_transcript(read_file(path));
  } catch (const DigestMismatch& e) {
    std::cout << "reject: " << e.what() << '\n';
    return kReject;
  } catch (const ParseError& e) {
    std::cout << "reject: malformed transcript: " << e.what() << '\n';
    return kReject;
  }
  const Verdict v = verify_transcript(t);
  if (t.verdict && *t.verdict != v) std::cout << "note: stored verdict differs from the recomputed one\n";
  if (v.accepted) {
    std::cout << "accept\n";
    return kAccept;
  }
  std::cout << "reject: " << reason_name(v.reason);
  if (!v.subprotocol.empty()) std::cout << " in " << v.subprotocol;
  if (!v.detail.empty()) std::cout << " (" << v.detail << ")";
  std::cout << '\n';
  return v.reason == Reason::ParamsInvalid ? kUsage : kReject;
}

int run_criteria(const std::vector<int>& ids, const Options& o) {
  AcceptanceOptions opts;
  opts.seed = o.seed == 0 ? opts.seed : o.seed;
  if (const char* dir = std::getenv("POLYCERT_TRANSCRIPT_DIR")) opts.transcript_dir = dir;
  Json reports = Json::array();
  bool all = true;
  for (const int id : ids) {
    const CriterionResult r = run_criterion(id, opts);
    std::cout << format_line(r) << std::endl;
    if (!r.pass) {
      for (const auto& d : r.details) std::cout << "    " << d << '\n';
    }
    reports.push_back({{"criterion", r.id}, {"pass", r.pass}, {"summary", r.summary}, {"report", r.report}});
    all = all && r.pass;
  }
  if (!o.out.empty()) emit(o.out, reports.dump(2) + "\n");
  return all ? kAccept : kReject;
}

int cmd_experiment(const Options& o) {
  if (o.suite == "completeness") return run_criteria({1}, o);
  if (o.suite == "soundness") return run_criteria({2}, o);
  if (o.suite == "acceptance") return run_criteria({1, 2, 3, 4, 5, 6, 7, 8}, o);
  if (!o.suite.empty()) throw UsageError("unknown suite '" + o.suite + "'");
  if (o.protocol.empty()) throw UsageError("pass --suite or a protocol");

  std::vector<SoundnessFixture> targets;
  if (!o.instance_path.empty()) {
    targets.push_back({o.instance_path, load_instance(o)});
    if (statement_holds(targets.back().instance)) throw UsageError("the instance's claim holds; soundness needs a false one");
  } else {
    for (auto& fx : soundness_fixtures(Modulus(o.modulus))) {
      if (fx.instance.protocol == o.protocol) targets.push_back(std::move(fx));
    }
    if (targets.empty()) throw UsageError("no built-in false instance for '" + o.protocol + "'; pass --instance");
  }
  const u64 sigma = o.sigma.value_or(64);
  Json reports = Json::array();
  bool all = true;
  for (const auto& fx : targets) {
    const SoundnessReport r = run_soundness_experiment(fx.instance, sigma, o.trials, o.seed, fx.name);
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.protocol << " [" << r.fixture << "] #S=" << sigma << ": "
              << r.accepts << "/" << r.trials << " cheater accepts, rate " << r.rate << " vs bound " << r.bound
              << " + " << r.tolerance << '\n';
    reports.push_back(r.to_json());
    all = all && r.pass;
  }
  if (!o.out.empty()) emit(o.out, reports.dump(2) + "\n");
  return all ? kAccept : kReject;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interactive certificates for polynomial matrices"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  Options o;
  app.add_option("--modulus", o.modulus, "Prime p for generated instances")->envname("POLYCERT_MODULUS");
  app.add_option("--seed", o.seed, "Seed for generators and interactive challenges")->envname("POLYCERT_SEED");

  auto* gen = app.add_subcommand("gen", "Generate an instance file");
  gen->add_option("--kind", o.kind, "random | planted-rank | planted-membership | planted-normal-form");
  gen->add_option("--protocol", o.protocol, "With --kind random: a true instance of this protocol");
  gen->add_option("--m", o.m, "Rows");
  gen->add_option("--n", o.n, "Columns");
  gen->add_option("--d", o.d, "Entry degree");
  gen->add_option("--r", o.r, "Planted rank");
  gen->add_option("--out", o.out, "Output path (default stdout)");

  auto session_flags = [&](CLI::App* sub) {
    sub->add_option("--instance", o.instance_path, "Instance file")->check(CLI::ExistingFile);
    sub->add_option("--protocol", o.protocol, "Protocol id (overrides the instance's)");
    sub->add_option("--mode", o.mode, "interactive | fiat-shamir");
    sub->add_option("--sigma", o.sigma, "#S, the challenge set size (default p)");
    sub->add_flag("--strict,!--permissive", o.strict, "Refuse #S below the completeness bound");
    sub->add_flag("--cheat", o.cheat, "Use the cheating prover (false claims only)");
    sub->add_option("--out", o.out, "Write the transcript here");
  };
  auto* prove = app.add_subcommand("prove", "Run a session and write its transcript");
  session_flags(prove);
  auto* run = app.add_subcommand("run", "Run both parties in process and report communication");
  session_flags(run);

  auto* verify = app.add_subcommand("verify", "Re-check a transcript file with no prover");
  std::string transcript_path;
  verify->add_option("transcript", transcript_path, "Transcript file")->required()->check(CLI::ExistingFile);

  auto* experiment = app.add_subcommand("experiment", "Run a suite or a soundness experiment");
  experiment->add_option("target", o.protocol, "Protocol for a soundness experiment");
  experiment->add_option("--suite", o.suite, "completeness | soundness | acceptance");
  experiment->add_option("--protocol", o.protocol, "Protocol for a soundness experiment");
  experiment->add_option("--instance", o.instance_path, "A false instance to attack")->check(CLI::ExistingFile);
  experiment->add_option("--sigma", o.sigma, "#S (default 64)");
  experiment->add_option("--trials", o.trials, "Trials per experiment");
  experiment->add_option("--out", o.out, "Write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (!is_prime_u64(o.modulus) || o.modulus < 2) throw UsageError("modulus " + std::to_string(o.modulus) + " is not prime");
    if (*gen) return cmd_gen(o);
    if (*prove) return cmd_prove(o, false);
    if (*run) return cmd_prove(o, true);
    if (*verify) return cmd_verify(transcript_path);
    if (*experiment) return cmd_experiment(o);
  } catch (const std::exception& e) {  // unreadable files, bad instances
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
