// Command-line front end: validation, homology, torsion, splitting,
// Pfaffians, snake lemma, instance generation, and dual-route theorem
// verification over exact rationals.
//
// Exit codes: 0 success / equality, 1 verified inequality or invariant
// violation, 2 usage or parse error.

#include "rtorsion/batch.hpp"
#include "rtorsion/pfaffian.hpp"
#include "rtorsion/serialize.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace rtorsion;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON");
  return j;
}

struct ReportPrinter {
  std::string command;
  std::string input_digest;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void emit(const json& outputs) const {
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    json report = json::object();
    report["command"] = command;
    if (!input_digest.empty()) report["input_digest"] = input_digest;
    report["outputs"] = outputs;
    report["duration_ms"] = elapsed.count();
    std::cout << canonical_dump(report) << "\n";
  }
};

InstanceFile load_instance(const std::string& path, ReportPrinter& printer) {
  const std::string text = read_file(path);
  printer.input_digest = digest(text);
  return instance_from_json(parse_json(text));
}

json violation_json(const Violation& v) {
  json j = json::object();
  j["degree"] = v.degree;
  j["what"] = v.what;
  return j;
}

int run_check(const std::string& path, ReportPrinter& printer) {
  const InstanceFile file = load_instance(path, printer);
  json out = json::object();
  bool ok = true;
  if (auto v = validate_complex(file.complex)) {
    out["chain"] = violation_json(*v);
    ok = false;
  } else {
    out["chain"] = "ok";
  }
  if (file.is_symplectic()) {
    if (auto v = validate_symplectic(file.symplectic())) {
      out["symplectic"] = violation_json(*v);
      ok = false;
    } else {
      out["symplectic"] = "ok";
    }
  }
  printer.emit(out);
  return ok ? kExitOk : kExitViolation;
}

int run_homology(const std::string& path, ReportPrinter& printer) {
  const InstanceFile file = load_instance(path, printer);
  const HomologyData h = compute_homology(file.complex);
  json out = json::object();
  out["betti"] = h.betti;
  json reps = json::object(), cycles = json::object(), boundaries = json::object();
  for (int p = 0; p <= file.complex.n; ++p) {
    const std::string key = std::to_string(p);
    reps[key] = matrix_to_json(h.homology_reps[static_cast<std::size_t>(p)]);
    cycles[key] = matrix_to_json(h.cycle_basis[static_cast<std::size_t>(p)]);
    boundaries[key] = matrix_to_json(h.boundary_basis[static_cast<std::size_t>(p)]);
  }
  out["homology_reps"] = reps;
  out["cycle_basis"] = cycles;
  out["boundary_basis"] = boundaries;
  printer.emit(out);
  return kExitOk;
}

int run_torsion(const std::string& path, ReportPrinter& printer) {
  const InstanceFile file = load_instance(path, printer);
  if (!file.chain_bases || !file.homology_bases) {
    std::cerr << "torsion: file must carry chain_bases and homology_bases\n";
    return kExitUsage;
  }
  const TorsionReport report = torsion(file.complex, *file.chain_bases, *file.homology_bases);
  printer.emit(torsion_report_to_json(report));
  return kExitOk;
}

int run_split(const std::string& path, ReportPrinter& printer) {
  const InstanceFile file = load_instance(path, printer);
  json out = json::object();
  auto part_json = [](const ChainComplex& c, const BasisFamily& emb) {
    InstanceFile f;
    f.complex = c;
    json j = json::object();
    j["complex"] = instance_to_json(f);
    json e = json::object();
    for (std::size_t p = 0; p < emb.size(); ++p) {
      e[std::to_string(p)] = matrix_to_json(emb[p]);
    }
    j["embedding"] = e;
    return j;
  };
  if (file.is_symplectic()) {
    const SymplecticComplex s = file.symplectic();
    if (auto v = validate_symplectic(s)) {
      printer.emit(violation_json(*v));
      return kExitViolation;
    }
    const CompatibleBasis compat = make_omega_compatible_bases(s);
    const SymplecticSplit split = split_symplectic(s, compat);
    auto spart_json = [&](const SymplecticSplitPart& part) {
      InstanceFile f;
      f.complex = part.part.base;
      f.pairings = part.part.pairings;
      json j = json::object();
      j["complex"] = instance_to_json(f);
      json e = json::object();
      for (std::size_t p = 0; p < part.embedding.size(); ++p) {
        e[std::to_string(p)] = matrix_to_json(part.embedding[p]);
      }
      j["embedding"] = e;
      return j;
    };
    out["exact_part"] = spart_json(split.exact_part);
    out["dzero_part"] = spart_json(split.dzero_part);
  } else {
    const SplitResult split = split_general(file.complex);
    out["exact_part"] = part_json(split.exact_part.complex, split.exact_part.embedding);
    out["dzero_part"] = part_json(split.dzero_part.complex, split.dzero_part.embedding);
  }
  printer.emit(out);
  return kExitOk;
}

int run_pfaffian(const std::string& path, ReportPrinter& printer) {
  const std::string text = read_file(path);
  printer.input_digest = digest(text);
  const json j = parse_json(text);
  const Matrix m = j.is_object() && j.contains("matrix")
                       ? matrix_from_json(j.at("matrix"), "matrix")
                       : matrix_from_json(j, "matrix");
  json out = json::object();
  out["pfaffian"] = rat_str(pfaffian(m));
  printer.emit(out);
  return kExitOk;
}

int run_snake(const std::string& path, ReportPrinter& printer) {
  const std::string text = read_file(path);
  printer.input_digest = digest(text);
  const json j = parse_json(text);
  const ShortExactSequence s = ses_from_json(j);
  if (auto v = validate_ses(s)) {
    printer.emit(violation_json(*v));
    return kExitViolation;
  }
  const HomologyData ha = compute_homology(s.sub);
  const HomologyData hb = compute_homology(s.total);
  const HomologyData hd = compute_homology(s.quotient);
  const ChainComplex les = long_exact_sequence(s, ha.homology_reps, hb.homology_reps,
                                               hd.homology_reps);
  const HomologyData hles = compute_homology(les);
  bool exact = true;
  for (int b : hles.betti) exact = exact && b == 0;

  json out = json::object();
  InstanceFile f;
  f.complex = les;
  out["les"] = instance_to_json(f);
  out["exact"] = exact;
  if (exact) {
    BasisFamily empty_h;
    for (int k = 0; k <= les.n; ++k) {
      empty_h.push_back(Matrix(static_cast<std::size_t>(les.dim(k)), 0));
    }
    out["torsion"] = rat_str(torsion(les, standard_bases(les), empty_h).value);
  }
  printer.emit(out);
  return exact ? kExitOk : kExitViolation;
}

struct GenOptions {
  std::uint64_t seed = 0;
  int n = 2;
  int max_dim = 4;
  int entry_bound = 5;
  std::string kind = "mixed";
  std::vector<int> betti;
};

GenConfig to_config(const GenOptions& opt) {
  GenConfig cfg;
  cfg.seed = opt.seed;
  cfg.n = opt.n;
  cfg.max_dim = opt.max_dim;
  cfg.entry_bound = opt.entry_bound;
  if (!opt.betti.empty()) cfg.betti_targets = opt.betti;
  return cfg;
}

// gen writes the bare instance file (no report wrapper) so identical seeds
// produce byte-identical files fit for piping into the other commands.
int run_gen(const GenOptions& opt) {
  const GenConfig cfg = to_config(opt);
  if (opt.kind == "chain") {
    const GeneratedComplex g = gen_chain_complex(cfg);
    const HomologyData h = compute_homology(g.complex);
    InstanceFile f;
    f.complex = g.complex;
    f.chain_bases = g.chain_bases;
    f.homology_bases = h.homology_reps;
    std::cout << canonical_dump(instance_to_json(f)) << "\n";
    return kExitOk;
  }
  if (opt.kind == "ses") {
    const GeneratedSes g = gen_ses(cfg);
    std::cout << canonical_dump(ses_to_json(g.ses)) << "\n";
    return kExitOk;
  }
  SymplecticKind kind;
  if (opt.kind == "dzero") {
    kind = SymplecticKind::dzero;
  } else if (opt.kind == "exact") {
    kind = SymplecticKind::exact;
  } else if (opt.kind == "mixed") {
    kind = SymplecticKind::mixed;
  } else {
    std::cerr << "gen: unknown kind '" << opt.kind << "'\n";
    return kExitUsage;
  }
  const SymplecticComplex s = gen_symplectic(cfg, kind);
  InstanceFile f;
  f.complex = s.base;
  f.pairings = s.pairings;
  std::cout << canonical_dump(instance_to_json(f)) << "\n";
  return kExitOk;
}

json outcome_json(const VerifyOutcome& o) {
  json j = json::object();
  j["seed"] = o.seed;
  j["lhs"] = rat_str(o.lhs);
  j["rhs"] = rat_str(o.rhs);
  j["equal"] = o.equal;
  return j;
}

int run_verify(const std::string& path, bool use_gen, const GenOptions& opt, bool probe,
               int batch, int threads, ReportPrinter& printer) {
  if (batch > 1) {
    if (!use_gen) {
      std::cerr << "verify: --batch requires --gen\n";
      return kExitUsage;
    }
    SymplecticKind kind = opt.kind == "dzero"   ? SymplecticKind::dzero
                          : opt.kind == "exact" ? SymplecticKind::exact
                                                : SymplecticKind::mixed;
    const auto outcomes = verify_batch(to_config(opt), kind, batch, threads);
    json arr = json::array();
    bool all_equal = true;
    for (const auto& o : outcomes) {
      arr.push_back(outcome_json(o));
      all_equal = all_equal && o.equal;
    }
    json out = json::object();
    out["instances"] = arr;
    out["all_equal"] = all_equal;
    printer.emit(out);
    return all_equal ? kExitOk : kExitViolation;
  }

  SymplecticComplex s;
  std::optional<BasisFamily> homology_bases;
  std::optional<BasisFamily> chain_bases;
  if (use_gen) {
    SymplecticKind kind = opt.kind == "dzero"   ? SymplecticKind::dzero
                          : opt.kind == "exact" ? SymplecticKind::exact
                                                : SymplecticKind::mixed;
    s = gen_symplectic(to_config(opt), kind);
  } else {
    const InstanceFile file = load_instance(path, printer);
    if (!file.is_symplectic()) {
      std::cerr << "verify: file does not contain a symplectic payload\n";
      return kExitUsage;
    }
    s = file.symplectic();
    homology_bases = file.homology_bases;
    chain_bases = file.chain_bases;
  }
  if (auto v = validate_symplectic(s)) {
    printer.emit(violation_json(*v));
    return kExitViolation;
  }
  const HomologyData h = compute_homology(s.base);
  const BasisFamily hom = homology_bases ? *homology_bases : h.homology_reps;
  const MainTheoremReport report = verify_main_theorem(s, hom);
  json out = json::object();
  out["lhs"] = rat_str(report.lhs);
  out["rhs"] = rat_str(report.rhs);
  out["equal"] = report.equal;
  json factors = json::array();
  for (const DegreeFactor& f : report.factors) {
    json fj = json::object();
    fj["degree"] = f.degree;
    fj["applied"] = rat_str(f.applied);
    factors.push_back(fj);
  }
  out["factors"] = factors;
  if (probe) {
    const CompatibleBasis compat = make_omega_compatible_bases(s);
    const BasisFamily probe_bases = chain_bases ? *chain_bases : standard_bases(s.base);
    out["probe_factor"] = rat_str(arbitrary_basis_probe(s, compat, probe_bases));
  }
  printer.emit(out);
  return report.equal ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Reidemeister torsion of based and symplectic chain complexes"};
  app.require_subcommand(1);

  std::string format = "json";
  app.add_option("--format", format)->check(CLI::IsMember({"json"}));

  std::string path;
  GenOptions gen_opt;
  bool probe = false;
  int batch = 1;
  int threads = default_batch_threads();
  bool serial = false;

  auto add_gen_flags = [&](CLI::App* cmd, bool with_kind) {
    cmd->add_option("--seed", gen_opt.seed);
    cmd->add_option("--n", gen_opt.n);
    cmd->add_option("--max-dim", gen_opt.max_dim);
    cmd->add_option("--entry-bound", gen_opt.entry_bound);
    cmd->add_option("--betti", gen_opt.betti)->delimiter(',');
    if (with_kind) {
      cmd->add_option("--kind", gen_opt.kind)
          ->check(CLI::IsMember({"chain", "dzero", "exact", "mixed", "ses"}));
    }
  };

  CLI::App* check = app.add_subcommand("check", "validate an instance file");
  check->add_option("path", path)->required();
  CLI::App* homology = app.add_subcommand("homology", "homology bases and betti numbers");
  homology->add_option("path", path)->required();
  CLI::App* torsion_cmd = app.add_subcommand("torsion", "torsion of a based complex");
  torsion_cmd->add_option("path", path)->required();
  CLI::App* split = app.add_subcommand("split", "exact/d-zero splitting");
  split->add_option("path", path)->required();
  CLI::App* pfaff = app.add_subcommand("pfaffian", "pfaffian of a skew matrix");
  pfaff->add_option("path", path)->required();
  CLI::App* snake = app.add_subcommand("snake", "long exact sequence of a SES file");
  snake->add_option("path", path)->required();
  CLI::App* gen = app.add_subcommand("gen", "generate a seeded instance");
  add_gen_flags(gen, true);
  CLI::App* verify = app.add_subcommand("verify", "check the pairing theorem on an instance");
  verify->add_option("path", path);
  bool use_gen = false;
  verify->add_flag("--gen", use_gen, "generate the instance instead of reading a file");
  add_gen_flags(verify, true);
  verify->add_flag("--probe", probe, "report the arbitrary-basis discrepancy factor");
  verify->add_option("--batch", batch, "verify this many consecutive seeds");
  verify->add_option("--threads", threads, "worker threads for --batch");
  verify->add_flag("--serial", serial, "force the serial reference path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  std::string command;
  for (int i = 0; i < argc; ++i) {
    if (i) command += ' ';
    command += argv[i];
  }
  ReportPrinter printer{command, ""};

  try {
    if (check->parsed()) return run_check(path, printer);
    if (homology->parsed()) return run_homology(path, printer);
    if (torsion_cmd->parsed()) return run_torsion(path, printer);
    if (split->parsed()) return run_split(path, printer);
    if (pfaff->parsed()) return run_pfaffian(path, printer);
    if (snake->parsed()) return run_snake(path, printer);
    if (gen->parsed()) return run_gen(gen_opt);
    if (verify->parsed()) {
      if (!use_gen && path.empty()) {
        std::cerr << "verify: provide a path or --gen\n";
        return kExitUsage;
      }
      return run_verify(path, use_gen, gen_opt, probe, batch, serial ? 1 : threads,
                        printer);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  } catch (const std::logic_error& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitUsage;
}
