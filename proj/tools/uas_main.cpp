#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "uas/bounds.hpp"
#include "uas/builder.hpp"
#include "uas/complexity.hpp"
#include "uas/errors.hpp"
#include "uas/json_io.hpp"
#include "uas/lp.hpp"
#include "uas/scheme.hpp"

using nlohmann::json;

namespace {

// Exit codes: 0 success, 2 validation failure, 3 cap exceeded, 4 I/O.
constexpr int kExitValidation = 2;
constexpr int kExitCap = 3;
constexpr int kExitIo = 4;

// Relative output paths land in $UAS_OUTPUT_DIR when it is set.
std::string resolve_out(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* dir = std::getenv("UAS_OUTPUT_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  std::string out = dir;
  if (out.back() != '/') out += '/';
  return out + path;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  uas::write_text_file(resolve_out(out_path), text);
}

int theorem7_k(int n) {
  int k = 1;
  while (((std::uint64_t{1} << k) - 1) < static_cast<std::uint64_t>(n)) ++k;
  return k;
}

struct TableOptions {
  std::int64_t n_max = 10;
  std::string out;
  bool profile = false;
};

int cmd_table(const TableOptions& opt) {
  if (opt.n_max < 2) throw uas::ValidationError("table: --n-max must be at least 2");
  if (opt.n_max > uas::kTableMaxN) throw uas::CapError("table: --n-max beyond 10^6");
  std::string csv = "n,max,max_decimal,argmax,ne_margin,lower_bound\n";
  const int exact_cap = static_cast<int>(std::min<std::int64_t>(opt.n_max, uas::kExactSigmaMax));
  const int fraction_cap = 1000;  // exact fraction strings stay readable up to here
  uas::HarmonicTable table(exact_cap);
  const uas::RationalBracket& inv_e = uas::inv_e_bracket();

  for (int n = 2; n <= exact_cap; ++n) {
    uas::SigmaResult s = uas::sigma_upper(n, table);
    uas::Rational margin = inv_e.lo * n + uas::rat(1, 2) - s.max_value;
    csv += std::to_string(n) + ",";
    csv += n <= fraction_cap ? uas::to_fraction_string(s.max_value) : "";
    char dec[64];
    std::snprintf(dec, sizeof dec, ",%.12g,%d,%.9g,", uas::to_double(s.max_value), s.argmax,
                  uas::to_double(margin));
    csv += dec;
    csv += std::to_string(n) + "/" + std::to_string(theorem7_k(n));
    csv += "\n";
  }
  if (opt.n_max > exact_cap) {
    // Incremental float sweep: maintain the window [left, n) whose
    // reciprocal sum first reaches one.
    double inv_e_d = uas::to_double(inv_e.lo);
    std::int64_t left = exact_cap - uas::sigma_upper(exact_cap, table).argmax;
    double sum = 0.0;
    for (std::int64_t j = left; j < exact_cap; ++j) sum += 1.0 / static_cast<double>(j);
    for (std::int64_t n = exact_cap + 1; n <= opt.n_max; ++n) {
      sum += 1.0 / static_cast<double>(n - 1);
      while (sum - 1.0 / static_cast<double>(left) >= 1.0) {
        sum -= 1.0 / static_cast<double>(left);
        ++left;
      }
      double max_f = static_cast<double>(n - left) * sum;
      double margin = inv_e_d * static_cast<double>(n) + 0.5 - max_f;
      char line[128];
      std::snprintf(line, sizeof line, "%lld,,%.12g,%lld,%.9g,%lld/%d\n",
                    static_cast<long long>(n), max_f, static_cast<long long>(n - left), margin,
                    static_cast<long long>(n), theorem7_k(static_cast<int>(n)));
      csv += line;
    }
  }
  if (opt.profile) {
    int cap = static_cast<int>(std::min<std::int64_t>(opt.n_max, fraction_cap));
    for (int n = 2; n <= cap; ++n)
      for (int i = 1; i < n; ++i) {
        uas::Rational f = uas::f_closed(n, i, table);
        char line[128];
        std::snprintf(line, sizeof line, "profile,%d,%d,%s,%.12g\n", n, i,
                      uas::to_fraction_string(f).c_str(), uas::to_double(f));
        csv += line;
      }
  }
  emit(csv, opt.out);
  return 0;
}

struct BuildOptions {
  int n = 3;
  std::string out;
  std::string trace_out;
  int cap = uas::kBuildCap;
};

int cmd_build(const BuildOptions& opt) {
  if (opt.cap > uas::kBuildCap)
    throw uas::CapError("build: cap may only be lowered below " + std::to_string(uas::kBuildCap));
  if (opt.n > opt.cap) throw uas::CapError("build: n exceeds the configured cap");
  uas::BuildResult result = uas::build(opt.n);
  if (!opt.out.empty()) uas::save_scheme(result.scheme, resolve_out(opt.out));

  std::string trace = "class i,participants,share_bits,share_bits/secret\n";
  for (int i = 1; i < opt.n; ++i) {
    long count = 1;
    for (int t = 0; t < i; ++t) count = count * (opt.n - t) / (t + 1);
    uas::Rational ratio(static_cast<long>(result.trace.class_bits[i - 1]),
                        result.trace.secret_dim);
    ratio.canonicalize();
    trace += std::to_string(i) + "," + std::to_string(count) + "," +
             std::to_string(result.trace.class_bits[i - 1]) + "," +
             uas::to_fraction_string(ratio) + "\n";
  }
  trace += "secret_bits," + std::to_string(result.trace.secret_dim) + "\n";
  trace += "seed_bits," + std::to_string(result.scheme.seed_dim) + "\n";
  trace += "complexity," + uas::to_fraction_string(result.scheme.complexity()) + "\n";
  trace += "seed_blocks," + std::to_string(result.trace.manifest.size()) + "\n";
  emit(trace, opt.trace_out);
  return 0;
}

struct VerifyOptions {
  std::string scheme_path;
  std::string structure_path;
  int universal_n = 0;
  bool brute = false;
  bool strict = false;
};

int cmd_verify(const VerifyOptions& opt) {
  uas::LinearScheme scheme = uas::load_scheme(opt.scheme_path);
  uas::AccessStructure structure =
      opt.universal_n > 0 ? uas::universal_normalized(opt.universal_n)
                          : uas::load_structure(opt.structure_path, opt.strict);
  uas::PerfectnessReport rep = opt.brute ? uas::brute_force_verify(scheme, structure)
                                         : uas::verify_perfect(scheme, structure);
  json j;
  j["schema_version"] = uas::kSchemaVersion;
  j["correct"] = rep.correct;
  j["private"] = rep.is_private;
  j["method"] = rep.method == uas::VerifyMethod::kRankBased ? "rank-based" : "brute-force";
  if (rep.failing_set) j["failing_set"] = uas::subset_to_indices(*rep.failing_set);
  std::cout << j.dump(2) << "\n";
  return rep.perfect() ? 0 : kExitValidation;
}

struct DealOptions {
  std::string scheme_path;
  std::string secret_bits;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_deal(const DealOptions& opt) {
  uas::LinearScheme scheme = uas::load_scheme(opt.scheme_path);
  uas::ShareTranscript t;
  t.secret = uas::BitVec::from_string(opt.secret_bits);
  t.secret_dim = t.secret.size();
  uas::BitRng rng(opt.seed);
  t.shares = uas::deal(scheme, t.secret, rng);
  std::string text = uas::transcript_to_json(t);
  emit(text, opt.out);
  return 0;
}

struct ReconstructOptions {
  std::string scheme_path;
  std::string transcript_path;
  std::string subset_csv;  // comma-separated participant indices
  std::string public_bits;
};

int cmd_reconstruct(const ReconstructOptions& opt) {
  uas::LinearScheme scheme = uas::load_scheme(opt.scheme_path);
  uas::ShareTranscript t = uas::load_transcript(opt.transcript_path);
  uas::Subset subset = 0;
  if (opt.subset_csv == "all") {
    subset = uas::subset_universe(scheme.participant_count());
  } else {
    std::size_t at = 0;
    while (at < opt.subset_csv.size()) {
      std::size_t comma = opt.subset_csv.find(',', at);
      if (comma == std::string::npos) comma = opt.subset_csv.size();
      int p = std::stoi(opt.subset_csv.substr(at, comma - at));
      if (p < 0 || p >= scheme.participant_count())
        throw uas::ValidationError("reconstruct: participant index out of range");
      subset |= uas::subset_bit(p);
      at = comma + 1;
    }
  }
  if (static_cast<int>(t.shares.size()) != scheme.participant_count())
    throw uas::ValidationError("reconstruct: transcript participant count mismatch");
  std::vector<uas::BitVec> shares;
  for (int p : uas::subset_to_indices(subset)) shares.push_back(t.shares[p]);
  uas::BitVec public_values(scheme.public_rows.rows());
  if (!opt.public_bits.empty()) public_values = uas::BitVec::from_string(opt.public_bits);
  uas::BitVec secret = uas::reconstruct(scheme, subset, shares, public_values);
  std::cout << secret.to_string() << "\n";
  return 0;
}

struct LpOptions {
  int universal_n = 0;
  std::string structure_path;
  bool reduced = false;
  bool solve = false;
  std::string export_path;
  std::string check_solution_path;
};

int cmd_lp(const LpOptions& opt) {
  uas::AccessStructure structure =
      opt.universal_n > 0 ? uas::universal_normalized(opt.universal_n)
                          : uas::load_structure(opt.structure_path);
  uas::LPModel model = uas::entropy_lp(structure);
  model.name = opt.universal_n > 0 ? "universal-" + std::to_string(opt.universal_n)
                                   : opt.structure_path;
  if (opt.reduced) model = uas::symmetry_reduce(model, structure);
  json j;
  j["schema_version"] = uas::kSchemaVersion;
  j["structure"] = model.name;
  j["variables"] = model.var_count();
  j["rows"] = model.rows.size();
  j["reduced"] = model.reduced;
  if (!opt.export_path.empty()) {
    uas::export_lp(model, resolve_out(opt.export_path));
    j["exported"] = opt.export_path;
  }
  if (opt.solve) {
    uas::LPSolution sol = uas::solve_exact(model);
    j["lp_bound"] = uas::to_fraction_string(sol.optimum);
    j["lp_bound_decimal"] = uas::to_double(sol.optimum);
  }
  if (!opt.check_solution_path.empty()) {
    if (opt.export_path.empty())
      throw uas::ValidationError("lp: --check-solution needs --export in the same run");
    uas::ParsedLP parsed = uas::parse_lp_file(resolve_out(opt.export_path));
    json sol = json::parse(uas::read_text_file(opt.check_solution_path), nullptr, false);
    if (sol.is_discarded() || !sol.contains("values"))
      throw uas::ValidationError("lp: solution file needs a 'values' object");
    std::map<std::string, double> values;
    for (const auto& [key, val] : sol["values"].items()) values[key] = val.get<double>();
    double objective = uas::validate_external_solution(parsed, values, 1e-6);
    // report the conservative side of a float lower bound
    j["external_objective"] = objective;
    j["external_bound_conservative"] = objective - 1e-6;
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

struct CertOptions {
  int theorem7_n = 0;
  std::string structure_path;
  std::string certificate_path;
  std::string out;
  std::string structure_out;
};

int cmd_cert(const CertOptions& opt) {
  uas::AccessStructure structure(1, {uas::subset_bit(0)});
  uas::Certificate cert;
  std::string id;
  if (opt.theorem7_n > 0) {
    uas::Theorem7Result t = uas::theorem7_structure(opt.theorem7_n);
    structure = t.structure;
    cert = t.certificate;
    id = "theorem7(" + std::to_string(opt.theorem7_n) + ")";
    if (!opt.out.empty()) uas::save_certificate(cert, resolve_out(opt.out));
    if (!opt.structure_out.empty()) uas::save_structure(structure, resolve_out(opt.structure_out));
  } else {
    structure = uas::load_structure(opt.structure_path);
    cert = uas::load_certificate(opt.certificate_path);
    id = opt.structure_path;
  }
  json j;
  j["schema_version"] = uas::kSchemaVersion;
  j["structure"] = id;
  try {
    int n = uas::check_certificate(structure, cert);
    uas::Rational bound = uas::certificate_bound(structure, cert);
    j["valid"] = true;
    j["n"] = n;
    j["certificate_bound"] = uas::to_fraction_string(bound);
    j["certificate_bound_decimal"] = uas::to_double(bound);
  } catch (const uas::InvalidCertificate& e) {
    const char* names[] = {"b-sequence", "containment", "independence", "qualification"};
    j["valid"] = false;
    j["violated_condition"] = names[static_cast<int>(e.condition)];
    j["violated_index"] = e.index;
    j["detail"] = e.what();
    std::cout << j.dump(2) << "\n";
    return kExitValidation;
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

struct LowerBoundOptions {
  int n = 2;
  bool no_lp = false;
};

int cmd_lower_bound(const LowerBoundOptions& opt) {
  uas::BoundReport report = uas::universal_lower_bound(opt.n, !opt.no_lp);
  std::cout << uas::bound_report_to_json(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"universal access structures: schemes, share-size profiles, bounds"};
  app.require_subcommand(1);

  TableOptions table_opt;
  auto* table = app.add_subcommand("table", "share-size profile table as CSV");
  table->add_option("--n-max", table_opt.n_max, "largest n")->required();
  table->add_option("--out", table_opt.out, "output file (default stdout)");
  table->add_flag("--profile", table_opt.profile, "also emit per-class rows");

  BuildOptions build_opt;
  auto* build_cmd = app.add_subcommand("build", "construct the recursive scheme");
  build_cmd->add_option("--n", build_opt.n, "number of minimal sets")->required();
  build_cmd->add_option("--out", build_opt.out, "scheme file");
  build_cmd->add_option("--trace", build_opt.trace_out, "trace table file (default stdout)");
  build_cmd->add_option("--cap-build", build_opt.cap, "lower the build cap");

  VerifyOptions verify_opt;
  auto* verify_cmd = app.add_subcommand("verify", "check a scheme against a structure");
  verify_cmd->add_option("--scheme", verify_opt.scheme_path, "scheme file")->required();
  verify_cmd->add_option("--structure", verify_opt.structure_path, "structure file");
  verify_cmd->add_option("--universal", verify_opt.universal_n, "use the normalized structure");
  verify_cmd->add_flag("--brute-force", verify_opt.brute, "exhaustive seed enumeration");
  verify_cmd->add_flag("--strict", verify_opt.strict, "reject non-canonical structure files");

  DealOptions deal_opt;
  auto* deal_cmd = app.add_subcommand("deal", "deal shares for a secret");
  deal_cmd->add_option("--scheme", deal_opt.scheme_path, "scheme file")->required();
  deal_cmd->add_option("--secret", deal_opt.secret_bits, "secret as a 0/1 string")->required();
  deal_cmd->add_option("--seed", deal_opt.seed, "rng seed (fully determines the deal)");
  deal_cmd->add_option("--out", deal_opt.out, "transcript file (default stdout)");

  ReconstructOptions rec_opt;
  auto* rec_cmd = app.add_subcommand("reconstruct", "recover the secret from a transcript");
  rec_cmd->add_option("--scheme", rec_opt.scheme_path, "scheme file")->required();
  rec_cmd->add_option("--transcript", rec_opt.transcript_path, "transcript file")->required();
  rec_cmd->add_option("--subset", rec_opt.subset_csv, "participants, e.g. 0,2,5 or 'all'")
      ->required();
  rec_cmd->add_option("--public", rec_opt.public_bits, "published bits, when the scheme has any");

  LpOptions lp_opt;
  auto* lp_cmd = app.add_subcommand("lp", "entropy-method linear program");
  lp_cmd->add_option("--universal", lp_opt.universal_n, "normalized structure on n sets");
  lp_cmd->add_option("--structure", lp_opt.structure_path, "structure file");
  lp_cmd->add_flag("--reduced", lp_opt.reduced, "collapse variables by symmetry");
  lp_cmd->add_flag("--solve", lp_opt.solve, "exact simplex solve");
  lp_cmd->add_option("--export", lp_opt.export_path, "write an LP interchange file");
  lp_cmd->add_option("--check-solution", lp_opt.check_solution_path,
                     "validate an external solution JSON against the exported file");

  CertOptions cert_opt;
  auto* cert_cmd = app.add_subcommand("cert", "independent-sequence certificates");
  cert_cmd->add_option("--theorem7", cert_opt.theorem7_n, "generate the lower-bound structure");
  cert_cmd->add_option("--structure", cert_opt.structure_path, "structure file");
  cert_cmd->add_option("--certificate", cert_opt.certificate_path, "certificate file");
  cert_cmd->add_option("--out", cert_opt.out, "write the certificate JSON");
  cert_cmd->add_option("--structure-out", cert_opt.structure_out, "write the structure JSON");

  LowerBoundOptions lb_opt;
  auto* lb_cmd = app.add_subcommand("lower-bound", "best lower bound for the universal structure");
  lb_cmd->add_option("--n", lb_opt.n, "number of minimal sets")->required();
  lb_cmd->add_flag("--no-lp", lb_opt.no_lp, "skip the LP even when it fits the cap");

  CLI11_PARSE(app, argc, argv);

  try {
    if (table->parsed()) return cmd_table(table_opt);
    if (build_cmd->parsed()) return cmd_build(build_opt);
    if (verify_cmd->parsed()) return cmd_verify(verify_opt);
    if (deal_cmd->parsed()) return cmd_deal(deal_opt);
    if (rec_cmd->parsed()) return cmd_reconstruct(rec_opt);
    if (lp_cmd->parsed()) return cmd_lp(lp_opt);
    if (cert_cmd->parsed()) return cmd_cert(cert_opt);
    if (lb_cmd->parsed()) return cmd_lower_bound(lb_opt);
  } catch (const uas::CapError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const uas::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const uas::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
