#include "biunitary/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "biunitary/families.hpp"
#include "biunitary/hadamard.hpp"
#include "biunitary/matrix_io.hpp"
#include "biunitary/search.hpp"
#include "biunitary/serialize.hpp"
#include "biunitary/spancert.hpp"

namespace biunitary {

namespace {

struct Options {
  NumericPolicy policy;

  // gen
  std::string kind;
  int n = 0;
  double lambda_angle = 0.0;
  std::string a_value;
  std::string row_file;
  std::string format = "cart";

  // file commands
  std::string input;
  std::string mode = "commuting";
  std::string spec_file;
  double param = 0.0;
  bool dephase_output = false;
  bool format_given = false;

  // search
  std::string masks;
  std::uint64_t seed = 0;
  int starts = 1;
  int max_iters = 10000;
  double step0 = 0.1;
  double tol_obj = 1e-10;
  std::string init_file;
  double noise = 0.0;
};

void add_policy_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--tol-entry", o.policy.tol_entry, "entry modulus tolerance");
  cmd->add_option("--tol-unitary", o.policy.tol_unitary, "unitarity residual tolerance");
  cmd->add_option("--rank-cut", o.policy.rank_rel_cut, "relative singular value cut");
  cmd->add_option("--cert-gap", o.policy.cert_gap_min, "minimum singular gap to certify");
}

Complex parse_complex(const std::string& s) {
  std::istringstream in(s);
  double re = 0, im = 0;
  char comma = 0;
  in >> re >> comma >> im;
  if (!in || comma != ',' || !(in >> std::ws).eof()) throw Error("expected 're,im', got '" + s + "'");
  return {re, im};
}

CirculantRow read_row_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  CirculantRow row;
  for (std::string tok; in >> tok;) {
    if (tok.starts_with("#")) {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    row.row.push_back(parse_complex(tok));
  }
  if (row.row.empty()) throw Error(path + ": empty circulant row");
  return row;
}

std::vector<DiagProjection> parse_masks(const std::string& spec, std::size_t n) {
  std::vector<DiagProjection> out;
  std::stringstream groups(spec);
  for (std::string group; std::getline(groups, group, ';');) {
    std::vector<int> idx;
    std::stringstream items(group);
    for (std::string item; std::getline(items, item, ',');) {
      if (item.find_first_not_of(" ") == std::string::npos) continue;
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (item.find_first_not_of(" ", used) != std::string::npos) throw Error("bad mask index '" + item + "'");
      idx.push_back(v);
    }
    out.push_back(DiagProjection::from_indices(n, idx));
  }
  if (spec.ends_with(";")) out.push_back(DiagProjection::zeros(n));
  if (out.size() != 4) throw Error("--masks needs four ';'-separated index lists p1;p2;p3;p4");
  return out;
}

int cmd_gen(const Options& o, std::ostream& out) {
  const auto format = parse_format(o.format);
  ComplexMatrix u;
  if (o.kind == "fourier") {
    if (o.n < 1) throw Error("order must be >= 1");
    u = fourier(static_cast<std::size_t>(o.n));
  } else if (o.kind == "petrescu") {
    u = petrescu(std::polar(1.0, o.lambda_angle), o.policy);
  } else if (o.kind == "bjorck7") {
    u = bjorck7();
  } else if (o.kind == "qr-circulant") {
    if (o.n < 1) throw Error("order must be >= 1");
    const auto n = static_cast<std::size_t>(o.n);
    if (o.a_value.empty() || o.a_value == "solve") {
      u = qr_circulant_solve(n, o.policy);
    } else {
      u = qr_circulant(n, parse_complex(o.a_value));
    }
  } else if (o.kind == "circulant") {
    if (o.row_file.empty()) throw Error("gen circulant needs --row FILE");
    u = circulant(read_row_file(o.row_file));
  } else {
    throw Error("unknown kind '" + o.kind + "'");
  }
  write_matrix(out, u, format);
  return kExitPositive;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto file = read_matrix_file(o.input);
  const auto verdict = verify_biunitary(file.matrix, o.policy);
  out << to_json(verdict).dump(2) << '\n';
  return verdict.is_biunitary ? kExitPositive : kExitNegative;
}

int cmd_certify(const Options& o, std::ostream& out) {
  const auto file = read_matrix_file(o.input);
  const auto cert = certify_isolation(file.matrix, o.policy);
  out << to_json(cert).dump(2) << '\n';
  return cert.verdict == Verdict::Isolated ? kExitPositive : kExitNegative;
}

int cmd_pairs(const Options& o, std::ostream& out) {
  const auto file = read_matrix_file(o.input);
  Json list = Json::array();
  if (o.mode == "commuting") {
    for (const auto& spec : find_commuting_pairs(file.matrix, o.policy)) list.push_back(to_json(spec, o.input));
  } else if (o.mode == "block") {
    for (const auto& spec : find_block_pairs(file.matrix, o.policy)) list.push_back(to_json(spec, o.input));
  } else {
    throw Error("--mode must be 'commuting' or 'block'");
  }
  out << list.dump(2) << '\n';
  return list.empty() ? kExitNegative : kExitPositive;
}

int cmd_family(const Options& o, std::ostream& out) {
  const auto file = read_matrix_file(o.input);
  std::ifstream spec_in(o.spec_file);
  if (!spec_in) throw Error("cannot open '" + o.spec_file + "'");
  Json j;
  try {
    j = Json::parse(spec_in);
  } catch (const Json::exception& e) {
    throw Error(o.spec_file + ": " + e.what());
  }
  // `pairs` emits a list; accept either a single spec or a one-element list.
  if (j.is_array()) {
    if (j.size() != 1) throw Error(o.spec_file + ": expected a single family spec");
    j = j.at(0);
  }
  const auto bound = bind_family_spec(parse_family_spec(j), file.matrix);

  ComplexMatrix member;
  if (const auto* pair = std::get_if<CommutingPairSpec>(&bound)) {
    if (!is_certified(*pair, o.policy)) {
      throw Error("spec is not certified (residual " + format_double(pair->residual) + ")");
    }
    member = constr1_family(*pair, o.param, o.policy);
  } else {
    const auto& block = std::get<BlockPairSpec>(bound);
    if (!is_certified(block, o.policy)) {
      throw Error("spec is not certified (residual " + format_double(block.residual) + ")");
    }
    member = constr2_family(block, std::polar(1.0, o.param), o.policy);
  }
  if (o.dephase_output) member = dephase(member, o.policy);

  const auto format = o.format_given ? parse_format(o.format) : file.format;
  const bool unchanged = member.rows() == file.matrix.rows() && member == file.matrix;
  if (unchanged && format == MatrixFormat::Phase && file.format == MatrixFormat::Phase) {
    write_phase(out, file.phases);
  } else {
    write_matrix(out, member, format);
  }
  return kExitPositive;
}

int cmd_search(const Options& o, std::ostream& out) {
  RealMatrix init;
  std::size_t n = 0;
  if (!o.init_file.empty()) {
    const auto file = read_matrix_file(o.init_file);
    init = file.format == MatrixFormat::Phase ? file.phases : matrix_to_phases(file.matrix);
    n = static_cast<std::size_t>(init.rows());
    if (o.n != 0 && static_cast<std::size_t>(o.n) != n) throw Error("--n does not match --init");
  } else {
    if (o.n < 1) throw Error("order must be >= 1");
    n = static_cast<std::size_t>(o.n);
  }
  if (o.starts < 1) throw Error("--starts must be >= 1");
  if (!(o.noise >= 0.0)) throw Error("--noise must be >= 0");
  const auto masks = parse_masks(o.masks, n);

  SearchConfig base;
  base.n = n;
  base.p1 = masks[0];
  base.p2 = masks[1];
  base.p3 = masks[2];
  base.p4 = masks[3];
  base.max_iters = o.max_iters;
  base.step0 = o.step0;
  base.tol_obj = o.tol_obj;
  base.validate();

  std::vector<std::future<SearchResult>> runs;
  for (int k = 0; k < o.starts; ++k) {
    SearchConfig cfg = base;
    cfg.rng_seed = o.seed + static_cast<std::uint64_t>(k);
    if (init.size() != 0) {
      std::mt19937_64 rng(cfg.rng_seed);
      std::uniform_real_distribution<double> jitter(-o.noise, o.noise);
      cfg.seed_phases = init.unaryExpr([&](double t) { return o.noise > 0.0 ? t + jitter(rng) : t; });
    }
    runs.push_back(std::async(std::launch::async, [cfg] { return local_search(cfg); }));
  }
  std::optional<SearchResult> best;
  for (auto& r : runs) {
    auto res = r.get();
    if (!best || res.objective < best->objective) best = std::move(res);
  }
  out << to_json(*best).dump(2) << '\n';
  return best->converged ? kExitPositive : kExitNegative;
}

int cmd_repro(const Options& o, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const ComplexMatrix u = bjorck7();
  const auto verdict = verify_biunitary(u, o.policy);
  const ComplexMatrix a = span_matrix(u);
  const RankResult rank = numerical_rank(a, o.policy);
  const auto minor = minor_report(u, o.policy);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const bool ok = verdict.is_biunitary && rank.rank == 36 && rank.gap >= o.policy.cert_gap_min &&
                  minor.nonsingular;

  err << "order-7 quadratic-residue circulant, a = -3/4 + i sqrt(7)/4\n"
      << "  biunitary:         " << (verdict.is_biunitary ? "yes" : "no") << '\n'
      << "  rank(A), 49x49:    " << rank.rank << " (expected 36), gap " << rank.gap << '\n'
      << "  minor M:           " << minor.rank.singular_values.size() << "x"
      << minor.rank.singular_values.size() << ", rank " << minor.rank.rank << '\n'
      << "  |det M|:           " << minor.abs_det << '\n'
      << "  elapsed:           " << seconds << " s\n"
      << "  result:            " << (ok ? "span condition holds" : "FAILED") << '\n';

  Json j;
  j["n"] = 7;
  j["a"] = {bjorck7_value().real(), bjorck7_value().imag()};
  j["is_biunitary"] = verdict.is_biunitary;
  j["rank"] = rank.rank;
  j["expected"] = 36;
  j["gap"] = std::isfinite(rank.gap) ? Json(rank.gap) : Json(nullptr);
  j["minor_size"] = minor.rank.singular_values.size();
  j["minor_rank"] = minor.rank.rank;
  j["minor_gap"] = std::isfinite(minor.rank.gap) ? Json(minor.rank.gap) : Json(nullptr);
  j["abs_det"] = minor.abs_det;
  j["ok"] = ok;
  j["policy"] = to_json(o.policy);
  out << j.dump(2) << '\n';
  return ok ? kExitPositive : kExitNegative;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Construct, verify and analyze biunitary (complex Hadamard) matrices", "biunitary"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen", "write a built-in biunitary");
  gen->add_option("kind", o.kind, "fourier | petrescu | bjorck7 | qr-circulant | circulant")->required();
  gen->add_option("--n", o.n, "order");
  gen->add_option("--lambda-angle", o.lambda_angle, "family parameter angle (radians)");
  gen->add_option("--a", o.a_value, "off-pattern value 're,im' or 'solve'");
  gen->add_option("--row", o.row_file, "file with the first row, 're,im' tokens");
  gen->add_option("--format", o.format, "cart | phase");
  add_policy_flags(gen, o);

  auto* verify = app.add_subcommand("verify", "check biunitarity");
  verify->add_option("file", o.input)->required();
  add_policy_flags(verify, o);

  auto* certify = app.add_subcommand("certify", "span-condition isolation certificate");
  certify->add_option("file", o.input)->required();
  add_policy_flags(certify, o);

  auto* pairs = app.add_subcommand("pairs", "find family witnesses");
  pairs->add_option("file", o.input)->required();
  pairs->add_option("--mode", o.mode, "commuting | block");
  add_policy_flags(pairs, o);

  auto* family = app.add_subcommand("family", "emit a family member");
  family->add_option("file", o.input)->required();
  family->add_option("--spec", o.spec_file, "family spec JSON")->required();
  family->add_option("--param", o.param, "t (commuting pair) or angle of lambda (block pair)")->required();
  family->add_option("--format", o.format, "cart | phase (default: input format)")
      ->each([&o](const std::string&) { o.format_given = true; });
  family->add_flag("--dephase", o.dephase_output, "dephase the output");
  add_policy_flags(family, o);

  auto* search = app.add_subcommand("search", "local search for block-pair base matrices");
  search->add_option("--n", o.n, "order");
  search->add_option("--masks", o.masks, "p1;p2;p3;p4 as comma-separated index lists")->required();
  search->add_option("--seed", o.seed, "rng seed");
  search->add_option("--starts", o.starts, "number of independent starts");
  search->add_option("--max-iters", o.max_iters, "iteration cap per start");
  search->add_option("--step0", o.step0, "initial step");
  search->add_option("--tol-obj", o.tol_obj, "convergence threshold");
  search->add_option("--init", o.init_file, "starting matrix file");
  search->add_option("--noise", o.noise, "uniform phase noise added to --init");

  auto* repro = app.add_subcommand("repro", "rank and minor determinant of the order-7 circulant");
  add_policy_flags(repro, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    o.policy.validate();
    if (gen->parsed()) return cmd_gen(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (certify->parsed()) return cmd_certify(o, out);
    if (pairs->parsed()) return cmd_pairs(o, out);
    if (family->parsed()) return cmd_family(o, out);
    if (search->parsed()) return cmd_search(o, out);
    if (repro->parsed()) return cmd_repro(o, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace biunitary
