#include "qes/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qes/diracmodel.hpp"
#include "qes/osp22.hpp"
#include "qes/record.hpp"

namespace qes::cli {

namespace {

using Json = nlohmann::ordered_json;
using osp::EntryKind;
using osp::RelationReport;

constexpr double kResidualTol = 1e-8;
constexpr double kDerivativeTol = 1e-6;
constexpr double kIdentityTol = 1e-12;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    write_atomically(path, content);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RecordError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------- verify-algebra

struct Section {
  std::string title;
  RelationReport report;
};

const char* kind_name(EntryKind k) {
  switch (k) {
    case EntryKind::relation:
      return "relation";
    case EntryKind::supplementary:
      return "supplementary";
    case EntryKind::info:
      return "info";
  }
  return "relation";
}

std::string section_summary(const RelationReport& r) {
  std::ostringstream s;
  bool first = true;
  for (EntryKind k : {EntryKind::relation, EntryKind::supplementary, EntryKind::info}) {
    const std::size_t total = r.count(k);
    if (total == 0) continue;
    std::size_t ok = 0;
    for (const auto& e : r.entries) ok += (e.kind == k && e.pass) ? 1 : 0;
    s << (first ? "" : ", ") << kind_name(k) << " " << ok << "/" << total;
    first = false;
  }
  return s.str();
}

std::string render_text(const std::vector<Section>& sections, const VerifyAlgebraOptions& opt, bool pass) {
  std::ostringstream s;
  s << "n = " << (opt.n ? *opt.n : "symbolic") << ", relation set = " << opt.relations << ", mode = " << opt.mode
    << "\n";
  for (const auto& sec : sections) {
    s << "\n" << sec.title << "\n";
    for (const auto& e : sec.report.entries) {
      if (e.kind == EntryKind::info) {
        s << "  INFO  " << e.name << (e.pass ? "" : "  [does not hold]") << "\n";
      } else {
        s << (e.pass ? "  PASS  " : "  FAIL  ") << e.name << "\n";
      }
      if (!e.pass) s << "        lhs: " << e.lhs << "\n";
    }
    s << "  -- " << section_summary(sec.report) << "\n";
  }
  s << "\nresult: " << (pass ? "PASS" : "FAIL") << "\n";
  return s.str();
}

std::string render_json(const std::vector<Section>& sections, const VerifyAlgebraOptions& opt, bool pass) {
  Json doc;
  doc["n"] = opt.n ? *opt.n : "symbolic";
  doc["relation_set"] = opt.relations;
  doc["mode"] = opt.mode;
  Json arr = Json::array();
  for (const auto& sec : sections) {
    Json entries = Json::array();
    for (const auto& e : sec.report.entries) {
      entries.push_back({{"name", e.name}, {"kind", kind_name(e.kind)}, {"pass", e.pass}, {"lhs", e.lhs}});
    }
    arr.push_back({{"title", sec.title}, {"pass", sec.report.pass()}, {"entries", entries}});
  }
  doc["sections"] = arr;
  doc["pass"] = pass;
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------- check

struct CheckRow {
  std::string quantity;
  double value;
  double tol;
  bool pass;
};

double rel_vec(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  double scale = 0.0;
  double diff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
    diff = std::max(diff, std::abs(a[i] - b[i]));
  }
  return scale > 0.0 ? diff / scale : diff;
}

// Max over rows of |Σ rows(j,k) a_k| / Σ scale(j,k) |a_k| for the stored Q.
double stored_kernel_residual(const spectra::KernelSystem& sys, const std::vector<double>& q) {
  if (static_cast<Eigen::Index>(q.size()) != sys.rows.cols()) return INFINITY;
  double worst = 0.0;
  for (Eigen::Index j = 0; j < sys.rows.rows(); ++j) {
    double sum = 0.0;
    double mag = 0.0;
    for (Eigen::Index k = 0; k < sys.rows.cols(); ++k) {
      sum += sys.rows(j, k) * q[static_cast<std::size_t>(k)];
      mag += sys.scale(j, k) * std::abs(q[static_cast<std::size_t>(k)]);
    }
    worst = std::max(worst, mag > 0.0 ? std::abs(sum) / mag : std::abs(sum));
  }
  return worst;
}

void add_row(std::vector<CheckRow>& rows, std::string name, double value, double tol) {
  const bool ok = std::isfinite(value) && value < tol;
  rows.push_back({std::move(name), value, tol, ok});
}

std::vector<CheckRow> check_record(const SolutionRecord& rec, const spectra::PhysicalContext& ctx,
                                   std::vector<std::string>& warnings) {
  using spectra::relative_difference;
  const spectra::SpectralPoint& p = rec.point;
  std::vector<CheckRow> rows;

  const bool shape_ok = p.epsilon == ctx.n && p.epsilonp == ctx.n + 1 &&
                        p.Qcoeffs.size() == static_cast<std::size_t>(ctx.n) + 1 &&
                        p.Pcoeffs.size() == static_cast<std::size_t>(ctx.n) + 2 && p.Pcoeffs.back() != 0.0;
  add_row(rows, "degrees and epsilon", shape_ok ? 0.0 : 1.0, 0.5);
  if (!shape_ok) return rows;

  try {
    const spectra::EnergyPoint ep = spectra::energy_from_x0(ctx, p.x0);
    add_row(rows, "E from x0", relative_difference(ep.E, p.E), kIdentityTol);
    add_row(rows, "lB from x0", relative_difference(ep.lB, p.lB), kIdentityTol);
    add_row(rows, "eB = 1/lB^2", relative_difference(1.0 / (p.lB * p.lB), p.eB), kIdentityTol);
    add_row(rows, "t = (E-m)/(E+m)", relative_difference((p.E - ctx.m) / (p.E + ctx.m), p.t), kIdentityTol);
  } catch (const spectra::PoleError& e) {
    add_row(rows, "E from x0", INFINITY, kIdentityTol);
  }
  add_row(rows, "lB > 0", p.lB > 0.0 ? 0.0 : 1.0, 0.5);
  const spectra::Branch expected_branch = p.E > ctx.m ? spectra::Branch::particle : spectra::Branch::antiparticle;
  add_row(rows, "branch tag", expected_branch == p.branch ? 0.0 : 1.0, 0.5);

  const spectra::QesParams q = spectra::qes_params(ctx, p.x0, p.E, p.lB);
  add_row(rows, "b0, b, c", std::max({relative_difference(q.b0, p.b0), relative_difference(q.b, p.b),
                                       relative_difference(q.c, p.c)}),
          kIdentityTol);

  spectra::Residuals fresh;
  try {
    const spectra::KernelSystem sys = spectra::build_kernel_system(ctx, p.x0, q);
    const spectra::CoefficientSolution sol = spectra::solve_coefficients(sys);
    fresh.kernel_r0 = sol.r0;
    fresh.kernel_r1 = sol.r1;
    fresh.sigma_min = spectra::relative_sigma_min(sys);
    add_row(rows, "kernel residual of stored Q", stored_kernel_residual(sys, p.Qcoeffs), kResidualTol);
  } catch (const std::exception&) {
    fresh.kernel_r0 = fresh.kernel_r1 = fresh.sigma_min = INFINITY;
    add_row(rows, "kernel residual of stored Q", INFINITY, kResidualTol);
  }
  add_row(rows, "kernel_r0", std::abs(fresh.kernel_r0), kResidualTol);
  add_row(rows, "kernel_r1", std::abs(fresh.kernel_r1), kResidualTol);
  add_row(rows, "sigma_min", fresh.sigma_min, kResidualTol);

  const spectra::PReconstruction pr = spectra::reconstruct_p(ctx, p);
  fresh.divis_rem = pr.divis_rem;
  add_row(rows, "divis_rem", pr.divis_rem, kResidualTol);
  add_row(rows, "P matches reconstruction", rel_vec(pr.p, p.Pcoeffs), kResidualTol);

  try {
    const spectra::PrimedParams pp = spectra::primed_params(ctx, p);
    add_row(rows, "x0', b', c'", std::max({relative_difference(pp.x0p, p.x0p), relative_difference(pp.bp, p.bp),
                                            relative_difference(pp.cp, p.cp)}),
            kIdentityTol);
  } catch (const std::domain_error&) {
    add_row(rows, "x0', b', c'", INFINITY, kIdentityTol);
  }
  const auto compat = spectra::compatibility_check(ctx, p);
  add_row(rows, "epsilon' = n+1", compat[0], kIdentityTol);
  add_row(rows, "b'-c' = b-c+x0", compat[1], kIdentityTol);
  add_row(rows, "x0 x0' = (Za)^2/(Gamma+n+1)", compat[2], kIdentityTol);

  const spectra::OdeResiduals ode = spectra::ode_residuals(ctx, p, spectra::kDefaultOdeSamples);
  fresh.ode_Q = ode.ode_Q;
  fresh.ode_P = ode.ode_P;
  add_row(rows, "ode_Q", ode.ode_Q, kResidualTol);
  add_row(rows, "ode_P", ode.ode_P, kResidualTol);

  try {
    const dirac::DiracCheck d = dirac::dirac_residual(ctx, p, dirac::default_grid(p));
    fresh.dirac_max = d.dirac_max;
    add_row(rows, "dirac_max", d.dirac_max, kResidualTol);
    add_row(rows, "derivative vs finite difference", d.fd_max, kDerivativeTol);
  } catch (const std::exception&) {
    fresh.dirac_max = INFINITY;
    add_row(rows, "dirac_max", INFINITY, kResidualTol);
  }

  // A stored bundle that disagrees with the recomputation is stale, not wrong.
  const std::pair<const char*, std::pair<double, double>> stored[] = {
      {"kernel_r0", {p.residuals.kernel_r0, fresh.kernel_r0}}, {"kernel_r1", {p.residuals.kernel_r1, fresh.kernel_r1}},
      {"sigma_min", {p.residuals.sigma_min, fresh.sigma_min}}, {"divis_rem", {p.residuals.divis_rem, fresh.divis_rem}},
      {"ode_Q", {p.residuals.ode_Q, fresh.ode_Q}},             {"ode_P", {p.residuals.ode_P, fresh.ode_P}},
      {"dirac_max", {p.residuals.dirac_max, fresh.dirac_max}}};
  for (const auto& [name, vals] : stored) {
    if (!(std::abs(vals.first - vals.second) <= kResidualTol)) {
      warnings.push_back(std::string("stored ") + name + " = " + fmt_short(vals.first) + " differs from recomputed " +
                         fmt_short(vals.second));
    }
  }
  return rows;
}

std::string iso_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

}  // namespace

void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot replace " + path + ": " + ec.message());
  }
}

int run_verify_algebra(const VerifyAlgebraOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.mode != "faithful" && opt.mode != "corrected" && opt.mode != "both") {
    err << "error: --mode must be faithful, corrected or both\n";
    return kExitUsage;
  }
  if (opt.relations != "printed" && opt.relations != "corrected") {
    err << "error: --relations must be printed or corrected\n";
    return kExitUsage;
  }
  osp::TqParams params = osp::TqParams::symbolic();
  if (opt.n) {
    try {
      params.n = sym::MultiPoly(sym::Rational::parse(*opt.n));
    } catch (const std::exception& e) {
      err << "error: --n expects a rational number, got '" << *opt.n << "'\n";
      return kExitUsage;
    }
  }
  const osp::GeneratorSet g = osp::make_generators(params.n);
  const osp::RelationSet set = opt.relations == "printed" ? osp::RelationSet::printed : osp::RelationSet::corrected;

  std::vector<Section> sections;
  sections.push_back({"osp(2,2) relations", osp::verify_osp_relations(g, set)});
  sections.push_back({"structure identities", osp::verify_structure_identities(g)});

  RelationReport full = osp::verify_decomposition(g, params);
  RelationReport decomposition;
  for (std::size_t i = 0; i < full.entries.size(); ++i) {
    const bool keep = opt.mode == "both" || full.entries[i].kind == EntryKind::info ||
                      (opt.mode == "faithful" && i == 0) || (opt.mode == "corrected" && i == 1);
    if (keep) decomposition.entries.push_back(full.entries[i]);
  }
  sections.push_back({"T_Q decomposition", decomposition});
  for (int nv = 0; nv <= 6; ++nv) {
    sections.push_back({"invariant subspace, n = " + std::to_string(nv), osp::subspace_image_check(nv)});
  }

  bool pass = true;
  for (const auto& s : sections) pass = pass && s.report.pass();
  const std::string body = opt.json ? render_json(sections, opt, pass) : render_text(sections, opt, pass);
  try {
    emit(opt.out, body, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return pass ? kExitOk : kExitFailure;
}

int run_solve(const SolveOptions& opt, std::ostream& out, std::ostream& err) {
  spectra::PhysicalContext ctx;
  try {
    ctx = spectra::derive_context(opt.m, opt.zalpha, opt.l, opt.n);
  } catch (const spectra::PhysicsError& e) {
    err << "rejected: " << e.what() << "\n";
    return kExitPhysics;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  spectra::ScanResult result;
  try {
    result = spectra::find_spectral_points(ctx, opt.scan);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::vector<SolutionRecord> records;
  for (spectra::SpectralPoint& p : result.points) {
    dirac::attach_dirac_residual(ctx, p);
    SolutionRecord r;
    r.context = {opt.m, opt.zalpha, opt.l, opt.n};
    r.point = p;
    r.provenance.scan = to_provenance(opt.scan);
    if (opt.timestamp) r.provenance.timestamp = iso_timestamp();
    records.push_back(std::move(r));
  }

  std::string body;
  if (opt.csv) {
    body = "x0,E,eB,t,branch,dirac_max\n";
    for (const auto& r : records) {
      const auto& p = r.point;
      body += fmt_double(p.x0) + "," + fmt_double(p.E) + "," + fmt_double(p.eB) + "," + fmt_double(p.t) + "," +
              spectra::to_string(p.branch) + "," + fmt_double(p.residuals.dirac_max) + "\n";
    }
  } else {
    body = emit_records(records);
  }
  try {
    emit(opt.out, body, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << records.size() << " spectral point(s); " << result.diagnostics.sign_changes << " sign change(s), "
      << result.diagnostics.near_misses.size() << " near miss(es)\n";
  return kExitOk;
}

int run_check(const CheckOptions& opt, std::ostream& out, std::ostream& err) {
  std::vector<SolutionRecord> records;
  try {
    records = parse_records(read_file(opt.in));
  } catch (const RecordError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::vector<std::string> warnings;
  if (records.empty()) warnings.push_back("no records: nothing to check");
  std::size_t failures = 0;
  std::ostringstream report;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const SolutionRecord& rec = records[i];
    spectra::PhysicalContext ctx;
    try {
      ctx = spectra::derive_context(rec.context.m, rec.context.zalpha, rec.context.l, rec.context.n);
    } catch (const std::invalid_argument& e) {
      err << "error: record " << i << ": " << e.what() << "\n";
      return kExitUsage;
    }
    std::vector<std::string> rec_warnings;
    const std::vector<CheckRow> rows = check_record(rec, ctx, rec_warnings);
    report << "record " << i << ": n = " << ctx.n << ", x0 = " << fmt_double(rec.point.x0)
           << ", E = " << fmt_double(rec.point.E) << "\n";
    char line[160];
    for (const auto& row : rows) {
      std::snprintf(line, sizeof line, "  %-34s %-12s < %-8s %s\n", row.quantity.c_str(), fmt_short(row.value).c_str(),
                    fmt_short(row.tol).c_str(), row.pass ? "PASS" : "FAIL");
      report << line;
      failures += row.pass ? 0 : 1;
    }
    for (const auto& w : rec_warnings) warnings.push_back("record " + std::to_string(i) + ": " + w);
  }
  for (const auto& w : warnings) report << "warning: " << w << "\n";
  const bool pass = failures == 0 && !(opt.strict && !warnings.empty());
  report << "check: " << records.size() << " record(s), " << failures << " failure(s), " << warnings.size()
         << " warning(s) -> " << (pass ? "PASS" : "FAIL") << "\n";
  out << report.str();
  return pass ? kExitOk : kExitFailure;
}

int run_wavefunction(const WavefunctionOptions& opt, std::ostream& out, std::ostream& err) {
  std::vector<SolutionRecord> records;
  try {
    records = parse_records(read_file(opt.in));
  } catch (const RecordError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (opt.index >= records.size()) {
    err << "error: --index " << opt.index << " out of range (" << records.size() << " record(s))\n";
    return kExitUsage;
  }
  const SolutionRecord& rec = records[opt.index];
  std::string body = "r,x,F,G\n";
  try {
    const spectra::PhysicalContext ctx =
        spectra::derive_context(rec.context.m, rec.context.zalpha, rec.context.l, rec.context.n);
    const double rmax = opt.rmax.value_or(10.0 * rec.point.lB);
    for (const auto& s : dirac::sample_table(ctx, rec.point, rmax, opt.samples)) {
      body += fmt_double(s.r) + "," + fmt_double(s.x) + "," + fmt_double(s.F) + "," + fmt_double(s.G) + "\n";
    }
    emit(opt.out, body, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quasi-exactly solvable planar Dirac-Coulomb problem in a magnetic field", "qes"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  VerifyAlgebraOptions va;
  auto* verify = app.add_subcommand("verify-algebra", "Exact checks of the osp(2,2) structure");
  auto* n_opt = verify->add_option("--n", va.n, "Rational value of n (default: symbolic)");
  auto* n_sym = verify->add_flag("--n-symbolic", "Keep n symbolic");
  n_opt->excludes(n_sym);
  verify->add_option("--mode", va.mode, "T_Q decomposition: faithful, corrected or both")
      ->check(CLI::IsMember({"faithful", "corrected", "both"}))
      ->capture_default_str();
  verify->add_option("--relations", va.relations, "Relation set: printed or corrected")
      ->check(CLI::IsMember({"printed", "corrected"}))
      ->capture_default_str();
  auto* va_json = verify->add_flag("--json", va.json, "JSON report");
  auto* va_text = verify->add_flag("--text", "Text report (default)");
  va_json->excludes(va_text);
  verify->add_option("--out", va.out, "Output file (default: stdout)");

  SolveOptions so;
  auto* solve = app.add_subcommand("solve", "Scan x0 for polynomial solutions");
  solve->add_option("--m", so.m, "Mass")->capture_default_str();
  solve->add_option("--zalpha", so.zalpha, "Coulomb coupling Z alpha")->required();
  solve->add_option("--l", so.l, "Angular momentum quantum number")->required();
  solve->add_option("--n", so.n, "Degree of Q")->required();
  solve->add_option("--x0-min", so.scan.x0_min, "Scan lower bound")->capture_default_str();
  solve->add_option("--x0-max", so.scan.x0_max, "Scan upper bound")->capture_default_str();
  solve->add_option("--grid-points", so.scan.grid_points, "Scan grid size")->capture_default_str();
  solve->add_option("--tol", so.scan.tol_accept, "Acceptance tolerance")->capture_default_str();
  solve->add_option("--workers", so.scan.workers, "Scan threads")->check(CLI::Range(1u, 256u))->capture_default_str();
  auto* so_json = solve->add_flag("--json", "SolutionRecord JSON (default)");
  auto* so_csv = solve->add_flag("--csv", so.csv, "Summary CSV");
  so_json->excludes(so_csv);
  solve->add_flag("--timestamp", so.timestamp, "Record the wall-clock time in provenance");
  solve->add_option("--out", so.out, "Output file (default: stdout)");

  CheckOptions co;
  auto* check = app.add_subcommand("check", "Recompute every residual of a solution file");
  check->add_option("--in", co.in, "Solution file")->required();
  check->add_flag("--strict", co.strict, "Treat warnings as failures");

  WavefunctionOptions wo;
  double rmax = 0.0;
  auto* wave = app.add_subcommand("wavefunction", "Tabulate F and G for one solution");
  wave->add_option("--in", wo.in, "Solution file")->required();
  wave->add_option("--index", wo.index, "Record index")->capture_default_str();
  auto* rmax_opt = wave->add_option("--rmax", rmax, "Largest radius (default: 10 lB)");
  wave->add_option("--samples", wo.samples, "Number of rows")->capture_default_str();
  wave->add_option("--out", wo.out, "Output file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (verify->parsed()) return run_verify_algebra(va, out, err);
  if (solve->parsed()) return run_solve(so, out, err);
  if (check->parsed()) return run_check(co, out, err);
  if (rmax_opt->count() > 0) wo.rmax = rmax;
  return run_wavefunction(wo, out, err);
}

}  // namespace qes::cli
