#include "euler_gauss/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "euler_gauss/certificate.hpp"
#include "euler_gauss/coefficients.hpp"
#include "euler_gauss/flow.hpp"
#include "euler_gauss/gamma.hpp"
#include "euler_gauss/sampling.hpp"
#include "euler_gauss/schema.hpp"
#include "euler_gauss/wick.hpp"

namespace euler_gauss {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Values given on the command line; unset means "take it from --config or the default".
struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> profile;
  std::optional<std::string> sequence;
  std::optional<double> s;
  std::vector<double> s_grid;
  std::optional<int> radius;
  std::optional<int> N;
  std::optional<int> truncation;
  std::optional<std::uint64_t> seed;
  std::optional<long long> samples;
  std::optional<double> t_max;
  std::optional<double> dt;
  std::optional<double> threshold;
  std::optional<std::string> output_dir;
  std::optional<int> threads;
  std::optional<std::string> weights;
  bool reproducible = false;
  std::vector<std::string> inputs;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "JSON run configuration; flags override its fields");
  app->add_option("--output-dir", f.output_dir, "Directory for JSON/CSV artifacts (default .)");
  app->add_option("--threads", f.threads, "Worker threads (default EULER_GAUSS_THREADS or all cores)");
  app->add_flag("--reproducible", f.reproducible, "Drop machine-dependent fields from outputs");
}

void add_sequence(CLI::App* app, Flags& f) {
  app->add_option("--profile", f.profile, "lemma61, powerlog, line, circle25 or gibbs-like");
  app->add_option("--sequence", f.sequence, "Sequence JSON file, or inline JSON object");
  app->add_option("--radius", f.radius, "Radius of the decaying profiles (default 30)");
}

json merged_config(const std::string& command, const Flags& f) {
  json c = json::object();
  if (f.config) {
    std::ifstream in(*f.config);
    if (!in) throw ConfigError("cannot read config file '" + *f.config + "'");
    try {
      c = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError("config file is not valid JSON: " + std::string(e.what()));
    }
    if (!c.is_object()) throw SchemaError("schema error (run_config):\n  /: expected an object");
    if (c.contains("command") && c["command"] != command)
      throw ConfigError("config command " + c["command"].dump() + " does not match '" + command + "'");
  }
  c["command"] = command;
  if (f.profile) c["profile"] = *f.profile;
  if (f.sequence) {
    const auto& v = *f.sequence;
    const auto first = v.find_first_not_of(" \t\n");
    if (first != std::string::npos && v[first] == '{') {
      try {
        c["sequence"] = json::parse(v);
      } catch (const json::parse_error& e) {
        throw ConfigError("inline sequence is not valid JSON: " + std::string(e.what()));
      }
    } else {
      c["sequence_file"] = v;
    }
  }
  if (f.s) c["s"] = *f.s;
  if (!f.s_grid.empty()) c["s_grid"] = f.s_grid;
  if (f.radius) c["radius"] = *f.radius;
  if (f.N) c["N"] = *f.N;
  if (f.truncation) c["truncation"] = *f.truncation;
  if (f.seed) c["seed"] = *f.seed;
  if (f.samples) c["samples"] = *f.samples;
  if (f.t_max) c["t_max"] = *f.t_max;
  if (f.dt) c["dt"] = *f.dt;
  if (f.threshold) c["threshold"] = *f.threshold;
  if (f.output_dir) c["output_dir"] = *f.output_dir;
  if (f.threads) c["threads"] = *f.threads;
  if (f.weights) c["weights"] = *f.weights;
  if (f.reproducible) c["reproducible"] = true;
  if (!f.inputs.empty()) c["inputs"] = f.inputs;
  return c;
}

struct Context {
  json config;
  std::ostream& out;
  std::ostream& err;

  int threads() const { return config.value("threads", 0); }
  bool reproducible() const { return config.value("reproducible", false); }
  fs::path output_dir() const { return config.value("output_dir", std::string(".")); }

  void write(const std::string& name, const std::string& body) const {
    const auto dir = output_dir();
    fs::create_directories(dir);
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    f << body;
  }
  void emit(const json& report, const std::string& file) const {
    const auto text = report.dump(2) + "\n";
    write(file, text);
    out << text;
  }
};

CoefficientSequence load_sequence(const json& c) {
  const int given = int(c.contains("sequence")) + int(c.contains("sequence_file")) +
                    int(c.contains("profile"));
  if (given == 0) throw ConfigError("no sequence given: use --profile or --sequence");
  if (given > 1) throw ConfigError("give exactly one of profile, sequence and sequence_file");
  if (c.contains("profile")) {
    const auto name = c["profile"].get<std::string>();
    if (!is_named_profile(name)) throw ConfigError("unknown profile '" + name + "'");
    return named_profile(name, c.value("radius", 30));
  }
  json j;
  if (c.contains("sequence")) {
    j = c["sequence"];
  } else {
    const auto path = c["sequence_file"].get<std::string>();
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read sequence file '" + path + "'");
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError("sequence file is not valid JSON: " + std::string(e.what()));
    }
    require_valid(j, "sequence");
  }
  return sequence_from_json(j);
}

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

int cmd_gamma(const Context& ctx) {
  const auto& c = ctx.config;
  const auto a = load_sequence(c);
  if (c.contains("s") == c.contains("s_grid")) throw ConfigError("gamma needs exactly one of --s and --s-grid");
  std::ostringstream csv;
  csv << "s,gamma_bare,gamma_paper,terms,flagged\n";
  if (c.contains("s")) {
    const auto r = gamma(a, c["s"].get<double>(), std::nullopt, ctx.threads());
    json j = r;
    j["command"] = "gamma";
    require_valid(j, "gamma_report");
    csv << num(r.s) << ',' << num(r.gamma_bare) << ',' << num(r.gamma_fourier) << ',' << r.term_count << ",\n";
    ctx.write("gamma.csv", csv.str());
    ctx.emit(j, "gamma.json");
    return kExitOk;
  }
  const auto grid = c["s_grid"].get<std::vector<double>>();
  const double threshold = c.value("threshold", 1e-12);
  const auto scan = scan_s(a, grid, threshold, ctx.threads());
  json entries = json::array();
  for (const auto& e : scan.entries) {
    const auto r = gamma(a, e.s, std::nullopt, ctx.threads());
    json j = r;
    j["flagged"] = e.flagged;
    entries.push_back(j);
    csv << num(r.s) << ',' << num(r.gamma_bare) << ',' << num(r.gamma_fourier) << ',' << r.term_count << ','
        << (e.flagged ? "true" : "false") << '\n';
  }
  json j = {{"command", "gamma-scan"},
            {"sequence_id", a.id()},
            {"threshold", threshold},
            {"entries", entries},
            {"first_flagged", nullptr}};
  if (scan.first_flagged) j["first_flagged"] = *scan.first_flagged;
  require_valid(j, "gamma_scan");
  ctx.write("gamma.csv", csv.str());
  ctx.emit(j, "gamma.json");
  return kExitOk;
}

int cmd_certify(const Context& ctx) {
  const auto& c = ctx.config;
  if (!c.contains("profile"))
    throw UnsupportedProfile("certification needs a named profile with a certified tail (powerlog)");
  const auto profile = c["profile"].get<std::string>();
  const double s = c.value("s", 0.5);
  const int N = c.value("N", 30);
  const auto w = c.value("weights", std::string("reference_code")) == "standard"
                     ? WeightConvention::Standard
                     : WeightConvention::ReferenceCode;
  const auto cert = certify(profile, s, N, w, ctx.threads());
  json j = certificate_json(cert, ctx.reproducible());
  j["command"] = "certify";
  require_valid(j, "certificate");
  std::ostringstream csv;
  csv << "profile,s,N,half_gamma_lo,half_gamma_hi,epsilon_lo,epsilon_hi,verdict\n"
      << cert.profile_id << ',' << num(s) << ',' << N << ',' << num(cert.half_gamma_N.lo()) << ','
      << num(cert.half_gamma_N.hi()) << ',' << num(cert.tail_bound.lo()) << ','
      << num(cert.tail_bound.hi()) << ',' << to_string(cert.verdict) << '\n';
  ctx.write("certificate.csv", csv.str());
  ctx.emit(j, "certificate.json");
  return kExitOk;
}

int cmd_classify(const Context& ctx) {
  const auto a = load_sequence(ctx.config);
  const auto sc = classify_support(a);
  json j = sc;
  j["command"] = "classify";
  j["sequence_id"] = a.id();
  j["degenerate"] = sc.degenerate();
  j["modes"] = a.size();
  require_valid(j, "classify");
  std::ostringstream csv;
  csv << "sequence_id,kind,degenerate,modes,radius_sq\n"
      << a.id() << ',' << to_string(sc.kind) << ',' << (sc.degenerate() ? "true" : "false") << ','
      << a.size() << ',';
  if (sc.kind == SupportKind::Circle) csv << sc.radius_sq;
  csv << '\n';
  ctx.write("classify.csv", csv.str());
  ctx.emit(j, "classify.json");
  return kExitOk;
}

SamplerConfig sampler_config(const json& c, const CoefficientSequence& a, int default_truncation) {
  SamplerConfig cfg;
  cfg.sequence = a;
  cfg.truncation = c.value("truncation", default_truncation);
  cfg.seed = c.value("seed", std::uint64_t{0});
  cfg.sample_count = c.value("samples", std::size_t{1000});
  cfg.validate();
  return cfg;
}

json check_row(const std::string& name, const MCEstimate& e, std::optional<double> reference,
               const std::string& source) {
  json r = {{"name", name}, {"mean", e.mean}, {"stderr", e.std_error}, {"reference_source", source}};
  if (!reference) {
    r["reference"] = 0.0;
    r["z"] = nullptr;
    r["status"] = "skipped";
    return r;
  }
  const double z = e.z_score(*reference);
  r["reference"] = *reference;
  r["z"] = std::isfinite(z) ? json(z) : json(nullptr);
  r["status"] = std::fabs(z) <= 3.0 ? "pass" : "fail";
  return r;
}

int cmd_mc_verify(const Context& ctx) {
  const auto& c = ctx.config;
  const auto a = load_sequence(c);
  const double s = c.value("s", 0.5);
  const auto cfg = sampler_config(c, a, std::max(16, a.max_abs()));
  const auto fit = expansion_fit(cfg, s, {0.0, 0.01, 0.02, 0.03, 0.04}, ctx.threads());

  std::optional<WickOracle> oracle;
  try {
    oracle.emplace(a);
  } catch (const SupportTooLarge&) {
  }
  const double kappa = kWickNormalization;
  json checks = json::array();
  if (oracle) {
    checks.push_back(check_row("e0_HsNormSq", fit.e[0],
                               oracle->expectation({FunctionalKind::HsNormSq, s}), "wick"));
  } else {
    double hs = 0.0;
    for (const auto& [n, v] : a.entries()) hs += 2.0 * sobolev_weight(n, s) * v * v;
    checks.push_back(check_row("e0_HsNormSq", fit.e[0], hs, "closed_form"));
  }
  checks.push_back(check_row("e1_OmegaDotB1", fit.e[1], 0.0, "zero"));
  checks.push_back(check_row("e2_gamma", fit.e[2],
                             kappa * gamma(a, s, std::nullopt, ctx.threads()).gamma_bare, "closed_form"));
  checks.push_back(check_row("e3_B1DotB2", fit.e[3], 0.0, "zero"));
  if (oracle)
    checks.push_back(check_row("e4_B2NormSq", fit.e[4],
                               oracle->expectation({FunctionalKind::B2NormSq, s}), "wick"));
  else
    checks.push_back(check_row("e4_B2NormSq", fit.e[4], std::nullopt, "wick"));

  bool all_pass = true;
  for (const auto& r : checks) all_pass = all_pass && r["status"] != "fail";
  json j = {{"command", "mc-verify"}, {"sequence_id", a.id()},  {"s", s},
            {"samples", cfg.sample_count}, {"seed", cfg.seed}, {"truncation", cfg.truncation},
            {"kappa", kappa},             {"checks", checks},  {"all_pass", all_pass}};
  require_valid(j, "mc_verify");

  std::vector<ResultRow> rows;
  for (std::size_t k = 0; k < 5; ++k) rows.push_back({checks[k]["name"].get<std::string>(), fit.e[k]});
  std::ostringstream csv;
  write_results_csv(csv, rows);
  ctx.write("mc_results.csv", csv.str());
  std::ostringstream curve;
  curve << "t,mean_norm_sq,polynomial\n";
  for (const auto& [t, m] : fit.curve) {
    double p = 0.0;
    for (int k = 4; k >= 0; --k) p = p * t + fit.e[static_cast<std::size_t>(k)].mean;
    curve << num(t) << ',' << num(m) << ',' << num(p) << '\n';
  }
  ctx.write("expansion_curve.csv", curve.str());
  const auto manifest = mc_manifest(cfg, c);
  require_valid(manifest, "mc_manifest");
  ctx.write("manifest.json", manifest.dump(2) + "\n");
  ctx.emit(j, "mc_verify.json");
  return kExitOk;
}

int cmd_evolve(const Context& ctx) {
  const auto& c = ctx.config;
  const auto a = load_sequence(c);
  const double s = c.value("s", 0.5);
  const double t_max = c.value("t_max", 0.05);
  const double dt = c.value("dt", 1e-3);
  json cc = c;
  if (!cc.contains("samples")) cc["samples"] = 2000;
  const auto cfg = sampler_config(cc, a, std::max(16, 3 * a.max_abs()));
  const auto g = growth_experiment(cfg, s, t_max, dt, ctx.threads());

  const auto grid = uniform_grid(t_max, dt);
  const auto traj = evolve(sample(cfg, 0), grid, dt);
  const auto drift = conservation_drift(traj);
  json slope = nullptr;
  try {
    slope = remainder_slope(remainder_norms(traj, s), dt, t_max);
  } catch (const std::invalid_argument&) {
    // degenerate remainder or B2 outside the truncation
  }

  json j = {{"command", "evolve"},
            {"sequence_id", a.id()},
            {"s", s},
            {"t_max", t_max},
            {"dt", dt},
            {"samples", cfg.sample_count},
            {"seed", cfg.seed},
            {"truncation", cfg.truncation},
            {"c2", g.c2},
            {"c3", g.c3},
            {"reference", g.reference},
            {"ratio", std::isfinite(g.ratio) ? json(g.ratio) : json(nullptr)},
            {"remainder_slope", slope},
            {"conservation", {{"enstrophy", drift.enstrophy}, {"energy", drift.energy}}}};
  require_valid(j, "evolve");

  std::ostringstream csv;
  csv << "t,mean_growth,stderr,fit,reference\n";
  for (const auto& [t, m, se] : g.curve)
    csv << num(t) << ',' << num(m) << ',' << num(se) << ',' << num(g.c2 * t * t + g.c3 * t * t * t) << ','
        << num(g.reference * t * t) << '\n';
  ctx.write("growth.csv", csv.str());
  std::ostringstream summary;
  write_summary_csv(summary, traj, s);
  ctx.write("trajectory_summary.csv", summary.str());
  const auto manifest = mc_manifest(cfg, c);
  require_valid(manifest, "mc_manifest");
  ctx.write("manifest.json", manifest.dump(2) + "\n");
  ctx.emit(j, "evolve.json");
  return kExitOk;
}

struct ReportRow {
  std::string artifact, command, sequence, s, quantity, value, lo, hi, stderr_, status;
};

std::string field(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return "";
  if (j[key].is_string()) return j[key].get<std::string>();
  if (j[key].is_number()) return num(j[key].get<double>());
  return j[key].dump();
}

void rows_for(const std::string& name, const json& j, std::vector<ReportRow>& rows) {
  const std::string cmd = j.value("command", "");
  const std::string seq = j.contains("sequence_id") ? field(j, "sequence_id") : field(j, "profile");
  auto add = [&](const std::string& s, const std::string& q, const std::string& v, const std::string& lo,
                 const std::string& hi, const std::string& se, const std::string& st) {
    rows.push_back({name, cmd, seq, s, q, v, lo, hi, se, st});
  };
  if (cmd == "gamma") {
    add(field(j, "s"), "gamma_bare", field(j, "gamma_bare"), "", "", "", field(j["support_class"], "kind"));
    add(field(j, "s"), "gamma_paper", field(j, "gamma_paper"), "", "", "", field(j["support_class"], "kind"));
  } else if (cmd == "gamma-scan") {
    for (const auto& e : j["entries"])
      add(field(e, "s"), "gamma_bare", field(e, "gamma_bare"), "", "", "",
          e.value("flagged", false) ? "flagged" : "");
  } else if (cmd == "certify") {
    const auto h = j["half_gamma_N"], eps = j["epsilon"];
    add(field(j, "s"), "half_gamma_N", num(0.5 * (h[0].get<double>() + h[1].get<double>())), num(h[0]),
        num(h[1]), "", field(j, "verdict"));
    add(field(j, "s"), "epsilon", num(eps[1].get<double>()), num(eps[0]), num(eps[1]), "", field(j, "verdict"));
  } else if (cmd == "classify") {
    add("", "support_kind", field(j, "kind"), "", "", "", j["degenerate"].get<bool>() ? "degenerate" : "");
  } else if (cmd == "mc-verify") {
    for (const auto& r : j["checks"])
      add(field(j, "s"), field(r, "name"), field(r, "mean"), "", "", field(r, "stderr"), field(r, "status"));
  } else if (cmd == "evolve") {
    for (const char* k : {"c2", "c3", "reference", "ratio", "remainder_slope"})
      add(field(j, "s"), k, field(j, k), "", "", "", "");
    add(field(j, "s"), "enstrophy_drift", field(j["conservation"], "enstrophy"), "", "", "", "");
    add(field(j, "s"), "energy_drift", field(j["conservation"], "energy"), "", "", "", "");
  }
}

const char* schema_for(const std::string& command) {
  if (command == "gamma") return "gamma_report";
  if (command == "gamma-scan") return "gamma_scan";
  if (command == "certify") return "certificate";
  if (command == "classify") return "classify";
  if (command == "mc-verify") return "mc_verify";
  if (command == "evolve") return "evolve";
  return nullptr;
}

int cmd_report(const Context& ctx) {
  const auto& c = ctx.config;
  std::vector<std::string> inputs = c.value("inputs", std::vector<std::string>{});
  if (inputs.empty()) inputs.push_back(ctx.output_dir().string());
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    const fs::path p(in);
    if (fs::is_directory(p)) {
      for (const auto& e : fs::directory_iterator(p))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    } else if (fs::is_regular_file(p)) {
      files.push_back(p);
    } else {
      throw ConfigError("report input '" + in + "' does not exist");
    }
  }
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());

  std::vector<ReportRow> rows;
  json merged = json::array();
  for (const auto& f : files) {
    std::ifstream in(f);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error&) {
      ctx.err << "skipping " << f.filename().string() << ": not JSON\n";
      continue;
    }
    if (!j.is_object()) continue;
    const char* name = schema_for(j.value("command", ""));
    if (!name) continue;
    const auto errs = validate(j, schema(name));
    if (!errs.empty()) {
      ctx.err << "skipping " << f.filename().string() << ": " << errs.front() << '\n';
      continue;
    }
    rows_for(f.filename().string(), j, rows);
    merged.push_back({{"artifact", f.filename().string()}, {"command", j["command"]}});
  }

  std::ostringstream csv, md;
  csv << "artifact,command,sequence,s,quantity,value,lo,hi,stderr,status\n";
  md << "| artifact | command | sequence | s | quantity | value | lo | hi | stderr | status |\n"
     << "|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    csv << r.artifact << ',' << r.command << ',' << r.sequence << ',' << r.s << ',' << r.quantity << ','
        << r.value << ',' << r.lo << ',' << r.hi << ',' << r.stderr_ << ',' << r.status << '\n';
    md << "| " << r.artifact << " | " << r.command << " | " << r.sequence << " | " << r.s << " | "
       << r.quantity << " | " << r.value << " | " << r.lo << " | " << r.hi << " | " << r.stderr_ << " | "
       << r.status << " |\n";
  }
  ctx.write("summary.csv", csv.str());
  ctx.write("summary.md", md.str());
  json j = {{"command", "report"},
            {"artifacts", merged},
            {"rows", rows.size()},
            {"csv", "summary.csv"},
            {"markdown", "summary.md"}};
  ctx.out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_schema(const Context& ctx, const std::optional<std::string>& name) {
  if (name) {
    try {
      ctx.out << schema(*name).dump(2) << '\n';
    } catch (const std::out_of_range& e) {
      throw ConfigError(e.what());
    }
    return kExitOk;
  }
  json all = json::object();
  for (const auto& n : schema_names()) all[n] = schema(n);
  ctx.out << all.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian measures under the 2D Euler flow: gamma functional, certificates and Monte Carlo checks",
               "euler-gauss"};
  app.require_subcommand(1);
  Flags f;
  std::optional<std::string> schema_name;

  auto* g = app.add_subcommand("gamma", "gamma functional for a coefficient sequence");
  add_common(g, f);
  add_sequence(g, f);
  g->add_option("--s", f.s, "Sobolev index");
  g->add_option("--s-grid", f.s_grid, "Scan over several s values")->delimiter(',');
  g->add_option("--threshold", f.threshold, "Flag |gamma| above this (scan only)");

  auto* ce = app.add_subcommand("certify", "interval certificate for the sign of gamma");
  add_common(ce, f);
  ce->add_option("--profile", f.profile, "powerlog (or zero)");
  ce->add_option("--s", f.s, "Sobolev index (default 0.5)");
  ce->add_option("--N", f.N, "Partial-sum cutoff (default 30)");
  ce->add_option("--weights", f.weights, "reference_code (default) or standard")
      ->check(CLI::IsMember({"reference_code", "standard"}));

  auto* cl = app.add_subcommand("classify", "degenerate support classification");
  add_common(cl, f);
  add_sequence(cl, f);

  auto* mc = app.add_subcommand("mc-verify", "Monte Carlo checks of the expansion coefficients");
  add_common(mc, f);
  add_sequence(mc, f);
  mc->add_option("--s", f.s, "Sobolev index (default 0.5)");
  mc->add_option("--samples", f.samples, "Number of sampled fields (default 1000)");
  mc->add_option("--seed", f.seed, "Generator seed (default 0)");
  mc->add_option("--truncation", f.truncation, "Lattice truncation (default max(16, support))");

  auto* ev = app.add_subcommand("evolve", "short-time growth experiment under the truncated flow");
  add_common(ev, f);
  add_sequence(ev, f);
  ev->add_option("--s", f.s, "Sobolev index (default 0.5)");
  ev->add_option("--samples", f.samples, "Number of trajectories, even (default 2000)");
  ev->add_option("--seed", f.seed, "Generator seed (default 0)");
  ev->add_option("--truncation", f.truncation, "Lattice truncation (default max(16, 3 x support))");
  ev->add_option("--tmax", f.t_max, "Final time (default 0.05)");
  ev->add_option("--dt", f.dt, "RK4 step (default 1e-3)");

  auto* rp = app.add_subcommand("report", "merge JSON artifacts into summary.csv and summary.md");
  add_common(rp, f);
  rp->add_option("inputs", f.inputs, "Artifact files or directories (default the output dir)");

  auto* sc = app.add_subcommand("schema", "print the published JSON schemas");
  sc->add_option("name", schema_name, "One schema by name");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "schema") return cmd_schema(Context{json::object(), out, err}, schema_name);
    json config = merged_config(command, f);
    require_valid(config, "run_config");
    const Context ctx{config, out, err};
    if (command == "gamma") return cmd_gamma(ctx);
    if (command == "certify") return cmd_certify(ctx);
    if (command == "classify") return cmd_classify(ctx);
    if (command == "mc-verify") return cmd_mc_verify(ctx);
    if (command == "evolve") return cmd_evolve(ctx);
    return cmd_report(ctx);
  } catch (const UnsupportedProfile& e) {
    err << "unsupported: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const SupportTooLarge& e) {
    err << "unsupported: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const NumericalAbort& e) {
    err << "numerical abort: " << e.what() << '\n';
    return kExitNumericalAbort;
  } catch (const std::invalid_argument& e) {
    err << e.what() << '\n';
    return kExitConfig;
  } catch (const json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace euler_gauss
