#include "cli.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "redblack/redblack.hpp"
#include "redblack/serialize.hpp"

namespace redblack::cli {
namespace {

struct Options {
  std::string subcommand;
  int M = 0;
  std::string family;
  double p = 2.0;
  double m = 1.0;
  std::string k_preset = "one";
  std::string k_file;
  double c = 1.0;
  std::string family_path;
  std::string table;
  std::string profile = "bold-timid";
  int x0 = 0;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  std::uint64_t horizon = 0;
  double tol = 1e-12;
  unsigned jobs = 1;
  int max_enum = 8;
  std::string out;
  bool csv = false;
  std::string trace;
  std::string input;
};

/// Raised for bad input files or parameter combinations (exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
}

Json manifest(const Options& o) {
  Json inputs = Json::array();
  for (const auto* path : {&o.table, &o.family_path, &o.k_file, &o.input})
    if (!path->empty()) inputs.push_back(*path);
  if (o.profile != "bold-timid" && o.profile != "timid-timid" && o.profile != "bold-bold")
    inputs.push_back(o.profile);

  Json params;
  params["M"] = o.M;
  params["family"] = o.family;
  params["p"] = o.p;
  params["m"] = o.m;
  params["k"] = o.k_preset;
  params["c"] = o.c;
  params["profile"] = o.profile;
  params["x0"] = o.x0;
  params["trials"] = o.trials;
  params["horizon"] = o.horizon;
  params["jobs"] = o.jobs;
  params["max_enum"] = o.max_enum;

  Json j;
  j["tool"] = "redblack";
  j["version"] = kVersion;
  j["subcommand"] = o.subcommand;
  j["inputs"] = std::move(inputs);
  j["parameters"] = std::move(params);
  j["tolerances"] = {{"cmp", o.tol}, {"strict", o.tol}};
  j["seed"] = o.seed;
  j["output"] = o.out.empty() ? "-" : o.out;
  return j;
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw InputError("cannot write " + o.out);
  f << text;
}

void emit_json(const Options& o, const Json& j, std::ostream& out) { emit(o, j.dump(2) + "\n", out); }

Json artifact(const Options& o, Json result) {
  Json j;
  j["manifest"] = manifest(o);
  j["result"] = std::move(result);
  return j;
}

Tolerances tolerances(const Options& o) { return {o.tol, o.tol}; }

SolverOptions solver_options(const Options& o) {
  SolverOptions s;
  s.tie = o.tol;
  s.cmp = o.tol;
  s.jobs = o.jobs;
  s.max_enum_M = o.max_enum;
  return s;
}

ExpFamilyParams k_params(const Options& o) {
  if (o.M < 1) throw InputError("--M is required");
  if (!o.k_file.empty()) {
    Json j = read_json_file(o.k_file);
    if (j.is_object() && j.contains("k")) j = j["k"];
    if (!j.is_array()) throw InputError("--k-file must hold an array or {\"k\": [...]}");
    return {j.get<std::vector<double>>(), o.c};
  }
  if (o.k_preset == "one") return ExpFamilyParams::sampled(k_presets::one, o.M, o.c);
  if (o.k_preset == "gauss") return ExpFamilyParams::sampled(k_presets::gaussian, o.M, o.c);
  if (o.k_preset == "root-exp") return ExpFamilyParams::sampled(k_presets::root_exp, o.M, o.c);
  throw InputError("unknown --k preset " + o.k_preset);
}

WinProbTable load_table(const Options& o) {
  if (!o.table.empty()) return table_from_json(read_json_file(o.table));
  if (o.family.empty()) throw InputError("either --table or --family is required");
  if (o.family == "family-file") {
    if (o.family_path.empty()) throw InputError("--family family-file needs --family-path");
    auto spec = family_from_json(read_json_file(o.family_path));
    return family_infimum(spec.members, o.M > 0 ? o.M : spec.M);
  }
  if (o.M < 2) throw InputError("--M (>= 2) is required");
  if (o.family == "power") return power_family(o.p, o.M);
  if (o.family == "min-exp") return min_exp_family(o.m, o.M);
  if (o.family == "exp-el") return preset_exponential_el(o.M);
  if (o.family == "kp") throw InputError("family kp defines phi only; it has no table");
  throw InputError("unknown --family " + o.family);
}

Profile load_profile(const Options& o, int M) {
  if (o.profile == "bold-timid") return Profile::bold_timid(M);
  if (o.profile == "timid-timid") return Profile::timid_timid(M);
  if (o.profile == "bold-bold") return Profile::bold_bold(M);
  Profile p = profile_from_json(read_json_file(o.profile));
  if (p.M() != M) throw InputError("profile file disagrees with the table on M");
  return p;
}

int require_x0(const Options& o, int M) {
  if (o.x0 < 1 || o.x0 > M - 1) throw InputError("--x0 must lie in [1, M-1]");
  return o.x0;
}

// ------------------------------------------------------------ subcommands

int cmd_gen(const Options& o, std::ostream& out) {
  if (o.family == "kp") {
    const auto phi = phi_from_k(k_params(o), o.M);
    Json j;
    j["manifest"] = manifest(o);
    j["M"] = phi.M();
    j["phi"] = to_json(phi);
    emit_json(o, j, out);
    return 0;
  }
  const auto P = load_table(o);
  if (o.csv) {
    emit(o, to_csv(P), out);
    return 0;
  }
  Json j;
  j["manifest"] = manifest(o);
  const Json t = to_json(P);
  j["M"] = t["M"];
  j["entries"] = t["entries"];
  emit_json(o, j, out);
  return 0;
}

int cmd_check(const Options& o, std::ostream& out) {
  const auto tol = tolerances(o);
  Json result;
  Json checks = Json::array();
  bool pass = true;
  auto add = [&](const CheckReport& r) {
    pass = pass && r.pass();
    checks.push_back(to_json(r));
  };

  if (o.family == "kp" && o.table.empty()) {
    const auto params = k_params(o);
    const auto phi = phi_from_k(params, o.M);
    result["phi"] = to_json(phi);
    add(check_submultiplicative_k(params.k, o.M, tol));
    add(check_I1(phi, tol));
    add(check_conv(phi, tol));
  } else {
    const auto P = load_table(o);
    const auto phi = phi_of(P);
    result["phi"] = to_json(phi);
    add(check_border(P, tol));
    add(check_I1(phi, tol));
    add(check_mult(P, tol));
    add(check_conv(phi, tol));
    add(check_sincov(sincov_of(P), tol));
    result["fairness"] = to_json(check_fairness(P, tol));
    result["c1"] = to_json(check_c1_conditions(P, tol));
  }
  result["pass"] = pass;
  result["checks"] = std::move(checks);
  emit_json(o, artifact(o, std::move(result)), out);
  return pass ? 0 : 1;
}

int cmd_solve(const Options& o, std::ostream& out) {
  const auto P = load_table(o);
  const auto profile = load_profile(o, P.M());
  const auto phi = phi_of(P);
  Json result;
  result["profile"] = to_json(profile);
  result["phi"] = to_json(phi);
  result["product_form"] = to_json(q_bold_timid(phi));
  result["chain"] = to_json(hitting_values(P, profile, solver_options(o)));
  emit_json(o, artifact(o, std::move(result)), out);
  return 0;
}

int cmd_nash(const Options& o, std::ostream& out) {
  const auto P = load_table(o);
  const auto profile = load_profile(o, P.M());
  const auto cert = verify_nash(P, profile, require_x0(o, P.M()), solver_options(o));
  emit_json(o, artifact(o, to_json(cert)), out);
  return cert.equilibrium ? 0 : 1;
}

int cmd_enum(const Options& o, std::ostream& out) {
  const auto P = load_table(o);
  std::vector<int> starts;
  if (o.x0 != 0)
    starts.push_back(require_x0(o, P.M()));
  else
    for (int x = 1; x < P.M(); ++x) starts.push_back(x);
  Json by_x0 = Json::array();
  for (int x0 : starts) {
    Json eqs = Json::array();
    bool contains_bold_timid = false;
    for (const auto& c : enumerate_equilibria(P, x0, solver_options(o))) {
      contains_bold_timid = contains_bold_timid || same_on_path(c, Profile::bold_timid(P.M()));
      eqs.push_back(to_json(c));
    }
    Json entry;
    entry["x0"] = x0;
    entry["contains_bold_timid"] = contains_bold_timid;
    entry["equilibria"] = std::move(eqs);
    by_x0.push_back(std::move(entry));
  }
  Json result;
  result["by_x0"] = std::move(by_x0);
  emit_json(o, artifact(o, std::move(result)), out);
  return 0;
}

int cmd_sim(const Options& o, std::ostream& out) {
  const auto P = load_table(o);
  const auto profile = load_profile(o, P.M());
  if (o.x0 < 0 || o.x0 > P.M()) throw InputError("--x0 must lie in [0, M]");
  SimConfig cfg;
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.horizon = o.horizon;
  cfg.x0 = o.x0;
  const auto sim = simulate(P, profile, cfg, o.jobs);
  const auto exact = hitting_values(P, profile, solver_options(o));
  const auto agreement = compare_exact(sim, exact.win_i, o.x0);
  if (!o.trace.empty()) {
    std::ofstream f(o.trace);
    if (!f) throw InputError("cannot write " + o.trace);
    f << trace_to_csv(trace_trial(P, profile, cfg, 0));
  }
  Json result;
  result["profile"] = to_json(profile);
  result["sim"] = to_json(sim);
  result["exact"] = to_json(exact);
  result["agreement"] = to_json(agreement);
  emit_json(o, artifact(o, std::move(result)), out);
  return agreement.pass ? 0 : 1;
}

// ----------------------------------------------------------------- report

std::string scalar(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    std::ostringstream s;
    s << std::setprecision(10) << v.get<double>();
    return s.str();
  }
  return v.dump();
}

bool is_scalar_array(const Json& v) {
  if (!v.is_array()) return false;
  for (const auto& e : v)
    if (e.is_structured()) return false;
  return true;
}

void render(const Json& j, int depth, std::ostream& out);

void render_check(const Json& c, int depth, std::ostream& out) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  out << pad << c.value("check", "?") << ": " << (c.value("pass", false) ? "PASS" : "FAIL")
      << "  (violations " << scalar(c["violations"]) << ", skipped "
      << scalar(c.value("skipped", Json(0))) << ", tolerance " << scalar(c["tolerance"]) << ")\n";
  for (const auto& w : c["witnesses"]) {
    out << pad << "  " << w.value("relation", "") << " at (";
    bool first = true;
    for (const auto& i : w["indices"]) {
      out << (first ? "" : ",") << i.dump();
      first = false;
    }
    out << "): lhs " << scalar(w["lhs"]) << " > rhs " << scalar(w["rhs"]) << "  margin "
        << scalar(w["margin"]) << "\n";
  }
}

void render(const Json& j, int depth, std::ostream& out) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  if (j.is_object() && j.contains("check") && j.contains("witnesses")) {
    render_check(j, depth, out);
    return;
  }
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object() && value.contains("check") && value.contains("witnesses")) {
        out << pad << key << ":\n";
        render_check(value, depth + 1, out);
      } else if (value.is_structured() && !is_scalar_array(value)) {
        out << pad << key << ":\n";
        render(value, depth + 1, out);
      } else if (value.is_array()) {
        out << pad << key << ": [";
        bool first = true;
        for (const auto& e : value) {
          out << (first ? "" : ", ") << scalar(e);
          first = false;
        }
        out << "]\n";
      } else {
        out << pad << key << ": " << scalar(value) << "\n";
      }
    }
    return;
  }
  if (j.is_array()) {
    std::size_t i = 0;
    for (const auto& e : j) {
      if (e.is_structured() && !is_scalar_array(e)) {
        out << pad << "- [" << i << "]\n";
        render(e, depth + 1, out);
      } else {
        out << pad << "- " << (e.is_array() ? e.dump() : scalar(e)) << "\n";
      }
      ++i;
    }
    return;
  }
  out << pad << scalar(j) << "\n";
}

int cmd_report(const Options& o, std::ostream& out) {
  const Json j = read_json_file(o.input);
  std::ostringstream text;
  if (j.contains("manifest")) {
    const auto& m = j["manifest"];
    text << "redblack " << m.value("version", "?") << " -- " << m.value("subcommand", "?")
         << "\n";
  }
  if (j.contains("result")) {
    render(j["result"], 0, text);
  } else if (j.contains("entries")) {
    text << "win probability table, M = " << scalar(j["M"]) << "\n";
    for (const auto& row : j["entries"]) {
      text << " ";
      for (const auto& v : row) text << " " << std::setw(12) << (v.is_null() ? "NA" : scalar(v));
      text << "\n";
    }
  } else {
    render(j, 0, text);
  }
  emit(o, text.str(), out);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  if (const char* env = std::getenv("REDBLACK_TOL")) {
    try {
      o.tol = std::stod(env);
    } catch (const std::exception&) {
      err << "error: REDBLACK_TOL is not a number\n";
      return 2;
    }
  }

  CLI::App app{"Two-person red-and-black game: tables, inequality checks, equilibria, simulation",
               "redblack"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  auto add_source = [&](CLI::App* s) {
    s->add_option("--M", o.M, "Total money M");
    s->add_option("--family", o.family, "Table family")
        ->check(CLI::IsMember({"power", "min-exp", "exp-el", "family-file", "kp"}));
    s->add_option("--p", o.p, "Exponent of the power family");
    s->add_option("--m", o.m, "Rate of the min-exp family");
    s->add_option("--k", o.k_preset, "k preset for family kp")
        ->check(CLI::IsMember({"one", "gauss", "root-exp"}));
    s->add_option("--k-file", o.k_file, "JSON array of k(0..M) for family kp");
    s->add_option("--c", o.c, "Rate c for family kp");
    s->add_option("--family-path", o.family_path, "Family specification file");
    s->add_option("--table", o.table, "Win probability table (JSON)");
    s->add_option("--tol", o.tol, "Comparison tolerance");
    s->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
    s->add_option("--out", o.out, "Output path (default stdout)");
  };
  auto add_play = [&](CLI::App* s) {
    s->add_option("--profile", o.profile,
                  "bold-timid | timid-timid | bold-bold | path to profile JSON");
    s->add_option("--x0", o.x0, "Initial fortune of player I");
    s->add_option("--max-enum", o.max_enum, "Enumeration cap on M");
  };

  auto* gen = app.add_subcommand("gen", "Build a table (or phi for kp) and write JSON");
  add_source(gen);
  gen->add_flag("--csv", o.csv, "Write CSV instead of JSON");
  auto* check = app.add_subcommand("check", "Run the inequality suite");
  add_source(check);
  auto* solve = app.add_subcommand("solve", "Exact win probabilities for a profile");
  add_source(solve);
  add_play(solve);
  auto* nash = app.add_subcommand("nash", "Verify a profile is a Nash equilibrium at x0");
  add_source(nash);
  add_play(nash);
  auto* enm = app.add_subcommand("enum", "Enumerate stationary equilibria");
  add_source(enm);
  add_play(enm);
  auto* sim = app.add_subcommand("sim", "Monte Carlo simulation against the exact solver");
  add_source(sim);
  add_play(sim);
  sim->add_option("--trials", o.trials, "Number of trajectories")->check(CLI::PositiveNumber);
  sim->add_option("--seed", o.seed, "Master seed");
  sim->add_option("--horizon", o.horizon, "Step cap per trajectory (default 64 M)");
  sim->add_option("--trace", o.trace, "Write the first trajectory as CSV");
  auto* report = app.add_subcommand("report", "Render a JSON artifact as text");
  report->add_option("input", o.input, "JSON artifact")->required();
  report->add_option("--out", o.out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  o.subcommand = app.get_subcommands().front()->get_name();
  try {
    if (o.subcommand == "gen") return cmd_gen(o, out);
    if (o.subcommand == "check") return cmd_check(o, out);
    if (o.subcommand == "solve") return cmd_solve(o, out);
    if (o.subcommand == "nash") return cmd_nash(o, out);
    if (o.subcommand == "enum") return cmd_enum(o, out);
    if (o.subcommand == "sim") return cmd_sim(o, out);
    if (o.subcommand == "report") return cmd_report(o, out);
  } catch (const EnumerationCapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace redblack::cli
