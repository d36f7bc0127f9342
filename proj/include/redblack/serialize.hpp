#pragma once

// JSON and CSV encodings of tables, strategies, reports, certificates and
// simulation results. Objects use insertion-ordered keys so that output is
// byte-stable; doubles are written in shortest round-trip form.

#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "redblack/check_report.hpp"
#include "redblack/equilibrium.hpp"
#include "redblack/families.hpp"
#include "redblack/game.hpp"
#include "redblack/monte_carlo.hpp"

namespace redblack {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------- tables

inline Json to_json(const WinProbTable& P) {
  Json rows = Json::array();
  for (int a = 0; a <= P.M(); ++a) {
    Json row = Json::array();
    for (int b = 0; b <= P.M(); ++b) {
      if (auto v = P.try_at(a, b))
        row.push_back(*v);
      else
        row.push_back(nullptr);
    }
    rows.push_back(std::move(row));
  }
  Json j;
  j["M"] = P.M();
  j["entries"] = std::move(rows);
  return j;
}

/// Parses {"M": int, "entries": [[...], ...]}; extra keys are ignored.
inline WinProbTable table_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("M") || !j.contains("entries"))
    throw DomainError("table JSON: expected object with \"M\" and \"entries\"");
  if (!j["M"].is_number_integer()) throw DomainError("table JSON: \"M\" must be an integer");
  const int M = j["M"].get<int>();
  const Json& e = j["entries"];
  if (!e.is_array() || e.size() != static_cast<std::size_t>(M + 1))
    throw DomainError("table JSON: \"entries\" must have M+1 rows");
  std::vector<std::vector<std::optional<double>>> rows;
  for (const auto& r : e) {
    if (!r.is_array()) throw DomainError("table JSON: each row must be an array");
    std::vector<std::optional<double>> row;
    for (const auto& v : r) {
      if (v.is_null())
        row.emplace_back(std::nullopt);
      else if (v.is_number())
        row.emplace_back(v.get<double>());
      else
        throw DomainError("table JSON: entries must be numbers or null");
    }
    rows.push_back(std::move(row));
  }
  return WinProbTable::from_rows(rows);
}

inline std::string to_csv(const WinProbTable& P) {
  std::ostringstream out;
  out.precision(17);
  for (int a = 0; a <= P.M(); ++a) {
    for (int b = 0; b <= P.M(); ++b) {
      if (b) out << ',';
      if (auto v = P.try_at(a, b))
        out << *v;
      else
        out << "NA";
    }
    out << '\n';
  }
  return out.str();
}

inline Json to_json(const PhiVector& phi) { return Json(phi.values()); }

// ------------------------------------------------------------ strategies

inline Json to_json(const StationaryStrategy& s) { return Json(s.bets()); }

inline StationaryStrategy strategy_from_json(Player owner, const Json& j) {
  if (!j.is_array()) throw DomainError("strategy JSON: expected an integer array");
  std::vector<int> bets;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw DomainError("strategy JSON: bets must be integers");
    bets.push_back(v.get<int>());
  }
  return {owner, std::move(bets)};
}

inline Json to_json(const Profile& p) {
  Json j;
  j["I"] = to_json(p.sigma_i);
  j["II"] = to_json(p.sigma_ii);
  return j;
}

inline Profile profile_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("I") || !j.contains("II"))
    throw DomainError("profile JSON: expected {\"I\": [...], \"II\": [...]}");
  return {strategy_from_json(Player::I, j["I"]), strategy_from_json(Player::II, j["II"])};
}

// --------------------------------------------------------------- reports

inline Json to_json(const Witness& w) {
  Json j;
  j["relation"] = w.relation;
  j["indices"] = w.indices;
  j["lhs"] = w.lhs;
  j["rhs"] = w.rhs;
  j["margin"] = w.margin;
  return j;
}

inline Json to_json(const CheckReport& r) {
  Json j;
  j["check"] = r.name();
  j["pass"] = r.pass();
  j["violations"] = r.violations();
  Json ws = Json::array();
  for (const auto& w : r.witnesses()) ws.push_back(to_json(w));
  j["witnesses"] = std::move(ws);
  j["skipped"] = r.skipped();
  j["unreachable"] = r.unreachable();
  j["evaluated"] = r.evaluated();
  j["tolerance"] = r.tolerance();
  return j;
}

inline Json to_json(const FairnessReport& f) {
  Json j;
  j["check"] = "fairness";
  j["classification"] = std::string(to_string(f.classification));
  j["subfair"] = to_json(f.subfair);
  j["superfair"] = to_json(f.superfair);
  return j;
}

inline Json to_json(const ValueVector& v) {
  Json j;
  j["Q"] = v.q;
  j["T"] = v.t;
  return j;
}

inline Json to_json(const HittingValues& h) {
  Json j;
  j["win_I"] = h.win_i;
  j["win_II"] = h.win_ii;
  j["absorbing"] = h.absorbing;
  j["converged"] = h.converged;
  j["sweeps"] = h.sweeps;
  return j;
}

inline Json to_json(const Deviation& d) {
  Json j;
  j["player"] = std::string(to_string(d.player));
  j["strategy"] = to_json(d.strategy);
  j["value"] = d.value;
  j["margin"] = d.margin;
  j["changed_fortunes"] = d.changed_fortunes;
  return j;
}

inline Json to_json(const EquilibriumCertificate& c) {
  Json j;
  j["profile"] = to_json(c.profile);
  j["x0"] = c.x0;
  j["equilibrium"] = c.equilibrium;
  j["method"] = std::string(to_string(c.method));
  j["scope"] = c.method == CertificateMethod::excessivity ? "all strategies"
                                                          : "stationary deterministic strategies";
  j["value_I"] = c.value_i;
  j["value_II"] = c.value_ii;
  j["on_path"] = c.on_path;
  j["class_size"] = c.class_size;
  j["deviation"] = c.deviation ? to_json(*c.deviation) : Json(nullptr);
  if (c.exc) j["exc"] = to_json(*c.exc);
  if (c.star) j["star"] = to_json(*c.star);
  return j;
}

inline Json to_json(const SimResult& r) {
  Json j;
  j["trials"] = r.trials;
  j["wins_I"] = r.wins_i;
  j["wins_II"] = r.wins_ii;
  j["truncated"] = r.truncated;
  j["empirical"] = r.empirical();
  j["mean_length"] = r.mean_length();
  j["max_length"] = r.max_steps;
  j["horizon"] = r.horizon;
  j["seed"] = r.seed;
  j["x0"] = r.x0;
  return j;
}

inline Json to_json(const Agreement& a) {
  Json j;
  j["exact"] = a.exact;
  j["empirical"] = a.empirical;
  j["z"] = std::isfinite(a.z) ? Json(a.z) : Json(nullptr);
  j["z_threshold"] = kZThreshold;
  j["truncated_fraction"] = a.truncated_fraction;
  j["degenerate"] = a.degenerate;
  j["valid"] = a.valid;
  j["pass"] = a.pass;
  j["note"] = a.note;
  return j;
}

inline Json trace_to_json(const std::vector<TraceStep>& steps) {
  Json out = Json::array();
  for (const auto& s : steps) out.push_back(Json::array({s.n, s.x, s.a, s.b}));
  return out;
}

inline std::string trace_to_csv(const std::vector<TraceStep>& steps) {
  std::ostringstream out;
  out << "n,X_n,a_n,b_n\n";
  for (const auto& s : steps) out << s.n << ',' << s.x << ',' << s.a << ',' << s.b << '\n';
  return out.str();
}

// ------------------------------------------------------------- families

/// {"kind": "power", "p": 2} | {"kind": "exp", "m": 1} |
/// {"kind": "explicit", "values": [0, ...]} | {"kind": "unit"}
inline FamilyMember member_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw DomainError("family member JSON: missing \"kind\"");
  const auto kind = j["kind"].get<std::string>();
  auto number = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_number())
      throw DomainError(std::string("family member JSON: \"") + key + "\" must be a number");
    return j[key].get<double>();
  };
  if (kind == "power") return FamilyMember::power(number("p"));
  if (kind == "exp") return FamilyMember::exp(number("m"));
  if (kind == "unit") return FamilyMember::unit();
  if (kind == "explicit") {
    if (!j.contains("values") || !j["values"].is_array())
      throw DomainError("family member JSON: \"values\" must be an array");
    return FamilyMember::explicit_values(j["values"].get<std::vector<double>>());
  }
  throw DomainError("family member JSON: unknown kind \"" + kind + "\"");
}

struct FamilySpec {
  std::vector<FamilyMember> members;
  int M = 0;
};

inline FamilySpec family_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("members") || !j["members"].is_array())
    throw DomainError("family JSON: expected {\"members\": [...], \"M\": int}");
  if (!j.contains("M") || !j["M"].is_number_integer())
    throw DomainError("family JSON: \"M\" must be an integer");
  FamilySpec spec;
  spec.M = j["M"].get<int>();
  for (const auto& m : j["members"]) spec.members.push_back(member_from_json(m));
  return spec;
}

}  // namespace redblack
