#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "futurity/errors.hpp"
#include "futurity/machine_spec.hpp"
#include "futurity/rational.hpp"
#include "futurity/reel_machine.hpp"

namespace futurity {

// Machine-spec documents are JSON with one of two shapes:
//
//   { "J": 10, "distributions": [ { "atoms": [ { "payout": 0, "prob": "121/125" },
//                                              ... ] }, ... ] }
//
//   { "J": 10, "reels": [[20 symbols] x3], "mode_pattern": "EEEEEOEEEO",
//     "paytable": [ { "symbols": [5,5,5], "payout": 150 }, ... ] }
//
// Probabilities written as strings ("968/1000", "0.968") are kept exact; a
// JSON number anywhere in a distribution drops that distribution to plain
// doubles. Unknown fields are rejected, not ignored.

namespace detail {

inline void check_keys(const nlohmann::json& obj, std::vector<std::string> allowed,
                       const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const auto& k : allowed) ok = ok || k == it.key();
    if (!ok) throw SpecParseError("unknown field '" + it.key() + "' in " + where);
  }
}

inline std::int64_t get_int(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number_integer()) throw SpecParseError(where + " must be an integer");
  return v.get<std::int64_t>();
}

inline PayoutDistribution parse_distribution(const nlohmann::json& jd, int index) {
  const std::string where = "distributions[" + std::to_string(index) + "]";
  if (!jd.is_object()) throw SpecParseError(where + " must be an object");
  check_keys(jd, {"atoms"}, where);
  if (!jd.contains("atoms") || !jd["atoms"].is_array() || jd["atoms"].empty())
    throw SpecParseError(where + " needs a nonempty 'atoms' array");

  bool all_exact = true;
  std::vector<std::pair<std::int64_t, Rational>> exact;
  std::vector<PayoutDistribution::Atom> plain;
  for (const auto& ja : jd["atoms"]) {
    if (!ja.is_object()) throw SpecParseError(where + " atoms must be objects");
    check_keys(ja, {"payout", "prob"}, where + " atom");
    if (!ja.contains("payout") || !ja.contains("prob"))
      throw SpecParseError(where + " atom needs 'payout' and 'prob'");
    std::int64_t payout = get_int(ja["payout"], where + " payout");
    const auto& jp = ja["prob"];
    if (jp.is_string()) {
      Rational r(0);
      try {
        r = Rational::parse(jp.get<std::string>());
      } catch (const std::exception& e) {
        throw SpecParseError(where + " probability: " + e.what());
      }
      exact.emplace_back(payout, r);
      plain.push_back({payout, r.to_double()});
    } else if (jp.is_number()) {
      all_exact = false;
      plain.push_back({payout, jp.get<double>()});
    } else {
      throw SpecParseError(where + " probability must be a string or number");
    }
  }
  try {
    return all_exact ? PayoutDistribution::from_rationals(std::move(exact))
                     : PayoutDistribution::from_probs(std::move(plain));
  } catch (const DomainError&) {
    throw;
  }
}

inline MachineSpec parse_distribution_doc(const nlohmann::json& j) {
  check_keys(j, {"J", "distributions"}, "machine spec");
  if (!j.contains("J")) throw SpecParseError("machine spec needs 'J'");
  int J = static_cast<int>(get_int(j["J"], "J"));
  if (!j.contains("distributions") || !j["distributions"].is_array())
    throw SpecParseError("machine spec needs a 'distributions' array");
  std::vector<PayoutDistribution> dists;
  int index = 0;
  for (const auto& jd : j["distributions"]) dists.push_back(parse_distribution(jd, index++));
  return MachineSpec::make(J, std::move(dists));
}

inline MachineSpec parse_reel_doc(const nlohmann::json& j) {
  check_keys(j, {"J", "reels", "paytable", "mode_pattern"}, "machine spec");
  ReelMachine rm;
  if (!j.contains("reels") || !j["reels"].is_array() || j["reels"].size() != 3)
    throw SpecParseError("'reels' must be an array of 3 strips");
  for (int r = 0; r < 3; ++r) {
    const auto& strip = j["reels"][r];
    if (!strip.is_array() || strip.size() != 20)
      throw SpecParseError("each reel strip must have 20 symbols");
    for (int t = 0; t < 20; ++t)
      rm.reels[r][t] = static_cast<int>(get_int(strip[t], "reel symbol"));
  }
  if (!j.contains("paytable") || !j["paytable"].is_array())
    throw SpecParseError("machine spec needs a 'paytable' array");
  for (const auto& je : j["paytable"]) {
    if (!je.is_object()) throw SpecParseError("paytable entries must be objects");
    check_keys(je, {"symbols", "payout"}, "paytable entry");
    if (!je.contains("symbols") || !je["symbols"].is_array() || je["symbols"].size() != 3)
      throw SpecParseError("paytable entry needs a 3-symbol array");
    std::array<int, 3> sym{};
    for (int t = 0; t < 3; ++t)
      sym[t] = static_cast<int>(get_int(je["symbols"][t], "paytable symbol"));
    if (!je.contains("payout")) throw SpecParseError("paytable entry needs 'payout'");
    rm.paytable[sym] = get_int(je["payout"], "paytable payout");
  }
  if (!j.contains("mode_pattern") || !j["mode_pattern"].is_string())
    throw SpecParseError("machine spec needs a 'mode_pattern' string");
  rm.mode_pattern = j["mode_pattern"].get<std::string>();
  int J = j.contains("J") ? static_cast<int>(get_int(j["J"], "J")) : 10;
  return to_machine_spec(rm, J);
}

}  // namespace detail

inline MachineSpec parse_machine_spec_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw SpecParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SpecParseError("machine spec must be a JSON object");
  if (j.contains("reels")) return detail::parse_reel_doc(j);
  return detail::parse_distribution_doc(j);
}

inline MachineSpec load_machine_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_machine_spec_text(buf.str());
}

inline std::string dump_machine_spec(const MachineSpec& spec) {
  nlohmann::ordered_json j;
  j["J"] = spec.J();
  j["distributions"] = nlohmann::ordered_json::array();
  for (const auto& dist : spec.dists()) {
    nlohmann::ordered_json atoms = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < dist.atoms().size(); ++k) {
      nlohmann::ordered_json atom;
      atom["payout"] = dist.atoms()[k].payout;
      if (dist.has_exact())
        atom["prob"] = dist.exact_probs()[k].str();
      else
        atom["prob"] = dist.atoms()[k].prob;
      atoms.push_back(atom);
    }
    nlohmann::ordered_json jd;
    jd["atoms"] = std::move(atoms);
    j["distributions"].push_back(std::move(jd));
  }
  return j.dump(2) + "\n";
}

inline std::string dump_reel_machine(const ReelMachine& rm, int J = 10) {
  validate(rm);
  nlohmann::ordered_json j;
  j["J"] = J;
  j["mode_pattern"] = rm.mode_pattern;
  j["reels"] = nlohmann::ordered_json::array();
  for (const auto& strip : rm.reels) j["reels"].push_back(strip);
  j["paytable"] = nlohmann::ordered_json::array();
  for (const auto& [sym, pay] : rm.paytable) {
    nlohmann::ordered_json je;
    je["symbols"] = sym;
    je["payout"] = pay;
    j["paytable"].push_back(std::move(je));
  }
  return j.dump(2) + "\n";
}

// "builtin:futurity1936" or a path to a machine-spec document.
inline MachineSpec machine_from_uri(const std::string& uri) {
  const std::string prefix = "builtin:";
  if (uri.rfind(prefix, 0) == 0) {
    std::string name = uri.substr(prefix.size());
    if (name == "futurity1936") return futurity1936();
    throw SpecParseError("unknown builtin machine '" + name + "'");
  }
  return load_machine_spec(uri);
}

}  // namespace futurity
