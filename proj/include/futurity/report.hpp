#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "futurity/equilibrium.hpp"
#include "futurity/expectation_table.hpp"
#include "futurity/limit_theorems.hpp"
#include "futurity/two_armed.hpp"

namespace futurity {

enum class OutFormat { csv, doc };

inline std::string fmt_fixed(double x, int dp) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", dp, x);
  return buf;
}

// Ordered key/value report: rendered either as two-column CSV (doubles fixed
// to dp places) or as a JSON document (full-precision numbers).
using KvList = std::vector<std::pair<std::string, nlohmann::ordered_json>>;

inline void emit_kv(const KvList& kv, OutFormat fmt, int dp, std::ostream& os) {
  if (fmt == OutFormat::doc) {
    nlohmann::ordered_json j;
    for (const auto& [k, v] : kv) j[k] = v;
    os << j.dump(2) << "\n";
    return;
  }
  os << "quantity,value\n";
  for (const auto& [k, v] : kv) {
    os << k << ",";
    if (v.is_number_float())
      os << fmt_fixed(v.get<double>(), dp);
    else
      os << v.dump();
    os << "\n";
  }
}

// Stationary-law matrix: one row per cam position, one column per pointer
// value, plus the exact row-sum column (every cam row sums to 1/I).
inline void emit_table3(const StationaryLaw& law, OutFormat fmt, int dp, std::ostream& os) {
  if (fmt == OutFormat::doc) {
    nlohmann::ordered_json j;
    j["I"] = law.I;
    j["J"] = law.J;
    j["row_sum"] = "1/" + std::to_string(law.I);
    j["pi"] = nlohmann::ordered_json::array();
    for (int i = 0; i < law.I; ++i) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (int jj = 0; jj < law.J; ++jj) row.push_back(law.at(i, jj));
      j["pi"].push_back(std::move(row));
    }
    os << j.dump(2) << "\n";
    return;
  }
  os << "cam";
  for (int jj = 0; jj < law.J; ++jj) os << "," << jj;
  os << ",row_sum\n";
  for (int i = 0; i < law.I; ++i) {
    os << i;
    for (int jj = 0; jj < law.J; ++jj) os << "," << fmt_fixed(law.at(i, jj), dp);
    os << ",1/" << law.I << "\n";
  }
}

inline void emit_table4(const ExpectationTable& tab, OutFormat fmt, int dp, std::ostream& os) {
  if (fmt == OutFormat::doc) {
    nlohmann::ordered_json j;
    j["I"] = tab.I;
    j["J"] = tab.J;
    j["equilibrium_value"] = tab.equilibrium_value;
    j["E"] = nlohmann::ordered_json::array();
    for (int i = 0; i < tab.I; ++i) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (int jj = 0; jj < tab.J; ++jj) row.push_back(tab.at(i, jj));
      j["E"].push_back(std::move(row));
    }
    os << j.dump(2) << "\n";
    return;
  }
  os << "cam";
  for (int jj = 0; jj < tab.J; ++jj) os << "," << jj;
  os << "\n";
  for (int i = 0; i < tab.I; ++i) {
    os << i;
    for (int jj = 0; jj < tab.J; ++jj) os << "," << fmt_fixed(tab.at(i, jj), dp);
    os << "\n";
  }
}

inline void emit_sweep(const SweepReport& rep, OutFormat fmt, std::ostream& os) {
  if (fmt == OutFormat::doc) {
    nlohmann::ordered_json j;
    j["violations"] = rep.violations;
    j["min_abs_gap"] = rep.min_abs_gap;
    j["rows"] = nlohmann::ordered_json::array();
    for (const SweepRow& r : rep.rows) {
      nlohmann::ordered_json row;
      row["J"] = r.J;
      row["r"] = r.r;
      row["s"] = r.s;
      row["p_A"] = r.p_A;
      row["p_B"] = r.p_B;
      row["cond_a"] = r.cond_a;
      row["cond_b"] = r.cond_b;
      row["cond_c"] = r.cond_c;
      row["cond_d"] = r.cond_d;
      row["divides"] = r.divides;
      row["gap"] = r.gap;
      j["rows"].push_back(std::move(row));
    }
    os << j.dump(2) << "\n";
    return;
  }
  os << "# points=" << rep.rows.size() << " violations=" << rep.violations
     << " min_abs_gap=" << fmt_fixed(rep.min_abs_gap, 9) << "\n";
  os << "J,r,s,p_A,p_B,cond_a,cond_b,cond_c,cond_d,divides,gap\n";
  char buf[64];
  for (const SweepRow& r : rep.rows) {
    std::snprintf(buf, sizeof buf, "%.9e", r.gap);
    os << r.J << "," << r.r << "," << r.s << "," << fmt_fixed(r.p_A, 2) << ","
       << fmt_fixed(r.p_B, 2) << "," << r.cond_a << "," << r.cond_b << "," << r.cond_c
       << "," << r.cond_d << "," << r.divides << "," << buf << "\n";
  }
}

// Long-form curve output: one row per (strategy, coup).
inline void emit_curves(const std::vector<std::pair<std::string, std::vector<double>>>& curves,
                        OutFormat fmt, int dp, std::ostream& os) {
  if (fmt == OutFormat::doc) {
    nlohmann::ordered_json j;
    for (const auto& [label, ys] : curves) j[label] = ys;
    os << j.dump(2) << "\n";
    return;
  }
  os << "coup,strategy,casino_profit\n";
  for (const auto& [label, ys] : curves)
    for (std::size_t t = 0; t < ys.size(); ++t)
      os << (t + 1) << "," << label << "," << fmt_fixed(ys[t], dp) << "\n";
}

}  // namespace futurity
