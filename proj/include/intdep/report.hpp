#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "intdep/checker.hpp"
#include "intdep/multiplicity.hpp"
#include "intdep/stats.hpp"

namespace intdep {

inline constexpr int report_schema_version = 1;

inline nlohmann::json to_json(const HypothesisReport& h) {
  return {{"dim_R", h.dim_R},     {"height_I", h.height_I}, {"height_J", h.height_J},
          {"dim_R_mod_I", h.dim_R_mod_I}, {"d_I", h.d_I}, {"d_J", h.d_J},
          {"d", h.d},             {"containment_ok", h.containment_ok}, {"domain_asserted", h.domain_asserted}};
}

inline nlohmann::json to_json(const Verdict& v) {
  nlohmann::json j;
  j["finite_colength"] = v.finite_colength;
  j["closures_equal"] = v.closures_equal ? nlohmann::json(*v.closures_equal) : nlohmann::json(nullptr);
  j["c"] = v.c_used;
  nlohmann::json w;
  w["r_diagonal_I"] = v.r_diagonal_I;
  w["r_diagonal_J"] = v.r_diagonal_J;
  if (v.s_diagonal_I) {
    w["s_diagonal_I"] = *v.s_diagonal_I;
    w["s_diagonal_J"] = *v.s_diagonal_J;
    j["pair"] = {v.finite_colength, *v.s_diagonal_I == *v.s_diagonal_J};
  }
  j["witnesses"] = w;
  j["criteria"] = v.criteria_cited;
  j["assumptions"] = v.assumptions;
  j["notes"] = v.notes;
  return j;
}

inline nlohmann::json to_json(const RAMultiplicities& ra) { return ra.values; }

inline nlohmann::json to_json(const EquigeneratedVerdict& v) {
  nlohmann::json j{{"closures_equal", v.closures_equal},
                   {"d_I", v.d_I},
                   {"d_J", v.d_J},
                   {"compared_indices", v.compared_indices}};
  if (v.ra_I) {
    j["ra_I"] = to_json(*v.ra_I);
    j["ra_J"] = to_json(*v.ra_J);
  }
  return j;
}

inline nlohmann::json to_json(const std::vector<MixedRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const MixedRow& r : rows) {
    out.push_back({{"index", r.index},
                   {"I", r.value_I},
                   {"J", r.value_J},
                   {"equal", r.equal},
                   {"forced_equal", r.forced_equal}});
  }
  return out;
}

inline nlohmann::json to_json(const MixedReport& m) {
  return {{"beta", m.beta},
          {"s_sample_c", m.s_sample_c},
          {"ra_I", to_json(m.ra_I)},
          {"ra_J", to_json(m.ra_J)},
          {"s_ra_I", to_json(m.s_ra_I)},
          {"s_ra_J", to_json(m.s_ra_J)},
          {"R", to_json(m.r_table)},
          {"S", to_json(m.s_table)},
          {"sharp_range", m.sharp_range},
          {"finite_colength", m.finite_colength},
          {"closures_equal", m.closures_equal}};
}

inline nlohmann::json to_json(const std::vector<FiberPieceRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const FiberPieceRow& r : rows) {
    out.push_back({{"n", r.n}, {"series", r.from_series.get_str()}, {"direct", r.direct}, {"match", r.match()}});
  }
  return out;
}

inline nlohmann::json stats_json() {
  const EngineStats& s = engine_stats();
  return {{"gb_runs", s.gb_runs.load()},
          {"spairs_reduced", s.spairs_reduced.load()},
          {"max_gb_size", s.max_gb_size.load()},
          {"max_coeff_bits", s.max_coeff_bits.load()},
          {"cache_hits", s.cache_hits.load()},
          {"cache_misses", s.cache_misses.load()}};
}

/// Re-derives every boolean of a `check` report from its witnesses.
inline bool check_report_consistent(const nlohmann::json& report) {
  if (report.contains("verdict")) {
    const auto& v = report.at("verdict");
    const auto& w = v.at("witnesses");
    const bool fc = w.at("r_diagonal_I") == w.at("r_diagonal_J");
    if (v.at("finite_colength").get<bool>() != fc) return false;
    if (w.contains("s_diagonal_I")) {
      const bool se = w.at("s_diagonal_I") == w.at("s_diagonal_J");
      if (v.at("closures_equal").get<bool>() != (fc && se)) return false;
      if (v.at("pair") != nlohmann::json{fc, se}) return false;
    }
  }
  if (report.contains("mixed")) {
    const auto& m = report.at("mixed");
    const bool sharp = m.at("sharp_range").get<bool>();
    auto table_ok = [&](const nlohmann::json& rows) {
      bool all = true;
      for (const auto& r : rows) {
        if (r.at("equal").get<bool>() != (r.at("I") == r.at("J"))) return std::pair{false, false};
        if (!(sharp && r.at("forced_equal").get<bool>()) && !r.at("equal").get<bool>()) all = false;
      }
      return std::pair{true, all};
    };
    const auto [r_ok, r_all] = table_ok(m.at("R"));
    const auto [s_ok, s_all] = table_ok(m.at("S"));
    if (!r_ok || !s_ok) return false;
    if (m.at("finite_colength").get<bool>() != r_all) return false;
    if (m.at("closures_equal").get<bool>() != (r_all && s_all)) return false;
  }
  return true;
}

}  // namespace intdep
