#pragma once

// JSON renderings of experiment and parameter-check reports. Key order is fixed
// (ordered_json) and wall-clock fields are emitted only on request, so a rerun
// with the same seed produces the same bytes.

#include <json.hpp>

#include "ntrulab/analysis.hpp"
#include "ntrulab/harness/experiment.hpp"

namespace ntrulab::harness {

using Json = nlohmann::ordered_json;

struct ReportOptions {
  bool include_run_info = false;  // basis_cache_hit and timings
};

inline Json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return x.convert_to<std::int64_t>();
  return x.str();
}

inline Json poly_json(const ring::ConvPoly& p) {
  Json arr = Json::array();
  for (const auto& c : p.coeffs()) arr.push_back(integer_json(c));
  return arr;
}

inline std::string to_string(attack::CvpMode m) {
  switch (m) {
    case attack::CvpMode::automatic: return "auto";
    case attack::CvpMode::babai: return "babai";
    case attack::CvpMode::exact: return "exact";
  }
  return "?";
}

inline attack::CvpMode parse_cvp_mode(const std::string& s) {
  if (s == "auto") return attack::CvpMode::automatic;
  if (s == "babai") return attack::CvpMode::babai;
  if (s == "exact") return attack::CvpMode::exact;
  throw ParameterError("unknown CVP mode '" + s + "' (auto, babai, exact)");
}

inline Json spec_json(const ExperimentSpec& spec) {
  Json j;
  j["example"] = spec.example ? Json(*spec.example) : Json(nullptr);
  j["N"] = spec.params.n;
  j["p"] = spec.params.p;
  j["q"] = spec.params.q;
  j["d"] = spec.params.d;
  j["y"] = spec.attack.y;
  j["R"] = spec.attack.R;
  j["rn_guess"] = spec.attack.rn_guess.coeffs().empty() ? Json("zero") : poly_json(spec.attack.rn_guess);
  j["a_strategy"] = attack::to_string(spec.attack.a_strategy);
  j["max_oracle_calls"] = spec.attack.max_oracle_calls;
  j["trials"] = spec.trials;
  j["seed"] = spec.seed;
  j["cvp"] = to_string(spec.cvp);
  j["lll"] = {{"delta", spec.reduction.delta},
              {"mode", spec.reduction.mode == lattice::PrecisionMode::exact_rational ? "exact" : "float"},
              {"mantissa_bits", spec.reduction.mantissa_bits},
              {"certify", spec.reduction.certify}};
  return j;
}

inline Json paper_expectation_json(const ExperimentSpec& spec) {
  if (!spec.example) return nullptr;
  const Preset& p = preset(*spec.example);
  return {{"N", p.n}, {"d", p.d}, {"R", p.R}, {"note", "published radius at full scale; recorded, not asserted"}};
}

inline Json trial_json(const TrialResult& t, const ReportOptions& opts) {
  Json j;
  j["index"] = t.index;
  j["instance_seed"] = t.instance_seed;
  j["oracle_calls_used"] = t.oracle_calls_used;
  j["success"] = t.success;
  j["verified_nonce"] = t.verified_nonce;
  j["indeterminate"] = t.indeterminate;
  j["message_matches"] = t.message_matches;
  if (opts.include_run_info) j["wall_time"] = t.wall_time;
  return j;
}

inline Json experiment_json(const ExperimentReport& rep, const ReportOptions& opts = {}) {
  Json j;
  j["schema"] = "ntrulab.experiment/1";
  j["spec"] = spec_json(rep.spec);
  j["expected_by_paper"] = paper_expectation_json(rep.spec);
  j["a"] = poly_json(rep.a);
  j["cvp_used"] = rep.exact_cvp ? "exact" : "babai";
  j["successes"] = rep.successes;
  j["success_rate"] = rep.success_rate;
  Json trials = Json::array();
  for (const auto& t : rep.trials) trials.push_back(trial_json(t, opts));
  j["trials"] = std::move(trials);
  if (opts.include_run_info)
    j["run"] = {{"basis_cache_hit", rep.basis_cache_hit}, {"lll_seconds", rep.lll_seconds}, {"wall_seconds", rep.wall_seconds}};
  return j;
}

inline Json sweep_json(const std::vector<ExperimentReport>& sweep, const ReportOptions& opts = {}) {
  Json j;
  j["schema"] = "ntrulab.sweep/1";
  ExperimentSpec base = sweep.front().spec;
  Json spec = spec_json(base);
  spec.erase("R");
  Json radii = Json::array();
  for (const auto& r : sweep) radii.push_back(r.spec.attack.R);
  spec["R_values"] = std::move(radii);
  j["spec"] = std::move(spec);
  j["expected_by_paper"] = paper_expectation_json(base);
  j["a"] = poly_json(sweep.front().a);
  j["cvp_used"] = sweep.front().exact_cvp ? "exact" : "babai";
  Json points = Json::array();
  for (const auto& r : sweep) {
    long calls = 0;
    for (const auto& t : r.trials) calls += t.oracle_calls_used;
    Json pt;
    pt["R"] = r.spec.attack.R;
    pt["successes"] = r.successes;
    pt["success_rate"] = r.success_rate;
    pt["mean_oracle_calls"] = static_cast<double>(calls) / static_cast<double>(r.trials.size());
    Json trials = Json::array();
    for (const auto& t : r.trials) trials.push_back(trial_json(t, opts));
    pt["trials"] = std::move(trials);
    points.push_back(std::move(pt));
  }
  j["points"] = std::move(points);
  const auto star = threshold_radius(sweep);
  j["threshold_R_star"] = star ? Json(*star) : Json(nullptr);
  if (opts.include_run_info) {
    double wall = 0;
    for (const auto& r : sweep) wall += r.wall_seconds;
    j["run"] = {{"basis_cache_hit", sweep.front().basis_cache_hit},
                {"lll_seconds", sweep.front().lll_seconds},
                {"wall_seconds", wall + sweep.front().lll_seconds}};
  }
  return j;
}

inline Json tri_json(analysis::Tri t) {
  if (t == analysis::Tri::not_evaluated) return "not-evaluated";
  return t == analysis::Tri::yes;
}

inline Json param_check_json(const analysis::ParamCheckReport& r, const std::optional<ring::ConvPoly>& a,
                             const std::string& a_source, std::uint64_t seed) {
  Json j;
  j["schema"] = "ntrulab.check-params/1";
  j["N"] = r.n;
  j["q"] = integer_json(r.q);
  j["y"] = r.y;
  j["R"] = r.R;
  j["a_source"] = a_source;
  j["seed"] = seed;
  j["a"] = a ? poly_json(*a) : Json(nullptr);
  j["gh_estimate"] = r.gh_estimate;
  j["gh_adjusted"] = r.gh_adjusted;
  j["q_root"] = r.q_root;
  j["heuristic_lhs"] = r.heuristic_lhs;
  j["lambda1"] = r.lambda1 ? Json(*r.lambda1) : Json(nullptr);
  j["lambda1_squared"] = r.lambda1_squared ? integer_json(*r.lambda1_squared) : Json(nullptr);
  j["heuristic_ok"] = tri_json(r.heuristic_ok);
  j["heuristic_exact_constant_ok"] = tri_json(r.heuristic_exact_constant_ok);
  j["assumption_ok"] = tri_json(r.assumption_ok);
  j["appendixA_ok"] = tri_json(r.appendixA_ok);
  j["remark3_ok"] = tri_json(r.remark3_ok);
  j["remark3_y_bound"] = r.remark3_y_bound;
  j["heuristic_disagrees_with_exact"] = r.heuristic_disagrees_with_exact;
  return j;
}

}  // namespace ntrulab::harness
