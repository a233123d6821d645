#include "hyperbolic/cli/reports.hpp"

#include "hyperbolic/oracle_json.hpp"

namespace hyperbolic::cli {

using nlohmann::json;

json to_json(const RootSpectrum& s) { return s.roots; }

json to_json(const Composition& c) { return c.entries; }

json to_json(const SupportSet& s) {
  json members = json::array();
  for (const auto& m : s.members) members.push_back({{"r", m.r.entries}, {"value", m.value}});
  return {{"support", members}, {"threshold", s.threshold}};
}

json to_json(const SaturationReport& r) {
  json out = to_json(r.support);
  json violations = json::array();
  for (const auto& v : r.violations) violations.push_back(v.entries);
  out["saturated"] = r.saturated;
  out["violations"] = violations;
  return out;
}

json to_json(const AfReport& r) {
  return {{"residual", r.residual}, {"scale", r.scale}, {"holds", r.holds()},
          {"inputs_nonnegative", r.inputs_nonnegative}};
}

json to_json(const ScalingReport& r) {
  json out = {{"converged", r.converged},
              {"iterations", r.iterations},
              {"defect_history", r.defect_history},
              {"energy_history", r.energy_history},
              {"capacity_verdict", to_string(r.verdict)},
              {"edmonds_rado", to_json(r.rank_check)}};
  out["first_below_inverse_n"] = r.first_below_inverse_n ? json(*r.first_below_inverse_n) : json(nullptr);
  if (!r.final_state.traces.empty()) {
    out["final_defect"] = r.final_state.defect;
    out["multiplier"] = r.final_state.multiplier;
    out["final_tuple"] = tuple_to_json(r.final_state.tuple)["points"];
  }
  return out;
}

json to_json(const CapacityResult& r) {
  json out = {{"value", r.value},
              {"minimizer", r.minimizer},
              {"gradient_norm", r.gradient_norm},
              {"status", to_string(r.status)},
              {"iterations", r.iterations}};
  if (r.rank_witness) {
    std::vector<int> w;
    for (int i : *r.rank_witness) w.push_back(i + 1);
    out["witness"] = w;
  }
  return out;
}

json to_json(const EdmondsRadoReport& r) {
  json out = {{"holds", r.holds}};
  if (r.witness) {
    std::vector<int> w;
    for (int i : *r.witness) w.push_back(i + 1);
    out["witness"] = w;
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

json to_json(const PairReport& r) {
  json out = {{"verdict", to_string(r.verdict)},
              {"residues", r.residues},
              {"constant_term", r.constant_term},
              {"roots_of_q", r.roots_of_q.roots}};
  if (r.counterexample_direction)
    out["counterexample_direction"] = {r.counterexample_direction->first, r.counterexample_direction->second};
  else
    out["counterexample_direction"] = nullptr;
  return out;
}

json to_json(const MajorizationReport& r) {
  return {{"majorized", r.majorized}, {"prefix_gaps", r.prefix_gaps}, {"total_gap", r.total_gap}};
}

json to_json(const CorollaryReport& r) {
  json out = to_json(r.majorization);
  out["ord_x"] = r.ord_x;
  out["ord_x_delta"] = r.ord_x_delta;
  out["ord_delta"] = r.ord_delta;
  return out;
}

json to_json(const LineConvexityReport& r) {
  const auto opt = [](const std::optional<bool>& v) { return v ? json(*v) : json(nullptr); };
  return {{"convex", r.convex},
          {"real_rooted", r.real_rooted},
          {"min_at_zero", opt(r.min_at_zero)},
          {"sum_constant", opt(r.sum_constant)},
          {"majorization_chain", opt(r.majorization_chain)},
          {"values", r.values},
          {"worst_convexity_slack", r.worst_convexity_slack}};
}

namespace {

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ' ';
      s += v[i].is_primitive() ? scalar_text(v[i]) : v[i].dump();
    }
    return s;
  }
  return v.dump();
}

void write_text(std::ostream& out, const json& v, const std::string& prefix) {
  if (v.is_object()) {
    for (const auto& [key, value] : v.items())
      write_text(out, value, prefix.empty() ? key : prefix + "." + key);
    return;
  }
  out << (prefix.empty() ? "value" : prefix) << ": " << scalar_text(v) << '\n';
}

}  // namespace

void write_report(std::ostream& out, const json& report, OutputFormat format) {
  if (format == OutputFormat::json) {
    out << report.dump(2) << '\n';
  } else {
    write_text(out, report, "");
  }
}

}  // namespace hyperbolic::cli
