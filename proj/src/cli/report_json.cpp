#include "report_json.hpp"

#include <cmath>

#include "evdom/matrix_io.hpp"

namespace evdom::cli {

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

namespace {

Json witness_json(const Witness& w) {
  Json out;
  out["x"] = to_json(w.x);
  out["t"] = w.t;
  return out;
}

Json detailed_witness(const Witness& w) {
  Json out = witness_json(w);
  out["coordinate"] = w.coordinate;
  out["violation"] = w.violation;
  return out;
}

Json modes(const std::vector<ModeTerm>& terms) {
  Json out = Json::array();
  for (const auto& m : terms) out.push_back(Json::array({m.rate, m.gauge_sq}));
  return out;
}

}  // namespace

Json to_json(const HypothesisReport& h) {
  Json out;
  out["verified"] = h.verified();
  out["a_metzler"] = h.a_metzler;
  out["a_certified"] = h.a_certified;
  if (h.a_refusal != RefusalReason::kNone) out["a_refusal"] = to_string(h.a_refusal);
  if (!h.a_detail.empty()) out["a_detail"] = h.a_detail;
  out["b_metzler"] = h.b_metzler;
  out["b_certified"] = h.b_certified;
  if (h.b_refusal != RefusalReason::kNone) out["b_refusal"] = to_string(h.b_refusal);
  if (!h.b_detail.empty()) out["b_detail"] = h.b_detail;
  out["a_self_adjoint"] = h.a_self_adjoint;
  out["b_self_adjoint"] = h.b_self_adjoint;
  out["common_weight"] = h.common_weight;
  return out;
}

Json to_json(const DominationVerdict& v) {
  Json out;
  out["kind"] = to_string(v.kind);
  out["spb_a"] = v.spb_a;
  out["spb_b"] = v.spb_b;
  if (v.certified_t1) out["certified_t1"] = *v.certified_t1;
  if (v.certified_delta) out["certified_delta"] = *v.certified_delta;
  if (v.empirical_t1) out["empirical_t1"] = *v.empirical_t1;
  if (v.witness) out["witness"] = witness_json(*v.witness);
  out["hypotheses"] = to_json(v.hypotheses);
  return out;
}

Json to_json(const CertifiedTimeReport& r, const std::vector<VerificationPoint>& checks) {
  Json out;
  out["t1"] = r.t1;
  out["delta"] = r.delta;
  out["c"] = r.c;
  out["M"] = r.M;
  out["series_value_at_t1"] = r.series_value_at_t1;
  out["shift"] = r.shift;
  out["weight_ratio"] = r.weight_ratio;
  out["paper_faithful"] = r.paper_faithful;
  Json verification = Json::array();
  for (const auto& p : checks) verification.push_back(Json{{"t", p.t}, {"margin", p.margin}});
  out["verification"] = verification;
  out["per_mode_terms"] = Json{{"b", modes(r.b_terms)}, {"a", modes(r.a_terms)}};
  return out;
}

Json to_json(const EmpiricalReport& r) {
  Json out;
  out["grid"] = r.grid;
  out["per_time_min_entry"] = r.per_time_min_entry;
  if (r.crossover) out["crossover"] = *r.crossover;
  out["samples_tested"] = r.samples_tested;
  if (r.witness) out["witness"] = detailed_witness(*r.witness);
  return out;
}

Json to_json(const OrbitReport& r) {
  Json out;
  out["kind"] = to_string(r.kind);
  if (r.from_time) out["from_time"] = *r.from_time;
  if (r.a_fails) out["a_fails"] = detailed_witness(*r.a_fails);
  if (r.b_fails) out["b_fails"] = detailed_witness(*r.b_fails);
  out["grid"] = r.grid;
  out["min_difference"] = r.min_difference;
  out["max_difference"] = r.max_difference;
  return out;
}

namespace {

void dump17_into(std::string& out, const Json& j, int indent, int depth) {
  const auto newline = [&](int level) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * level), ' ');
  };
  if (j.is_number_float()) {
    const double x = j.get<double>();
    out += std::isfinite(x) ? format_double(x) : "null";
  } else if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += '{';
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ',';
      first = false;
      newline(depth + 1);
      out += Json(it.key()).dump();
      out += indent < 0 ? ":" : ": ";
      dump17_into(out, it.value(), indent, depth + 1);
    }
    newline(depth);
    out += '}';
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    out += '[';
    bool first = true;
    for (const auto& v : j) {
      if (!first) out += ',';
      first = false;
      newline(depth + 1);
      dump17_into(out, v, indent, depth + 1);
    }
    newline(depth);
    out += ']';
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string dump17(const Json& j, int indent) {
  std::string out;
  dump17_into(out, j, indent, 0);
  return out;
}

}  // namespace evdom::cli
