#pragma once

#include <string>
#include <utility>

#include "json.hpp"
#include "params.hpp"
#include "phi.hpp"
#include "tensor.hpp"

namespace imwak {

using Json = nlohmann::json;  // object keys are kept sorted (std::map), so
                              // serialized reports are canonical per content

inline Json json_of(const Scalar& c) { return to_string(c); }

inline Json json_of_term(const FockMonomial& m, const Scalar& c) {
  Json t;
  t["a"] = m.a;
  t["b"] = m.b;
  t["c"] = to_string(c);
  return t;
}

inline Json json_of(const FockVector& v) {
  Json arr = Json::array();
  for (const auto& [mono, c] : v.terms) arr.push_back(json_of_term(mono, c));
  return arr;
}

inline Json json_of(const TensorVector& t) {
  Json out;
  out["offset"] = to_string(t.offset);
  out["complete_through"] = t.complete_through;
  Json arr = Json::array();
  for (const auto& [key, c] : t.data.terms) {
    Json term = json_of_term(key.mono, c);
    term["j"] = key.j;
    term["z"] = key.z;
    arr.push_back(term);
  }
  out["terms"] = arr;
  return out;
}

// Slots are emitted as an array ordered by slot index so that negative slots
// serialize in numeric (not lexicographic-key) order.
inline Json json_of(const PhiSeries& s) {
  Json out;
  out["offset"] = to_string(s.offset);
  out["complete_through"] = s.complete_through;
  Json slots = Json::array();
  for (const auto& [z, content] : s.slots) {
    Json slot;
    slot["z"] = z;
    slot["terms"] = json_of(content);
    slots.push_back(slot);
  }
  out["slots"] = slots;
  return out;
}

inline const char* convention_name(DeltaConvention c) {
  switch (c) {
    case DeltaConvention::affine: return "affine";
    case DeltaConvention::virasoro: return "virasoro";
    default: return "custom";
  }
}

inline Json json_of(const Params& p) {
  Json out;
  out["lambda"] = to_string(p.lambda);
  out["kappa"] = to_string(p.kappa);
  out["mu"] = to_string(p.mu);
  out["b_level"] = to_string(p.b_level);
  out["m_weight"] = p.m_weight;
  out["beta1"] = to_string(p.beta1);
  out["delta_convention"] = convention_name(p.delta_convention);
  return out;
}

// Two-tier verification report. Tier-1 failures drive the process exit code;
// tier-2 entries are measured data (residual series, extracted constants)
// recorded for inspection and golden-file comparison. Nothing time- or
// host-dependent may enter: reports must be byte-identical for fixed inputs.
struct VerificationReport {
  std::string suite;
  Json config = Json::object();
  long tier1_checks = 0;
  Json tier1_failures = Json::array();
  Json tier2 = Json::array();
  Json skipped = Json::array();

  bool tier1_ok() const { return tier1_failures.empty(); }

  void check(bool ok, const std::string& name, Json details = Json::object()) {
    ++tier1_checks;
    if (!ok) {
      Json f;
      f["check"] = name;
      f["details"] = std::move(details);
      tier1_failures.push_back(std::move(f));
    }
  }

  void record(const std::string& name, Json data) {
    Json e;
    e["name"] = name;
    e["data"] = std::move(data);
    tier2.push_back(std::move(e));
  }

  void skip(const std::string& name, const std::string& reason) {
    Json e;
    e["check"] = name;
    e["reason"] = reason;
    skipped.push_back(std::move(e));
  }

  Json to_json() const {
    Json out;
    out["suite"] = suite;
    out["config"] = config;
    Json t1;
    t1["checks"] = tier1_checks;
    t1["failures"] = tier1_failures;
    t1["ok"] = tier1_ok();
    out["tier1"] = t1;
    out["tier2"] = tier2;
    out["skipped"] = skipped;
    return out;
  }

  std::string dump() const { return to_json().dump(2) + "\n"; }
};

}  // namespace imwak
