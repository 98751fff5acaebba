#pragma once

#include <string>

#include <json.hpp>

#include "fqcount/bounds.hpp"
#include "fqcount/codes.hpp"
#include "fqcount/varieties.hpp"

namespace fqcount {

using Json = nlohmann::ordered_json;

// Exact integers up to 64 bits are emitted as JSON numbers, anything larger
// as a decimal string.
inline Json json_int(const BigInt& v) {
  if (v >= 0 && v <= BigInt(UINT64_MAX)) return static_cast<uint64_t>(v);
  if (v < 0 && v >= BigInt(INT64_MIN)) return static_cast<int64_t>(v);
  return v.str();
}

inline Json to_json(const BoundResult& b) {
  Json params = Json::object();
  for (const auto& [key, value] : b.params) params[key] = json_int(value);
  Json out;
  out["name"] = to_string(b.name);
  out["value"] = json_int(b.value);
  out["params"] = params;
  out["hypothesis_ok"] = b.hypothesis_ok;
  out["note"] = b.note;
  return out;
}

inline Json to_json(const CountReport& r, const FieldSpec& F, bool include_timing = true) {
  Json out;
  out["count"] = r.count;
  out["d"] = r.d;
  out["m"] = r.m;
  out["r"] = r.r;
  out["q"] = r.q;
  out["method"] = to_string(r.method);
  if (r.method == SearchMode::randomized) {
    out["seed"] = r.seed;
    out["budget"] = r.budget;
  }
  Json witness = Json::array();
  for (const auto& f : r.witness) witness.push_back(to_string(f, F));
  out["witness"] = witness;
  if (include_timing) out["elapsed_ms"] = r.elapsed_ms;
  return out;
}

inline Json to_json(const std::vector<GapRow>& rows) {
  Json arr = Json::array();
  for (const auto& row : rows) {
    Json j;
    j["r"] = row.r;
    j["k"] = row.k;
    j["i"] = row.i;
    j["T_r"] = json_int(row.tb);
    j["Z_r"] = json_int(row.zanella);
    j["gap"] = json_int(row.gap);
    arr.push_back(j);
  }
  return arr;
}

inline std::string census_csv(const std::vector<GapRow>& rows) {
  std::string out = "r,k,i,T_r,Z_r,gap\n";
  for (const auto& row : rows) {
    out += std::to_string(row.r) + "," + std::to_string(row.k) + "," + std::to_string(row.i) + "," +
           row.tb.str() + "," + row.zanella.str() + "," + row.gap.str() + "\n";
  }
  return out;
}

inline Json to_json(const WeightHierarchy& h) {
  Json out;
  out["label"] = h.label;
  out["method"] = to_string(h.method);
  out["weights"] = h.weights;
  return out;
}

inline Json to_json(const PartialWeights& w) {
  Json out;
  out["label"] = w.label;
  out["method"] = "closed_form";
  Json weights = Json::object();
  for (const auto& [r, v] : w.by_r) weights[std::to_string(r)] = v;
  out["weights_by_r"] = weights;
  return out;
}

// Generator matrix text form: one codeword row per line, space-separated
// element text.
inline std::string matrix_text(const LinearCode& C) {
  std::string out;
  for (const auto& row : C.gen) {
    for (size_t j = 0; j < row.size(); ++j) {
      if (j) out += ' ';
      out += C.field.to_string(row[j]);
    }
    out += '\n';
  }
  return out;
}

inline Json to_json(const LinearCode& C) {
  Json out;
  out["label"] = C.label;
  out["n"] = C.n;
  out["k"] = C.k;
  out["q"] = C.field.q;
  Json rows = Json::array();
  for (const auto& row : C.gen) {
    std::string line;
    for (size_t j = 0; j < row.size(); ++j) {
      if (j) line += ' ';
      line += C.field.to_string(row[j]);
    }
    rows.push_back(line);
  }
  out["matrix"] = rows;
  return out;
}

inline Json to_json(const PlotkinReport& r) {
  Json out;
  out["n"] = r.n;
  out["k"] = r.k;
  out["d1"] = r.d1;
  out["a"] = r.a;
  out["plotkin_holds"] = r.plotkin_holds;
  out["plotkin_tight"] = r.plotkin_tight;
  out["section_chain_holds"] = r.section_chain_holds;
  return out;
}

}  // namespace fqcount
