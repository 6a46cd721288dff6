#include "euler_gauss/schema.hpp"

#include <map>
#include <regex>

namespace euler_gauss {

namespace {

using nlohmann::json;

// "$ref" values name another schema in this table.
constexpr const char* kSchemaText = R"json({
  "sequence": {
    "type": "object",
    "required": ["profile"],
    "properties": {
      "profile": {"enum": ["power_log", "gibbs_like", "explicit", "custom"]},
      "radius": {"type": "integer", "minimum": 0},
      "id": {"type": "string"},
      "entries": {
        "type": "array",
        "items": {"type": "array", "minItems": 3, "maxItems": 3, "items": {"type": "number"}}
      }
    }
  },
  "run_config": {
    "type": "object",
    "additionalProperties": false,
    "required": ["command"],
    "properties": {
      "command": {"enum": ["gamma", "certify", "classify", "mc-verify", "evolve", "report", "schema"]},
      "profile": {"type": "string"},
      "sequence": {"$ref": "sequence"},
      "sequence_file": {"type": "string"},
      "s": {"type": "number", "minimum": 0},
      "s_grid": {"type": "array", "minItems": 1, "items": {"type": "number", "minimum": 0}},
      "radius": {"type": "integer", "minimum": 1},
      "N": {"type": "integer", "minimum": 2},
      "truncation": {"type": "integer", "minimum": 1},
      "seed": {"type": "integer", "minimum": 0},
      "samples": {"type": "integer", "minimum": 2},
      "t_max": {"type": "number", "exclusiveMinimum": 0},
      "dt": {"type": "number", "exclusiveMinimum": 0},
      "threshold": {"type": "number", "minimum": 0},
      "output_dir": {"type": "string"},
      "reproducible": {"type": "boolean"},
      "threads": {"type": "integer", "minimum": 1},
      "weights": {"enum": ["standard", "reference_code"]},
      "inputs": {"type": "array", "items": {"type": "string"}},
      "schema_name": {"type": "string"}
    }
  },
  "support_class": {
    "type": "object",
    "required": ["kind"],
    "properties": {
      "kind": {"enum": ["Empty", "Line", "Circle", "NonDegenerate"]},
      "direction": {"type": "array", "minItems": 2, "maxItems": 2, "items": {"type": "integer"}},
      "radius_sq": {"type": "integer", "minimum": 0}
    }
  },
  "gamma_report": {
    "type": "object",
    "required": ["s", "sequence_id", "gamma_bare", "gamma_paper", "radius", "terms", "support_class"],
    "properties": {
      "command": {"const": "gamma"},
      "s": {"type": "number"},
      "sequence_id": {"type": "string"},
      "gamma_bare": {"type": "number"},
      "gamma_paper": {"type": "number"},
      "radius": {"oneOf": [{"type": "integer", "minimum": 0}, {"const": "exact-finite-support"}]},
      "terms": {"type": "integer", "minimum": 0},
      "support_class": {"$ref": "support_class"},
      "flagged": {"type": "boolean"}
    }
  },
  "gamma_scan": {
    "type": "object",
    "required": ["command", "sequence_id", "threshold", "entries", "first_flagged"],
    "properties": {
      "command": {"const": "gamma-scan"},
      "sequence_id": {"type": "string"},
      "threshold": {"type": "number", "minimum": 0},
      "entries": {"type": "array", "minItems": 1, "items": {"$ref": "gamma_report"}},
      "first_flagged": {"type": ["integer", "null"]}
    }
  },
  "interval": {
    "type": "array", "minItems": 2, "maxItems": 2, "items": {"type": "number"}
  },
  "certificate": {
    "type": "object",
    "required": ["profile", "s", "N", "half_gamma_N", "epsilon", "verdict", "cpu_info", "runtime_ms"],
    "properties": {
      "command": {"const": "certify"},
      "profile": {"type": "string"},
      "s": {"type": "number"},
      "N": {"type": "integer", "minimum": 2},
      "half_gamma_N": {"$ref": "interval"},
      "epsilon": {"$ref": "interval"},
      "verdict": {"enum": ["PositiveCertified", "NegativeCertified", "Inconclusive"]},
      "weight_convention": {"enum": ["standard", "reference_code"]},
      "cpu_info": {"type": "string"},
      "runtime_ms": {"type": "number", "minimum": 0}
    }
  },
  "classify": {
    "type": "object",
    "required": ["command", "sequence_id", "kind", "degenerate", "modes"],
    "properties": {
      "command": {"const": "classify"},
      "sequence_id": {"type": "string"},
      "kind": {"enum": ["Empty", "Line", "Circle", "NonDegenerate"]},
      "direction": {"type": "array", "minItems": 2, "maxItems": 2, "items": {"type": "integer"}},
      "radius_sq": {"type": "integer", "minimum": 0},
      "degenerate": {"type": "boolean"},
      "modes": {"type": "integer", "minimum": 0}
    }
  },
  "mc_manifest": {
    "type": "object",
    "required": ["sequence", "sequence_hash", "truncation", "seed", "sample_count", "config"],
    "properties": {
      "sequence": {"$ref": "sequence"},
      "sequence_hash": {"type": "string", "pattern": "^[0-9a-f]{40}$"},
      "truncation": {"type": "integer", "minimum": 1},
      "seed": {"type": "integer", "minimum": 0},
      "sample_count": {"type": "integer", "minimum": 1},
      "config": {"type": "object"}
    }
  },
  "mc_verify": {
    "type": "object",
    "required": ["command", "sequence_id", "s", "samples", "seed", "truncation", "kappa", "checks", "all_pass"],
    "properties": {
      "command": {"const": "mc-verify"},
      "sequence_id": {"type": "string"},
      "s": {"type": "number", "minimum": 0},
      "samples": {"type": "integer", "minimum": 2},
      "seed": {"type": "integer", "minimum": 0},
      "truncation": {"type": "integer", "minimum": 1},
      "kappa": {"type": "number"},
      "all_pass": {"type": "boolean"},
      "checks": {
        "type": "array",
        "minItems": 1,
        "items": {
          "type": "object",
          "required": ["name", "mean", "stderr", "reference", "reference_source", "z", "status"],
          "properties": {
            "name": {"type": "string"},
            "mean": {"type": "number"},
            "stderr": {"type": "number", "minimum": 0},
            "reference": {"type": "number"},
            "reference_source": {"enum": ["zero", "wick", "closed_form"]},
            "z": {"type": ["number", "null"]},
            "status": {"enum": ["pass", "fail", "skipped"]}
          }
        }
      }
    }
  },
  "evolve": {
    "type": "object",
    "required": ["command", "sequence_id", "s", "t_max", "dt", "samples", "truncation", "c2", "c3",
                 "reference", "ratio", "remainder_slope", "conservation"],
    "properties": {
      "command": {"const": "evolve"},
      "sequence_id": {"type": "string"},
      "s": {"type": "number", "minimum": 0},
      "t_max": {"type": "number", "exclusiveMinimum": 0},
      "dt": {"type": "number", "exclusiveMinimum": 0},
      "samples": {"type": "integer", "minimum": 2},
      "seed": {"type": "integer", "minimum": 0},
      "truncation": {"type": "integer", "minimum": 1},
      "c2": {"type": "number"},
      "c3": {"type": "number"},
      "reference": {"type": "number"},
      "ratio": {"type": ["number", "null"]},
      "remainder_slope": {"type": ["number", "null"]},
      "conservation": {
        "type": "object",
        "required": ["enstrophy", "energy"],
        "properties": {"enstrophy": {"type": "number"}, "energy": {"type": "number"}}
      }
    }
  }
})json";

const json& table() {
  static const json t = json::parse(kSchemaText);
  return t;
}

std::string type_of(const json& v) {
  if (v.is_null()) return "null";
  if (v.is_boolean()) return "boolean";
  if (v.is_number_integer()) return "integer";
  if (v.is_number()) return "number";
  if (v.is_string()) return "string";
  if (v.is_array()) return "array";
  return "object";
}

bool type_matches(const json& v, const std::string& t) {
  if (t == "number") return v.is_number();
  return type_of(v) == t;
}

void check(const json& v, const json& s, const std::string& path, std::vector<std::string>& errs) {
  const std::string where = path.empty() ? "/" : path;
  if (auto it = s.find("$ref"); it != s.end()) {
    check(v, schema(it->get<std::string>()), path, errs);
    return;
  }
  if (auto it = s.find("type"); it != s.end()) {
    bool ok = false;
    if (it->is_array()) {
      for (const auto& t : *it) ok = ok || type_matches(v, t.get<std::string>());
    } else {
      ok = type_matches(v, it->get<std::string>());
    }
    if (!ok) {
      errs.push_back(where + ": expected type " + it->dump() + ", got " + type_of(v));
      return;
    }
  }
  if (auto it = s.find("const"); it != s.end() && v != *it)
    errs.push_back(where + ": expected " + it->dump());
  if (auto it = s.find("enum"); it != s.end()) {
    bool found = false;
    for (const auto& e : *it) found = found || e == v;
    if (!found) errs.push_back(where + ": " + v.dump() + " is not one of " + it->dump());
  }
  if (v.is_number()) {
    const double x = v.get<double>();
    if (auto it = s.find("minimum"); it != s.end() && x < it->get<double>())
      errs.push_back(where + ": " + v.dump() + " is below the minimum " + it->dump());
    if (auto it = s.find("maximum"); it != s.end() && x > it->get<double>())
      errs.push_back(where + ": " + v.dump() + " is above the maximum " + it->dump());
    if (auto it = s.find("exclusiveMinimum"); it != s.end() && !(x > it->get<double>()))
      errs.push_back(where + ": " + v.dump() + " must exceed " + it->dump());
  }
  if (v.is_string()) {
    if (auto it = s.find("pattern"); it != s.end() &&
        !std::regex_search(v.get<std::string>(), std::regex(it->get<std::string>())))
      errs.push_back(where + ": does not match " + it->dump());
  }
  if (v.is_array()) {
    if (auto it = s.find("minItems"); it != s.end() && v.size() < it->get<std::size_t>())
      errs.push_back(where + ": needs at least " + it->dump() + " items");
    if (auto it = s.find("maxItems"); it != s.end() && v.size() > it->get<std::size_t>())
      errs.push_back(where + ": allows at most " + it->dump() + " items");
    if (auto it = s.find("items"); it != s.end())
      for (std::size_t i = 0; i < v.size(); ++i) check(v[i], *it, path + "/" + std::to_string(i), errs);
  }
  if (v.is_object()) {
    if (auto it = s.find("required"); it != s.end())
      for (const auto& k : *it)
        if (!v.contains(k.get<std::string>()))
          errs.push_back(where + ": missing required property '" + k.get<std::string>() + "'");
    const json* props = s.contains("properties") ? &s["properties"] : nullptr;
    const bool closed = s.value("additionalProperties", true) == false;
    for (const auto& [k, sub] : v.items()) {
      if (props && props->contains(k))
        check(sub, (*props)[k], path + "/" + k, errs);
      else if (closed)
        errs.push_back(where + ": unknown property '" + k + "'");
    }
  }
  if (auto it = s.find("oneOf"); it != s.end()) {
    int matches = 0;
    for (const auto& alt : *it) {
      std::vector<std::string> sub;
      check(v, alt, path, sub);
      matches += sub.empty();
    }
    if (matches != 1)
      errs.push_back(where + ": must match exactly one alternative, matched " + std::to_string(matches));
  }
  if (auto it = s.find("anyOf"); it != s.end()) {
    bool any = false;
    for (const auto& alt : *it) {
      std::vector<std::string> sub;
      check(v, alt, path, sub);
      any = any || sub.empty();
    }
    if (!any) errs.push_back(where + ": matches none of the alternatives");
  }
}

}  // namespace

const nlohmann::json& schema(std::string_view name) {
  const auto& t = table();
  auto it = t.find(std::string(name));
  if (it == t.end()) throw std::out_of_range("no schema named '" + std::string(name) + "'");
  return *it;
}

std::vector<std::string> schema_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : table().items()) names.push_back(k);
  return names;
}

std::vector<std::string> validate(const nlohmann::json& instance, const nlohmann::json& s) {
  std::vector<std::string> errs;
  check(instance, s, "", errs);
  return errs;
}

void require_valid(const nlohmann::json& instance, std::string_view schema_name) {
  const auto errs = validate(instance, schema(schema_name));
  if (errs.empty()) return;
  std::string msg = "schema error (" + std::string(schema_name) + "):";
  for (const auto& e : errs) msg += "\n  " + e;
  throw SchemaError(msg);
}

}  // namespace euler_gauss
