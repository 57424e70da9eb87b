#include "quantrep/model_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace quantrep {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& pointer, const std::string& what) {
  throw DomainError("model file at " + (pointer.empty() ? std::string("/") : pointer) + ": " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& at) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(at, "missing key \"" + key + "\"");
  return *it;
}

long as_integer(const json& v, const std::string& at) {
  if (v.is_number_integer()) return v.get<long>();
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    std::size_t used = 0;
    try {
      long x = std::stol(s, &used);
      if (used == s.size()) return x;
    } catch (const std::exception&) {
    }
  }
  schema_error(at, "expected an integer");
}

ExactScalar as_scalar(const json& v, long d, const std::string& at) {
  try {
    if (v.is_number_integer()) return ExactScalar(Rational(v.get<long>()), d);
    if (v.is_string()) return ExactScalar::parse(v.get_ref<const std::string&>(), d);
  } catch (const DomainError& e) {
    schema_error(at, e.what());
  }
  schema_error(at, "expected a scalar string such as \"-1/2 + 3*sqrt(2)\"");
}

}  // namespace

OutcomeModel parse_model(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DomainError("malformed model file at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) schema_error("", "expected an object");

  const long M = as_integer(require(doc, "M", ""), "/M");
  if (M < 0 || M > 20) schema_error("/M", "M must be in 0..20");
  const long d = doc.contains("d") ? as_integer(doc["d"], "/d") : 1;
  if (!is_square_free(d)) schema_error("/d", "radicand must be square-free and >= 0");
  bool strict = false;
  if (doc.contains("strict")) {
    if (!doc["strict"].is_boolean()) schema_error("/strict", "expected a boolean");
    strict = doc["strict"].get<bool>();
  }

  const bool has_outcomes = doc.contains("outcomes");
  const bool has_haar = doc.contains("haar");
  if (has_outcomes == has_haar) schema_error("", "exactly one of \"outcomes\" or \"haar\" required");

  if (has_outcomes) {
    const json& list = doc["outcomes"];
    if (!list.is_array()) schema_error("/outcomes", "expected an array");
    std::vector<std::pair<PatternCode, ExactScalar>> pairs;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string at = "/outcomes/" + std::to_string(i);
      const json& entry = list[i];
      if (!entry.is_object()) schema_error(at, "expected an object");
      const json& pattern = require(entry, "pattern", at);
      if (!pattern.is_string()) schema_error(at + "/pattern", "expected a bit string");
      const auto& bits = pattern.get_ref<const std::string&>();
      if (bits.size() != static_cast<std::size_t>(M + 1))
        schema_error(at + "/pattern", "pattern must have M+1 = " + std::to_string(M + 1) + " bits");
      PatternCode code = 0;
      try {
        code = pattern_from_string(bits);
      } catch (const DomainError& e) {
        schema_error(at + "/pattern", e.what());
      }
      pairs.emplace_back(code, as_scalar(require(entry, "value", at), d, at + "/value"));
    }
    return build_manual(static_cast<int>(M), std::move(pairs), strict);
  }

  const json& haar = doc["haar"];
  if (!haar.is_object()) schema_error("/haar", "expected an object");
  const json& coeffs = require(haar, "coeffs", "/haar");
  if (!coeffs.is_array()) schema_error("/haar/coeffs", "expected an array");
  HaarSpec spec = HaarSpec::zeros(static_cast<int>(M), d);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const std::string at = "/haar/coeffs/" + std::to_string(i);
    const json& row = coeffs[i];
    if (!row.is_array() || row.size() != 3) schema_error(at, "expected [k, j, value]");
    const long k = as_integer(row[0], at + "/0");
    const long j = as_integer(row[1], at + "/1");
    if (k < 0 || k > M) schema_error(at + "/0", "level k out of range 0..M");
    if (j < 0 || j >= (1L << k)) schema_error(at + "/1", "position j out of range 0..2^k-1");
    spec.coeffs[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = as_scalar(row[2], d, at + "/2");
  }
  return build_haar(spec, strict);
}

OutcomeModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

std::string model_to_json(const OutcomeModel& model, int indent) {
  json doc;
  doc["M"] = model.M();
  doc["d"] = model.radicand();
  doc["strict"] = model.strict();
  json outcomes = json::array();
  for (int s = 1; s <= model.m(); ++s)
    outcomes.push_back({{"pattern", pattern_to_string(model.pattern_of(s), model.pattern_width())},
                        {"value", model.outcome(s).to_string()}});
  doc["outcomes"] = std::move(outcomes);
  doc["mean"] = model.mean().to_string();
  doc["variance"] = model.variance().to_string();
  if (const auto& haar = model.haar()) doc["theta_squared"] = theta_squared(*haar).to_string();
  return doc.dump(indent);
}

}  // namespace quantrep
