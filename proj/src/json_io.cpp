#include "selecta/json_io.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "selecta/errors.hpp"

namespace selecta {

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const char* type_name(const Json& j) { return j.type_name(); }

// Reads fields from one object, remembering which keys were consumed so that
// leftovers can be reported as unknown.
class Reader {
 public:
  Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object())
      throw ConfigError(path_, std::string("expected an object, got ") + type_name(j_));
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const Json& raw(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) throw ConfigError(join(path_, key), "is required");
    return *it;
  }

  double number(const std::string& key, double fallback, bool required = false) {
    if (!required && !has(key)) return fallback;
    const Json& v = raw(key);
    if (!v.is_number()) throw ConfigError(join(path_, key), expected("a number", v));
    return v.get<double>();
  }

  std::int64_t integer(const std::string& key, std::int64_t fallback, bool required = false) {
    if (!required && !has(key)) return fallback;
    const Json& v = raw(key);
    if (v.is_number_integer()) {
      if (v.is_number_unsigned() &&
          v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
        throw ConfigError(join(path_, key), "integer out of range");
      return v.get<std::int64_t>();
    }
    if (v.is_number_float()) {
      const double x = v.get<double>();
      if (std::isfinite(x) && x == std::floor(x) && std::fabs(x) < 9.0e15)
        return static_cast<std::int64_t>(x);
    }
    throw ConfigError(join(path_, key), expected("an integer", v));
  }

  int int32(const std::string& key, int fallback, bool required = false) {
    const std::int64_t v = integer(key, fallback, required);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
      throw ConfigError(join(path_, key), "integer out of range");
    return static_cast<int>(v);
  }

  std::uint64_t unsigned64(const std::string& key, std::uint64_t fallback) {
    if (!has(key)) return fallback;
    const Json& v = raw(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer()) throw ConfigError(join(path_, key), "must be >= 0");
    throw ConfigError(join(path_, key), expected("a nonnegative integer", v));
  }

  bool boolean(const std::string& key, bool fallback, bool required = false) {
    if (!required && !has(key)) return fallback;
    const Json& v = raw(key);
    if (!v.is_boolean()) throw ConfigError(join(path_, key), expected("a boolean", v));
    return v.get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback, bool required = false) {
    if (!required && !has(key)) return fallback;
    const Json& v = raw(key);
    if (!v.is_string()) throw ConfigError(join(path_, key), expected("a string", v));
    return v.get<std::string>();
  }

  template <class T>
  T object(const std::string& key, const T& fallback, bool required = false) {
    if (!required && !has(key)) return fallback;
    return decode<T>(raw(key), join(path_, key));
  }

  const std::string& path() const { return path_; }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) throw ConfigError(join(path_, it.key()), "unknown field");
  }

 private:
  static std::string expected(const char* what, const Json& v) {
    return std::string("expected ") + what + ", got " + type_name(v);
  }

  const Json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

template <class Enum, std::size_t N>
Enum parse_enum(const std::string& text, const std::string& field,
                const std::pair<const char*, Enum> (&names)[N]) {
  for (const auto& [name, value] : names)
    if (text == name) return value;
  std::string allowed;
  for (const auto& [name, value] : names) allowed += std::string(allowed.empty() ? "" : ", ") + name;
  throw ConfigError(field, "unknown value '" + text + "' (expected one of: " + allowed + ")");
}

constexpr std::pair<const char*, ResponderRounding> kRoundingNames[] = {
    {"half_even", ResponderRounding::HalfEven}, {"ceiling", ResponderRounding::Ceiling}};
constexpr std::pair<const char*, SizingMethod> kSizingNames[] = {
    {"deterministic", SizingMethod::Deterministic},
    {"simulated", SizingMethod::Simulated},
    {"frequentist", SizingMethod::Frequentist}};
constexpr std::pair<const char*, FreqMethod> kFreqNames[] = {
    {"exact", FreqMethod::Exact}, {"normal", FreqMethod::NormalApprox}};
constexpr std::pair<const char*, Decision> kDecisionNames[] = {
    {"select A", Decision::SelectA}, {"consider other factors", Decision::ConsiderOtherFactors}};

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
}

Json to_json(const BetaParams& p) { return {{"alpha", p.alpha}, {"beta", p.beta}}; }

Json to_json(const ArmData& a) { return {{"n", a.n}, {"responders", a.responders}}; }

Json to_json(const DecisionInputs& in) {
  return {{"prior_a", to_json(in.prior_a)}, {"prior_b", to_json(in.prior_b)},
          {"data_a", to_json(in.data_a)},   {"data_b", to_json(in.data_b)},
          {"d", in.d},                      {"rho", in.rho},
          {"theta", in.theta}};
}

Json to_json(const DecisionReport& r) {
  return {{"p_correct", r.p_correct},
          {"p_ambiguous", r.p_ambiguous},
          {"p_below", r.p_below},
          {"lambda_star", r.lambda_star},
          {"rho", r.rho},
          {"theta", r.theta},
          {"decision", std::string(to_string(r.decision))},
          {"posterior_a", to_json(r.posterior_a)},
          {"posterior_b", to_json(r.posterior_b)}};
}

Json to_json(const DesignSpec& s) {
  return {{"prior_a", to_json(s.prior_a)},
          {"prior_b", to_json(s.prior_b)},
          {"pi_tilde_a", s.pi_tilde_a},
          {"pi_tilde_b", s.pi_tilde_b},
          {"d", s.d},
          {"rho", s.rho},
          {"gamma_star", s.gamma_star},
          {"theta", s.theta},
          {"n_lo", s.n_lo},
          {"n_hi", s.n_hi},
          {"m", s.m},
          {"seed", s.seed},
          {"rounding", std::string(to_string(s.rounding))}};
}

Json to_json(const CurvePoint& p) {
  return {{"n", p.n}, {"value", p.value}, {"standard_error", p.standard_error}};
}

Json to_json(const std::vector<CurvePoint>& curve) {
  Json arr = Json::array();
  for (const auto& p : curve) arr.push_back(to_json(p));
  return arr;
}

Json to_json(const SampleSizeResult& r) {
  return {{"method", std::string(to_string(r.method))},
          {"n_min", r.n_min ? Json(*r.n_min) : Json(nullptr)},
          {"under_lower_bound", r.under_lower_bound},
          {"threshold", r.threshold},
          {"n_lo", r.n_lo},
          {"n_hi", r.n_hi},
          {"curve", to_json(r.curve)}};
}

Json to_json(const OcScenario& s) {
  return {{"label", s.label},
          {"true_pi_a", s.true_pi_a},
          {"true_pi_b", s.true_pi_b},
          {"prior_a", to_json(s.prior_a)},
          {"prior_b", to_json(s.prior_b)},
          {"d", s.d},
          {"rho", s.rho},
          {"theta", s.theta},
          {"n_per_arm", s.n_per_arm},
          {"m", s.m},
          {"seed", s.seed}};
}

Json to_json(const OcResult& r) {
  return {{"xi", r.xi},
          {"nu", r.nu},
          {"mc_standard_error", r.mc_standard_error},
          {"replicates_used", r.replicates_used},
          {"selections", r.selections}};
}

Json to_json(const OcGridRow& r) {
  return {{"label", r.label}, {"n_per_arm", r.n_per_arm}, {"seed", r.seed}, {"result", to_json(r.result)}};
}

Json to_json(const FreqDesign& f) {
  return {{"pi_a", f.pi_a},   {"pi_b", f.pi_b},   {"d", f.d},
          {"rho", f.rho},     {"gamma", f.gamma}, {"method", std::string(to_string(f.method))},
          {"n_lo", f.n_lo},   {"n_hi", f.n_hi}};
}

Json to_json(const FreqEvaluation& e) {
  return {{"n", e.n},
          {"method", std::string(to_string(e.method))},
          {"p_correct", e.p_correct},
          {"p_ambiguous", e.p_ambiguous},
          {"lambda", e.lambda}};
}

template <>
BetaParams decode<BetaParams>(const Json& j, const std::string& path) {
  Reader r(j, path);
  BetaParams p{r.number("alpha", 0.0, true), r.number("beta", 0.0, true)};
  r.finish();
  return p;
}

template <>
ArmData decode<ArmData>(const Json& j, const std::string& path) {
  Reader r(j, path);
  ArmData a{r.int32("n", 0, true), r.int32("responders", 0, true)};
  r.finish();
  return a;
}

template <>
DecisionInputs decode<DecisionInputs>(const Json& j, const std::string& path) {
  Reader r(j, path);
  DecisionInputs in;
  in.prior_a = r.object<BetaParams>("prior_a", {1.0, 1.0});
  in.prior_b = r.object<BetaParams>("prior_b", {1.0, 1.0});
  in.data_a = r.object<ArmData>("data_a", {}, true);
  in.data_b = r.object<ArmData>("data_b", {}, true);
  in.d = r.number("d", in.d);
  in.rho = r.number("rho", in.rho);
  in.theta = r.number("theta", in.theta);
  r.finish();
  return in;
}

template <>
DecisionReport decode<DecisionReport>(const Json& j, const std::string& path) {
  Reader r(j, path);
  DecisionReport out;
  out.p_correct = r.number("p_correct", 0.0, true);
  out.p_ambiguous = r.number("p_ambiguous", 0.0, true);
  out.p_below = r.number("p_below", 0.0, true);
  out.lambda_star = r.number("lambda_star", 0.0, true);
  out.rho = r.number("rho", 0.0, true);
  out.theta = r.number("theta", 0.0, true);
  out.decision = parse_enum(r.string("decision", "", true), join(path, "decision"), kDecisionNames);
  out.posterior_a = r.object<BetaParams>("posterior_a", {}, true);
  out.posterior_b = r.object<BetaParams>("posterior_b", {}, true);
  r.finish();
  return out;
}

template <>
DesignSpec decode<DesignSpec>(const Json& j, const std::string& path) {
  Reader r(j, path);
  DesignSpec s;
  s.prior_a = r.object<BetaParams>("prior_a", {1.0, 1.0});
  s.prior_b = r.object<BetaParams>("prior_b", {1.0, 1.0});
  s.pi_tilde_a = r.number("pi_tilde_a", s.pi_tilde_a);
  s.pi_tilde_b = r.number("pi_tilde_b", s.pi_tilde_b);
  s.d = r.number("d", s.d);
  s.rho = r.number("rho", s.rho);
  s.gamma_star = r.number("gamma_star", s.gamma_star);
  s.theta = r.number("theta", s.theta);
  s.n_lo = r.int32("n_lo", s.n_lo);
  s.n_hi = r.int32("n_hi", s.n_hi);
  s.m = r.integer("m", s.m);
  s.seed = r.unsigned64("seed", s.seed);
  if (r.has("rounding"))
    s.rounding = parse_enum(r.string("rounding", ""), join(path, "rounding"), kRoundingNames);
  r.finish();
  return s;
}

template <>
CurvePoint decode<CurvePoint>(const Json& j, const std::string& path) {
  Reader r(j, path);
  CurvePoint p{r.int32("n", 0, true), r.number("value", 0.0, true),
               r.number("standard_error", 0.0)};
  r.finish();
  return p;
}

template <>
SampleSizeResult decode<SampleSizeResult>(const Json& j, const std::string& path) {
  Reader r(j, path);
  SampleSizeResult out;
  out.method = parse_enum(r.string("method", "", true), join(path, "method"), kSizingNames);
  const Json& n_min = r.raw("n_min");
  if (!n_min.is_null()) {
    if (!n_min.is_number_integer()) throw ConfigError(join(path, "n_min"), "expected an integer or null");
    out.n_min = n_min.get<int>();
  }
  out.under_lower_bound = r.boolean("under_lower_bound", false, true);
  out.threshold = r.number("threshold", 0.0, true);
  out.n_lo = r.int32("n_lo", 0, true);
  out.n_hi = r.int32("n_hi", 0, true);
  const Json& curve = r.raw("curve");
  if (!curve.is_array()) throw ConfigError(join(path, "curve"), "expected an array");
  for (std::size_t i = 0; i < curve.size(); ++i)
    out.curve.push_back(decode<CurvePoint>(curve[i], join(path, "curve[" + std::to_string(i) + "]")));
  r.finish();
  return out;
}

template <>
OcScenario decode<OcScenario>(const Json& j, const std::string& path) {
  Reader r(j, path);
  OcScenario s;
  s.label = r.string("label", s.label);
  s.true_pi_a = r.number("true_pi_a", s.true_pi_a);
  s.true_pi_b = r.number("true_pi_b", s.true_pi_b);
  s.prior_a = r.object<BetaParams>("prior_a", {1.0, 1.0});
  s.prior_b = r.object<BetaParams>("prior_b", {1.0, 1.0});
  s.d = r.number("d", s.d);
  s.rho = r.number("rho", s.rho);
  s.theta = r.number("theta", s.theta);
  s.n_per_arm = r.int32("n_per_arm", s.n_per_arm);
  s.m = r.integer("m", s.m);
  s.seed = r.unsigned64("seed", s.seed);
  r.finish();
  return s;
}

template <>
OcResult decode<OcResult>(const Json& j, const std::string& path) {
  Reader r(j, path);
  OcResult out;
  out.xi = r.number("xi", 0.0, true);
  out.nu = r.number("nu", 0.0, true);
  out.mc_standard_error = r.number("mc_standard_error", 0.0, true);
  out.replicates_used = r.integer("replicates_used", 0, true);
  out.selections = r.integer("selections", 0, true);
  r.finish();
  return out;
}

template <>
OcGridRow decode<OcGridRow>(const Json& j, const std::string& path) {
  Reader r(j, path);
  OcGridRow out;
  out.label = r.string("label", "", true);
  out.n_per_arm = r.int32("n_per_arm", 0, true);
  out.seed = r.unsigned64("seed", 0);
  out.result = r.object<OcResult>("result", {}, true);
  r.finish();
  return out;
}

template <>
FreqDesign decode<FreqDesign>(const Json& j, const std::string& path) {
  Reader r(j, path);
  FreqDesign f;
  f.pi_a = r.number("pi_a", f.pi_a);
  f.pi_b = r.number("pi_b", f.pi_b);
  f.d = r.number("d", f.d);
  f.rho = r.number("rho", f.rho);
  f.gamma = r.number("gamma", f.gamma);
  if (r.has("method")) f.method = parse_enum(r.string("method", ""), join(path, "method"), kFreqNames);
  f.n_lo = r.int32("n_lo", f.n_lo);
  f.n_hi = r.int32("n_hi", f.n_hi);
  r.finish();
  return f;
}

template <>
FreqEvaluation decode<FreqEvaluation>(const Json& j, const std::string& path) {
  Reader r(j, path);
  FreqEvaluation e;
  e.n = r.int32("n", 0, true);
  e.method = parse_enum(r.string("method", "", true), join(path, "method"), kFreqNames);
  e.p_correct = r.number("p_correct", 0.0, true);
  e.p_ambiguous = r.number("p_ambiguous", 0.0, true);
  e.lambda = r.number("lambda", 0.0, true);
  r.finish();
  return e;
}

Json merge_objects(Json base, const Json& patch) {
  if (!base.is_object() || !patch.is_object()) return patch;
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    if (base.contains(it.key()))
      base[it.key()] = merge_objects(base[it.key()], it.value());
    else
      base[it.key()] = it.value();
  }
  return base;
}

std::vector<Json> expand_grid(const Json& doc, const std::string& path) {
  if (!doc.is_object()) throw ConfigError(path, "expected an object");
  Json defaults = Json::object();
  Json vary = Json::object();
  Json rows = Json::array();
  Json single = Json::object();
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& key = it.key();
    if (key == "note" || key == "command") continue;
    if (key == "defaults") {
      if (!it->is_object()) throw ConfigError(join(path, key), "expected an object");
      defaults = *it;
    } else if (key == "vary") {
      if (!it->is_object()) throw ConfigError(join(path, key), "expected an object");
      vary = *it;
    } else if (key == "rows") {
      if (!it->is_array() || it->empty())
        throw ConfigError(join(path, key), "expected a nonempty array");
      rows = *it;
    } else {
      single[key] = *it;
    }
  }
  if (!rows.empty() && !single.empty())
    throw ConfigError(join(path, single.begin().key()), "unknown field alongside \"rows\"");
  if (rows.empty()) rows.push_back(single);

  std::vector<Json> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_object())
      throw ConfigError(join(path, "rows[" + std::to_string(i) + "]"), "expected an object");
    std::vector<Json> expanded{merge_objects(defaults, rows[i])};
    for (auto it = vary.begin(); it != vary.end(); ++it) {
      if (!it->is_array() || it->empty())
        throw ConfigError(join(path, "vary." + it.key()), "expected a nonempty array");
      std::vector<Json> next;
      for (const auto& row : expanded) {
        for (const auto& v : *it) {
          Json copy = row;
          copy[it.key()] = v;
          next.push_back(std::move(copy));
        }
      }
      expanded = std::move(next);
    }
    for (auto& row : expanded) out.push_back(std::move(row));
  }
  return out;
}

Json error_json(const std::string& type, const std::string& message,
                const std::vector<FieldError>& fields) {
  Json f = Json::array();
  for (const auto& e : fields) f.push_back({{"field", e.field}, {"message", e.message}});
  return {{"error", {{"type", type}, {"message", message}, {"fields", f}}}};
}

}  // namespace selecta
