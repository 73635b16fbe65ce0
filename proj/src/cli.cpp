#include "selecta/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "selecta/errors.hpp"
#include "selecta/json_io.hpp"
#include "selecta/service.hpp"

namespace selecta::cli {

namespace {

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

// Compact rendering of a JSON scalar for CSV and text.
std::string scalar(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Human-facing rendering: floats in %g style so 1.0 prints as 1.
std::string g(const Json& v) {
  if (!v.is_number_float()) return scalar(v);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v.get<double>());
  return buf;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string beta_text(const Json& p) {
  return "Beta(" + g(p["alpha"]) + ", " + g(p["beta"]) + ")";
}

void set_path(Json& row, const std::string& dotted, const Json& value) {
  Json* node = &row;
  std::size_t start = 0;
  while (true) {
    const auto dot = dotted.find('.', start);
    const std::string key = dotted.substr(start, dot == std::string::npos ? dotted.npos : dot - start);
    if (key.empty()) throw ConfigError("--set", "empty key in '" + dotted + "'");
    if (!node->is_object()) throw ConfigError("--set", "'" + dotted + "' does not address an object field");
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    if (!node->contains(key)) (*node)[key] = Json::object();
    node = &(*node)[key];
    start = dot + 1;
  }
}

void apply_override(Json& row, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("--set", "expected key=value, got '" + assignment + "'");
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  Json value = Json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  set_path(row, key, value);
}

bool uses_simulation_fields(const std::string& command) {
  return command == "sample-size" || command == "sample-size-sim" || command == "curve" ||
         command == "oc-sim" || command == "report";
}

void apply_seed_m(Json& row, const CommandConfig& c) {
  if (!c.seed && !c.m) return;
  if (!uses_simulation_fields(c.command))
    throw ConfigError(c.seed ? "--seed" : "--m", "not applicable to " + c.command);
  Json* target = &row;
  if (c.command == "report") {
    if (row.contains("design")) target = &row["design"];
    else if (row.contains("oc")) target = &row["oc"];
    else throw ConfigError(c.seed ? "--seed" : "--m", "needs a design or oc subject");
  }
  if (c.seed) (*target)["seed"] = *c.seed;
  if (c.m) (*target)["m"] = *c.m;
}

Json run_row(const std::string& command, const Json& row) {
  if (command == "sample-size") return service::sample_size(row, SizingMethod::Deterministic);
  if (command == "sample-size-sim") return service::sample_size(row, SizingMethod::Simulated);
  if (command == "analyze") return service::analyze(row);
  if (command == "oc-sim") return service::oc(row);
  if (command == "freq-design") return service::freq(row);
  if (command == "curve") return service::curve(row);
  if (command == "report") return service::report(row);
  throw ConfigError("command", "unknown command '" + command + "'");
}

// ---- text rendering ------------------------------------------------------

std::string text_sizing(const Json& in, const Json& r) {
  std::ostringstream o;
  o << "method: " << g(r["method"]) << "\n";
  if (in.contains("prior_a")) {
    o << "prior_a: " << beta_text(in["prior_a"]) << "\n";
    o << "prior_b: " << beta_text(in["prior_b"]) << "\n";
    o << "pi_tilde_a: " << g(in["pi_tilde_a"]) << "\n";
    o << "pi_tilde_b: " << g(in["pi_tilde_b"]) << "\n";
  } else {
    o << "pi_a: " << g(in["pi_a"]) << "\n";
    o << "pi_b: " << g(in["pi_b"]) << "\n";
  }
  o << "d: " << g(in["d"]) << "\n";
  o << "rho: " << g(in["rho"]) << "\n";
  o << "threshold: " << g(r["threshold"]) << "\n";
  if (r["n_min"].is_null())
    o << "n_min: <" << g(r["n_lo"]) << " (criterion holds at every n in [" << g(r["n_lo"])
      << ", " << g(r["n_hi"]) << "])\n";
  else
    o << "n_min: " << g(r["n_min"]) << "\n";
  return o.str();
}

std::string text_analysis(const Json& r) {
  std::ostringstream o;
  o << "posterior_a: " << beta_text(r["posterior_a"]) << "\n";
  o << "posterior_b: " << beta_text(r["posterior_b"]) << "\n";
  o << "p_correct: " << fixed(r["p_correct"].get<double>(), 2) << "\n";
  o << "p_ambiguous: " << fixed(r["p_ambiguous"].get<double>(), 2) << "\n";
  o << "p_below: " << fixed(r["p_below"].get<double>(), 2) << "\n";
  o << "lambda_star: " << fixed(r["lambda_star"].get<double>(), 2) << "\n";
  o << "rho: " << g(r["rho"]) << "\n";
  o << "theta: " << g(r["theta"]) << "\n";
  o << "decision: " << g(r["decision"]) << "\n";
  return o.str();
}

std::string text_oc(const Json& in, const Json& r) {
  std::ostringstream o;
  if (!g(in["label"]).empty()) o << "label: " << g(in["label"]) << "\n";
  o << "n_per_arm: " << g(in["n_per_arm"]) << "\n";
  o << "xi: " << fixed(100.0 * r["xi"].get<double>(), 1) << "%\n";
  o << "nu: " << fixed(100.0 * r["nu"].get<double>(), 1) << "%\n";
  o << "mc_standard_error: " << fixed(100.0 * r["mc_standard_error"].get<double>(), 2) << " pp\n";
  o << "m: " << g(r["replicates_used"]) << "\n";
  o << "seed: " << g(in["seed"]) << "\n";
  return o.str();
}

std::string text_freq_eval(const Json& r) {
  std::ostringstream o;
  o << "n: " << g(r["n"]) << "\n";
  o << "method: " << g(r["method"]) << "\n";
  o << "p_correct: " << fixed(r["p_correct"].get<double>(), 2) << "\n";
  o << "p_ambiguous: " << fixed(r["p_ambiguous"].get<double>(), 2) << "\n";
  o << "lambda: " << fixed(r["lambda"].get<double>(), 2) << "\n";
  return o.str();
}

std::string text_curve(const Json& r) {
  std::ostringstream o;
  o << "n value standard_error\n";
  for (const auto& p : r["curve"])
    o << g(p["n"]) << " " << fixed(p["value"].get<double>(), 4) << " "
      << fixed(p["standard_error"].get<double>(), 4) << "\n";
  return o.str();
}

std::string render_text(const std::string& command, const std::vector<Json>& rows) {
  std::string out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Json& in = rows[i]["input"];
    const Json& r = rows[i]["result"];
    if (rows.size() > 1) out += (i ? "\n" : "") + std::string("[row ") + std::to_string(i + 1) + "]\n";
    if (command == "sample-size" || command == "sample-size-sim") out += text_sizing(in, r);
    else if (command == "analyze") out += text_analysis(r);
    else if (command == "oc-sim") out += text_oc(in, r);
    else if (command == "freq-design") out += r.contains("lambda") ? text_freq_eval(r) : text_sizing(in, r);
    else if (command == "curve") out += text_curve(r);
    else out += g(r["text"]);
  }
  return out;
}

// ---- CSV rendering -------------------------------------------------------

std::string render_csv(const std::string& command, const std::vector<Json>& rows) {
  std::ostringstream o;
  auto line = [&](std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& c : cells) {
      o << (first ? "" : ",") << csv_cell(c);
      first = false;
    }
    o << "\n";
  };
  if (command == "sample-size" || command == "sample-size-sim") {
    line({"row", "method", "prior_a_alpha", "prior_a_beta", "prior_b_alpha", "prior_b_beta",
          "pi_tilde_a", "pi_tilde_b", "d", "rho", "gamma_star", "n_min", "under_lower_bound",
          "n_lo", "n_hi"});
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Json& in = rows[i]["input"];
      const Json& r = rows[i]["result"];
      line({std::to_string(i + 1), scalar(r["method"]), scalar(in["prior_a"]["alpha"]),
            scalar(in["prior_a"]["beta"]), scalar(in["prior_b"]["alpha"]),
            scalar(in["prior_b"]["beta"]), scalar(in["pi_tilde_a"]), scalar(in["pi_tilde_b"]),
            scalar(in["d"]), scalar(in["rho"]), scalar(in["gamma_star"]), scalar(r["n_min"]),
            scalar(r["under_lower_bound"]), scalar(r["n_lo"]), scalar(r["n_hi"])});
    }
  } else if (command == "analyze") {
    line({"row", "p_correct", "p_ambiguous", "p_below", "lambda_star", "rho", "theta", "decision",
          "posterior_a_alpha", "posterior_a_beta", "posterior_b_alpha", "posterior_b_beta"});
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Json& r = rows[i]["result"];
      line({std::to_string(i + 1), scalar(r["p_correct"]), scalar(r["p_ambiguous"]),
            scalar(r["p_below"]), scalar(r["lambda_star"]), scalar(r["rho"]), scalar(r["theta"]),
            scalar(r["decision"]), scalar(r["posterior_a"]["alpha"]),
            scalar(r["posterior_a"]["beta"]), scalar(r["posterior_b"]["alpha"]),
            scalar(r["posterior_b"]["beta"])});
    }
  } else if (command == "oc-sim") {
    std::vector<OcGridRow> grid;
    for (const auto& row : rows)
      grid.push_back({row["input"]["label"].get<std::string>(), row["input"]["n_per_arm"].get<int>(),
                      row["input"]["seed"].get<std::uint64_t>(), decode<OcResult>(row["result"])});
    return oc_grid_csv(grid);
  } else if (command == "freq-design") {
    line({"row", "method", "pi_a", "pi_b", "d", "rho", "gamma", "n", "p_correct", "p_ambiguous",
          "lambda", "n_min", "under_lower_bound", "n_lo", "n_hi"});
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Json& in = rows[i]["input"];
      const Json& r = rows[i]["result"];
      const bool eval = r.contains("lambda");
      line({std::to_string(i + 1), scalar(in["method"]), scalar(in["pi_a"]), scalar(in["pi_b"]),
            scalar(in["d"]), scalar(in["rho"]), scalar(in["gamma"]), eval ? scalar(r["n"]) : "",
            eval ? scalar(r["p_correct"]) : "", eval ? scalar(r["p_ambiguous"]) : "",
            eval ? scalar(r["lambda"]) : "", eval ? "" : scalar(r["n_min"]),
            eval ? "" : scalar(r["under_lower_bound"]), scalar(in["n_lo"]), scalar(in["n_hi"])});
    }
  } else if (command == "curve") {
    line({"row", "n", "value", "standard_error"});
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (const auto& p : rows[i]["result"]["curve"])
        line({std::to_string(i + 1), scalar(p["n"]), scalar(p["value"]), scalar(p["standard_error"])});
  } else {
    throw ConfigError("--output", "csv is not available for " + command);
  }
  return o.str();
}

std::string render_json(const std::string& command, const std::vector<Json>& rows) {
  Json doc = {{"schema_version", kSchemaVersion}, {"command", command}};
  if (rows.size() == 1) {
    doc["input"] = rows[0]["input"];
    doc["result"] = rows[0]["result"];
  } else {
    doc["rows"] = rows;
  }
  return doc.dump(2) + "\n";
}

CommandOutcome failure(int code, const std::string& type, const std::string& message,
                       const std::vector<FieldError>& fields = {}) {
  Json err = error_json(type, message, fields);
  err["error"]["exit_code"] = code;
  return {code, "", err.dump() + "\n"};
}

std::vector<Json> build_rows(const CommandConfig& c, const Json& doc) {
  if (!doc.is_object()) throw ConfigError("", "config must be a JSON object");
  if (doc.contains("command")) {
    if (!doc["command"].is_string() || doc["command"].get<std::string>() != c.command)
      throw ConfigError("command", "config is for '" + scalar(doc["command"]) + "', not '" + c.command + "'");
  }
  std::vector<Json> rows;
  if (c.command == "report") {
    Json body = doc;
    body.erase("note");
    body.erase("command");
    rows.push_back(std::move(body));
  } else {
    rows = expand_grid(doc);
  }
  for (auto& row : rows) {
    for (const auto& o : c.overrides) apply_override(row, o);
    apply_seed_m(row, c);
  }
  return rows;
}

}  // namespace

OutputFormat parse_output_format(const std::string& name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "text") return OutputFormat::Text;
  throw ConfigError("--output", "unknown format '" + name + "' (expected json, csv or text)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("--config", "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CommandOutcome run_command(const CommandConfig& c) {
  try {
    bool known = false;
    for (const auto& name : command_names()) known = known || name == c.command;
    if (!known) throw ConfigError("command", "unknown command '" + c.command + "'");
    if (c.out_path) {
      const auto parent = std::filesystem::path(*c.out_path).parent_path();
      if (!parent.empty() && !std::filesystem::is_directory(parent))
        throw ConfigError("--out", "directory '" + parent.string() + "' does not exist");
    }
    const auto format = c.output.value_or(c.command == "report" ? OutputFormat::Text : OutputFormat::Json);
    const auto rows = build_rows(c, parse_json_text(c.config_text));

    std::vector<Json> results;
    results.reserve(rows.size());
    for (const auto& row : rows) results.push_back(run_row(c.command, row));

    std::string rendered;
    switch (format) {
      case OutputFormat::Json: rendered = render_json(c.command, results); break;
      case OutputFormat::Csv: rendered = render_csv(c.command, results); break;
      case OutputFormat::Text: rendered = render_text(c.command, results); break;
    }
    if (c.out_path) {
      std::ofstream out(*c.out_path, std::ios::binary | std::ios::trunc);
      out << rendered;
      out.close();
      if (!out) throw ConfigError("--out", "cannot write '" + *c.out_path + "'");
      return {kOk, "", ""};
    }
    return {kOk, rendered, ""};
  } catch (const ConfigError& e) {
    std::vector<FieldError> fields;
    if (!e.field().empty()) fields.push_back({e.field(), e.what()});
    return failure(kConfigError, "config_error", e.what(), fields);
  } catch (const NotAttained& e) {
    return failure(kNotAttained, "not_attained", e.what());
  } catch (const DomainError& e) {
    return failure(kDomainError, "domain_error", e.what(), e.fields());
  } catch (const NumericError& e) {
    return failure(kNumericError, "numeric_error", e.what());
  } catch (const std::exception& e) {
    return failure(kInternalError, "internal_error", e.what());
  }
}

}  // namespace selecta::cli
