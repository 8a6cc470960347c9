#include "nstable/report.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace nstable {
namespace {

using nlohmann::json;

void set_if(json& doc, const char* key, const std::optional<std::string>& v) {
  if (v) doc[key] = *v;
}

template <typename T>
void set_if(json& doc, const char* key, const std::optional<T>& v) {
  if (v) doc[key] = *v;
}

template <typename T>
void read_if(const json& doc, const char* key, std::optional<T>& out) {
  if (auto it = doc.find(key); it != doc.end()) out = it->get<T>();
}

template <typename T>
void read_if(const json& doc, const char* key, T& out) {
  if (auto it = doc.find(key); it != doc.end()) out = it->get<T>();
}

json strip_runtimes(json doc) {
  if (doc.is_object()) {
    doc.erase("runtime_ms");
    for (auto& [key, value] : doc.items()) value = strip_runtimes(value);
  } else if (doc.is_array()) {
    for (auto& value : doc) value = strip_runtimes(value);
  }
  return doc;
}

double parse_number(const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("grid: '" + text + "' is not a number");
  }
  if (used != text.size() || !std::isfinite(value)) {
    throw std::invalid_argument("grid: '" + text + "' is not a number");
  }
  return value;
}

}  // namespace

json config_to_json(const ExperimentConfig& config) {
  json doc;
  doc["command"] = config.command;
  set_if(doc, "N", config.index_spec);
  set_if(doc, "X", config.law_spec);
  set_if(doc, "L", config.transform_spec);
  set_if(doc, "c", config.c);
  set_if(doc, "c_grid", config.c_grid);
  set_if(doc, "t", config.t);
  set_if(doc, "k", config.k);
  doc["n"] = config.n;
  doc["seed"] = config.seed;
  doc["order"] = config.order;
  doc["threads"] = config.threads;
  set_if(doc, "out", config.out);
  return doc;
}

ExperimentConfig config_from_json(const json& doc) {
  if (!doc.is_object()) {
    throw std::invalid_argument("config: expected a JSON object");
  }
  static const char* known[] = {"command", "N", "X",    "L",     "c",
                                "c_grid",  "t", "k",    "n",     "seed",
                                "order",   "threads",   "out"};
  for (const auto& [key, value] : doc.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  ExperimentConfig config;
  try {
    if (!doc.contains("command") || !doc["command"].is_string()) {
      throw std::invalid_argument("config: missing string field 'command'");
    }
    config.command = doc["command"].get<std::string>();
    read_if(doc, "N", config.index_spec);
    read_if(doc, "X", config.law_spec);
    read_if(doc, "L", config.transform_spec);
    read_if(doc, "c", config.c);
    read_if(doc, "c_grid", config.c_grid);
    read_if(doc, "t", config.t);
    read_if(doc, "k", config.k);
    read_if(doc, "n", config.n);
    read_if(doc, "seed", config.seed);
    read_if(doc, "order", config.order);
    read_if(doc, "threads", config.threads);
    read_if(doc, "out", config.out);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return config;
}

json report_to_json(const SimReport& report) {
  json doc;
  doc["statistic"] = report.statistic_name;
  doc["value"] = report.value;
  doc["threshold"] = report.threshold;
  doc["pass"] = report.pass;
  doc["n"] = report.n;
  doc["seed"] = report.seed;
  doc["runtime_ms"] = report.runtime_ms;
  return doc;
}

json experiment_report(const ExperimentConfig& config,
                       const std::vector<SimReport>& reports) {
  json doc;
  doc["schema"] = kReportSchema;
  doc["toolkit_version"] = kToolkitVersion;
  doc["config"] = config_to_json(config);
  doc["reports"] = json::array();
  for (const SimReport& r : reports) doc["reports"].push_back(report_to_json(r));
  doc["determinism_hash"] = report_hash(doc);
  return doc;
}

std::string report_hash(const nlohmann::json& report) {
  json stripped = strip_runtimes(report);
  stripped.erase("determinism_hash");
  const std::string bytes = stripped.dump();
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char b : bytes) {
    hash ^= b;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string(buf);
}

bool all_pass(const std::vector<SimReport>& reports) {
  for (const SimReport& r : reports) {
    if (!r.pass) return false;
  }
  return true;
}

std::vector<double> parse_c_grid(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("grid: empty specification");
  constexpr std::size_t kMaxPoints = 100001;
  const auto dots = text.find("..");
  std::vector<double> grid;
  if (dots != std::string::npos) {
    const std::string lo_text = text.substr(0, dots);
    std::string rest = text.substr(dots + 2);
    double step = 1.0;
    if (const auto comma = rest.find(','); comma != std::string::npos) {
      step = parse_number(rest.substr(comma + 1));
      rest = rest.substr(0, comma);
    }
    const double lo = parse_number(lo_text);
    const double hi = parse_number(rest);
    if (!(step > 0.0)) throw std::invalid_argument("grid: step must be positive");
    if (hi < lo) throw std::invalid_argument("grid: upper end below lower end");
    if ((hi - lo) / step > static_cast<double>(kMaxPoints)) {
      throw std::invalid_argument("grid: more than 100001 points");
    }
    // Integer stepping avoids accumulated drift on long ranges.
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
    for (std::size_t i = 0; i <= count; ++i) {
      grid.push_back(lo + step * static_cast<double>(i));
    }
    return grid;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = comma == std::string::npos
                                 ? text.substr(pos)
                                 : text.substr(pos, comma - pos);
    grid.push_back(parse_number(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (grid.size() > kMaxPoints) {
    throw std::invalid_argument("grid: more than 100001 points");
  }
  return grid;
}

}  // namespace nstable
