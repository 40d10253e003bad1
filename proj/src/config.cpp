#include "contactline/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "contactline/errors.hpp"
#include "json.hpp"

namespace contactline {

namespace {

using json = nlohmann::json;

// A value as it appeared in the input: scalar text or a list of texts.
struct RawValue {
  std::vector<std::string> items;
  bool is_list = false;
  bool is_null = false;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double to_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end)
    throw ParseError("key '" + std::string(key) + "': '" + std::string(text) + "' is not a number");
  return v;
}

long long to_integer(std::string_view key, std::string_view text) {
  const double v = to_double(key, text);
  if (!std::isfinite(v) || v != std::floor(v) || std::abs(v) > 9e15)
    throw ParseError("key '" + std::string(key) + "': '" + std::string(trim(text)) +
                     "' is not an integer");
  return static_cast<long long>(v);
}

using Setter = std::function<void(RunConfig&, const std::string&, const RawValue&)>;

std::string scalar(const std::string& key, const RawValue& raw) {
  if (raw.is_list || raw.items.size() != 1)
    throw ParseError("key '" + key + "' expects a single value");
  return raw.items.front();
}

template <class T>
Setter solver_real(T SolverConfig::*member) {
  return [member](RunConfig& c, const std::string& k, const RawValue& r) {
    c.solver.*member = to_double(k, scalar(k, r));
  };
}

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"ic.a", [](RunConfig& c, const std::string& k, const RawValue& r) {
         c.ic.a = to_double(k, scalar(k, r));
       }},
      {"ic.b", [](RunConfig& c, const std::string& k, const RawValue& r) {
         c.ic.b = to_double(k, scalar(k, r));
       }},
      {"grid.L", [](RunConfig& c, const std::string& k, const RawValue& r) {
         c.grid.L = to_double(k, scalar(k, r));
       }},
      {"grid.N", [](RunConfig& c, const std::string& k, const RawValue& r) {
         const auto n = to_integer(k, scalar(k, r));
         if (n < 0 || n > std::numeric_limits<int>::max())
           throw ValidationError("grid.N: requires N >= 5");
         c.grid.N = static_cast<int>(n);
       }},
      {"solver.tol", solver_real(&SolverConfig::tol)},
      {"solver.dt_init", solver_real(&SolverConfig::dt_init)},
      {"solver.dt_max", solver_real(&SolverConfig::dt_max)},
      {"solver.dt_min", solver_real(&SolverConfig::dt_min)},
      {"solver.safety", solver_real(&SolverConfig::safety)},
      {"solver.beta_floor", solver_real(&SolverConfig::beta_floor)},
      {"solver.rescale_n", [](RunConfig& c, const std::string& k, const RawValue& r) {
         if (r.is_null) {
           c.solver.rescale_n.reset();
           return;
         }
         const auto n = to_integer(k, scalar(k, r));
         if (n < 1 || n > 64) throw ValidationError("solver.rescale_n: requires n >= 1");
         c.solver.rescale_n = static_cast<int>(n);
       }},
      {"solver.coupling_limit", [](RunConfig& c, const std::string& k, const RawValue& r) {
         if (r.is_null || trim(scalar(k, r)) == "none") {
           c.solver.coupling_limit.reset();
           return;
         }
         c.solver.coupling_limit = to_double(k, scalar(k, r));
       }},
      {"solver.max_rejections", [](RunConfig& c, const std::string& k, const RawValue& r) {
         const auto n = to_integer(k, scalar(k, r));
         if (n < 1 || n > std::numeric_limits<int>::max())
           throw ValidationError("solver.max_rejections: requires >= 1");
         c.solver.max_rejections = static_cast<int>(n);
       }},
      {"stop.V_max", solver_real(&SolverConfig::V_max)},
      {"stop.t_max", solver_real(&SolverConfig::t_max)},
      {"stop.T_max", solver_real(&SolverConfig::T_max)},
      {"stop.max_steps", [](RunConfig& c, const std::string& k, const RawValue& r) {
         const auto n = to_integer(k, scalar(k, r));
         if (n < 1) throw ValidationError("stop.max_steps: requires max_steps >= 1");
         c.solver.max_steps = static_cast<std::size_t>(n);
       }},
      {"output.dir", [](RunConfig& c, const std::string& k, const RawValue& r) {
         c.output_dir = scalar(k, r);
         if (c.output_dir.empty()) throw ValidationError("output.dir: must not be empty");
       }},
      {"output.snapshot_times", [](RunConfig& c, const std::string& k, const RawValue& r) {
         c.snapshot_times.clear();
         for (const auto& item : r.items)
           if (!trim(item).empty()) c.snapshot_times.push_back(to_double(k, item));
       }},
  };
  return table;
}

void apply(RunConfig& config, const std::string& key, const RawValue& raw,
           const std::string& context) {
  const auto& table = setters();
  const auto it = std::find_if(table.begin(), table.end(),
                               [&](const auto& entry) { return entry.first == key; });
  if (it == table.end()) throw ParseError(context + "unknown key '" + key + "'");
  try {
    it->second(config, key, raw);
  } catch (const ParseError& e) {
    throw ParseError(context + e.what());
  }
  config.sources[key] = "user";
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) out.emplace_back(trim(item));
  return out;
}

void flatten(const json& node, const std::string& prefix,
             std::vector<std::pair<std::string, RawValue>>& out) {
  if (node.is_object()) {
    for (const auto& [k, v] : node.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  RawValue raw;
  auto text_of = [&](const json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) {
      std::ostringstream s;
      s.precision(17);
      if (v.is_number_integer()) s << v.get<long long>();
      else s << v.get<double>();
      return s.str();
    }
    throw ParseError("key '" + prefix + "': unsupported JSON value " + v.dump());
  };
  if (node.is_array()) {
    raw.is_list = true;
    for (const auto& v : node) raw.items.push_back(text_of(v));
  } else if (node.is_null()) {
    raw.is_null = true;
  } else {
    raw.items.push_back(text_of(node));
  }
  out.emplace_back(prefix, std::move(raw));
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& entry : setters()) k.push_back(entry.first);
    return k;
  }();
  return keys;
}

void RunConfig::validate() const {
  ic.validate();
  grid.validate();
  solver.validate();
  for (double t : snapshot_times)
    if (!(t >= 0.0) || !std::isfinite(t))
      throw ValidationError("output.snapshot_times: requires finite times >= 0");
}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  for (const auto& key : config_keys()) config.sources[key] = "default";

  const std::string_view body = trim(text);
  if (!body.empty() && body.front() == '{') {
    json doc;
    try {
      doc = json::parse(body);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("invalid JSON config: ") + e.what());
    }
    std::vector<std::pair<std::string, RawValue>> entries;
    flatten(doc, "", entries);
    for (const auto& [key, raw] : entries) apply(config, key, raw, "");
  } else {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::string_view view = line;
      if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
      view = trim(view);
      if (view.empty()) continue;
      const auto eq = view.find('=');
      const std::string context = "line " + std::to_string(line_no) + ": ";
      if (eq == std::string_view::npos) throw ParseError(context + "expected key=value");
      const std::string key{trim(view.substr(0, eq))};
      const std::string_view value = trim(view.substr(eq + 1));
      RawValue raw;
      if (key == "output.snapshot_times") {
        raw.is_list = true;
        raw.items = split_list(value);
      } else if (key == "solver.rescale_n" && (value == "none" || value.empty())) {
        raw.is_null = true;
      } else {
        raw.items.emplace_back(value);
      }
      apply(config, key, raw, context);
    }
  }
  config.validate();
  return config;
}

}  // namespace contactline
