#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "nfg/bench.h"
#include "nfg/errors.h"

namespace nfg {
namespace {

using nlohmann::json;

// Reads keys from one JSON object and rejects any key nobody asked for.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError(where_ + ": expected an object");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  template <typename T>
  T get(const std::string& key, T fallback) {
    return has(key) ? convert<T>(j_.at(key), key) : fallback;
  }

  template <typename T>
  T require(const std::string& key) {
    if (!has(key)) throw ConfigError(where_ + ": missing '" + key + "'");
    return convert<T>(j_.at(key), key);
  }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.count(item.key())) {
        throw ConfigError(where_ + ": unknown key '" + item.key() + "'");
      }
    }
  }

 private:
  template <typename T>
  T convert(const json& v, const std::string& key) const {
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!v.is_number()) throw ConfigError("");
      } else if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) throw ConfigError("");
      } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_unsigned()) {
          throw ConfigError("");
        }
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) throw ConfigError("");
      }
      return v.get<T>();
    } catch (const std::exception&) {
      throw ConfigError(where_ + ": bad value for '" + key + "'");
    }
  }

  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

BoxEnvironment parse_boxes(const json& list) {
  if (!list.is_array()) throw ConfigError("environment: expected a preset name or a box list");
  std::vector<BoxObstacle> boxes;
  for (std::size_t i = 0; i < list.size(); ++i) {
    ObjectReader r(list[i], "environment[" + std::to_string(i) + "]");
    const auto t_lo = r.require<double>("t_lo");
    const auto t_hi = r.require<double>("t_hi");
    const auto y_lo = r.require<double>("y_lo");
    const auto y_hi = r.require<double>("y_hi");
    r.finish();
    boxes.emplace_back(t_lo, t_hi, y_lo, y_hi);
  }
  return BoxEnvironment(std::move(boxes));
}

void read_pins(ObjectReader& r, bool& pin_start, bool& pin_goal) {
  pin_start = r.get<bool>("pin_start", pin_start);
  pin_goal = r.get<bool>("pin_goal", pin_goal);
}

MethodSpec parse_method(const json& j, std::size_t index, const BenchConfig& cfg) {
  ObjectReader r(j, "methods[" + std::to_string(index) + "]");
  const auto name = r.require<std::string>("name");
  MethodSpec spec;
  spec.label = r.get<std::string>("label", name);
  if (name == "nfg") {
    NfgConfig m;
    m.sigma = cfg.sigma;
    m.n_pow = cfg.score.n_pow;
    m.batch = r.get<std::size_t>("batch", m.batch);
    m.iterations = r.get<std::size_t>("iterations", m.iterations);
    if (r.has("step_size")) {
      const json& s = r.raw("step_size");
      try {
        m.step_sizes = s.is_array() ? s.get<std::vector<double>>()
                                    : std::vector<double>{s.get<double>()};
      } catch (const json::exception&) {
        throw ConfigError("methods[" + std::to_string(index) + "]: bad value for 'step_size'");
      }
    }
    m.normalize_step = r.get<bool>("normalize_step", m.normalize_step);
    m.early_stop = r.get<bool>("early_stop", m.early_stop);
    const auto mode = r.get<std::string>("weight_mode", "shifted");
    if (mode == "shifted") {
      m.weight_mode = WeightMode::kShifted;
    } else if (mode == "raw") {
      m.weight_mode = WeightMode::kRaw;
    } else {
      throw ConfigError("unknown weight_mode '" + mode + "'");
    }
    m.workers = r.get<std::size_t>("workers", m.workers);
    read_pins(r, m.pin_start, m.pin_goal);
    spec.config = m;
  } else if (name == "stomp") {
    StompConfig m;
    m.batch = r.get<std::size_t>("batch", m.batch);
    m.iterations = r.get<std::size_t>("iterations", m.iterations);
    m.temperature = r.get<double>("temperature", m.temperature);
    m.workers = r.get<std::size_t>("workers", m.workers);
    read_pins(r, m.pin_start, m.pin_goal);
    spec.config = m;
  } else if (name == "chomp") {
    ChompConfig m;
    m.lambda_jerk = cfg.score.lambda_jerk;
    m.iterations = r.get<std::size_t>("iterations", m.iterations);
    m.step = r.get<double>("step", m.step);
    read_pins(r, m.pin_start, m.pin_goal);
    spec.config = m;
  } else if (name == "mppi") {
    MppiConfig m;
    m.rollouts = r.get<std::size_t>("rollouts", m.rollouts);
    m.iterations = r.get<std::size_t>("iterations", m.iterations);
    m.temperature = r.get<double>("temperature", m.temperature);
    if (r.has("noise_scale")) m.noise_scale = r.require<double>("noise_scale");
    m.goal = r.get<double>("goal", m.goal);
    m.weight_obs = r.get<double>("weight_obs", m.weight_obs);
    m.weight_goal = r.get<double>("weight_goal", m.weight_goal);
    m.workers = r.get<std::size_t>("workers", m.workers);
    read_pins(r, m.pin_start, m.pin_goal);
    spec.config = m;
  } else {
    throw ConfigError("unknown method '" + name + "'");
  }
  r.finish();
  return spec;
}

}  // namespace

std::string MethodSpec::kind() const {
  struct Name {
    std::string operator()(const NfgConfig&) const { return "nfg"; }
    std::string operator()(const StompConfig&) const { return "stomp"; }
    std::string operator()(const ChompConfig&) const { return "chomp"; }
    std::string operator()(const MppiConfig&) const { return "mppi"; }
  };
  return std::visit(Name{}, config);
}

void BenchConfig::validate() const {
  if (methods.empty()) throw ConfigError("at least one method is required");
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ConfigError("sigma must be positive");
  if (!(effective_regularization() > 0.0)) throw ConfigError("regularization must be positive");
  score.validate();
  std::set<std::string> labels;
  for (const auto& m : methods) {
    if (m.label.empty() || m.label.find_first_of("/\\,\n\"") != std::string::npos ||
        m.label == "." || m.label == "..") {
      throw ConfigError("invalid method label '" + m.label + "'");
    }
    if (!labels.insert(m.label).second) {
      throw ConfigError("duplicate method label '" + m.label + "'");
    }
    std::visit([](const auto& c) { c.validate(); }, m.config);
  }
  std::set<std::uint64_t> unique(seeds.begin(), seeds.end());
  if (unique.size() != seeds.size()) throw ConfigError("duplicate seed");
}

namespace {

BenchConfig parse_document(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  BenchConfig cfg;
  ObjectReader r(doc, "config");

  if (r.has("environment")) {
    const json& env = r.raw("environment");
    if (env.is_string()) {
      cfg.environment_name = env.get<std::string>();
      cfg.environment = environment_preset(cfg.environment_name);
    } else {
      cfg.environment_name = "inline";
      cfg.environment = parse_boxes(env);
    }
  }
  if (r.has("grid")) {
    ObjectReader g(r.raw("grid"), "grid");
    const auto horizon = g.get<double>("horizon_s", 1.0);
    const auto rate = g.get<double>("rate_hz", 100.0);
    g.finish();
    cfg.grid = TimeGrid(horizon, rate);
  }
  if (r.has("kernel")) {
    ObjectReader k(r.raw("kernel"), "kernel");
    const auto variance = k.get<double>("variance", cfg.kernel.variance());
    const auto length = k.get<double>("length_scale", cfg.kernel.length_scale());
    if (k.has("regularization")) cfg.regularization = k.require<double>("regularization");
    k.finish();
    cfg.kernel = SEKernel(variance, length);
  }
  cfg.sigma = r.get<double>("sigma", cfg.sigma);
  if (r.has("score")) {
    ObjectReader s(r.raw("score"), "score");
    cfg.score.lambda_jerk = s.get<double>("lambda_jerk", cfg.score.lambda_jerk);
    cfg.score.n_pow = s.get<double>("n_pow", cfg.score.n_pow);
    s.finish();
  }
  if (r.has("seeds")) {
    const json& seeds = r.raw("seeds");
    if (!seeds.is_array()) throw ConfigError("seeds: expected a list of integers");
    cfg.seeds.clear();
    for (const auto& s : seeds) {
      if (!s.is_number_unsigned()) throw ConfigError("seeds: expected non-negative integers");
      cfg.seeds.push_back(s.get<std::uint64_t>());
    }
  }
  cfg.output_dir = r.get<std::string>("output_dir", "");
  // Methods last: they inherit sigma and score settings.
  const json& methods = r.require<json>("methods");
  if (!methods.is_array()) throw ConfigError("methods: expected a list");
  for (std::size_t i = 0; i < methods.size(); ++i) {
    cfg.methods.push_back(parse_method(methods[i], i, cfg));
  }
  r.finish();
  cfg.validate();
  return cfg;
}

}  // namespace

BenchConfig parse_bench_config(std::string_view json_text) {
  try {
    return parse_document(json_text);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    // Constructor preconditions (grid, kernel, boxes) are config errors here.
    throw ConfigError(e.what());
  }
}

BenchConfig load_bench_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_bench_config(text.str());
}

}  // namespace nfg
