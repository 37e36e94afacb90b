#include "support.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#ifndef TIEMZI_VERSION
#define TIEMZI_VERSION "0.0.0"
#endif

namespace tiemzi_cli {

namespace {

std::string iso_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

const char* type_name(const json& v) {
  if (v.is_number()) return "number";
  if (v.is_string()) return "string";
  if (v.is_array()) return "array";
  if (v.is_boolean()) return "boolean";
  if (v.is_null()) return "null";
  return "object";
}

bool same_category(const json& target, const json& value) {
  if (target.is_number()) return value.is_number();
  if (target.is_string()) return value.is_string();
  if (target.is_array()) return value.is_array();
  if (target.is_boolean()) return value.is_boolean();
  return false;
}

}  // namespace

std::string fmt17(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("config error: cannot read '" + path + "'");
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config error in '" + path + "': " + e.what());
  }
}

json config_parameters(const json& file, const std::string& command,
                       const std::string& path) {
  if (!file.is_object()) {
    throw ConfigError("config error in '" + path +
                      "': top-level value must be an object");
  }
  if (file.contains("command")) {
    const json& cmd = file.at("command");
    if (!cmd.is_string() || cmd.get<std::string>() != command) {
      throw ConfigError("config error in '" + path + "': field 'command' is " +
                        cmd.dump() + ", expected \"" + command + "\"");
    }
  }
  if (file.contains("parameters")) {
    const json& params = file.at("parameters");
    if (!params.is_object()) {
      throw ConfigError("config error in '" + path +
                        "': field 'parameters' must be an object");
    }
    return params;
  }
  return file;
}

void overlay_parameters(json& resolved, const json& overlay,
                        const std::string& source) {
  for (const auto& [key, value] : overlay.items()) {
    if (!resolved.contains(key)) {
      throw ConfigError("config error at " + source + "." + key +
                        ": unknown parameter");
    }
    json& target = resolved[key];
    if (!same_category(target, value)) {
      throw ConfigError("config error at " + source + "." + key +
                        ": expected " + std::string(type_name(target)) +
                        ", got " + type_name(value));
    }
    if (target.is_number_integer() || target.is_number_unsigned()) {
      // Integer-valued parameter: accept 3 or 3.0, reject 3.5.
      if (value.is_number_float()) {
        const double v = value.get<double>();
        if (std::nearbyint(v) != v) {
          throw ConfigError("config error at " + source + "." + key +
                            ": expected an integer, got " + value.dump());
        }
      }
      if (target.is_number_unsigned() && value.is_number_integer() &&
          !value.is_number_unsigned() && value.get<long long>() < 0) {
        throw ConfigError("config error at " + source + "." + key +
                          ": expected a non-negative integer, got " +
                          value.dump());
      }
      if (target.is_number_unsigned()) {
        target = value.is_number_float()
                     ? static_cast<std::uint64_t>(value.get<double>())
                     : value.get<std::uint64_t>();
      } else {
        target = value.is_number_float()
                     ? static_cast<long long>(value.get<double>())
                     : value.get<long long>();
      }
    } else if (target.is_number_float()) {
      target = value.get<double>();
    } else {
      target = value;
    }
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("i/o error: cannot open '" + path + "' for writing");
  }
  out << content;
  out.flush();
  if (!out) {
    throw IoError("i/o error: failed writing '" + path + "'");
  }
}

void write_manifest(const std::string& command, const json& parameters,
                    const std::string& out_path) {
  json manifest;
  manifest["command"] = command;
  manifest["version"] = TIEMZI_VERSION;
  manifest["seed"] =
      parameters.contains("seed") ? parameters.at("seed") : json(nullptr);
  manifest["parameters"] = parameters;
  manifest["outputs"] = json::array({out_path});
  manifest["generated_at"] = iso_utc_now();
  write_text_file(out_path + ".manifest.json", manifest.dump(2) + "\n");
}

double param_double(const json& params, const char* key) {
  return params.at(key).get<double>();
}

long long param_int(const json& params, const char* key) {
  return params.at(key).get<long long>();
}

std::uint64_t param_uint(const json& params, const char* key) {
  return params.at(key).get<std::uint64_t>();
}

std::string param_string(const json& params, const char* key) {
  return params.at(key).get<std::string>();
}

}  // namespace tiemzi_cli
