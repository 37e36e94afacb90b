#pragma once

// Shared plumbing for the command-line front end: parameter resolution
// (defaults -> preset -> config file -> flags), run manifests, and
// deterministic text output.
//
// Exit-code contract: configuration problems (bad flags, malformed config
// files, out-of-range values) raise ConfigError and exit with code 2; output
// write failures raise IoError and exit with code 3.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace tiemzi_cli {

using json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 17-significant-digit decimal rendering ("%.17g", C locale): round-trip
// exact for doubles, used for every CSV number.
std::string fmt17(double value);

// Parses a JSON file.  Raises ConfigError on unreadable files or parse
// failures (with the byte offset in the message).
json load_json_file(const std::string& path);

// Extracts the parameter object from a config file that is either a plain
// {flag-name: value} object or a run manifest (object with a "parameters"
// member).  When the file carries a "command" name it must equal `command`.
json config_parameters(const json& file, const std::string& command,
                       const std::string& path);

// Overlays `overlay` onto `resolved`, key by key.  Every key must already
// exist in `resolved` and the value must match its JSON type category
// (number / string / array / boolean); integer-valued targets additionally
// reject fractional numbers.  Raises ConfigError with the offending field
// path otherwise.
void overlay_parameters(json& resolved, const json& overlay,
                        const std::string& source);

// Writes `content` to `path` in one shot.  Raises IoError on failure.
void write_text_file(const std::string& path, const std::string& content);

// Serializes alongside every output: <out>.manifest.json with the command
// name, tool version, seed (null when the command has none), the full
// resolved parameter set, the output paths, and the only timestamp the tool
// ever emits.
void write_manifest(const std::string& command, const json& parameters,
                    const std::string& out_path);

// Reads a few well-typed values out of the resolved parameter object.
double param_double(const json& params, const char* key);
long long param_int(const json& params, const char* key);
std::uint64_t param_uint(const json& params, const char* key);
std::string param_string(const json& params, const char* key);

}  // namespace tiemzi_cli
