#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kazhdan/error.hpp"

namespace kazhdan::cli {

/// Bad flags or flag values. `flag` names the offending option.
class UsageError : public Error {
 public:
  UsageError(std::string flag, const std::string& message) : Error(flag + ": " + message), flag_(std::move(flag)) {}
  const std::string& flag() const { return flag_; }

 private:
  std::string flag_;
};

/// Environment variable naming the default cache directory.
inline constexpr const char* kCacheDirEnv = "KAZHDAN_CACHE_DIR";

struct RunConfig {
  std::string type_code;     // e.g. "A3"; exclusive with matrix_path
  std::string matrix_path;   // JSON Coxeter matrix file
  std::vector<std::string> parabolic;  // generator names
  std::string command;       // kl | h | andersen | bs | equivariant | lefschetz | ih | audit
  std::string format = "text";        // text | csv | json
  std::optional<std::string> cache_path;
  bool no_cache = false;
  std::optional<int> rank;
  int n_max = 10;
  std::optional<std::string> x;
  std::optional<std::string> y;
  std::optional<std::string> word;
};

/// Parses command-line arguments (without the program name). Throws
/// UsageError on malformed input.
RunConfig parse_args(const std::vector<std::string>& args);

/// Runs one command. Returns 0 on success, 1 on usage errors and 2 on
/// internal inconsistencies; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Runs every non-empty, non-comment line of a scenario file as its own
/// argument list, each preceded by a "### <line>" header. Returns the
/// largest exit status seen.
int run_scenario(const std::string& path, std::ostream& out, std::ostream& err);

/// Entry point for the executable: either "--scenario FILE" or one command.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kazhdan::cli
