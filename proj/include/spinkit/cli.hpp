#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace spinkit::cli {

using Json = nlohmann::ordered_json;

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

enum class Format { Text, Json };

/// Outcome of one command line. `help` and `usage_error` short-circuit the
/// report: they carry text for stdout and stderr respectively.
struct Report {
  std::vector<std::string> command;
  std::string inputs_digest;
  std::uint64_t seed = 0;
  Format format = Format::Text;
  Json result = Json::object();
  std::vector<Check> checks;
  std::string error;
  int exit_status = 0;

  std::string help;
  std::string usage_error;

  bool all_passed() const;
};

/// Raised by a FileReader for unreadable inputs; reported like a parse error.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using FileReader = std::function<std::string(const std::string& path)>;

std::string read_file(const std::string& path);

/// 64-bit FNV-1a over the given inputs, each followed by a zero byte.
std::string fnv1a_digest(const std::vector<std::string>& inputs);

/// Parses args (without the program name) and runs the subcommand. Exit
/// status: 0 ok, 1 mathematical failure or failed check, 2 usage or input error.
Report dispatch(const std::vector<std::string>& args, const FileReader& read = read_file);

std::string render_text(const Report& r);
std::string render_json(const Report& r);
std::string help_text();

/// dispatch + rendering; returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const FileReader& read = read_file);

}  // namespace spinkit::cli
