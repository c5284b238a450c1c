#pragma once

// Resolved run configuration for hitchin_lab: typed parameters per subcommand,
// merged from defaults, an optional JSON config and command-line flags, plus the
// artifact writer. The config file has the same shape as the manifest a run emits.

#include <complex>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace hitchin::cli {

using json = nlohmann::ordered_json;

enum class ParamType { Int, Double, Bool, IntList, DoubleList, Complex, ComplexList, StringList, String, Json };

struct ParamSpec {
  std::string name;  // JSON key; the flag is --name with '_' replaced by '-'
  ParamType type;
  json default_value;  // null when the parameter is optional
  std::string help;
};

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<ParamSpec> params;
};

struct RunConfig {
  std::string subcommand;
  json parameters = json::object();
  std::optional<std::string> out_dir;
  bool check = false;
  bool plot_data = false;
  int threads = 0;

  int get_int(const std::string& key) const;
  double get_double(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  bool has(const std::string& key) const;
  std::vector<int> get_ints(const std::string& key) const;
  std::vector<double> get_doubles(const std::string& key) const;
  std::complex<double> get_complex(const std::string& key) const;
  std::vector<std::complex<double>> get_complexes(const std::string& key) const;
  std::vector<std::string> get_strings(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  const json& get_json(const std::string& key) const { return parameters.at(key); }

  /// Everything needed to re-run: subcommand, parameters and run flags.
  json manifest() const;
};

/// Converts a flag string into the JSON form of `type`; throws ConfigError.
json parse_flag_value(const ParamSpec& spec, const std::string& text);
/// Type-checks a JSON value (from a config file); throws ConfigError.
json check_json_value(const ParamSpec& spec, const json& value);

/// Applies a config file onto `cfg`. Unknown keys and a mismatched subcommand are ConfigErrors.
void apply_config_file(RunConfig& cfg, const CommandSpec& spec, const std::filesystem::path& file);

/// Collects the files of one run and writes them, plus manifest.json, into the output directory.
class ArtifactWriter {
 public:
  explicit ArtifactWriter(const RunConfig& cfg) : cfg_(cfg) {}
  void csv(const std::string& file, const std::vector<std::string>& header,
           const std::vector<std::vector<double>>& columns);
  void plot(const std::string& file, const std::vector<double>& x, const std::vector<double>& y);
  void json_file(const std::string& file, const json& value);
  /// Writes everything when an output directory is set; returns the file list.
  std::vector<std::string> flush() const;

 private:
  const RunConfig& cfg_;
  std::map<std::string, std::string> files_;
};

/// %.12g formatting used for every CSV number.
std::string format_csv_number(double x);

}  // namespace hitchin::cli
