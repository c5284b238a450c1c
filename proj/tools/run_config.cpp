#include "run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

#include "hitchin/error.hpp"

namespace hitchin::cli {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ConfigError, what); }

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

double to_double(const std::string& raw, const std::string& key) {
  const std::string s = trim(raw);
  double x = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, x);
  if (s.empty() || ec != std::errc() || ptr != last) bad(key + ": '" + raw + "' is not a number");
  return x;
}

long long to_int(const std::string& raw, const std::string& key) {
  const std::string s = trim(raw);
  long long x = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) bad(key + ": '" + raw + "' is not an integer");
  return x;
}

// Accepts "x", "yi", "x+yi", "x-yi" and "i" / "-i".
json to_complex(const std::string& raw, const std::string& key) {
  static const std::regex form(
      R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?(?:([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i)?\s*$)");
  std::smatch m;
  if (trim(raw).empty() || !std::regex_match(raw, m, form)) bad(key + ": '" + raw + "' is not a complex number");
  const double re = m[1].matched ? to_double(m[1].str(), key) : 0.0;
  double im = 0.0;
  const bool has_i = raw.find('i') != std::string::npos;
  if (has_i && m[1].matched && m[2].str().empty()) {
    // "2i": the regex hands the coefficient to the real group.
    if (m[3].matched) bad(key + ": '" + raw + "' needs a sign before the imaginary part");
    return json::array({0.0, re});
  }
  if (has_i) {
    im = m[3].matched ? to_double(m[3].str(), key) : 1.0;
    if (m[2].str() == "-") im = -im;
  }
  return json::array({re, im});
}

bool to_bool(const std::string& raw, const std::string& key) {
  const std::string s = trim(raw);
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  bad(key + ": '" + raw + "' is not a boolean");
}

template <class F>
json list_of(const std::string& text, F&& one) {
  json out = json::array();
  if (trim(text).empty()) return out;
  for (const auto& token : split(text, ',')) out.push_back(one(token));
  return out;
}

bool is_integer(const json& v) { return v.is_number_integer() || v.is_number_unsigned(); }

json check_scalar(ParamType type, const json& v, const std::string& key) {
  switch (type) {
    case ParamType::Int:
      if (!is_integer(v)) bad(key + " must be an integer");
      return v;
    case ParamType::Double:
      if (!v.is_number()) bad(key + " must be a number");
      return v.get<double>();
    case ParamType::Bool:
      if (!v.is_boolean()) bad(key + " must be a boolean");
      return v;
    case ParamType::Complex:
      if (v.is_number()) return json::array({v.get<double>(), 0.0});
      if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return json::array({v[0].get<double>(), v[1].get<double>()});
      }
      if (v.is_string()) return to_complex(v.get<std::string>(), key);
      bad(key + " must be a complex number: [re, im], a number or a string like \"1-2i\"");
    case ParamType::String:
      if (!v.is_string()) bad(key + " must be a string");
      return v;
    default:
      bad(key + ": internal type error");
  }
}

}  // namespace

json parse_flag_value(const ParamSpec& spec, const std::string& text) {
  const auto& key = spec.name;
  switch (spec.type) {
    case ParamType::Int:
      return to_int(text, key);
    case ParamType::Double:
      return to_double(text, key);
    case ParamType::Bool:
      return to_bool(text, key);
    case ParamType::IntList:
      return list_of(text, [&](const std::string& s) { return json(to_int(s, key)); });
    case ParamType::DoubleList:
      return list_of(text, [&](const std::string& s) { return json(to_double(s, key)); });
    case ParamType::Complex:
      return to_complex(text, key);
    case ParamType::ComplexList:
      return list_of(text, [&](const std::string& s) { return to_complex(s, key); });
    case ParamType::StringList:
      return list_of(text, [](const std::string& s) { return json(trim(s)); });
    case ParamType::String:
      return text;
    case ParamType::Json:
      try {
        return json::parse(text);
      } catch (const json::parse_error&) {
        // A bare word such as a preset name.
        return text;
      }
  }
  bad(key + ": internal type error");
}

json check_json_value(const ParamSpec& spec, const json& value) {
  const auto& key = spec.name;
  if (value.is_null()) {
    if (spec.default_value.is_null()) return value;
    bad(key + " may not be null");
  }
  if (spec.type == ParamType::Json) return value;
  // Strings are accepted anywhere and parsed like the command-line flag.
  if (value.is_string() && spec.type != ParamType::String && spec.type != ParamType::Complex) {
    return parse_flag_value(spec, value.get<std::string>());
  }
  auto each = [&](ParamType inner) {
    if (!value.is_array()) bad(key + " must be a list");
    json out = json::array();
    for (const auto& v : value) out.push_back(check_scalar(inner, v, key));
    return out;
  };
  switch (spec.type) {
    case ParamType::IntList:
      return each(ParamType::Int);
    case ParamType::DoubleList:
      return each(ParamType::Double);
    case ParamType::ComplexList:
      return each(ParamType::Complex);
    case ParamType::StringList:
      return each(ParamType::String);
    default:
      return check_scalar(spec.type, value, key);
  }
}

void apply_config_file(RunConfig& cfg, const CommandSpec& spec, const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) bad("cannot open config file " + file.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    bad("config file " + file.string() + ": " + e.what());
  }
  if (!doc.is_object()) bad("config file must hold a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "subcommand") {
      if (value != spec.name) bad("config is for subcommand " + value.dump() + ", not " + spec.name);
    } else if (key == "check") {
      cfg.check = check_scalar(ParamType::Bool, value, key).get<bool>();
    } else if (key == "plot_data") {
      cfg.plot_data = check_scalar(ParamType::Bool, value, key).get<bool>();
    } else if (key == "threads") {
      cfg.threads = check_scalar(ParamType::Int, value, key).get<int>();
    } else if (key == "out") {
      if (!value.is_null()) cfg.out_dir = check_scalar(ParamType::String, value, key).get<std::string>();
    } else if (key == "parameters") {
      if (!value.is_object()) bad("parameters must be a JSON object");
      for (const auto& [pkey, pvalue] : value.items()) {
        const auto it = std::find_if(spec.params.begin(), spec.params.end(),
                                     [&](const ParamSpec& p) { return p.name == pkey; });
        if (it == spec.params.end()) bad("unknown parameter '" + pkey + "' for " + spec.name);
        cfg.parameters[pkey] = check_json_value(*it, pvalue);
      }
    } else {
      bad("unknown config key '" + key + "'");
    }
  }
}

int RunConfig::get_int(const std::string& key) const { return parameters.at(key).get<int>(); }
double RunConfig::get_double(const std::string& key) const { return parameters.at(key).get<double>(); }
bool RunConfig::get_bool(const std::string& key) const { return parameters.at(key).get<bool>(); }
bool RunConfig::has(const std::string& key) const { return parameters.contains(key) && !parameters.at(key).is_null(); }
std::vector<int> RunConfig::get_ints(const std::string& key) const { return parameters.at(key).get<std::vector<int>>(); }
std::vector<double> RunConfig::get_doubles(const std::string& key) const {
  return parameters.at(key).get<std::vector<double>>();
}
std::complex<double> RunConfig::get_complex(const std::string& key) const {
  const auto& v = parameters.at(key);
  return {v[0].get<double>(), v[1].get<double>()};
}
std::vector<std::complex<double>> RunConfig::get_complexes(const std::string& key) const {
  std::vector<std::complex<double>> out;
  for (const auto& v : parameters.at(key)) out.emplace_back(v[0].get<double>(), v[1].get<double>());
  return out;
}
std::vector<std::string> RunConfig::get_strings(const std::string& key) const {
  return parameters.at(key).get<std::vector<std::string>>();
}
std::string RunConfig::get_string(const std::string& key) const { return parameters.at(key).get<std::string>(); }

json RunConfig::manifest() const {
  json m;
  m["subcommand"] = subcommand;
  m["parameters"] = parameters;
  m["check"] = check;
  m["plot_data"] = plot_data;
  m["threads"] = threads;
  m["out"] = out_dir ? json(*out_dir) : json(nullptr);
  return m;
}

std::string format_csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void ArtifactWriter::csv(const std::string& file, const std::vector<std::string>& header,
                         const std::vector<std::vector<double>>& columns) {
  std::ostringstream os;
  for (std::size_t j = 0; j < header.size(); ++j) os << (j ? "," : "") << header[j];
  os << '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) os << (j ? "," : "") << format_csv_number(columns[j][i]);
    os << '\n';
  }
  files_[file] = os.str();
}

void ArtifactWriter::plot(const std::string& file, const std::vector<double>& x, const std::vector<double>& y) {
  if (!cfg_.plot_data) return;
  std::ostringstream os;
  for (std::size_t i = 0; i < x.size(); ++i) os << format_csv_number(x[i]) << ' ' << format_csv_number(y[i]) << '\n';
  files_[file] = os.str();
}

void ArtifactWriter::json_file(const std::string& file, const json& value) { files_[file] = value.dump(2) + "\n"; }

std::vector<std::string> ArtifactWriter::flush() const {
  std::vector<std::string> names;
  for (const auto& [name, _] : files_) names.push_back(name);
  if (!cfg_.out_dir) return names;
  const std::filesystem::path dir(*cfg_.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) bad("cannot create output directory " + dir.string() + ": " + ec.message());
  auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) bad("cannot write " + (dir / name).string());
    out << body;
  };
  for (const auto& [name, body] : files_) write(name, body);
  write("manifest.json", cfg_.manifest().dump(2) + "\n");
  names.push_back("manifest.json");
  return names;
}

}  // namespace hitchin::cli
