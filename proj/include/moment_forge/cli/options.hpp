#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "moment_forge/arith/shift_multiset.hpp"
#include "moment_forge/error.hpp"

namespace moment_forge::cli {

/// Raised for malformed flag values and config files; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n"), e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& text) {
  std::string s = trim(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) throw UsageError("not a number: '" + text + "'");
  return v;
}

/// Complex literals "0.1", "0.1+0.2i", "-3e-2-1e-3i", "0.5i", "i".
inline Complex parse_complex(const std::string& text) {
  std::string s = trim(text);
  if (s.empty()) throw UsageError("empty complex literal");
  if (s.back() != 'i') return parse_double(s);
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;)
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  auto imag = [&](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    return parse_double(part);
  };
  if (split == std::string::npos) return {0.0, imag(s)};
  return {parse_double(s.substr(0, split)), imag(s.substr(split))};
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');)
    if (!trim(item).empty()) out.push_back(trim(item));
  return out;
}

/// Flat "key = value" lines; '#' starts a comment.
inline std::map<std::string, std::string> read_config(std::istream& in, const std::string& origin = "config") {
  std::map<std::string, std::string> kv;
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(origin + ":" + std::to_string(line_no) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(0, 1);
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

inline std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  return read_config(in, path);
}

/// Binds options of one subcommand to variables, so that config-file values
/// can fill whatever the command line left unset and the effective values
/// can be echoed into reports.
class Binder {
 public:
  explicit Binder(CLI::App* app) : app_(app) {}

  CLI::App* app() const { return app_; }

  CLI::Option* add(const std::string& key, double& v, const std::string& help) {
    return bind(key, app_->add_option("--" + key, v, help), [&v](const std::string& s) { v = parse_double(s); },
                [&v] { return nlohmann::json(v); });
  }
  CLI::Option* add(const std::string& key, int& v, const std::string& help) {
    return add_integer(key, [&v](const std::string& s) { v = static_cast<int>(integer(s)); },
                       [&v] { return nlohmann::json(v); }, help);
  }
  CLI::Option* add(const std::string& key, std::int64_t& v, const std::string& help) {
    return add_integer(key, [&v](const std::string& s) { v = integer(s); }, [&v] { return nlohmann::json(v); }, help);
  }
  CLI::Option* add(const std::string& key, std::uint64_t& v, const std::string& help) {
    return add_integer(key,
                       [&v](const std::string& s) {
                         const auto x = integer(s);
                         if (x < 0) throw UsageError("must be non-negative, got '" + s + "'");
                         v = static_cast<std::uint64_t>(x);
                       },
                       [&v] { return nlohmann::json(v); }, help);
  }
  CLI::Option* add(const std::string& key, std::string& v, const std::string& help) {
    return bind(key, app_->add_option("--" + key, v, help), [&v](const std::string& s) { v = s; },
                [&v] { return nlohmann::json(v); });
  }
  CLI::Option* add(const std::string& key, std::vector<std::string>& v, const std::string& help) {
    auto* opt = app_->add_option("--" + key, v, help)->delimiter(',');
    return bind(key, opt, [&v](const std::string& s) { v = split_list(s); }, [&v] { return nlohmann::json(v); });
  }
  CLI::Option* add_flag(const std::string& key, bool& v, const std::string& help) {
    return bind(key, app_->add_flag("--" + key, v, help),
                [&v](const std::string& s) {
                  const auto t = trim(s);
                  if (t == "1" || t == "true" || t == "yes" || t == "on") v = true;
                  else if (t == "0" || t == "false" || t == "no" || t == "off") v = false;
                  else throw UsageError("not a boolean: '" + s + "'");
                },
                [&v] { return nlohmann::json(v); });
  }

  /// Applies config values to options absent from the command line.
  void overlay(const std::map<std::string, std::string>& config) {
    for (const auto& [key, value] : config) {
      if (key == "config" || key == "format" || key == "out") continue;
      auto it = slots_.find(key);
      if (it == slots_.end()) throw UsageError("unknown config key '" + key + "' for " + app_->get_name());
      if (it->second.option->count() == 0) it->second.set(value);
    }
  }

  nlohmann::json effective() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [key, slot] : slots_) j[key] = slot.get();
    return j;
  }

 private:
  struct Slot {
    CLI::Option* option;
    std::function<void(const std::string&)> set;
    std::function<nlohmann::json()> get;
  };

  static std::int64_t integer(const std::string& text) {
    const std::string s = trim(text);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && ptr == s.data() + s.size() && !s.empty()) return v;
    // Accept integral values written as floats, e.g. 1e5.
    const double d = parse_double(s);
    if (d != static_cast<double>(static_cast<std::int64_t>(d))) throw UsageError("not an integer: '" + text + "'");
    return static_cast<std::int64_t>(d);
  }

  // Integers go through integer() on the command line as well, so 1e9 is accepted there too.
  CLI::Option* add_integer(const std::string& key, std::function<void(const std::string&)> set,
                           std::function<nlohmann::json()> get, const std::string& help) {
    auto* opt = app_->add_option_function<std::string>(
        "--" + key,
        [set, key](const std::string& s) {
          try {
            set(s);
          } catch (const UsageError& e) {
            throw CLI::ValidationError("--" + key, e.what());
          }
        },
        help);
    opt->type_name("INT");
    return bind(key, opt, std::move(set), std::move(get));
  }

  CLI::Option* bind(const std::string& key, CLI::Option* opt, std::function<void(const std::string&)> set,
                    std::function<nlohmann::json()> get) {
    slots_[key] = {opt, std::move(set), std::move(get)};
    return opt;
  }

  CLI::App* app_;
  std::map<std::string, Slot> slots_;
};

inline arith::ShiftMultiset parse_shifts(const std::vector<std::string>& items) {
  std::vector<Complex> v;
  for (const auto& s : items) v.push_back(parse_complex(s));
  return arith::ShiftMultiset(std::move(v));
}

inline std::vector<double> parse_doubles(const std::vector<std::string>& items) {
  std::vector<double> v;
  for (const auto& s : items) v.push_back(parse_double(s));
  return v;
}

}  // namespace moment_forge::cli
