#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "errors.hpp"
#include "search.hpp"

namespace dilates {

// Runtime caps and annealing parameters. Loaded from a plain key=value file
// ('#' comments, blank lines ignored); unknown keys are rejected.
struct Config {
  std::size_t element_cap = default_element_cap;
  int subset_dim_cap = 20;  // ops that enumerate 2^d index subsets
  int alpha_m_cap = 25;
  std::size_t enum_n_cap = 10;  // exhaustive ideal enumeration
  int enum_d_cap = 4;
  AnnealParams anneal;

  static Config from_string(std::string_view text) {
    Config cfg;
    std::size_t pos = 0;
    int lineno = 0;
    while (pos <= text.size()) {
      auto eol = text.find('\n', pos);
      std::string_view line =
          text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
      pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
          s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
          s.remove_suffix(1);
        return s;
      };
      line = trim(line);
      if (line.empty()) continue;
      auto eq = line.find('=');
      if (eq == std::string_view::npos)
        throw parse_error("config line " + std::to_string(lineno) + ": expected key=value");
      std::string key(trim(line.substr(0, eq)));
      std::string value(trim(line.substr(eq + 1)));
      try {
        if (key == "element_cap")
          cfg.element_cap = std::stoull(value);
        else if (key == "subset_dim_cap")
          cfg.subset_dim_cap = std::stoi(value);
        else if (key == "alpha_m_cap")
          cfg.alpha_m_cap = std::stoi(value);
        else if (key == "enum_n_cap")
          cfg.enum_n_cap = std::stoull(value);
        else if (key == "enum_d_cap")
          cfg.enum_d_cap = std::stoi(value);
        else if (key == "anneal_t0")
          cfg.anneal.t0 = std::stod(value);
        else if (key == "anneal_cooling")
          cfg.anneal.cooling = std::stod(value);
        else
          throw parse_error("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
      } catch (const std::invalid_argument&) {
        throw parse_error("config line " + std::to_string(lineno) + ": bad value '" + value + "'");
      } catch (const std::out_of_range&) {
        throw parse_error("config line " + std::to_string(lineno) + ": bad value '" + value + "'");
      }
    }
    return cfg;
  }

  static Config from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
  }
};

}  // namespace dilates
