#pragma once

#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "redprop/models.hpp"

namespace redprop {

inline SearchMode parse_mode(const std::string& s) {
  if (s == "first") return SearchMode::First;
  if (s == "all") return SearchMode::All;
  if (s == "optimize") return SearchMode::Optimize;
  throw InvalidParams("unknown mode '" + s + "' (first, all, optimize)");
}

inline const char* mode_name(SearchMode m) {
  switch (m) {
    case SearchMode::First: return "first";
    case SearchMode::All: return "all";
    case SearchMode::Optimize: return "optimize";
  }
  return "?";
}

/// Search variables of `selector` in the model; single models only know their own side.
inline const std::vector<VarId>& search_group(const Model& m, const std::string& selector) {
  auto it = m.groups.find(selector);
  if (it == m.groups.end())
    throw InvalidParams("search vars '" + selector + "' not available for variant " + m.variant);
  return it->second;
}

inline SearchConfig search_config(const Model& m, const std::string& selector, SearchMode mode,
                                  std::size_t node_limit = 0) {
  SearchConfig cfg;
  cfg.search_vars = search_group(m, selector);
  cfg.var_order = m.order;
  cfg.mode = mode;
  if (mode == SearchMode::Optimize) {
    if (!m.objective) throw InvalidParams(m.problem + " has no objective");
    cfg.objective = m.objective;
  }
  cfg.node_limit = node_limit;
  return cfg;
}

inline SearchResult solve(const Model& m, const std::string& selector, SearchMode mode, std::size_t node_limit = 0,
                          bool record = false) {
  SearchConfig cfg = search_config(m, selector, mode, node_limit);
  cfg.record_solutions = record;
  return search(m.d_init, m.propagators(), cfg);
}

/// One solve run as a CSV/table row.
struct RunRow {
  std::string problem;
  std::string params;
  std::string variant;
  std::string search_vars;
  std::size_t fails = 0;
  std::size_t nodes = 0;
  std::size_t solutions = 0;
  std::optional<int> best;
  double millis = 0;

  friend bool operator==(const RunRow&, const RunRow&) = default;
};

inline RunRow make_row(const Model& m, const std::string& selector, const SearchStats& st) {
  return {m.problem, m.params,     m.variant, selector, st.fails, st.nodes, st.solutions, st.best_objective,
          std::round(st.millis * 1000.0) / 1000.0};
}

inline RunRow run(const ProblemSpec& spec, const std::string& variant, const std::string& selector, SearchMode mode,
                  std::size_t node_limit = 0) {
  Model m = build(spec, variant);
  return make_row(m, selector, solve(m, selector, mode, node_limit).stats);
}

// -- CSV ---------------------------------------------------------------------

inline const char* csv_header() { return "problem,params,variant,search_vars,fails,nodes,solutions,best,millis"; }

namespace detail {

inline std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  if (quoted) throw ParseError("csv: unterminated quote");
  return out;
}

template <typename T>
T parse_num(const std::string& s, const char* what) {
  T v{};
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) throw ParseError(std::string("csv: bad ") + what + " '" + s + "'");
  return v;
}

}  // namespace detail

inline std::string to_csv(const RunRow& r) {
  std::ostringstream os;
  os << detail::csv_field(r.problem) << ',' << detail::csv_field(r.params) << ',' << detail::csv_field(r.variant) << ','
     << detail::csv_field(r.search_vars) << ',' << r.fails << ',' << r.nodes << ',' << r.solutions << ','
     << (r.best ? std::to_string(*r.best) : "") << ',' << detail::shortest(r.millis);
  return os.str();
}

inline RunRow parse_csv_row(const std::string& line) {
  auto f = detail::split_csv(line);
  if (f.size() != 9) throw ParseError("csv: expected 9 fields, got " + std::to_string(f.size()));
  RunRow r;
  r.problem = f[0];
  r.params = f[1];
  r.variant = f[2];
  r.search_vars = f[3];
  r.fails = detail::parse_num<std::size_t>(f[4], "fails");
  r.nodes = detail::parse_num<std::size_t>(f[5], "nodes");
  r.solutions = detail::parse_num<std::size_t>(f[6], "solutions");
  if (!f[7].empty()) r.best = detail::parse_num<int>(f[7], "best");
  r.millis = detail::parse_num<double>(f[8], "millis");
  return r;
}

inline std::string rows_to_csv(const std::vector<RunRow>& rows) {
  std::string out = std::string(csv_header()) + "\n";
  for (const auto& r : rows) out += to_csv(r) + "\n";
  return out;
}

/// Inverse of rows_to_csv; the header line is required.
inline std::vector<RunRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != csv_header()) throw ParseError("csv: missing header");
  std::vector<RunRow> rows;
  while (std::getline(in, line))
    if (!line.empty()) rows.push_back(parse_csv_row(line));
  return rows;
}

inline std::string rows_to_table(const std::vector<RunRow>& rows) {
  std::vector<std::vector<std::string>> cells{{"problem", "params", "variant", "vars", "fails", "nodes", "solutions", "best", "ms"}};
  for (const auto& r : rows) {
    std::ostringstream ms;
    ms.setf(std::ios::fixed);
    ms.precision(1);
    ms << r.millis;
    cells.push_back({r.problem, r.params, r.variant, r.search_vars, std::to_string(r.fails), std::to_string(r.nodes),
                     std::to_string(r.solutions), r.best ? std::to_string(*r.best) : "-", ms.str()});
  }
  std::vector<std::size_t> w(cells[0].size(), 0);
  for (const auto& row : cells)
    for (std::size_t i = 0; i < row.size(); ++i) w[i] = std::max(w[i], row[i].size());
  std::ostringstream os;
  for (const auto& row : cells) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      bool num = i >= 4;
      std::string pad(w[i] - row[i].size(), ' ');
      os << (i ? "  " : "") << (num ? pad + row[i] : row[i] + (i + 1 < row.size() ? pad : ""));
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace redprop
