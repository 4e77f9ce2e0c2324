#pragma once

// Line-oriented cone spec files:
//
//   # comment
//   kind = polyhedral
//   dim = 2
//   gen = 1,0
//   gen = 1,1
//
// orthant, lorentz and polyhedral take `dim`; psd_real and hermitian take `k`.

#include "eudoxus/cone_space.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eudoxus {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

namespace detail {

inline std::string_view trim(std::string_view s, int* lead = nullptr) {
  std::size_t b = 0;
  while (b < s.size() && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  std::size_t e = s.size();
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  if (lead) *lead = static_cast<int>(b);
  return s.substr(b, e - b);
}

inline std::optional<ConeKind> kind_from(std::string_view s) {
  if (s == "orthant") return ConeKind::orthant;
  if (s == "lorentz") return ConeKind::lorentz;
  if (s == "psd_real") return ConeKind::psd_real;
  if (s == "hermitian") return ConeKind::hermitian;
  if (s == "polyhedral") return ConeKind::polyhedral;
  return std::nullopt;
}

inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

/// Parse the text into a spec; every diagnostic names a line and column.
inline ConeSpec parse_cone_spec_text(std::string_view text) {
  std::optional<ConeKind> kind;
  std::optional<int> dim, k;
  int dim_line = 0, k_line = 0, kind_line = 0;
  std::vector<Vec> gens;
  std::vector<int> gen_lines;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view raw = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const std::size_t hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    int lead = 0;
    std::string_view line = detail::trim(raw, &lead);
    if (line.empty()) {
      if (nl == text.size()) break;
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, lead + 1, "expected `key = value`");
    const std::string_view key = detail::trim(line.substr(0, eq));
    int vlead = 0;
    const std::string_view value = detail::trim(line.substr(eq + 1), &vlead);
    const int vcol = lead + static_cast<int>(eq) + 2 + vlead;
    if (value.empty()) throw ParseError(line_no, vcol, "missing value for `" + std::string(key) + "`");

    auto parse_int = [&](std::string_view v) {
      int out = 0;
      auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
      if (ec != std::errc() || p != v.data() + v.size()) throw ParseError(line_no, vcol, "expected an integer, got `" + std::string(v) + "`");
      if (out < 1) throw ParseError(line_no, vcol, "bad dimension " + std::to_string(out) + " (must be >= 1)");
      return out;
    };

    if (key == "kind") {
      if (kind) throw ParseError(line_no, lead + 1, "duplicate `kind`");
      kind = detail::kind_from(value);
      kind_line = line_no;
      if (!kind) throw ParseError(line_no, vcol, "unknown kind `" + std::string(value) + "`");
    } else if (key == "dim") {
      if (dim) throw ParseError(line_no, lead + 1, "duplicate `dim`");
      dim = parse_int(value);
      dim_line = line_no;
    } else if (key == "k") {
      if (k) throw ParseError(line_no, lead + 1, "duplicate `k`");
      k = parse_int(value);
      k_line = line_no;
    } else if (key == "gen") {
      std::vector<double> coords;
      std::size_t start = 0;
      while (start <= value.size()) {
        std::size_t comma = value.find(',', start);
        if (comma == std::string_view::npos) comma = value.size();
        int tl = 0;
        std::string_view tok = detail::trim(value.substr(start, comma - start), &tl);
        const int col = vcol + static_cast<int>(start) + tl;
        double d = 0;
        std::string tmp(tok);
        char* end = nullptr;
        d = std::strtod(tmp.c_str(), &end);
        if (tmp.empty() || end != tmp.c_str() + tmp.size() || !std::isfinite(d))
          throw ParseError(line_no, col, "bad generator coordinate `" + tmp + "`");
        coords.push_back(d);
        start = comma + 1;
      }
      gens.push_back(Eigen::Map<Vec>(coords.data(), static_cast<Eigen::Index>(coords.size())));
      gen_lines.push_back(line_no);
    } else {
      throw ParseError(line_no, lead + 1, "unknown key `" + std::string(key) + "`");
    }
    if (nl == text.size()) break;
  }
  if (!kind) throw ParseError(line_no, 1, "missing `kind`");
  ConeSpec spec;
  spec.kind = *kind;
  const bool matrix = *kind == ConeKind::psd_real || *kind == ConeKind::hermitian;
  if (matrix) {
    if (!k) throw ParseError(kind_line, 1, "kind " + std::string(to_string(*kind)) + " needs `k`");
    if (dim) throw ParseError(dim_line, 1, "kind " + std::string(to_string(*kind)) + " takes `k`, not `dim`");
    spec.param = *k;
  } else {
    if (!dim) throw ParseError(kind_line, 1, "kind " + std::string(to_string(*kind)) + " needs `dim`");
    if (k) throw ParseError(k_line, 1, "kind " + std::string(to_string(*kind)) + " takes `dim`, not `k`");
    spec.param = *dim;
    if (*kind == ConeKind::lorentz && *dim < 2) throw ParseError(dim_line, 1, "lorentz needs dim >= 2");
  }
  if (*kind == ConeKind::polyhedral) {
    if (gens.empty()) throw ParseError(line_no, 1, "polyhedral cone needs `gen` lines");
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (gens[i].size() != spec.param)
        throw ParseError(gen_lines[i], 1, "generator has " + std::to_string(gens[i].size()) + " coordinates, expected " +
                                              std::to_string(spec.param));
      if (gens[i].norm() == 0.0) throw ParseError(gen_lines[i], 1, "zero generator");
    }
  } else if (!gens.empty()) {
    throw ParseError(gen_lines.front(), 1, "`gen` is only valid for polyhedral cones");
  }
  spec.generators = std::move(gens);
  return spec;
}

/// Parse and build; cone-level failures (dependent generators, lines) are reported with the first gen line.
inline ConeSpace parse_cone_spec(std::string_view text, double eps = ConeSpace::kDefaultEps) {
  ConeSpec spec = parse_cone_spec_text(text);
  try {
    return ConeSpace::from_spec(spec, eps);
  } catch (const InvalidCone& e) {
    int first = 1;
    int ln = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
      ++ln;
      std::size_t nl = text.find('\n', pos);
      if (nl == std::string_view::npos) nl = text.size();
      if (detail::trim(text.substr(pos, nl - pos)).substr(0, 3) == "gen") {
        first = ln;
        break;
      }
      pos = nl + 1;
    }
    throw ParseError(first, 1, e.what());
  }
}

inline std::string emit_cone_spec(const ConeSpec& spec) {
  std::ostringstream os;
  os << "kind = " << to_string(spec.kind) << "\n";
  const bool matrix = spec.kind == ConeKind::psd_real || spec.kind == ConeKind::hermitian;
  os << (matrix ? "k = " : "dim = ") << spec.param << "\n";
  for (const Vec& g : spec.generators) {
    os << "gen = ";
    for (Eigen::Index i = 0; i < g.size(); ++i) os << (i ? "," : "") << detail::format_double(g(i));
    os << "\n";
  }
  return os.str();
}

}  // namespace eudoxus
