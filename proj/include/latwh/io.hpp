// SPDX-FileCopyrightText: 2026 latwh contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "latwh/error.hpp"
#include "latwh/lattice_core.hpp"

namespace latwh::io {

inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string format_complex(cplx z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

namespace detail {

inline double parse_double(std::string_view s) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw Error(ErrorCode::ParseError, "bad number '" + std::string(s) + "'");
  return v;
}

// "i", "+i", "-i", "2.5i"
inline double parse_imag(std::string_view s) {
  s.remove_suffix(1);
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_double(s);
}

}  // namespace detail

/// Parses "a", "bi", "a+bi", "a-bi" (exponents allowed).
inline cplx parse_complex(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s.push_back(c);
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty complex literal");
  if (s.back() != 'i' && s.back() != 'j') return {detail::parse_double(s), 0.0};
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size() - 1; k > 0; --k) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  std::string_view sv(s);
  if (split == std::string::npos) return {0.0, detail::parse_imag(sv)};
  return {detail::parse_double(sv.substr(0, split)), detail::parse_imag(sv.substr(split))};
}

// ---------------------------------------------------------------------------
// fields

template <std::size_t D>
void write_field_csv(std::ostream& os, const Field<D>& f) {
  os << (D == 2 ? "m,n,re,im\n" : "m,n,l,re,im\n");
  for (const auto& v : f.sorted_nodes()) {
    for (int a = 0; a < static_cast<int>(D); ++a) os << v[a] << ',';
    cplx z = f.at(v);
    os << format_real(z.real()) << ',' << format_real(z.imag()) << '\n';
  }
}

template <std::size_t D>
Field<D> read_field_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorCode::ParseError, "missing header");
  const std::string want = D == 2 ? "m,n,re,im" : "m,n,l,re,im";
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != want) throw Error(ErrorCode::ParseError, "unexpected header '" + line + "'");
  Field<D> f;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
    if (cols.size() != D + 2) throw Error(ErrorCode::ParseError, "bad row '" + line + "'");
    Node<D> v;
    for (int a = 0; a < static_cast<int>(D); ++a) {
      int x = 0;
      auto [p, ec] = std::from_chars(cols[a].data(), cols[a].data() + cols[a].size(), x);
      if (ec != std::errc() || p != cols[a].data() + cols[a].size())
        throw Error(ErrorCode::ParseError, "bad index '" + cols[a] + "'");
      v[a] = x;
    }
    f.set(v, {detail::parse_double(cols[D]), detail::parse_double(cols[D + 1])});
  }
  return f;
}

// ---------------------------------------------------------------------------
// domains

template <std::size_t D>
nlohmann::json domain_to_json(const LatticeDomain<D>& dom) {
  nlohmann::json rects = nlohmann::json::array();
  for (const auto& b : dom.boxes()) {
    nlohmann::json r = nlohmann::json::array();
    for (int a = 0; a < static_cast<int>(D); ++a) {
      r.push_back(b[a][0]);
      r.push_back(b[a][1]);
    }
    rects.push_back(r);
  }
  return {{"dim", D}, {"rects", rects}};
}

using AnyDomain = std::variant<Domain2, Domain3>;

inline AnyDomain domain_from_json(const nlohmann::json& j) {
  try {
    int dim = j.at("dim").get<int>();
    if (dim != 2 && dim != 3) throw Error(ErrorCode::ParseError, "dim must be 2 or 3");
    const auto& rects = j.at("rects");
    auto read = [&]<std::size_t D>() {
      std::vector<Box<D>> boxes;
      for (const auto& r : rects) {
        if (r.size() != 2 * D) throw Error(ErrorCode::ParseError, "rect has the wrong length");
        Box<D> b;
        for (int a = 0; a < static_cast<int>(D); ++a) b[a] = {r[2 * a].get<int>(), r[2 * a + 1].get<int>()};
        boxes.push_back(b);
      }
      return LatticeDomain<D>::from_boxes(boxes);
    };
    if (dim == 2) return read.template operator()<2>();
    return read.template operator()<3>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

}  // namespace latwh::io
