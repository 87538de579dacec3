#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "error.hpp"
#include "gf.hpp"
#include "logscaled.hpp"

namespace chev {

struct Poly {
  int nvars = 0;
  std::map<std::vector<int>, std::uint32_t> terms;  // exponents -> nonzero coefficient

  int degree() const {
    int d = 0;
    for (const auto& [e, c] : terms) {
      int s = 0;
      for (int v : e)
        s += v;
      d = std::max(d, s);
    }
    return d;
  }
  bool is_zero() const { return terms.empty(); }
};

inline void poly_add_term(const Field& F, Poly& p, const std::vector<int>& e, std::uint32_t c) {
  if (!c)
    return;
  auto it = p.terms.find(e);
  if (it == p.terms.end()) {
    p.terms.emplace(e, c);
    return;
  }
  it->second = F.add(it->second, c);
  if (!it->second)
    p.terms.erase(it);
}

inline Poly poly_add(const Field& F, const Poly& a, const Poly& b) {
  if (a.nvars != b.nvars)
    fail(Err::ArityMismatch, "polynomials in different variable counts");
  Poly r = a;
  for (const auto& [e, c] : b.terms)
    poly_add_term(F, r, e, c);
  return r;
}

inline Poly poly_mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.nvars != b.nvars)
    fail(Err::ArityMismatch, "polynomials in different variable counts");
  Poly r;
  r.nvars = a.nvars;
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      std::vector<int> e(a.nvars);
      for (int i = 0; i < a.nvars; ++i)
        e[i] = ea[i] + eb[i];
      poly_add_term(F, r, e, F.mul(ca, cb));
    }
  return r;
}

inline Poly poly_var(int nvars, int i) {
  Poly p;
  p.nvars = nvars;
  std::vector<int> e(nvars, 0);
  e[i] = 1;
  p.terms.emplace(e, 1);
  return p;
}

inline Poly poly_const(int nvars, std::uint32_t c) {
  Poly p;
  p.nvars = nvars;
  if (c)
    p.terms.emplace(std::vector<int>(nvars, 0), c);
  return p;
}

inline std::uint32_t evaluate(const Field& F, const Poly& p, const std::vector<std::uint32_t>& x) {
  if (int(x.size()) != p.nvars)
    fail(Err::ArityMismatch, "point has " + std::to_string(x.size()) + " coordinates, polynomial has " +
                                 std::to_string(p.nvars) + " variables");
  std::uint32_t s = 0;
  for (const auto& [e, c] : p.terms) {
    std::uint32_t t = c;
    for (int i = 0; i < p.nvars && t; ++i)
      if (e[i])
        t = F.mul(t, F.pow(x[i], e[i]));
    s = F.add(s, t);
  }
  return s;
}

inline std::string format_poly(const Field& F, const Poly& p) {
  if (p.terms.empty())
    return "0";
  std::string s;
  bool first = true;
  // descending order so that the leading terms print first
  for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
    if (!first)
      s += " + ";
    first = false;
    s += F.format(it->second);
    for (int i = 0; i < p.nvars; ++i) {
      if (!it->first[i])
        continue;
      s += "*x" + std::to_string(i + 1);
      if (it->first[i] > 1)
        s += "^" + std::to_string(it->first[i]);
    }
  }
  return s;
}

// Grammar: terms "c*x1^a*x2^b" joined by '+' or '-'; the coefficient is
// optional and may be a field element "c0:c1"; factors may come in any order.
inline Poly parse_poly(const Field& F, const std::string& text_in, int nvars) {
  std::string text;
  for (std::size_t i = 0; i < text_in.size(); ++i) {
    // U+2212 minus sign
    if (i + 2 < text_in.size() && (unsigned char)text_in[i] == 0xE2 &&
        (unsigned char)text_in[i + 1] == 0x88 && (unsigned char)text_in[i + 2] == 0x92) {
      text += '-';
      i += 2;
      continue;
    }
    if (!std::isspace(static_cast<unsigned char>(text_in[i])))
      text += text_in[i];
  }
  Poly p;
  p.nvars = nvars;
  if (text.empty())
    fail(Err::ParseError, "empty polynomial");
  std::size_t pos = 0;
  auto bad = [&](const std::string& why) {
    fail(Err::ParseError, why + " in '" + text_in + "'");
  };
  while (pos < text.size()) {
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
      negative = text[pos] == '-';
      ++pos;
    } else if (pos != 0) {
      bad("expected + or -");
    }
    std::size_t end = pos;
    while (end < text.size() && text[end] != '+' && text[end] != '-')
      ++end;
    std::string term = text.substr(pos, end - pos);
    pos = end;
    if (term.empty())
      bad("empty term");
    std::uint32_t coeff = 1;
    std::vector<int> e(nvars, 0);
    std::stringstream ss(term);
    std::string factor;
    while (std::getline(ss, factor, '*')) {
      if (factor.empty())
        bad("empty factor");
      if (factor[0] == 'x') {
        auto caret = factor.find('^');
        std::string idx = factor.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
        int power = 1;
        try {
          if (caret != std::string::npos)
            power = std::stoi(factor.substr(caret + 1));
          int v = std::stoi(idx);
          if (v < 1 || v > nvars)
            fail(Err::ArityMismatch, "variable x" + idx + " outside x1..x" + std::to_string(nvars));
          if (power < 0)
            bad("negative exponent");
          e[v - 1] += power;
        } catch (const std::logic_error&) {
          bad("bad variable '" + factor + "'");
        }
      } else {
        coeff = F.mul(coeff, F.parse(factor));
      }
    }
    if (negative)
      coeff = F.neg(coeff);
    poly_add_term(F, p, e, coeff);
  }
  return p;
}

struct VarietySpec {
  int ambient = 0;
  std::vector<Poly> polys;
  int dim = 0;
  int deg = 1;
};

inline VarietySpec make_variety(int ambient, std::vector<Poly> polys, int dim, int deg) {
  if (deg < 1)
    fail(Err::ParseError, "declared degree must be at least 1");
  if (dim < 0 || dim > ambient)
    fail(Err::ParseError, "declared dimension must lie in 0..ambient");
  BigInt bez = 1;
  for (const auto& p : polys) {
    if (p.nvars != ambient)
      fail(Err::AmbientMismatch, "polynomial arity differs from the ambient dimension");
    bez *= std::max(1, p.degree());
  }
  if (BigInt(deg) > bez)
    fail(Err::ParseError, "declared degree exceeds the product of polynomial degrees");
  return VarietySpec{ambient, std::move(polys), dim, deg};
}

inline bool in_variety(const Field& F, const VarietySpec& V, const std::vector<std::uint32_t>& x) {
  for (const auto& p : V.polys)
    if (evaluate(F, p, x))
      return false;
  return true;
}

// Header "ambient=m dim=d deg=D", then one polynomial per line; '#' starts a comment line.
inline VarietySpec parse_variety(const Field& F, const std::string& text) {
  std::stringstream in(text);
  std::string line;
  int ambient = -1, dim = -1, deg = -1;
  std::vector<Poly> polys;
  bool header = false;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#')
      continue;
    if (!header) {
      std::stringstream hs(line);
      std::string kv;
      while (hs >> kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
          fail(Err::ParseError, "bad header field '" + kv + "'");
        std::string key = kv.substr(0, eq);
        int val = 0;
        try {
          val = std::stoi(kv.substr(eq + 1));
        } catch (const std::logic_error&) {
          fail(Err::ParseError, "bad header value '" + kv + "'");
        }
        if (key == "ambient")
          ambient = val;
        else if (key == "dim")
          dim = val;
        else if (key == "deg")
          deg = val;
        else
          fail(Err::ParseError, "unknown header key '" + key + "'");
      }
      if (ambient < 0 || dim < 0 || deg < 0)
        fail(Err::ParseError, "header must set ambient, dim and deg");
      header = true;
      continue;
    }
    polys.push_back(parse_poly(F, line, ambient));
  }
  if (!header)
    fail(Err::ParseError, "missing variety header");
  return make_variety(ambient, std::move(polys), dim, deg);
}

inline VarietySpec load_variety(const Field& F, const std::string& path) {
  std::ifstream f(path);
  if (!f)
    fail(Err::UsageError, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_variety(F, ss.str());
}

struct PointCountReport {
  std::uint64_t count = 0;
  LogScaled bound;  // D q^d
  bool holds = false;
};

inline PointCountReport point_count(const Field& F, const VarietySpec& V,
                                    std::uint64_t cap = 100'000'000, unsigned threads = 1) {
  std::uint64_t total = 1;
  for (int i = 0; i < V.ambient; ++i) {
    total *= F.q();
    if (total > cap)
      fail(Err::AmbientTooLarge, "q^ambient exceeds the enumeration cap");
  }
  unsigned T = std::max(1u, threads);
  if (total < 100000)
    T = 1;
  std::vector<std::uint64_t> partial(T, 0);
  auto work = [&](unsigned t) {
    std::uint64_t a = total * t / T, b = total * (t + 1) / T;
    std::vector<std::uint32_t> x(V.ambient);
    std::uint64_t c = a;
    for (int i = 0; i < V.ambient; ++i) {
      x[i] = static_cast<std::uint32_t>(c % F.q());
      c /= F.q();
    }
    std::uint64_t cnt = 0;
    for (std::uint64_t idx = a; idx < b; ++idx) {
      if (in_variety(F, V, x))
        ++cnt;
      for (auto& v : x) {
        if (++v < F.q())
          break;
        v = 0;
      }
    }
    partial[t] = cnt;
  };
  if (T == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < T; ++t)
      pool.emplace_back(work, t);
    for (auto& th : pool)
      th.join();
  }
  PointCountReport rep;
  for (auto v : partial)
    rep.count += v;
  BigInt bound = BigInt(V.deg) * ipow(BigInt(F.q()), V.dim);
  rep.bound = LogScaled::from_int(bound);
  rep.holds = BigInt(rep.count) <= bound;
  return rep;
}

enum class BezoutOp { union_, intersect, product };

inline LogScaled bezout_degree(const std::vector<VarietySpec>& parts, BezoutOp op) {
  if (parts.empty())
    return LogScaled::from_int(1);
  if (op != BezoutOp::product)
    for (const auto& v : parts)
      if (v.ambient != parts.front().ambient)
        fail(Err::AmbientMismatch, "union and intersection need a common ambient space");
  BigInt r = op == BezoutOp::union_ ? 0 : 1;
  for (const auto& v : parts) {
    if (op == BezoutOp::union_)
      r += v.deg;
    else
      r *= v.deg;
  }
  return LogScaled::from_int(r);
}

inline LogScaled image_degree_bound(const VarietySpec& V, int map_degree, int image_dim) {
  if (map_degree < 1)
    fail(Err::ParseError, "map degree must be at least 1");
  return LogScaled::pair(real_ln(V.deg) + Real(image_dim) * real_ln(map_degree),
                         Rational(BigInt(V.deg) * ipow(BigInt(map_degree), image_dim)));
}

inline LogScaled intersection_chain_budget(int d, int D) {
  if (D < 1 || d < 0)
    fail(Err::ParseError, "need D >= 1 and d >= 0");
  return ls_ipow(D, d + 1);
}

} // namespace chev
