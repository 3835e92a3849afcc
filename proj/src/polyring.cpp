#include "cobs/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cobs {

int grevlex_compare(const Monomial& a, const Monomial& b) {
  if (a.vars() != b.vars()) throw BadInput("grevlex_compare: variable count mismatch");
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  for (int i = a.vars() - 1; i >= 0; --i) {
    int d = a.e[i] - b.e[i];
    if (d != 0) return d < 0 ? 1 : -1;  // last nonzero negative => a > b
  }
  return 0;
}

long monomial_count(int vars, int t) {
  if (t < 0) return 0;
  if (vars <= 0) return t == 0 ? 1 : 0;
  // C(t + vars - 1, vars - 1); vars is tiny, so multiply carefully in long.
  long r = 1;
  for (int i = 1; i < vars; ++i) r = r * (t + i) / i;
  return r;
}

std::vector<Monomial> monomials_of_degree(int vars, int t) {
  std::vector<Monomial> out;
  if (t < 0 || vars <= 0) return out;
  // Descending grevlex: the exponent of the *last* variable increases
  // outermost (less weight on late variables = larger monomial).
  Monomial m;
  m.e.assign(vars, 0);
  auto rec = [&](auto&& self, int k, int rem) -> void {
    if (k == 0) {
      if (rem == 0) out.push_back(m);
      return;
    }
    if (k == 1) {
      m.e[0] = rem;
      out.push_back(m);
      m.e[0] = 0;
      return;
    }
    for (int c = 0; c <= rem; ++c) {
      m.e[k - 1] = c;
      self(self, k - 1, rem - c);
    }
    m.e[k - 1] = 0;
  };
  rec(rec, vars, t);
  return out;
}

long grevlex_rank(const Monomial& m) {
  long r = 0;
  int t = m.degree();
  for (int k = m.vars(); k >= 2; --k) {
    int ek = m.e[k - 1];
    for (int c = 0; c < ek; ++c) r += monomial_count(k - 1, t - c);
    t -= ek;
  }
  return r;
}

void GradedPoly::add_term(const Monomial& m, const Int& c) {
  if (c == 0) return;
  if (coeffs.empty()) {
    vars = m.vars();
    degree = m.degree();
  } else if (m.vars() != vars || m.degree() != degree) {
    throw BadInput("GradedPoly: non-homogeneous term");
  }
  Int& slot = coeffs[m];
  slot += c;
  if (slot == 0) coeffs.erase(m);
}

GradedPoly gp_mul(const GradedPoly& a, const GradedPoly& b) {
  GradedPoly r;
  for (const auto& [ma, ca] : a.coeffs)
    for (const auto& [mb, cb] : b.coeffs) {
      Monomial m = ma;
      for (int i = 0; i < m.vars(); ++i) m.e[i] += mb.e[i];
      r.add_term(m, ca * cb);
    }
  return r;
}

GradedPoly gp_scale(const GradedPoly& a, const Int& c) {
  GradedPoly r;
  for (const auto& [m, ca] : a.coeffs) r.add_term(m, ca * c);
  return r;
}

GradedPoly gp_add(const GradedPoly& a, const GradedPoly& b) {
  GradedPoly r = a;
  for (const auto& [m, c] : b.coeffs) r.add_term(m, c);
  return r;
}

GradedPoly gp_derivative(const GradedPoly& a, int var) {
  GradedPoly r;
  for (const auto& [m, c] : a.coeffs) {
    if (m.e[var] == 0) continue;
    Monomial d = m;
    d.e[var] -= 1;
    r.add_term(d, c * m.e[var]);
  }
  return r;
}

GradedPoly gp_monomial_mul(const GradedPoly& a, const Monomial& mm) {
  GradedPoly r;
  for (const auto& [m, c] : a.coeffs) {
    Monomial t = m;
    for (int i = 0; i < t.vars(); ++i) t.e[i] += mm.e[i];
    r.add_term(t, c);
  }
  return r;
}

std::vector<std::vector<Int>> macaulay_matrix(const std::vector<GradedPoly>& gens, int t) {
  if (gens.empty()) throw BadInput("macaulay_matrix: no generators");
  const int vars = gens[0].vars;
  const int e = gens[0].degree;
  for (const auto& g : gens)
    if (g.vars != vars || g.degree != e)
      throw BadInput("macaulay_matrix: generators not homogeneous of a common degree");
  const long nrows = monomial_count(vars, t);
  std::vector<std::vector<Int>> M(static_cast<size_t>(nrows));
  auto src = monomials_of_degree(vars, t - e);
  const long ncols = static_cast<long>(gens.size()) * static_cast<long>(src.size());
  for (auto& row : M) row.assign(static_cast<size_t>(ncols), Int(0));
  long col = 0;
  for (const auto& g : gens) {
    for (const auto& mu : src) {
      for (const auto& [m, c] : g.coeffs) {
        Monomial prod = m;
        for (int i = 0; i < vars; ++i) prod.e[i] += mu.e[i];
        M[static_cast<size_t>(grevlex_rank(prod))][static_cast<size_t>(col)] += c;
      }
      ++col;
    }
  }
  return M;
}

namespace {

struct Term {
  Int coeff;
  std::vector<std::pair<int, int>> powers;  // (variable index, exponent)
};

// Parses the documented grammar into a signed term list.
std::vector<Term> parse_terms(const std::string& text) {
  std::vector<Term> terms;
  size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_int = [&]() -> Int {
    size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) throw BadInput("polynomial parse: expected integer at position " +
                                   std::to_string(start));
    return Int(text.substr(start, i - start));
  };
  skip();
  if (i >= text.size()) throw BadInput("polynomial parse: empty input");
  bool first = true;
  while (i < text.size()) {
    int sign = 1;
    skip();
    if (!first || text[i] == '+' || text[i] == '-') {
      if (i >= text.size() || (text[i] != '+' && text[i] != '-'))
        throw BadInput("polynomial parse: expected '+' or '-' at position " + std::to_string(i));
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    }
    first = false;
    Term t;
    t.coeff = sign;
    bool saw_factor = false;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      t.coeff *= read_int();
      saw_factor = true;
    }
    for (;;) {
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
      }
      if (i >= text.size()) break;
      char c = text[i];
      int var = -1;
      if (c == 'x' && i + 1 < text.size() &&
          std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
        ++i;
        var = static_cast<int>(read_int().get_si());
      } else if (c == 'x' || c == 'y' || c == 'z' || c == 'w') {
        var = c == 'x' ? 0 : c == 'y' ? 1 : c == 'z' ? 2 : 3;
        ++i;
      } else if (c == '+' || c == '-') {
        break;
      } else {
        throw BadInput(std::string("polynomial parse: unexpected character '") + c +
                       "' at position " + std::to_string(i));
      }
      int exp = 1;
      skip();
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip();
        exp = static_cast<int>(read_int().get_si());
        if (exp < 0) throw BadInput("polynomial parse: negative exponent");
      }
      t.powers.emplace_back(var, exp);
      saw_factor = true;
    }
    if (!saw_factor) throw BadInput("polynomial parse: empty term");
    terms.push_back(std::move(t));
    skip();
  }
  return terms;
}

}  // namespace

GradedPoly parse_homogeneous(const std::string& text, int vars) {
  auto terms = parse_terms(text);
  GradedPoly out;
  for (const auto& t : terms) {
    Monomial m;
    m.e.assign(vars, 0);
    for (auto [v, e] : t.powers) {
      if (v < 0 || v >= vars)
        throw BadInput("polynomial parse: variable index out of range for " +
                       std::to_string(vars) + " variables");
      m.e[v] += e;
    }
    out.add_term(m, t.coeff);  // add_term rejects mixed degrees
  }
  if (out.is_zero()) throw BadInput("polynomial parse: zero polynomial");
  out.vars = vars;
  return out;
}

IntPoly parse_univariate(const std::string& text) {
  auto terms = parse_terms(text);
  IntPoly out;
  for (const auto& t : terms) {
    int deg = 0;
    for (auto [v, e] : t.powers) {
      if (v != 0) throw BadInput("univariate parse: only variable x allowed");
      deg += e;
    }
    if (static_cast<int>(out.size()) <= deg) out.resize(static_cast<size_t>(deg) + 1, Int(0));
    out[static_cast<size_t>(deg)] += t.coeff;
  }
  ip_trim(out);
  if (out.empty()) throw BadInput("univariate parse: zero polynomial");
  return out;
}

std::string gp_to_string(const GradedPoly& a) {
  if (a.is_zero()) return "0";
  // Print in descending grevlex.
  std::vector<std::pair<Monomial, Int>> terms(a.coeffs.begin(), a.coeffs.end());
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
    return grevlex_compare(x.first, y.first) > 0;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c0] : terms) {
    Int c = c0;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    bool constant = m.degree() == 0;
    if (c != 1 || constant) os << c.get_str();
    bool need_star = c != 1;
    for (int i = 0; i < m.vars(); ++i) {
      if (m.e[i] == 0) continue;
      if (need_star) os << "*";
      os << "x" << i;
      if (m.e[i] > 1) os << "^" << m.e[i];
      need_star = true;
    }
  }
  return os.str();
}

}  // namespace cobs
