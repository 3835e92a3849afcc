#include "cobs/intpoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace cobs {

void ip_trim(IntPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int ip_deg(const IntPoly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i] != 0) return i;
  return -1;
}

IntPoly ip_add(const IntPoly& a, const IntPoly& b) {
  IntPoly r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  ip_trim(r);
  return r;
}

IntPoly ip_sub(const IntPoly& a, const IntPoly& b) {
  IntPoly r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  ip_trim(r);
  return r;
}

IntPoly ip_mul(const IntPoly& a, const IntPoly& b) {
  int da = ip_deg(a), db = ip_deg(b);
  if (da < 0 || db < 0) return {};
  IntPoly r(static_cast<size_t>(da + db + 1), Int(0));
  for (int i = 0; i <= da; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j <= db; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

IntPoly ip_scale(const IntPoly& a, const Int& c) {
  if (c == 0) return {};
  IntPoly r = a;
  for (auto& x : r) x *= c;
  return r;
}

Int ip_eval(const IntPoly& a, const Int& x) {
  Int r = 0;
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) r = r * x + a[i];
  return r;
}

IntPoly ip_derivative(const IntPoly& a) {
  if (a.size() <= 1) return {};
  IntPoly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = Int(static_cast<unsigned long>(i)) * a[i];
  ip_trim(r);
  return r;
}

std::pair<IntPoly, IntPoly> ip_divmod_monic(const IntPoly& a, const IntPoly& monic) {
  int dm = ip_deg(monic);
  if (dm < 0 || monic[dm] != 1) throw BadInput("ip_divmod_monic: divisor not monic");
  IntPoly rem = a;
  ip_trim(rem);
  int dr = ip_deg(rem);
  if (dr < dm) return {{}, rem};
  IntPoly quot(static_cast<size_t>(dr - dm + 1), Int(0));
  while ((dr = ip_deg(rem)) >= dm) {
    Int c = rem[dr];
    quot[dr - dm] = c;
    for (int j = 0; j <= dm; ++j) rem[dr - dm + j] -= c * monic[j];
  }
  ip_trim(rem);
  ip_trim(quot);
  return {quot, rem};
}

std::optional<IntPoly> ip_divide_exact(const IntPoly& a, const IntPoly& monic) {
  auto [q, r] = ip_divmod_monic(a, monic);
  if (ip_deg(r) >= 0) return std::nullopt;
  return q;
}

IntPoly cyclotomic(int n) {
  if (n < 1) throw BadInput("cyclotomic: n must be >= 1");
  // Phi_n = (t^n - 1) / prod_{d | n, d < n} Phi_d.
  static std::map<int, IntPoly> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  IntPoly num(static_cast<size_t>(n + 1), Int(0));
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    auto q = ip_divide_exact(num, cyclotomic(d));
    if (!q) throw std::logic_error("cyclotomic: inexact division");
    num = *q;
  }
  cache[n] = num;
  return num;
}

std::vector<std::vector<Int>> companion(const IntPoly& monic) {
  int n = ip_deg(monic);
  if (n < 1 || monic[n] != 1) throw BadInput("companion: need monic of degree >= 1");
  std::vector<std::vector<Int>> M(n, std::vector<Int>(n, Int(0)));
  for (int i = 1; i < n; ++i) M[i][i - 1] = 1;
  for (int i = 0; i < n; ++i) M[i][n - 1] = -monic[i];
  return M;
}

IntPoly charpoly_exact(const std::vector<std::vector<Int>>& M) {
  const int n = static_cast<int>(M.size());
  std::vector<Int> poly{Int(1)};  // highest degree first
  for (int r = 0; r < n; ++r) {
    std::vector<Int> S(r + 1);
    S[0] = -M[r][r];
    if (r > 0) {
      std::vector<Int> v(r);
      for (int i = 0; i < r; ++i) v[i] = M[i][r];
      for (int k = 1; k <= r; ++k) {
        Int dot = 0;
        for (int i = 0; i < r; ++i) dot += M[r][i] * v[i];
        S[k] = -dot;
        if (k < r) {
          std::vector<Int> w(r, Int(0));
          for (int i = 0; i < r; ++i) {
            if (v[i] == 0) continue;
            for (int j = 0; j < r; ++j) w[j] += M[j][i] * v[i];
          }
          v = std::move(w);
        }
      }
    }
    std::vector<Int> next(r + 2, Int(0));
    for (int i = 0; i < static_cast<int>(poly.size()); ++i) {
      next[i] += poly[i];
      for (int k = 0; k <= r; ++k) {
        int d = i + k + 1;
        if (d < static_cast<int>(next.size())) next[d] += S[k] * poly[i];
      }
    }
    poly = std::move(next);
  }
  return IntPoly(poly.rbegin(), poly.rend());
}

int rank_exact(std::vector<std::vector<Int>> M) {
  if (M.empty() || M[0].empty()) return 0;
  const int rows = static_cast<int>(M.size());
  const int cols = static_cast<int>(M[0].size());
  int rank = 0;
  Int prev = 1;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int i = rank; i < rows; ++i)
      if (M[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(M[rank], M[piv]);
    for (int i = rank + 1; i < rows; ++i) {
      for (int j = c + 1; j < cols; ++j) {
        Int num = M[rank][c] * M[i][j] - M[i][c] * M[rank][j];
        mpz_divexact(M[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      M[i][c] = 0;
    }
    prev = M[rank][c];
    ++rank;
  }
  return rank;
}

namespace {

// Fraction-free Bareiss determinant of a square matrix; destroys its input.
Int bareiss_det(std::vector<std::vector<Int>> M) {
  const int n = static_cast<int>(M.size());
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (M[k][k] == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (M[i][k] != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      std::swap(M[k], M[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Int num = M[k][k] * M[i][j] - M[i][k] * M[k][j];
        mpz_divexact(M[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      M[i][k] = 0;
    }
    prev = M[k][k];
  }
  return sign > 0 ? M[n - 1][n - 1] : Int(-M[n - 1][n - 1]);
}

}  // namespace

Int resultant(const IntPoly& a, const IntPoly& b) {
  int da = ip_deg(a), db = ip_deg(b);
  if (da < 0 || db < 0) return 0;
  if (da == 0) return pow_int(a[0], static_cast<unsigned long>(db));
  if (db == 0) return pow_int(b[0], static_cast<unsigned long>(da));
  const int n = da + db;
  std::vector<std::vector<Int>> S(n, std::vector<Int>(n, Int(0)));
  for (int i = 0; i < db; ++i)
    for (int j = 0; j <= da; ++j) S[i][i + j] = a[da - j];
  for (int i = 0; i < da; ++i)
    for (int j = 0; j <= db; ++j) S[db + i][i + j] = b[db - j];
  return bareiss_det(std::move(S));
}

Int discriminant(const IntPoly& f) {
  int d = ip_deg(f);
  if (d < 1) throw BadInput("discriminant: degree must be >= 1");
  Int res = resultant(f, ip_derivative(f));
  // disc = (-1)^{d(d-1)/2} res / lc(f)
  Int out;
  mpz_divexact(out.get_mpz_t(), res.get_mpz_t(), f[d].get_mpz_t());
  if ((static_cast<long>(d) * (d - 1) / 2) % 2 != 0) out = -out;
  return out;
}

namespace {

// Quotient of a/b rounded to nearest (|a - q*b| <= |b|/2).
Int quot_near(const Int& a, const Int& b) {
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  Int ab = abs(b);
  if (2 * r > ab) q += 1;
  return q;
}

}  // namespace

std::vector<Int> elementary_divisors(std::vector<std::vector<Int>> M) {
  // Classical Smith reduction: always pivot on the entry of minimal absolute
  // value; nearest-quotient reductions at least halve the pivot whenever a
  // remainder survives, so termination and moderate growth are guaranteed.
  if (M.empty() || M[0].empty()) return {};
  const int rows = static_cast<int>(M.size());
  const int cols = static_cast<int>(M[0].size());
  std::vector<Int> divs;
  int top = 0;
  while (top < rows && top < cols) {
    for (;;) {
      int bi = -1, bj = -1;
      for (int i = top; i < rows; ++i)
        for (int j = top; j < cols; ++j)
          if (M[i][j] != 0 &&
              (bi < 0 || mpz_cmpabs(M[i][j].get_mpz_t(), M[bi][bj].get_mpz_t()) < 0)) {
            bi = i;
            bj = j;
          }
      if (bi < 0) return divs;  // block is zero
      std::swap(M[top], M[bi]);
      for (int i = top; i < rows; ++i) std::swap(M[i][top], M[i][bj]);
      const Int& piv = M[top][top];
      bool changed = false;
      for (int i = top + 1; i < rows; ++i) {
        if (M[i][top] == 0) continue;
        Int q = quot_near(M[i][top], piv);
        for (int j = top; j < cols; ++j) M[i][j] -= q * M[top][j];
        if (M[i][top] != 0) changed = true;
      }
      for (int j = top + 1; j < cols; ++j) {
        if (M[top][j] == 0) continue;
        Int q = quot_near(M[top][j], piv);
        for (int i = top; i < rows; ++i) M[i][j] -= q * M[i][top];
        if (M[top][j] != 0) changed = true;
      }
      if (changed) continue;  // a smaller entry appeared; re-pick the pivot
      // Pivot row/column are clear; enforce the divisibility chain.
      bool fixed = false;
      for (int i = top + 1; i < rows && !fixed; ++i)
        for (int j = top + 1; j < cols; ++j)
          if (!mpz_divisible_p(M[i][j].get_mpz_t(), piv.get_mpz_t())) {
            for (int c = top; c < cols; ++c) M[top][c] += M[i][c];
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    Int d = M[top][top];
    divs.push_back(d < 0 ? Int(-d) : d);
    ++top;
  }
  return divs;
}

namespace {

Int ip_content(const IntPoly& a) {
  Int g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

void make_primitive(IntPoly& a) {
  ip_trim(a);
  if (a.empty()) return;
  Int g = ip_content(a);
  if (a.back() < 0) g = -g;
  for (auto& c : a) c /= g;
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
IntPoly pseudo_rem(IntPoly a, const IntPoly& b) {
  int db = ip_deg(b);
  const Int& lb = b[static_cast<size_t>(db)];
  ip_trim(a);
  while (ip_deg(a) >= db) {
    int da = ip_deg(a);
    Int la = a[static_cast<size_t>(da)];
    for (auto& c : a) c *= lb;
    for (int j = 0; j <= db; ++j)
      a[static_cast<size_t>(da - db + j)] -= la * b[static_cast<size_t>(j)];
    ip_trim(a);
  }
  return a;
}

}  // namespace

IntPoly ip_gcd(IntPoly a, IntPoly b) {
  make_primitive(a);
  make_primitive(b);
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (ip_deg(a) < ip_deg(b)) std::swap(a, b);
  while (!b.empty()) {
    IntPoly r = pseudo_rem(a, b);
    make_primitive(r);
    a = std::move(b);
    b = std::move(r);
  }
  make_primitive(a);
  return a;
}

IntPoly ip_squarefree(const IntPoly& f) {
  IntPoly g = ip_gcd(f, ip_derivative(f));
  if (ip_deg(g) <= 0) {
    IntPoly out = f;
    make_primitive(out);
    return out;
  }
  // Exact division f / g over Q; both primitive, so the quotient is integral
  // up to content.  Use fraction-free long division by the (possibly
  // non-monic) g and clear the accumulated scaling at the end.
  IntPoly a = f;
  make_primitive(a);
  int dg = ip_deg(g);
  const Int& lg = g[static_cast<size_t>(dg)];
  IntPoly q(static_cast<size_t>(ip_deg(a) - dg) + 1, Int(0));
  Int scale = 1;
  while (ip_deg(a) >= dg) {
    int da = ip_deg(a);
    Int la = a[static_cast<size_t>(da)];
    for (auto& c : a) c *= lg;
    for (auto& c : q) c *= lg;
    scale *= lg;
    q[static_cast<size_t>(da - dg)] += la;
    for (int j = 0; j <= dg; ++j)
      a[static_cast<size_t>(da - dg + j)] -= la * g[static_cast<size_t>(j)];
    ip_trim(a);
  }
  make_primitive(q);
  return q;
}

std::string ip_to_string(const IntPoly& a, const std::string& var) {
  int d = ip_deg(a);
  if (d < 0) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = d; i >= 0; --i) {
    if (a[i] == 0) continue;
    Int c = a[i];
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
    if (i == 0 || c != 1) os << c.get_str();
    if (i > 0) {
      if (c != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

}  // namespace cobs
