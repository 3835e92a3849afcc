#include "cobs/zeta.hpp"

#include <cmath>
#include <complex>
#include <numeric>

namespace cobs {

namespace {

// Smallest N >= 0 with q^N >= x (x > 0).
int ceil_log_q(const Int& q, const Int& x) { return ceil_log(q, x); }

int weight_of(int r) { return r == 0 ? 1 : 2 * r; }

// Durand-Kerner root finder for a monic complex polynomial; good enough as a
// sanity layer (callers pass squarefree inputs with well-separated roots).
std::vector<std::complex<double>> all_roots(const std::vector<std::complex<double>>& monic) {
  int n = static_cast<int>(monic.size()) - 1;
  std::vector<std::complex<double>> z(static_cast<size_t>(n));
  std::complex<double> seed(0.4, 0.9);
  std::complex<double> acc(1.0, 0.0);
  for (int i = 0; i < n; ++i) {
    acc *= seed;
    z[static_cast<size_t>(i)] = acc;
  }
  auto eval = [&](std::complex<double> x) {
    std::complex<double> v = monic.back();
    for (int i = n - 1; i >= 0; --i) v = v * x + monic[static_cast<size_t>(i)];
    return v;
  };
  for (int it = 0; it < 500; ++it) {
    double moved = 0.0;
    for (int i = 0; i < n; ++i) {
      std::complex<double> denom(1.0, 0.0);
      for (int j = 0; j < n; ++j)
        if (j != i) denom *= z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
      std::complex<double> delta = eval(z[static_cast<size_t>(i)]) / denom;
      z[static_cast<size_t>(i)] -= delta;
      moved = std::max(moved, std::abs(delta));
    }
    if (moved < 1e-13) break;
  }
  return z;
}

// All complex roots of the squarefree part of P, rescaled so that honest Weil
// polynomials land on the unit circle, must satisfy ||root| - 1| <= tol.
bool root_norm_check(const IntPoly& P, const Int& q, int w) {
  IntPoly sf = ip_squarefree(P);
  int n = ip_deg(sf);
  if (n <= 0) return true;
  double s = std::pow(q.get_d(), static_cast<double>(w) / 2.0);
  // Q(u) = sf(u/s) has unit-circle roots; normalize to a monic poly.
  std::vector<std::complex<double>> c(static_cast<size_t>(n) + 1);
  double spow = 1.0;
  for (int i = 0; i <= n; ++i) {
    c[static_cast<size_t>(i)] = sf[static_cast<size_t>(i)].get_d() / spow;
    spow *= s;
  }
  std::complex<double> lead = c.back();
  for (auto& v : c) v /= lead;
  for (const auto& root : all_roots(c))
    if (std::abs(std::abs(root) - 1.0) > 1e-6) return false;
  return true;
}

// Euler phi of a small integer.
long euler_phi(long n) {
  long result = n;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace

int min_precision(int m, const Int& q, int r, int N0) {
  if (m < 1) throw BadInput("min_precision: m must be >= 1");
  unsigned long half = static_cast<unsigned long>((m + 1) / 2);
  Int bound = 2 * binomial(static_cast<unsigned long>(m), half) *
              pow_int(q, static_cast<unsigned long>(r) * half);
  return std::max(N0, ceil_log_q(q, bound));
}

int min_precision_curve(int g, const Int& q, int N0) {
  if (g < 1) throw BadInput("min_precision: genus must be >= 1");
  // ceil(q^{g/2})
  Int qg = pow_int(q, static_cast<unsigned long>(g));
  Int root;
  mpz_sqrt(root.get_mpz_t(), qg.get_mpz_t());
  if (root * root < qg) root += 1;
  Int bound = 2 * binomial(static_cast<unsigned long>(2 * g), static_cast<unsigned long>(g)) * root;
  return std::max(N0, ceil_log_q(q, bound));
}

IntPoly weil_lift(const IntPoly& approx, int m, const Int& q, int r, int sign,
                  const Int& modulus, const Int& trusted) {
  if (sign != 1 && sign != -1) throw BadInput("weil_lift: sign must be +-1");
  int w = weight_of(r);
  if ((m * w) % 2 != 0)
    throw BadInput("weil_lift: functional equation needs m*w even");
  auto residue = [&](int i) -> Int {
    return i < static_cast<int>(approx.size()) ? mod_pos(approx[static_cast<size_t>(i)], modulus)
                                               : Int(0);
  };
  IntPoly P(static_cast<size_t>(m) + 1, Int(0));
  int half = m / 2;
  for (int i = 0; i <= half; ++i) P[static_cast<size_t>(i)] = symmetric_lift(residue(i), modulus);
  if (m % 2 == 0 && sign == -1) {
    // c_{m/2} = -c_{m/2} forces the middle coefficient to vanish.
    if (mod_pos(P[static_cast<size_t>(half)], trusted) != 0)
      throw InconsistentLift("weil_lift: middle coefficient nonzero with sign -1");
    P[static_cast<size_t>(half)] = 0;
  }
  for (int i = half + 1; i <= m; ++i) {
    long e = (static_cast<long>(2 * i - m) * w) / 2;
    Int v = pow_int(q, static_cast<unsigned long>(e)) * P[static_cast<size_t>(m - i)];
    P[static_cast<size_t>(i)] = sign == 1 ? v : -v;
  }
  if (P[0] != 1) throw InconsistentLift("weil_lift: constant term is not 1");
  for (int i = 0; i <= m; ++i)
    if (mod_pos(P[static_cast<size_t>(i)] - residue(i), trusted) != 0)
      throw InconsistentLift("weil_lift: lift does not reduce back to the input at t^" +
                             std::to_string(i));
  if (!root_norm_check(P, q, w))
    throw InconsistentLift("weil_lift: root-norm sanity check failed");
  return P;
}

CyclotomicSplit cyclotomic_split(const IntPoly& chi) {
  CyclotomicSplit out;
  out.h = chi;
  ip_trim(out.h);
  int D = ip_deg(out.h);
  if (D < 0) throw BadInput("cyclotomic_split: zero polynomial");
  // phi(i) >= sqrt(i/2), so phi(i) <= D forces i <= 2 D^2 (+ small slack).
  long bound = 2L * D * D + 2;
  for (long i = 1; i <= bound; ++i) {
    if (euler_phi(i) > D) continue;
    IntPoly phi = cyclotomic(static_cast<int>(i));
    int gamma = 0;
    while (true) {
      auto quot = ip_divide_exact(out.h, phi);
      if (!quot) break;
      out.h = *quot;
      ++gamma;
    }
    if (gamma > 0) {
      out.factors.push_back({i, phi, gamma});
      out.u = std::lcm(out.u, i);
      out.v = std::max(out.v, ip_deg(phi));
      D = ip_deg(out.h);
    }
  }
  return out;
}

}  // namespace cobs
