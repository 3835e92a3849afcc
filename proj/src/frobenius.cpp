#include "cobs/frobenius.hpp"

#include <algorithm>

namespace cobs {

namespace {

// --- dense univariate arithmetic mod M ---------------------------------

IntPoly mp_norm(IntPoly a, const Int& M) {
  for (auto& c : a) c = mod_pos(c, M);
  ip_trim(a);
  return a;
}

IntPoly mp_mul(const IntPoly& a, const IntPoly& b, const Int& M) {
  return mp_norm(ip_mul(a, b), M);
}

IntPoly mp_add(const IntPoly& a, const IntPoly& b, const Int& M) {
  return mp_norm(ip_add(a, b), M);
}

IntPoly mp_scale(const IntPoly& a, const Int& c, const Int& M) {
  return mp_norm(ip_scale(a, c), M);
}

IntPoly mp_pow(IntPoly base, unsigned long e, const Int& M) {
  IntPoly r = {Int(1)};
  while (e) {
    if (e & 1) r = mp_mul(r, base, M);
    base = mp_mul(base, base, M);
    e >>= 1;
  }
  return r;
}

// Division by a divisor with unit leading coefficient.
std::pair<IntPoly, IntPoly> mp_divmod(const IntPoly& a, const IntPoly& b, const Int& M) {
  int db = ip_deg(b);
  Int linv = invmod(b[static_cast<size_t>(db)], M);
  IntPoly r = a, q;
  int da = ip_deg(r);
  if (da >= db) q.assign(static_cast<size_t>(da - db) + 1, Int(0));
  while ((da = ip_deg(r)) >= db) {
    Int c = mod_pos(r[static_cast<size_t>(da)] * linv, M);
    q[static_cast<size_t>(da - db)] = c;
    for (int k = 0; k <= db; ++k)
      r[static_cast<size_t>(da - db + k)] =
          mod_pos(r[static_cast<size_t>(da - db + k)] - c * b[static_cast<size_t>(k)], M);
  }
  ip_trim(q);
  ip_trim(r);
  return {q, r};
}

// Solve s*f + t*f' = 1 mod M via the Sylvester system (Gauss with unit
// pivots; solvable because disc(f) is a unit mod p).
std::pair<IntPoly, IntPoly> mp_bezout(const IntPoly& f, const IntPoly& df, const Int& M,
                                      const Int& p) {
  int D = ip_deg(f);
  int ns = D - 1, nt = D;  // deg s <= D-2, deg t <= D-1
  int nrows = 2 * D - 1, ncols = ns + nt;
  std::vector<std::vector<Int>> A(static_cast<size_t>(nrows),
                                  std::vector<Int>(static_cast<size_t>(ncols) + 1, Int(0)));
  for (int j = 0; j < ns; ++j)
    for (int k = 0; k <= D; ++k) A[static_cast<size_t>(j + k)][static_cast<size_t>(j)] =
        mod_pos(f[static_cast<size_t>(k)], M);
  for (int j = 0; j < nt; ++j)
    for (int k = 0; k <= D - 1; ++k)
      A[static_cast<size_t>(j + k)][static_cast<size_t>(ns + j)] =
          mod_pos(k < static_cast<int>(df.size()) ? df[static_cast<size_t>(k)] : Int(0), M);
  A[0][static_cast<size_t>(ncols)] = 1;
  for (int c = 0; c < ncols; ++c) {
    int piv = -1;
    for (int i = c; i < nrows; ++i)
      if (A[static_cast<size_t>(i)][static_cast<size_t>(c)] != 0 &&
          !mpz_divisible_p(A[static_cast<size_t>(i)][static_cast<size_t>(c)].get_mpz_t(),
                           p.get_mpz_t())) {
        piv = i;
        break;
      }
    if (piv < 0) throw SingularReduction("bezout: Sylvester system not invertible mod p");
    std::swap(A[static_cast<size_t>(c)], A[static_cast<size_t>(piv)]);
    Int u = invmod(A[static_cast<size_t>(c)][static_cast<size_t>(c)], M);
    for (int j = c; j <= ncols; ++j)
      A[static_cast<size_t>(c)][static_cast<size_t>(j)] =
          mod_pos(A[static_cast<size_t>(c)][static_cast<size_t>(j)] * u, M);
    for (int i = 0; i < nrows; ++i) {
      if (i == c || A[static_cast<size_t>(i)][static_cast<size_t>(c)] == 0) continue;
      Int q = A[static_cast<size_t>(i)][static_cast<size_t>(c)];
      for (int j = c; j <= ncols; ++j)
        A[static_cast<size_t>(i)][static_cast<size_t>(j)] = mod_pos(
            A[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                q * A[static_cast<size_t>(c)][static_cast<size_t>(j)],
            M);
    }
  }
  // Rows beyond the pivots must be consistent (RHS zero).
  for (int i = ncols; i < nrows; ++i)
    if (A[static_cast<size_t>(i)][static_cast<size_t>(ncols)] != 0)
      throw SingularReduction("bezout: inconsistent Sylvester system");
  IntPoly s(static_cast<size_t>(ns), Int(0)), t(static_cast<size_t>(nt), Int(0));
  for (int j = 0; j < ns; ++j) s[static_cast<size_t>(j)] =
      A[static_cast<size_t>(j)][static_cast<size_t>(ncols)];
  for (int j = 0; j < nt; ++j) t[static_cast<size_t>(j)] =
      A[static_cast<size_t>(ns + j)][static_cast<size_t>(ncols)];
  ip_trim(s);
  ip_trim(t);
  return {s, t};
}

// --- hyperelliptic backend (odd-degree model, Kedlaya-style) ------------

FrobeniusMatrix kedlaya(const HypersurfaceInput& in, const Int& p, int N,
                        const FrobeniusOptions& opt) {
  int g = in.genus();
  int D = in.d;  // 2g + 1
  long pl = p.get_si();
  int J = opt.truncation > 0 ? opt.truncation : N + 2;
  if (pl <= 2L * J || pl <= 3L * D)
    throw BadInput("kedlaya: prime too small for the chosen truncation");
  long m_top = pl * J + (pl - 1) / 2;
  int e_bound = 0;
  for (long m = 1; m <= m_top; ++m) e_bound += valuation(Int(2 * m - 1), p, 64);
  int W = opt.working_digits > 0 ? opt.working_digits : N + e_bound + 2;
  Int M = pow_int(p, static_cast<unsigned long>(W));

  IntPoly f = mp_norm(in.hf, M);
  IntPoly df = mp_norm(ip_derivative(f), M);
  auto [s, t] = mp_bezout(f, df, M, p);
  IntPoly fp = mp_pow(f, static_cast<unsigned long>(pl), M);
  // E = f(x^p) - f^p  (divisible by p).
  IntPoly E(static_cast<size_t>(pl) * D + 1, Int(0));
  for (int k = 0; k <= D; ++k) E[static_cast<size_t>(pl) * k] = f[static_cast<size_t>(k)];
  E = mp_norm(ip_sub(E, fp), M);

  // S = sum_j binom(-1/2,j) E^j fp^{J-j}; all classes live at pole m_top.
  std::vector<IntPoly> fp_pows(static_cast<size_t>(J) + 1);
  fp_pows[0] = {Int(1)};
  for (int j = 1; j <= J; ++j) fp_pows[static_cast<size_t>(j)] =
      mp_mul(fp_pows[static_cast<size_t>(j - 1)], fp, M);
  IntPoly S;
  IntPoly Epow = {Int(1)};
  Int bj = 1;
  for (int j = 0; j <= J; ++j) {
    if (j) {
      bj = mod_pos(bj * Int(1 - 2 * j) * invmod(Int(2 * j), M), M);
      Epow = mp_mul(Epow, E, M);
    }
    S = mp_add(S, mp_scale(mp_mul(Epow, fp_pows[static_cast<size_t>(J - j)], M), bj, M), M);
  }

  std::vector<IntPoly> cols(static_cast<size_t>(2 * g));
  std::vector<int> denom(static_cast<size_t>(2 * g), 0);
  for (int i = 0; i < 2 * g; ++i) {
    // A dx/y^{2m+1} with A = x^{p(i+1)-1} * S at m = m_top.
    IntPoly A(static_cast<size_t>(pl) * (i + 1) - 1, Int(0));
    A.insert(A.end(), S.begin(), S.end());
    int e = 0;
    for (long m = m_top; m >= 1; --m) {
      auto [U, V] = mp_divmod(A, f, M);
      IntPoly Vs = mp_mul(V, s, M);
      IntPoly dVt = mp_norm(ip_derivative(mp_mul(V, t, M)), M);
      Int dm = 2 * m - 1;
      int v = valuation(dm, p, 64);
      Int u = dm / pow_int(p, static_cast<unsigned long>(v));
      IntPoly base = mp_add(U, Vs, M);
      if (v) {
        base = mp_scale(base, pow_int(p, static_cast<unsigned long>(v)), M);
        e += v;
      }
      A = mp_add(base, mp_scale(dVt, mod_pos(2 * invmod(u, M), M), M), M);
    }
    // Degree reduction at the dx/y level down to deg <= 2g - 1.
    int K;
    while ((K = ip_deg(A)) >= D - 1) {
      long k = K - (D - 1);
      // Exact relation from d(x^k y): 2k x^{k-1} f + x^k f' == 0 in cohomology.
      IntPoly rel(static_cast<size_t>(K) + 1, Int(0));
      if (k >= 1)
        for (int j = 0; j <= D; ++j)
          rel[static_cast<size_t>(k - 1 + j)] += Int(2 * k) * f[static_cast<size_t>(j)];
      for (int j = 0; j < D; ++j)
        if (j < static_cast<int>(df.size()))
          rel[static_cast<size_t>(k + j)] += df[static_cast<size_t>(j)];
      rel = mp_norm(rel, M);
      Int lead = rel.size() > static_cast<size_t>(K) ? rel[static_cast<size_t>(K)] : Int(0);
      int v = valuation(lead, p, W);
      if (v >= W) throw PrecisionExhausted("kedlaya: vanishing lead in degree reduction");
      Int unit = mod_pos(lead / pow_int(p, static_cast<unsigned long>(v)), M);
      // Cancel A[K]*p^v against (A[K]/unit)*rel after shifting A by p^v.
      Int c = mod_pos(A[static_cast<size_t>(K)] * invmod(unit, M), M);
      if (v) {
        A = mp_scale(A, pow_int(p, static_cast<unsigned long>(v)), M);
        e += v;
      }
      A = mp_norm(ip_sub(A, ip_scale(rel, c)), M);
      if (ip_deg(A) >= K)
        throw PrecisionExhausted("kedlaya: degree reduction stalled");
    }
    A.resize(static_cast<size_t>(2 * g), Int(0));
    cols[static_cast<size_t>(i)] = A;
    denom[static_cast<size_t>(i)] = e;
  }

  FrobeniusMatrix F;
  F.p = p;
  F.n = 1;
  F.r = 0;
  F.mode = mode_name(in.mode);
  F.dim = 2 * g;
  F.polarization_slot = -1;
  int prec = W;
  for (int i = 0; i < 2 * g; ++i) prec = std::min(prec, W - denom[static_cast<size_t>(i)] + 1);
  if (prec < N)
    throw PrecisionExhausted("kedlaya: only " + std::to_string(prec) + " digits achieved");
  Int Mp = pow_int(p, static_cast<unsigned long>(prec));
  F.prec = prec;
  F.entries.assign(static_cast<size_t>(2 * g), std::vector<Int>(static_cast<size_t>(2 * g)));
  for (int i = 0; i < 2 * g; ++i) {
    int e = denom[static_cast<size_t>(i)];
    for (int k = 0; k < 2 * g; ++k) {
      // True entry = p * A[k] / p^e.
      Int v = cols[static_cast<size_t>(i)][static_cast<size_t>(k)];
      if (e == 0) {
        v = mod_pos(v * p, Mp);
      } else {
        Int div = pow_int(p, static_cast<unsigned long>(e - 1));
        if (e > 1) {
          if (!mpz_divisible_p(v.get_mpz_t(), div.get_mpz_t()))
            throw PrecisionExhausted("kedlaya: non-integral Frobenius entry");
          v /= div;
        }
        v = mod_pos(v, Mp);
      }
      F.entries[static_cast<size_t>(k)][static_cast<size_t>(i)] = v;
    }
  }
  for (int i = 0; i < 2 * g; ++i) F.col_twist.push_back(i < g ? 1 : 0);
  nlohmann::json b;
  std::vector<std::string> forms;
  for (int i = 0; i < 2 * g; ++i)
    forms.push_back("x^" + std::to_string(i) + " dx/y");
  b["forms"] = forms;
  F.basis = b;
  return F;
}

// --- hypersurface / plane-curve backend (Griffiths-Dwork) ---------------

FrobeniusMatrix griffiths_dwork(const HypersurfaceInput& in, const Int& p, int N,
                                const FrobeniusOptions& opt) {
  auto basis = griffiths_basis(in, p);
  int n = in.n, d = in.d, vars = n + 2;
  long pl = p.get_si();
  int l_max = basis.pole_orders.back();
  int J = opt.truncation > 0 ? opt.truncation : N + 3;
  long m_top = pl * (l_max + J);
  int loss_bound = 0;
  for (long m = 2; m <= m_top; ++m) loss_bound += valuation(Int(m - 1), p, 64);
  int W = opt.working_digits > 0 ? opt.working_digits : N + loss_bound + 1;

  // Fail fast on workspace before any heavy allocation.
  double max_dim = static_cast<double>(monomial_count(vars, static_cast<int>(m_top) * d - n - 2));
  int limb_bytes = pow_int(p, static_cast<unsigned long>(W)) < pow_int(Int(2), 62) ? 8 : 16;
  double mb = max_dim * basis.size() * 2.0 * limb_bytes / 1e6;
  if (mb > static_cast<double>(opt.max_workspace_mb))
    throw ResourceLimit("frobenius: sweep workspace estimate " +
                        std::to_string(static_cast<long>(mb)) + " MB exceeds limit " +
                        std::to_string(opt.max_workspace_mb) + " MB");

  ReductionEngine eng(in, basis, p, W);
  const Int& M = eng.modulus();

  // f^a for a = 0..J, and the regrouped series coefficients per pole order l:
  // 1/f(x^p)^l truncated at J terms of the (f(x^p) - f^p)-expansion equals
  // sum_a E_l[a] * f(x^p)^a / f^{p(l+a)}.
  std::vector<GradedPoly> fa(static_cast<size_t>(J) + 1);
  fa[0].vars = vars;
  fa[0].add_term(Monomial{std::vector<int>(static_cast<size_t>(vars), 0)}, 1);
  for (int a = 1; a <= J; ++a) {
    fa[static_cast<size_t>(a)] = gp_mul(fa[static_cast<size_t>(a - 1)], in.f);
    for (auto& [m, c] : fa[static_cast<size_t>(a)].coeffs) c = mod_pos(c, M);
  }
  std::vector<std::vector<Int>> El(static_cast<size_t>(l_max) + 1,
                                   std::vector<Int>(static_cast<size_t>(J) + 1, Int(0)));
  for (int l = 1; l <= l_max; ++l)
    for (int a = 0; a <= J; ++a) {
      Int sum = 0;
      for (int j = a; j <= J; ++j) {
        // binom(-l, j) = (-1)^j binom(l+j-1, j)
        Int term = binomial(static_cast<unsigned long>(l + j - 1), static_cast<unsigned long>(j)) *
                   binomial(static_cast<unsigned long>(j), static_cast<unsigned long>(a));
        if ((j - a) % 2) term = -term;
        if (j % 2) term = -term;
        sum += term;
      }
      El[static_cast<size_t>(l)][static_cast<size_t>(a)] = mod_pos(sum, M);
    }

  auto sweep = eng.start(static_cast<int>(m_top), basis.size());
  while (eng.pole(*sweep) > 0) {
    int m = eng.pole(*sweep);
    if (m % pl == 0) {
      long q = m / pl;
      for (int i = 0; i < basis.size(); ++i) {
        long a = q - basis.pole_orders[static_cast<size_t>(i)];
        if (a < 0 || a > J) continue;
        const Int& c0 = El[static_cast<size_t>(basis.pole_orders[static_cast<size_t>(i)])]
                          [static_cast<size_t>(a)];
        if (c0 == 0) continue;
        const Monomial& beta = basis.monomials[static_cast<size_t>(i)];
        for (const auto& [tau, c] : fa[static_cast<size_t>(a)].coeffs) {
          Monomial mm;
          mm.e.resize(static_cast<size_t>(vars));
          for (int v = 0; v < vars; ++v)
            mm.e[static_cast<size_t>(v)] =
                static_cast<int>(pl) * (tau.e[static_cast<size_t>(v)] +
                                        beta.e[static_cast<size_t>(v)]) +
                static_cast<int>(pl) - 1;
          eng.inject(*sweep, i, mm, mod_pos(c0 * c, M));
        }
      }
    }
    eng.step(*sweep);
  }
  auto res = eng.finish(*sweep);

  // Assemble: true column = coords * p^{n+1} / (p^{scale} * p) after the
  // Tate-twist division; the injected series carried no power of p.
  int nb = basis.size();
  FrobeniusMatrix F;
  F.p = p;
  F.n = n;
  F.mode = mode_name(in.mode);
  bool surface = in.mode == InputMode::hypersurface;
  F.r = surface ? in.r() : 0;
  int dim = nb + (basis.polarization_slot ? 1 : 0);
  F.dim = dim;
  F.polarization_slot = basis.polarization_slot ? nb : -1;
  int prec = W;
  for (int i = 0; i < nb; ++i)
    prec = std::min(
        prec, W - res.loss[static_cast<size_t>(i)] - res.scale[static_cast<size_t>(i)] + n);
  prec = std::min(prec, W);
  if (prec < N) {
    std::string diag = "frobenius: only " + std::to_string(prec) + " digits achieved (W=" +
                       std::to_string(W) + ";";
    for (int i = 0; i < nb; ++i)
      diag += " [" + std::to_string(res.loss[static_cast<size_t>(i)]) + "," +
              std::to_string(res.scale[static_cast<size_t>(i)]) + "]";
    throw PrecisionExhausted(diag + ")");
  }
  F.prec = prec;
  Int Mp = pow_int(p, static_cast<unsigned long>(prec));
  F.entries.assign(static_cast<size_t>(dim), std::vector<Int>(static_cast<size_t>(dim), Int(0)));
  for (int i = 0; i < nb; ++i) {
    int trusted = W - res.loss[static_cast<size_t>(i)];
    int s = res.scale[static_cast<size_t>(i)];
    for (int k = 0; k < nb; ++k) {
      Int v = res.coords[static_cast<size_t>(i)][static_cast<size_t>(k)];
      if (s <= n) {
        v = mod_pos(v * pow_int(p, static_cast<unsigned long>(n - s)), Mp);
      } else {
        Int vm = mod_pos(v, pow_int(p, static_cast<unsigned long>(trusted)));
        Int div = pow_int(p, static_cast<unsigned long>(s - n));
        if (!mpz_divisible_p(vm.get_mpz_t(), div.get_mpz_t()))
          throw PrecisionExhausted("frobenius: non-integral entry after untwist");
        v = mod_pos(vm / div, Mp);
      }
      F.entries[static_cast<size_t>(k)][static_cast<size_t>(i)] = v;
    }
  }
  for (int i = 0; i < nb; ++i)
    F.col_twist.push_back(n + 1 - basis.pole_orders[static_cast<size_t>(i)]);
  if (basis.polarization_slot) {
    F.entries[static_cast<size_t>(nb)][static_cast<size_t>(nb)] =
        mod_pos(pow_int(p, static_cast<unsigned long>(F.r)), Mp);
    F.col_twist.push_back(F.r);
  }
  F.basis = basis_manifest(basis);
  return F;
}

}  // namespace

FrobeniusMatrix frobenius_matrix(const HypersurfaceInput& input, const Int& p, int N,
                                 const FrobeniusOptions& opt) {
  if (N < 1) throw BadInput("frobenius: precision must be >= 1");
  auto gp = good_prime_check(input, p, 0);
  if (!gp.ok) {
    if (gp.reason == "SingularReduction")
      throw SingularReduction("frobenius: singular reduction at p");
    throw BadInput("frobenius: bad prime (" + gp.reason + ")");
  }
  if (input.mode == InputMode::jacobian_hyperelliptic) return kedlaya(input, p, N, opt);
  return griffiths_dwork(input, p, N, opt);
}

int frobenius_sign(const FrobeniusMatrix& F) {
  if (static_cast<int>(F.col_twist.size()) != F.dim)
    throw BadInput("frobenius_sign: missing filtration data");
  long pl = F.p.get_si();
  std::vector<std::vector<int64_t>> A(static_cast<size_t>(F.dim),
                                      std::vector<int64_t>(static_cast<size_t>(F.dim)));
  for (int j = 0; j < F.dim; ++j) {
    Int pj = pow_int(F.p, static_cast<unsigned long>(F.col_twist[static_cast<size_t>(j)]));
    for (int i = 0; i < F.dim; ++i) {
      const Int& e = F.entries[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (!mpz_divisible_p(e.get_mpz_t(), pj.get_mpz_t()))
        throw InvariantViolation("frobenius_sign: column lacks the filtration divisibility");
      A[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          static_cast<int64_t>(mpz_fdiv_ui(Int(e / pj).get_mpz_t(), pl));
    }
  }
  // det mod p by Gauss.
  int64_t det = 1;
  for (int c = 0; c < F.dim; ++c) {
    int piv = -1;
    for (int i = c; i < F.dim; ++i)
      if (A[static_cast<size_t>(i)][static_cast<size_t>(c)] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw InconsistentLift("frobenius_sign: divided matrix singular mod p");
    if (piv != c) {
      std::swap(A[static_cast<size_t>(c)], A[static_cast<size_t>(piv)]);
      det = -det;
    }
    int64_t a = A[static_cast<size_t>(c)][static_cast<size_t>(c)];
    det = static_cast<int64_t>((__int128)det * a % pl);
    int64_t ainv = 1, b = a % pl, e2 = pl - 2;
    while (e2) {
      if (e2 & 1) ainv = static_cast<int64_t>((__int128)ainv * b % pl);
      b = static_cast<int64_t>((__int128)b * b % pl);
      e2 >>= 1;
    }
    for (int i = c + 1; i < F.dim; ++i) {
      int64_t fct = static_cast<int64_t>((__int128)A[static_cast<size_t>(i)][static_cast<size_t>(c)] * ainv % pl);
      if (!fct) continue;
      for (int j = c; j < F.dim; ++j)
        A[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            ((A[static_cast<size_t>(i)][static_cast<size_t>(j)] -
              (__int128)fct * A[static_cast<size_t>(c)][static_cast<size_t>(j)] % pl) %
                 pl +
             pl) %
            pl;
    }
  }
  int64_t dm = ((det % pl) + pl) % pl;
  if (dm == 1) return 1;
  if (dm == pl - 1) return -1;
  throw InconsistentLift("frobenius_sign: determinant unit is not +-1 mod p");
}

nlohmann::json frobenius_to_json(const FrobeniusMatrix& F) {
  nlohmann::json j;
  j["p"] = F.p.get_si();
  j["N"] = F.prec;
  j["r"] = F.r;
  j["n"] = F.n;
  j["mode"] = F.mode;
  j["dim"] = F.dim;
  j["polarization_slot"] = F.polarization_slot;
  j["col_twist"] = F.col_twist;
  j["basis"] = F.basis;
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : F.entries) {
    std::vector<std::string> r;
    for (const auto& e : row) r.push_back(e.get_str());
    rows.push_back(std::move(r));
  }
  j["entries"] = rows;
  return j;
}

FrobeniusMatrix frobenius_from_json(const nlohmann::json& j) {
  FrobeniusMatrix F;
  F.provenance = "imported";
  try {
    F.p = Int(j.at("p").get<long>());
    F.prec = j.at("N").get<int>();
    F.r = j.at("r").get<int>();
    F.mode = j.at("mode").get<std::string>();
    F.n = j.value("n", F.r > 0 ? 2 * F.r : 1);
    const auto& rows = j.at("entries");
    F.dim = static_cast<int>(rows.size());
    for (const auto& row : rows) {
      std::vector<Int> r;
      for (const auto& e : row) {
        if (e.is_string())
          r.emplace_back(e.get<std::string>());
        else
          r.emplace_back(e.get<long>());
      }
      F.entries.push_back(std::move(r));
    }
    if (j.contains("col_twist")) F.col_twist = j["col_twist"].get<std::vector<int>>();
    if (j.contains("basis")) F.basis = j["basis"];
    F.polarization_slot = j.value("polarization_slot", -1);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("frobenius import: ") + e.what());
  }
  if (!is_prime(F.p) || F.prec < 1) throw SchemaError("frobenius import: bad p or N");
  if (F.dim < 1) throw SchemaError("frobenius import: empty matrix");
  Int Mp = pow_int(F.p, static_cast<unsigned long>(F.prec));
  for (const auto& row : F.entries) {
    if (static_cast<int>(row.size()) != F.dim)
      throw SchemaError("frobenius import: matrix not square");
    for (const auto& e : row)
      if (e < 0 || e >= Mp) throw SchemaError("frobenius import: entry out of range [0, p^N)");
  }
  if (!F.col_twist.empty() && static_cast<int>(F.col_twist.size()) != F.dim)
    throw SchemaError("frobenius import: col_twist length mismatch");
  // Polarization block shape in surface mode.
  if (F.polarization_slot >= 0) {
    int s = F.polarization_slot;
    if (s >= F.dim) throw SchemaError("frobenius import: polarization slot out of range");
    Int pr = mod_pos(pow_int(F.p, static_cast<unsigned long>(F.r)), Mp);
    for (int k = 0; k < F.dim; ++k) {
      Int want_row = (k == s) ? pr : Int(0);
      if (F.entries[static_cast<size_t>(s)][static_cast<size_t>(k)] != want_row ||
          F.entries[static_cast<size_t>(k)][static_cast<size_t>(s)] != want_row)
        throw InvariantViolation("frobenius import: polarization block is not p^r * e_s");
    }
  }
  return F;
}

}  // namespace cobs
