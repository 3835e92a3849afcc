#include "cobs/obstruction.hpp"

namespace cobs {

namespace {

// Content-normalize to a primitive polynomial with positive leading term.
void normalize_primitive(IntPoly& a) {
  ip_trim(a);
  if (a.empty()) return;
  Int c = 0;
  for (const auto& v : a) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), v.get_mpz_t());
  if (a.back() < 0) c = -c;
  for (auto& v : a) v /= c;
}

// The cleared integer matrix q^{r deg} Phi(F / q^r) = sum_k phi_k q^{r(deg-k)} F^k,
// reduced mod p^N (Horner in F).
PadicMatrix cleared_poly_of(const IntPoly& phi, const PadicMatrix& Fm, const Int& q,
                            int r) {
  int d = ip_deg(phi);
  PadicMatrix A = PadicMatrix::identity(Fm.ctx(), Fm.rows()).scaled(phi[static_cast<size_t>(d)]);
  for (int k = d - 1; k >= 0; --k) {
    A = A.multiply(Fm);
    A = A.add_scaled_identity(phi[static_cast<size_t>(k)] *
                              pow_int(q, static_cast<unsigned long>(r) *
                                             static_cast<unsigned long>(d - k)));
  }
  return A;
}

}  // namespace

std::vector<int> obstruction_rows(const GriffithsBasis& basis) {
  // H^{2r}/F^r is spanned by the forms of pole order l >= n+2-r.
  int r = basis.n / 2;
  std::vector<int> rows;
  for (int i = 0; i < basis.size(); ++i)
    if (basis.pole_orders[static_cast<size_t>(i)] >= basis.n + 2 - r) rows.push_back(i);
  return rows;
}

PadicMatrix projection_matrix(const PadicContext& ctx, int dim,
                              const std::vector<int>& rows) {
  PadicMatrix P(ctx, static_cast<int>(rows.size()), dim);
  for (size_t k = 0; k < rows.size(); ++k) {
    if (rows[k] < 0 || rows[k] >= dim) throw BadInput("projection_matrix: row out of range");
    P.set(static_cast<int>(k), rows[k], Int(1));
  }
  return P;
}

IntPoly scaled_charpoly(const IntPoly& P, const Int& q, int r) {
  int m = ip_deg(P);
  if (m < 0) throw BadInput("scaled_charpoly: zero polynomial");
  IntPoly chi(static_cast<size_t>(m) + 1, Int(0));
  for (int j = 0; j <= m; ++j)
    chi[static_cast<size_t>(j)] = P[static_cast<size_t>(m - j)] *
                                  pow_int(q, static_cast<unsigned long>(r) *
                                                 static_cast<unsigned long>(j));
  normalize_primitive(chi);
  return chi;
}

TateFactor tate_basis(const CycFactor& factor, int gamma_declared,
                      const std::vector<std::vector<Int>>& F, const Int& q, int r,
                      const PadicContext& ctx) {
  PadicMatrix Fm = PadicMatrix::from_rows(ctx, F);
  PadicMatrix A = cleared_poly_of(factor.phi, Fm, q, r);
  TateFactor out{factor.index, factor.phi, gamma_declared,
                 gamma_declared * ip_deg(factor.phi), kernel_mod_pN(A), false};
  out.observed_mismatch = out.basis.cols() != out.dim_Ti;
  return out;
}

PadicMatrix pi_i_matrix(const TateFactor& factor,
                        const std::vector<std::vector<Int>>& F,
                        const PadicMatrix& proj) {
  if (factor.basis.cols() == 0) throw BadInput("pi_i_matrix: empty Tate basis");
  PadicMatrix Fm = PadicMatrix::from_rows(factor.basis.ctx(), F);
  PadicMatrix cur = factor.basis;
  PadicMatrix stacked = proj.multiply(cur);
  for (int j = 1; j < ip_deg(factor.phi); ++j) {
    cur = Fm.multiply(cur);
    stacked = PadicMatrix::vstack(stacked, proj.multiply(cur));
  }
  return stacked;
}

nlohmann::json ObstructionReport::to_json() const {
  nlohmann::json j;
  j["bound"] = bound;
  j["precision"] = precision;
  j["p"] = p.get_str();
  j["rank T(X_Fpbar)"] = rank_T;
  auto factors = nlohmann::json::array();
  auto ti = nlohmann::json::array();
  auto li = nlohmann::json::array();
  auto flags = nlohmann::json::array();
  for (const auto& r : records) {
    factors.push_back(nlohmann::json::array({r.factor, r.multiplicity}));
    ti.push_back(r.dim_Ti);
    li.push_back(r.dim_Li);
    flags.push_back(r.observed_mismatch);
  }
  j["factors"] = factors;
  j["dim Ti"] = ti;
  j["dim Li"] = li;
  j["observed kernel mismatch"] = flags;
  j["mode"] = mode;
  j["galois"] = galois;
  return j;
}

ObstructionReport accumulate_bound(const CyclotomicSplit& split,
                                   const std::vector<std::vector<Int>>& F,
                                   const Int& q, int r, int N,
                                   const PadicMatrix& proj,
                                   const ObstructionOptions& opt) {
  PadicContext ctx(q, N);
  ObstructionReport rep;
  rep.p = q;
  rep.precision = N;
  rep.mode = opt.mode;
  rep.galois = opt.galois;
  for (const auto& f : split.factors) rep.rank_T += f.gamma * ip_deg(f.phi);

  if (opt.surface_polarization) {
    // The polarization h^r is a (t - 1) Tate class that always lifts.
    bool found = false;
    for (const auto& f : split.factors) found = found || f.index == 1;
    if (!found)
      throw InvariantViolation("accumulate_bound: no (t - 1) factor for the polarization");
    rep.records.push_back({ip_to_string(cyclotomic(1)), 1, 1, 1, false, true});
    rep.bound += 1;
  }

  // The rank bound has stabilized when every numerically visible pivot was
  // certified; more digits cannot grow the rank beyond the visible pivots.
  auto rank_and_saturation = [](const PadicMatrix& pi) {
    int rk = rank_lower_bound(pi);
    int visible = static_cast<int>(howell_form(pi).pivots.size());
    return std::pair<int, bool>(rk, rk == visible);
  };

  if (opt.galois) {
    for (const auto& f : split.factors) {
      TateFactor tf = tate_basis(f, f.gamma, F, q, r, ctx);
      int mult = f.gamma - (opt.surface_polarization && f.index == 1 ? 1 : 0);
      if (mult == 0) continue;
      auto [rk, sat] = rank_and_saturation(pi_i_matrix(tf, F, proj));
      sat = sat && !tf.observed_mismatch;
      int dim_ti = mult * ip_deg(f.phi);
      int dim_li = std::max(0, dim_ti - rk);
      rep.records.push_back(
          {ip_to_string(f.phi), mult, dim_ti, dim_li, tf.observed_mismatch, sat});
      rep.bound += dim_li;
      rep.saturated = rep.saturated && sat;
    }
  } else {
    // Vanilla: one pass of the plain projection on all of T~ at once.
    PadicMatrix all(ctx, static_cast<int>(F.size()), 0);
    bool mismatch = false;
    for (const auto& f : split.factors) {
      TateFactor tf = tate_basis(f, f.gamma, F, q, r, ctx);
      mismatch = mismatch || tf.observed_mismatch;
      all = all.cols() == 0 ? tf.basis : PadicMatrix::hstack(all, tf.basis);
    }
    int rk = 0;
    bool sat = true;
    if (all.cols() > 0) {
      auto [r0, s0] = rank_and_saturation(proj.multiply(all));
      rk = r0;
      sat = s0;
    }
    sat = sat && !mismatch;
    int pol = opt.surface_polarization ? 1 : 0;
    int dim_li = std::max(0, rep.rank_T - pol - rk);
    rep.records.push_back({"T", 1, rep.rank_T - pol, dim_li, mismatch, sat});
    rep.bound += dim_li;
    rep.saturated = sat;
  }
  return rep;
}

}  // namespace cobs
