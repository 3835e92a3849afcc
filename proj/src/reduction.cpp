#include "cobs/reduction.hpp"

#include <algorithm>
#include <cassert>
#include <map>

#include "cobs/mont.hpp"

namespace cobs {

namespace {

// Rank of (a, b) / (a, b, c) / exponent vector within its degree t, in the
// descending-grevlex enumeration (index 0 = largest monomial).
inline long rank3(long b, long c, long t) { return c * (t + 1) - c * (c - 1) / 2 + b; }

long rank_generic(const int* e, int vars, int t) {
  long r = 0;
  for (int k = vars; k >= 2; --k) {
    int ek = e[k - 1];
    for (int c = 0; c < ek; ++c) r += monomial_count(k - 1, t - c);
    t -= ek;
  }
  return r;
}

}  // namespace

struct ReductionEngine::Impl {
  virtual ~Impl() = default;
  virtual std::unique_ptr<Sweep> start(int m_top, int ncols) const = 0;
  virtual int pole(const Sweep& s) const = 0;
  virtual void inject(Sweep& s, int col, const Monomial& mono, const Int& c) const = 0;
  virtual void step(Sweep& s) const = 0;
  virtual Result finish(Sweep& s) const = 0;
};

namespace {

// RREF solve at one degree: expresses each lead (nonstandard) monomial of the
// Jacobian ideal in degree t as  gamma = sum_i h_i * d_i f - tail  with the
// tail supported on standard monomials.  Exact over Z/p^W (unit pivots by
// smoothness; SingularReduction otherwise).
struct RawElem {
  long rank = -1;                              // rank of gamma in degree t
  std::vector<std::pair<long, Int>> tail;      // (rank, coeff): gamma - sum coeff*beta in J
  std::vector<std::map<Monomial, Int>> h;      // cofactors per variable
};

std::vector<RawElem> solve_degree(const GradedPoly& f, int t, const Int& modulus,
                                  const Int& p) {
  const int vars = f.vars;
  const int d = f.degree;
  std::vector<GradedPoly> dfs;
  for (int i = 0; i < vars; ++i) dfs.push_back(gp_derivative(f, i));
  auto tgt = monomials_of_degree(vars, t);
  auto src = monomials_of_degree(vars, t - (d - 1));
  const long ncols = static_cast<long>(tgt.size());
  const long nrows = static_cast<long>(vars) * static_cast<long>(src.size());
  // Row j = shift polynomial x^{mu} * d_i f as a coefficient vector.
  std::vector<std::vector<Int>> A(nrows, std::vector<Int>(ncols, Int(0)));
  std::vector<std::vector<Int>> T(nrows, std::vector<Int>(nrows, Int(0)));
  std::vector<std::pair<int, Monomial>> shifts;
  long row = 0;
  for (int i = 0; i < vars; ++i)
    for (const auto& mu : src) {
      shifts.emplace_back(i, mu);
      for (const auto& [m, c] : dfs[i].coeffs) {
        Monomial prod = m;
        for (int v = 0; v < vars; ++v) prod.e[v] += mu.e[v];
        long rk = grevlex_rank(prod);
        A[row][rk] = mod_pos(A[row][rk] + c, modulus);
      }
      T[row][row] = 1;
      ++row;
    }
  std::vector<RawElem> out;
  std::vector<long> pivot_col;
  long rank = 0;
  for (long c = 0; c < ncols && rank < nrows; ++c) {
    long piv = -1;
    for (long i = rank; i < nrows; ++i)
      if (A[i][c] != 0 && !mpz_divisible_p(A[i][c].get_mpz_t(), p.get_mpz_t())) {
        piv = i;
        break;
      }
    if (piv < 0) {
      // No unit pivot: gamma is a standard monomial; any p-divisible residue
      // in this column rides along into the tails.
      continue;
    }
    std::swap(A[rank], A[piv]);
    std::swap(T[rank], T[piv]);
    Int u = invmod(A[rank][c], modulus);
    for (long j = c; j < ncols; ++j) A[rank][j] = mod_pos(A[rank][j] * u, modulus);
    for (long j = 0; j < nrows; ++j) T[rank][j] = mod_pos(T[rank][j] * u, modulus);
    for (long i = 0; i < nrows; ++i) {
      if (i == rank || A[i][c] == 0) continue;
      Int q = A[i][c];
      for (long j = c; j < ncols; ++j) A[i][j] = mod_pos(A[i][j] - q * A[rank][j], modulus);
      for (long j = 0; j < nrows; ++j) T[i][j] = mod_pos(T[i][j] - q * T[rank][j], modulus);
    }
    pivot_col.push_back(c);
    ++rank;
  }
  // Extract elements only after the RREF is complete: later pivots clean the
  // tails of earlier rows, leaving tail support on standard columns only.
  for (long i = 0; i < rank; ++i) {
    RawElem e;
    e.rank = pivot_col[static_cast<size_t>(i)];
    e.h.assign(vars, {});
    for (long j = e.rank + 1; j < ncols; ++j)
      if (A[i][j] != 0) e.tail.emplace_back(j, A[i][j]);
    for (long j = 0; j < nrows; ++j) {
      if (T[i][j] == 0) continue;
      auto [var, mu] = shifts[static_cast<size_t>(j)];
      e.h[static_cast<size_t>(var)][mu] =
          mod_pos(e.h[static_cast<size_t>(var)][mu] + T[i][j], modulus);
    }
    out.push_back(std::move(e));
  }
  return out;
}

template <class MT>
class EngineT : public ReductionEngine::Impl {
 public:
  using limb = typename MT::limb;

  struct HTerm {
    int var;
    std::vector<int> delta;  // target exponents = mu + delta; factor mu[var]
    limb c;
  };
  struct ATerm {
    std::vector<int> delta;  // target exponents = mu + delta
    limb c;
  };
  struct TTerm {
    long gi;  // global basis index of the standard monomial
    limb c;
  };
  struct Element {
    std::vector<TTerm> tail;  // write-back into the current degree
    std::vector<HTerm> h;
    std::vector<ATerm> H;  // sum_i d_i h_i
  };

  EngineT(const HypersurfaceInput& input, const GriffithsBasis& basis, const Int& p, int W)
      : vars_(input.n + 2),
        n_(input.n),
        d_(input.d),
        socle_((input.n + 2) * (input.d - 2)),
        p_(p),
        W_(W),
        modulus_(pow_int(p, static_cast<unsigned long>(W))),
        mont_(modulus_),
        basis_(basis) {
    p_long_ = p.get_si();
    // Basis-degree bookkeeping: per block, a standard mask and the global
    // basis index of each standard rank.
    for (size_t bi = 0; bi < basis.block_degrees.size(); ++bi) {
      int t = basis.block_degrees[bi];
      Block blk;
      blk.degree = t;
      auto mask = nonstandard_mask(input, p, t);
      long dim = monomial_count(vars_, t);
      blk.global_index.assign(static_cast<size_t>(dim), -1);
      blk.elem_index.assign(static_cast<size_t>(dim), -1);
      // Global indices: the block's monomials are stored ascending within the
      // block = reverse of descending enumeration.
      std::vector<long> std_ranks;
      for (long k = 0; k < dim; ++k)
        if (!mask[static_cast<size_t>(k)]) std_ranks.push_back(k);
      long block_start = 0;
      for (size_t bj = 0; bj < bi; ++bj) block_start += block_sizes_[bj];
      for (size_t s = 0; s < std_ranks.size(); ++s)
        blk.global_index[static_cast<size_t>(std_ranks[std_ranks.size() - 1 - s])] =
            block_start + static_cast<long>(s);
      block_sizes_.push_back(static_cast<long>(std_ranks.size()));
      // Ideal elements with leads in this degree (none in the lowest block).
      if (static_cast<long>(std_ranks.size()) < dim) {
        auto raw = solve_degree(input.f, t, modulus_, p);
        for (auto& re : raw) {
          blk.elem_index[static_cast<size_t>(re.rank)] =
              static_cast<long>(blk.elems.size());
          blk.elems.push_back(build_element(re, /*with_h=*/false, &blk.global_index));
        }
        long got = static_cast<long>(raw.size());
        if (got + static_cast<long>(std_ranks.size()) != dim)
          throw SingularReduction("reduction: non-unit pivot in degree " + std::to_string(t));
      }
      blocks_by_degree_[t] = std::move(blk);
    }
    // Universal elements at the degree just past the socle.
    auto raw = solve_degree(input.f, socle_ + 1, modulus_, p);
    if (static_cast<long>(raw.size()) != monomial_count(vars_, socle_ + 1))
      throw SingularReduction("reduction: Jacobian ring does not vanish past the socle");
    socle_elems_.resize(raw.size());
    for (auto& re : raw) {
      if (!re.tail.empty())
        throw SingularReduction("reduction: unexpected tail past the socle");
      socle_elems_[static_cast<size_t>(re.rank)] = build_element(re, /*with_h=*/true, nullptr);
    }
    // Montgomery constants.
    p_mont_pows_.resize(static_cast<size_t>(W_) + 1);
    p_mont_pows_[0] = mont_.one;
    limb pm = mont_.to_mont(static_cast<limb>(p_long_));
    for (int k = 1; k <= W_; ++k) p_mont_pows_[static_cast<size_t>(k)] =
        mont_.mul(p_mont_pows_[static_cast<size_t>(k - 1)], pm);
  }

  struct Block {
    int degree = -1;
    std::vector<long> global_index;  // rank -> basis index (-1 if nonstandard)
    std::vector<long> elem_index;    // rank -> element index (-1 if standard)
    std::vector<Element> elems;
  };

  struct SweepT : ReductionEngine::Sweep {
    int m = 0;
    int ncols = 0;
    long dim = 0;
    std::vector<std::vector<limb>> cur, next;
    limb pending = 0, pending_inv = 0;  // folded scalar (u^{-1} of the last step)
    std::vector<int> scale;             // per-column denominator exponent
    std::vector<int> loss;              // per-column digits consumed
    std::vector<std::vector<limb>> coords_raw;
    std::vector<std::vector<int>> coords_scale;
    std::vector<std::vector<int>> coords_loss;  // loss at emission time
  };

  std::unique_ptr<ReductionEngine::Sweep> start(int m_top, int ncols) const override {
    auto s = std::make_unique<SweepT>();
    s->m = m_top;
    s->ncols = ncols;
    s->dim = monomial_count(vars_, m_top * d_ - n_ - 2);
    s->cur.assign(static_cast<size_t>(ncols), std::vector<limb>(static_cast<size_t>(s->dim), 0));
    s->next.resize(static_cast<size_t>(ncols));
    s->pending = mont_.one;
    s->pending_inv = mont_.one;
    s->scale.assign(static_cast<size_t>(ncols), 0);
    s->loss.assign(static_cast<size_t>(ncols), 0);
    long bs = 0;
    for (long b : block_sizes_) bs += b;
    s->coords_raw.assign(static_cast<size_t>(ncols), std::vector<limb>(static_cast<size_t>(bs), 0));
    s->coords_scale.assign(static_cast<size_t>(ncols), std::vector<int>(static_cast<size_t>(bs), 0));
    s->coords_loss.assign(static_cast<size_t>(ncols), std::vector<int>(static_cast<size_t>(bs), 0));
    // Grow the small-integer Montgomery table to cover every mu coordinate.
    long need = static_cast<long>(m_top) * d_;
    if (static_cast<long>(small_mont_.size()) < need + 1) {
      size_t old = small_mont_.size();
      small_mont_.resize(static_cast<size_t>(need) + 1);
      for (size_t k = old; k < small_mont_.size(); ++k)
        small_mont_[k] = mont_.to_mont(static_cast<limb>(k));
    }
    return s;
  }

  int pole(const ReductionEngine::Sweep& sb) const override {
    return static_cast<const SweepT&>(sb).m;
  }

  void inject(ReductionEngine::Sweep& sb, int col, const Monomial& mono,
              const Int& c) const override {
    auto& s = static_cast<SweepT&>(sb);
    if (mono.degree() != s.m * d_ - n_ - 2)
      throw BadInput("inject: numerator degree does not match the pole order");
    long rk = grevlex_rank(mono);
    limb v = mont_.to_mont(MT::from_int(mod_pos(c, modulus_)));
    v = mont_.mul(v, p_mont_pows_[static_cast<size_t>(s.scale[static_cast<size_t>(col)])]);
    v = mont_.mul(v, s.pending_inv);
    auto& vec = s.cur[static_cast<size_t>(col)];
    vec[static_cast<size_t>(rk)] = mont_.add(vec[static_cast<size_t>(rk)], v);
  }

  void step(ReductionEngine::Sweep& sb) const override {
    auto& s = static_cast<SweepT&>(sb);
    if (s.m < 1) throw BadInput("step: sweep already finished");
    const int D = s.m * d_ - n_ - 2;
    const int Dn = D - d_;
    const bool make_next = s.m > 1;
    const Block* blk = nullptr;
    auto it = blocks_by_degree_.find(D);
    if (it != blocks_by_degree_.end()) blk = &it->second;
    // Every rung at pole <= n+1 is a basis degree; deeper rungs lie strictly
    // past the socle and use the greedy divisor peel.
    if (!blk && D >= 0 && D <= socle_)
      throw std::logic_error("step: unexpected ladder degree " + std::to_string(D));
    long dim_next = make_next ? monomial_count(vars_, Dn) : 0;
    if (make_next)
      for (int col = 0; col < s.ncols; ++col)
        s.next[static_cast<size_t>(col)].assign(static_cast<size_t>(dim_next), 0);

    std::vector<long> s4;  // vars == 4 prefix table for target ranks
    if (vars_ == 4 && make_next) {
      s4.assign(static_cast<size_t>(Dn) + 2, 0);
      for (long k = 0; k + 1 < static_cast<long>(s4.size()); ++k)
        s4[static_cast<size_t>(k + 1)] = s4[static_cast<size_t>(k)] + monomial_count(3, Dn - k);
    }
    auto target_rank = [&](const int* e) -> long {
      if (vars_ == 3) return rank3(e[1], e[2], Dn);
      if (vars_ == 4) return s4[static_cast<size_t>(e[3])] + rank3(e[1], e[2], Dn - e[3]);
      return rank_generic(e, vars_, Dn);
    };

    std::vector<limb> a(static_cast<size_t>(s.ncols)), af(static_cast<size_t>(s.ncols));
    std::vector<int> mu(static_cast<size_t>(vars_)), tgt(static_cast<size_t>(vars_));
    std::vector<int> gp(static_cast<size_t>(vars_));

    auto process = [&](const int* e, long idx) {
      bool any = false;
      for (int col = 0; col < s.ncols; ++col) {
        a[static_cast<size_t>(col)] = s.cur[static_cast<size_t>(col)][static_cast<size_t>(idx)];
        if (a[static_cast<size_t>(col)]) any = true;
      }
      if (!any) return;
      for (int col = 0; col < s.ncols; ++col)
        af[static_cast<size_t>(col)] = mont_.mul(a[static_cast<size_t>(col)], s.pending);
      if (blk) {
        long gi = blk->global_index[static_cast<size_t>(idx)];
        if (gi >= 0) {  // standard monomial: emit the coordinate
          for (int col = 0; col < s.ncols; ++col) {
            auto& cr = s.coords_raw[static_cast<size_t>(col)][static_cast<size_t>(gi)];
            cr = mont_.add(cr, af[static_cast<size_t>(col)]);
            s.coords_scale[static_cast<size_t>(col)][static_cast<size_t>(gi)] =
                s.scale[static_cast<size_t>(col)];
            s.coords_loss[static_cast<size_t>(col)][static_cast<size_t>(gi)] =
                s.loss[static_cast<size_t>(col)];
          }
          return;
        }
        const Element& el = blk->elems[static_cast<size_t>(blk->elem_index[static_cast<size_t>(idx)])];
        // Tails are supported on standard monomials of the same degree, so
        // they go straight into the emitted coordinates.
        for (const auto& t : el.tail)
          for (int col = 0; col < s.ncols; ++col) {
            auto& cr = s.coords_raw[static_cast<size_t>(col)][static_cast<size_t>(t.gi)];
            cr = mont_.add(cr, mont_.mul(af[static_cast<size_t>(col)], t.c));
            s.coords_scale[static_cast<size_t>(col)][static_cast<size_t>(t.gi)] =
                s.scale[static_cast<size_t>(col)];
            s.coords_loss[static_cast<size_t>(col)][static_cast<size_t>(t.gi)] =
                s.loss[static_cast<size_t>(col)];
          }
        if (make_next)
          for (const auto& t : el.H) {
            long rk = target_rank(t.delta.data());
            for (int col = 0; col < s.ncols; ++col) {
              auto& slot = s.next[static_cast<size_t>(col)][static_cast<size_t>(rk)];
              slot = mont_.add(slot, mont_.mul(af[static_cast<size_t>(col)], t.c));
            }
          }
        return;
      }
      // Past the socle: peel a degree-(socle+1) divisor gamma' greedily.
      int rem = socle_ + 1;
      for (int v = 0; v < vars_; ++v) {
        gp[static_cast<size_t>(v)] = std::min(e[v], rem);
        rem -= gp[static_cast<size_t>(v)];
        mu[static_cast<size_t>(v)] = e[v] - gp[static_cast<size_t>(v)];
      }
      Monomial gpm;
      gpm.e.assign(gp.begin(), gp.end());
      const Element& el = socle_elems_[static_cast<size_t>(grevlex_rank(gpm))];
      for (const auto& t : el.h) {
        int v = t.var;
        if (mu[static_cast<size_t>(v)] == 0) continue;
        for (int u = 0; u < vars_; ++u) tgt[static_cast<size_t>(u)] = mu[static_cast<size_t>(u)] + t.delta[static_cast<size_t>(u)];
        long rk = target_rank(tgt.data());
        limb muv = small_mont_[static_cast<size_t>(mu[static_cast<size_t>(v)])];
        limb cc = mont_.mul(muv, t.c);
        for (int col = 0; col < s.ncols; ++col) {
          auto& slot = s.next[static_cast<size_t>(col)][static_cast<size_t>(rk)];
          slot = mont_.add(slot, mont_.mul(af[static_cast<size_t>(col)], cc));
        }
      }
      for (const auto& t : el.H) {
        for (int u = 0; u < vars_; ++u) tgt[static_cast<size_t>(u)] = mu[static_cast<size_t>(u)] + t.delta[static_cast<size_t>(u)];
        long rk = target_rank(tgt.data());
        for (int col = 0; col < s.ncols; ++col) {
          auto& slot = s.next[static_cast<size_t>(col)][static_cast<size_t>(rk)];
          slot = mont_.add(slot, mont_.mul(af[static_cast<size_t>(col)], t.c));
        }
      }
    };

    // Enumerate degree-D monomials in descending grevlex.
    long idx = 0;
    int e[8] = {0};
    if (vars_ == 3) {
      for (int c = 0; c <= D; ++c)
        for (int b = 0; b + c <= D; ++b) {
          e[0] = D - b - c;
          e[1] = b;
          e[2] = c;
          process(e, idx++);
        }
    } else if (vars_ == 4) {
      for (int dd = 0; dd <= D; ++dd)
        for (int c = 0; c + dd <= D; ++c)
          for (int b = 0; b + c + dd <= D; ++b) {
            e[0] = D - b - c - dd;
            e[1] = b;
            e[2] = c;
            e[3] = dd;
            process(e, idx++);
          }
    } else {
      auto ms = monomials_of_degree(vars_, D);
      for (const auto& m : ms) {
        for (int v = 0; v < vars_; ++v) e[v] = m.e[v];
        process(e, idx++);
      }
    }

    if (make_next) {
      // Divide the whole next level by (m - 1) = u * p^v.
      long mm = s.m - 1;
      int v = 0;
      while (mm % p_long_ == 0) {
        mm /= p_long_;
        ++v;
      }
      limb u = mont_.to_mont(static_cast<limb>(mm));
      s.pending = mont_.inv(u);
      s.pending_inv = u;
      for (int col = 0; col < s.ncols; ++col) {
        s.scale[static_cast<size_t>(col)] += v;
        renormalize(s, col);
        if (s.scale[static_cast<size_t>(col)] + s.loss[static_cast<size_t>(col)] >= W_)
          throw PrecisionExhausted("reduction: denominator/loss budget exhausted at pole " +
                                   std::to_string(s.m));
      }
      std::swap(s.cur, s.next);
      s.dim = dim_next;
    }
    --s.m;
  }

  ReductionEngine::Result finish(ReductionEngine::Sweep& sb) const override {
    auto& s = static_cast<SweepT&>(sb);
    if (s.m != 0) throw BadInput("finish: sweep not complete");
    ReductionEngine::Result r;
    r.scale.assign(static_cast<size_t>(s.ncols), 0);
    r.loss.assign(static_cast<size_t>(s.ncols), 0);
    long bs = 0;
    for (long b : block_sizes_) bs += b;
    r.coords.assign(static_cast<size_t>(s.ncols), std::vector<Int>(static_cast<size_t>(bs)));
    for (int col = 0; col < s.ncols; ++col) {
      // Align all coordinates to the column's max emission scale S.  A value
      // emitted at (scale s_i, loss l_i) and multiplied up by p^{S - s_i} is
      // trusted mod p^{W - l_i + S - s_i}, so the column-wide loss is
      // max_i (l_i + s_i) - S (digits consumed at emission, relative to S).
      int S = 0, cons = 0;
      for (long i = 0; i < bs; ++i) {
        S = std::max(S, s.coords_scale[static_cast<size_t>(col)][static_cast<size_t>(i)]);
        cons = std::max(cons, s.coords_scale[static_cast<size_t>(col)][static_cast<size_t>(i)] +
                                  s.coords_loss[static_cast<size_t>(col)][static_cast<size_t>(i)]);
      }
      r.scale[static_cast<size_t>(col)] = S;
      for (long i = 0; i < bs; ++i) {
        limb raw = mont_.from_mont(s.coords_raw[static_cast<size_t>(col)][static_cast<size_t>(i)]);
        Int v = MT::to_int(raw);
        int up = S - s.coords_scale[static_cast<size_t>(col)][static_cast<size_t>(i)];
        if (up) v = mod_pos(v * pow_int(p_, static_cast<unsigned long>(up)), modulus_);
        r.coords[static_cast<size_t>(col)][static_cast<size_t>(i)] = v;
      }
      r.loss[static_cast<size_t>(col)] = std::max(0, cons - S);
    }
    return r;
  }

 private:
  Element build_element(const RawElem& re, bool with_h, const std::vector<long>* gidx) const {
    Element el;
    for (const auto& [rk, c] : re.tail) {
      long gi = (*gidx)[static_cast<size_t>(rk)];
      if (gi < 0) throw std::logic_error("reduction: tail on a nonstandard column");
      el.tail.push_back(TTerm{gi, mont_.to_mont(MT::from_int(mod_pos(-c, modulus_)))});
    }
    GradedPoly Hsum;
    for (int v = 0; v < vars_; ++v) {
      GradedPoly hv;
      hv.vars = vars_;
      for (const auto& [m, c] : re.h[static_cast<size_t>(v)])
        if (mod_pos(c, modulus_) != 0) hv.add_term(m, mod_pos(c, modulus_));
      if (hv.is_zero()) continue;
      GradedPoly dv = gp_derivative(hv, v);
      Hsum = Hsum.is_zero() ? dv : (dv.is_zero() ? Hsum : gp_add(Hsum, dv));
      if (with_h)
        for (const auto& [m, c] : hv.coeffs) {
          HTerm t;
          t.var = v;
          t.delta.assign(m.e.begin(), m.e.end());
          t.delta[static_cast<size_t>(v)] -= 1;
          t.c = mont_.to_mont(MT::from_int(mod_pos(c, modulus_)));
          el.h.push_back(std::move(t));
        }
    }
    for (const auto& [m, c] : Hsum.coeffs) {
      Int cc = mod_pos(c, modulus_);
      if (cc == 0) continue;
      ATerm t;
      t.delta = m.e;
      t.c = mont_.to_mont(MT::from_int(cc));
      el.H.push_back(std::move(t));
    }
    return el;
  }

  void renormalize(SweepT& s, int col) const {
    int cap = s.scale[static_cast<size_t>(col)];
    if (cap <= 0) return;
    auto& vec = s.next[static_cast<size_t>(col)];
    limb pl = static_cast<limb>(p_long_);
    int k = cap;
    for (const limb& x : vec) {
      if (x == 0) continue;
      limb y = x;
      int v = 0;
      while (v < k && y % pl == 0) {
        y /= pl;
        ++v;
      }
      k = std::min(k, v);
      if (k == 0) return;
    }
    if (k <= 0) return;
    limb pk = 1;
    for (int i = 0; i < k; ++i) pk *= pl;
    for (limb& x : vec) x /= pk;
    s.scale[static_cast<size_t>(col)] -= k;
    s.loss[static_cast<size_t>(col)] += k;
  }

  int vars_, n_, d_, socle_;
  Int p_;
  long p_long_ = 0;
  int W_;
  Int modulus_;
  MT mont_;
  GriffithsBasis basis_;
  std::vector<long> block_sizes_;
  std::map<int, Block> blocks_by_degree_;
  std::vector<Element> socle_elems_;
  std::vector<limb> p_mont_pows_;
  mutable std::vector<limb> small_mont_;
};

}  // namespace

ReductionEngine::ReductionEngine(const HypersurfaceInput& input, const GriffithsBasis& basis,
                                 const Int& p, int W)
    : W_(W), modulus_(pow_int(p, static_cast<unsigned long>(W))) {
  if (W < 1) throw BadInput("ReductionEngine: W must be >= 1");
  if (modulus_ < pow_int(Int(2), 62))
    impl_ = std::make_unique<EngineT<Mont64>>(input, basis, p, W);
  else if (modulus_ < pow_int(Int(2), 126))
    impl_ = std::make_unique<EngineT<Mont128>>(input, basis, p, W);
  else
    throw ResourceLimit("ReductionEngine: p^W exceeds 126 bits");
}

ReductionEngine::~ReductionEngine() = default;

std::unique_ptr<ReductionEngine::Sweep> ReductionEngine::start(int m_top, int ncols) const {
  return impl_->start(m_top, ncols);
}
int ReductionEngine::pole(const Sweep& s) const { return impl_->pole(s); }
void ReductionEngine::inject(Sweep& s, int col, const Monomial& mono, const Int& c) const {
  impl_->inject(s, col, mono, c);
}
void ReductionEngine::step(Sweep& s) const { impl_->step(s); }
ReductionEngine::Result ReductionEngine::finish(Sweep& s) const { return impl_->finish(s); }

ReductionEngine::Result ReductionEngine::reduce_single(const GradedPoly& numerator,
                                                       int m) const {
  auto s = start(m, 1);
  for (const auto& [mono, c] : numerator.coeffs) inject(*s, 0, mono, c);
  while (pole(*s) > 0) step(*s);
  return finish(*s);
}

}  // namespace cobs
