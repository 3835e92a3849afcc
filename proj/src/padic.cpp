#include "cobs/padic.hpp"

#include <algorithm>

namespace cobs {

void PadicMatrix::add_loss(int d) {
  loss_ += d;
  if (loss_ > ctx_.N)
    throw PrecisionExhausted("PadicMatrix: loss " + std::to_string(loss_) +
                             " exceeds precision " + std::to_string(ctx_.N));
}

PadicMatrix PadicMatrix::identity(const PadicContext& ctx, int n) {
  PadicMatrix M(ctx, n, n);
  for (int i = 0; i < n; ++i) M.at(i, i) = 1;
  return M;
}

PadicMatrix PadicMatrix::from_rows(const PadicContext& ctx,
                                   const std::vector<std::vector<Int>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  PadicMatrix M(ctx, r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw BadInput("from_rows: ragged rows");
    for (int j = 0; j < c; ++j) M.set(i, j, rows[i][j]);
  }
  return M;
}

PadicMatrix PadicMatrix::multiply(const PadicMatrix& other) const {
  if (cols_ != other.rows_ || !(ctx_ == other.ctx_))
    throw BadInput("multiply: shape or context mismatch");
  PadicMatrix R(ctx_, rows_, other.cols_);
  R.loss_ = std::max(loss_, other.loss_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Int& a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < other.cols_; ++j) {
        if (other.at(k, j) == 0) continue;
        R.at(i, j) = mod_pos(R.at(i, j) + a * other.at(k, j), ctx_.modulus);
      }
    }
  return R;
}

PadicMatrix PadicMatrix::add_scaled_identity(const Int& c) const {
  if (rows_ != cols_) throw BadInput("add_scaled_identity: not square");
  PadicMatrix R = *this;
  for (int i = 0; i < rows_; ++i) R.at(i, i) = mod_pos(R.at(i, i) + c, ctx_.modulus);
  return R;
}

PadicMatrix PadicMatrix::scaled(const Int& c) const {
  PadicMatrix R = *this;
  for (auto& x : R.e_) x = mod_pos(x * c, ctx_.modulus);
  return R;
}

PadicMatrix PadicMatrix::divided_by_p_pow(int k) const {
  if (k == 0) return *this;
  if (ctx_.N - k < 1) throw PrecisionExhausted("divided_by_p_pow: no digits left");
  PadicContext nctx(ctx_.p, ctx_.N - k);
  PadicMatrix R(nctx, rows_, cols_);
  Int pk = pow_int(ctx_.p, static_cast<unsigned long>(k));
  int extra = 0;
  for (size_t t = 0; t < e_.size(); ++t) {
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), e_[t].get_mpz_t(), pk.get_mpz_t());
    if (r != 0) {
      // Not exactly divisible at stored precision: trusted digits shrink.
      int v = valuation(e_[t], ctx_.p, k);
      extra = std::max(extra, k - v);
    }
    R.e_[t] = mod_pos(q, nctx.modulus);
  }
  R.loss_ = loss_;
  if (extra) R.add_loss(extra);
  return R;
}

PadicMatrix PadicMatrix::hstack(const PadicMatrix& a, const PadicMatrix& b) {
  if (a.rows_ != b.rows_ || !(a.ctx_ == b.ctx_)) throw BadInput("hstack: mismatch");
  PadicMatrix R(a.ctx_, a.rows_, a.cols_ + b.cols_);
  R.loss_ = std::max(a.loss_, b.loss_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int j = 0; j < a.cols_; ++j) R.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols_; ++j) R.at(i, a.cols_ + j) = b.at(i, j);
  }
  return R;
}

PadicMatrix PadicMatrix::vstack(const PadicMatrix& a, const PadicMatrix& b) {
  if (a.cols_ != b.cols_ || !(a.ctx_ == b.ctx_)) throw BadInput("vstack: mismatch");
  PadicMatrix R(a.ctx_, a.rows_ + b.rows_, a.cols_);
  R.loss_ = std::max(a.loss_, b.loss_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) R.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) R.at(a.rows_ + i, j) = b.at(i, j);
  return R;
}

PadicMatrix PadicMatrix::submatrix_cols(const std::vector<int>& cols) const {
  PadicMatrix R(ctx_, rows_, static_cast<int>(cols.size()));
  R.loss_ = loss_;
  for (int i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols.size(); ++j) R.at(i, static_cast<int>(j)) = at(i, cols[j]);
  return R;
}

namespace {

// Shared elimination: reduces M in place to row echelon form with
// minimal-valuation pivoting.  Returns pivots/valuations; records the maximal
// pivot valuation actually used (the loss increment).
struct Elim {
  std::vector<std::pair<int, int>> pivots;
  std::vector<int> pivot_vals;
  int max_pivot_val = 0;
};

Elim eliminate(PadicMatrix& M, bool reduce_above) {
  const PadicContext& ctx = M.ctx();
  const int N = ctx.N;
  Elim out;
  int r0 = 0;
  int trusted = N - M.loss();
  std::vector<bool> col_done(M.cols(), false);
  while (r0 < M.rows()) {
    // Find minimal-valuation entry in rows >= r0 (ties: lowest column, then
    // lowest row).
    int best_v = N, best_i = -1, best_j = -1;
    for (int j = 0; j < M.cols(); ++j) {
      if (col_done[j]) continue;
      for (int i = r0; i < M.rows(); ++i) {
        if (M.at(i, j) == 0) continue;
        int v = valuation(M.at(i, j), ctx.p, N);
        if (v < best_v) {
          best_v = v;
          best_i = i;
          best_j = j;
        }
      }
    }
    if (best_i < 0 || best_v >= trusted) break;  // residual block is zero at trusted precision
    // Swap pivot row into place and normalize its pivot to p^v.
    if (best_i != r0)
      for (int j = 0; j < M.cols(); ++j) std::swap(M.at(r0, j), M.at(best_i, j));
    Int pivot = M.at(r0, best_j);
    Int pv = pow_int(ctx.p, static_cast<unsigned long>(best_v));
    Int unit = pivot / pv;
    Int uinv = invmod(unit, ctx.modulus);
    for (int j = 0; j < M.cols(); ++j)
      M.at(r0, j) = mod_pos(M.at(r0, j) * uinv, ctx.modulus);
    // Eliminate in the pivot column.  Entries below (and above, for the
    // reduced form) have valuation >= v by pivot minimality within the
    // untouched block; above-pivot entries may not, in which case we clear
    // only the p^v-divisible part (standard Howell behavior).
    int lo = reduce_above ? 0 : r0 + 1;
    for (int i = lo; i < M.rows(); ++i) {
      if (i == r0) continue;
      const Int& b = M.at(i, best_j);
      if (b == 0) continue;
      Int q = b / pv;  // floor; exact when p^v | b
      if (q == 0) continue;
      for (int j = 0; j < M.cols(); ++j)
        M.at(i, j) = mod_pos(M.at(i, j) - q * M.at(r0, j), ctx.modulus);
    }
    out.pivots.emplace_back(r0, best_j);
    out.pivot_vals.push_back(best_v);
    out.max_pivot_val = std::max(out.max_pivot_val, best_v);
    col_done[best_j] = true;
    ++r0;
  }
  // Order pivot bookkeeping by column (rows were processed in discovery
  // order, which need not be by column).
  std::vector<size_t> idx(out.pivots.size());
  for (size_t k = 0; k < idx.size(); ++k) idx[k] = k;
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    return out.pivots[a].second < out.pivots[b].second;
  });
  // Re-sort rows of M so pivots appear in increasing column order.
  PadicMatrix sorted = M;
  Elim res;
  res.max_pivot_val = out.max_pivot_val;
  for (size_t k = 0; k < idx.size(); ++k) {
    int src = out.pivots[idx[k]].first;
    for (int j = 0; j < M.cols(); ++j) sorted.at(static_cast<int>(k), j) = M.at(src, j);
    res.pivots.emplace_back(static_cast<int>(k), out.pivots[idx[k]].second);
    res.pivot_vals.push_back(out.pivot_vals[idx[k]]);
  }
  // Zero rows last.
  int nz = static_cast<int>(idx.size());
  std::vector<bool> used(M.rows(), false);
  for (size_t k = 0; k < idx.size(); ++k) used[out.pivots[idx[k]].first] = true;
  int dst = nz;
  for (int i = 0; i < M.rows(); ++i)
    if (!used[i]) {
      for (int j = 0; j < M.cols(); ++j) sorted.at(dst, j) = M.at(i, j);
      ++dst;
    }
  M = sorted;
  return res;
}

}  // namespace

HowellForm howell_form(const PadicMatrix& M) {
  if (M.loss() >= M.ctx().N) throw PrecisionExhausted("howell_form: no trusted digits");
  PadicMatrix H = M;
  Elim e = eliminate(H, /*reduce_above=*/true);
  if (e.pivots.empty()) {
    // Check whether the matrix was nonzero with only untrusted content.
    bool nonzero = false;
    for (int i = 0; i < M.rows() && !nonzero; ++i)
      for (int j = 0; j < M.cols(); ++j)
        if (M.at(i, j) != 0) {
          nonzero = true;
          break;
        }
    if (nonzero) {
      // Every candidate pivot has valuation >= N - loss in a nonzero block.
      throw PrecisionExhausted("howell_form: nonzero block below trusted precision");
    }
  }
  H.add_loss(e.max_pivot_val);
  return HowellForm{std::move(H), std::move(e.pivots), std::move(e.pivot_vals)};
}

PadicMatrix kernel_mod_pN(const PadicMatrix& M) {
  const PadicContext& ctx = M.ctx();
  // Column elimination: track column operations on an identity.
  PadicMatrix A = M;
  PadicMatrix T = PadicMatrix::identity(ctx, M.cols());
  const int N = ctx.N;
  int trusted = N - M.loss();
  std::vector<bool> col_used(M.cols(), false);
  std::vector<bool> row_used(M.rows(), false);
  int max_v = 0;
  for (;;) {
    int best_v = N, best_i = -1, best_j = -1;
    for (int i = 0; i < M.rows(); ++i) {
      if (row_used[i]) continue;
      for (int j = 0; j < M.cols(); ++j) {
        if (col_used[j] || A.at(i, j) == 0) continue;
        int v = valuation(A.at(i, j), ctx.p, N);
        if (v < best_v) {
          best_v = v;
          best_i = i;
          best_j = j;
        }
      }
    }
    if (best_i < 0 || best_v >= trusted - max_v) break;
    max_v = std::max(max_v, best_v);
    Int pv = pow_int(ctx.p, static_cast<unsigned long>(best_v));
    Int unit = A.at(best_i, best_j) / pv;
    Int uinv = invmod(unit, ctx.modulus);
    for (int i = 0; i < M.rows(); ++i) A.at(i, best_j) = mod_pos(A.at(i, best_j) * uinv, ctx.modulus);
    for (int i = 0; i < M.cols(); ++i) T.at(i, best_j) = mod_pos(T.at(i, best_j) * uinv, ctx.modulus);
    for (int j = 0; j < M.cols(); ++j) {
      if (j == best_j || col_used[j]) continue;
      const Int& b = A.at(best_i, j);
      if (b == 0) continue;
      Int q = b / pv;
      if (q == 0) continue;
      for (int i = 0; i < M.rows(); ++i)
        A.at(i, j) = mod_pos(A.at(i, j) - q * A.at(i, best_j), ctx.modulus);
      for (int i = 0; i < M.cols(); ++i)
        T.at(i, j) = mod_pos(T.at(i, j) - q * T.at(i, best_j), ctx.modulus);
    }
    col_used[best_j] = true;
    row_used[best_i] = true;
  }
  std::vector<int> free_cols;
  for (int j = 0; j < M.cols(); ++j)
    if (!col_used[j]) free_cols.push_back(j);
  PadicMatrix K = T.submatrix_cols(free_cols);
  K.add_loss(max_v);
  // Unit-normalize columns: divide out any common p power (consuming digits
  // does not occur here; a common factor only arises from redundant scaling).
  int out_trusted = ctx.N - K.loss();
  for (int j = 0; j < K.cols(); ++j) {
    int minv = out_trusted;
    for (int i = 0; i < K.rows(); ++i) minv = std::min(minv, valuation(K.at(i, j), ctx.p, out_trusted));
    if (minv > 0 && minv < out_trusted) {
      Int pm = pow_int(ctx.p, static_cast<unsigned long>(minv));
      for (int i = 0; i < K.rows(); ++i) K.at(i, j) = K.at(i, j) / pm;
    }
  }
  return K;
}

int rank_lower_bound(const PadicMatrix& M) {
  PadicMatrix H = M;
  Elim e = eliminate(H, /*reduce_above=*/false);
  std::vector<int> vals = e.pivot_vals;
  std::sort(vals.begin(), vals.end());
  int trusted = M.ctx().N - M.loss();
  int rank = 0;
  long sum = 0;
  for (int v : vals) {
    sum += v;
    if (sum < trusted)
      ++rank;
    else
      break;
  }
  return rank;
}

std::vector<Int> charpoly_mod_pN(const PadicMatrix& M) {
  if (M.rows() != M.cols()) throw BadInput("charpoly: not square");
  const int n = M.rows();
  const Int& mod = M.ctx().modulus;
  // Berkowitz: iteratively build the characteristic polynomial via Toeplitz
  // products; division-free.
  // poly holds coefficients of det(tI - M_r) for the leading r x r block,
  // highest degree first.
  std::vector<Int> poly{Int(1)};
  for (int r = 0; r < n; ++r) {
    // Build the column vector c_k = R * M_r^k * C pieces:
    //   S_0 = -M[r][r], S_k = -(row r of M, first r entries) * A^{k-1} * (col r).
    // Toeplitz T is (r+2) x (r+1) lower triangular with first column
    // (1, S_0, S_1, ..., S_r).
    std::vector<Int> S(r + 1);
    S[0] = mod_pos(-M.at(r, r), mod);
    if (r > 0) {
      std::vector<Int> v(r);
      for (int i = 0; i < r; ++i) v[i] = M.at(i, r);  // A^0 * C
      for (int k = 1; k <= r; ++k) {
        Int dot = 0;
        for (int i = 0; i < r; ++i) dot += M.at(r, i) * v[i];
        S[k] = mod_pos(-dot, mod);
        if (k < r) {
          std::vector<Int> w(r, Int(0));
          for (int i = 0; i < r; ++i) {
            if (v[i] == 0) continue;
            for (int j = 0; j < r; ++j) w[j] = mod_pos(w[j] + M.at(j, i) * v[i], mod);
          }
          v = std::move(w);
        }
      }
    }
    std::vector<Int> next(r + 2, Int(0));
    for (int i = 0; i < static_cast<int>(poly.size()); ++i) {
      next[i] = mod_pos(next[i] + poly[i], mod);
      for (int k = 0; k <= r; ++k) {
        int d = i + k + 1;
        if (d < static_cast<int>(next.size()))
          next[d] = mod_pos(next[d] + S[k] * poly[i], mod);
      }
    }
    poly = std::move(next);
  }
  // Return lowest-degree first.
  std::vector<Int> out(poly.rbegin(), poly.rend());
  return out;
}

}  // namespace cobs
