// Exact arithmetic over Z/p^N with precision bookkeeping: matrices, Howell
// form, kernels, certified rank lower bounds and characteristic polynomials.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cobs/arith.hpp"

namespace cobs {

struct PadicContext {
  Int p;   // prime
  int N;   // absolute precision (number of p-adic digits), N >= 1

  PadicContext(Int prime, int digits) : p(std::move(prime)), N(digits) {
    if (N < 1) throw BadInput("PadicContext: N must be >= 1");
    if (!is_prime(p)) throw BadInput("PadicContext: p must be prime");
    modulus = pow_int(p, static_cast<unsigned long>(N));
  }

  Int modulus;  // p^N, cached

  bool operator==(const PadicContext& o) const { return p == o.p && N == o.N; }
};

// Dense matrix over Z/p^N.  `loss` counts digits consumed by divisions and
// eliminations: entries are trusted mod p^(N - loss).
class PadicMatrix {
 public:
  PadicMatrix(PadicContext ctx, int rows, int cols)
      : ctx_(std::move(ctx)), rows_(rows), cols_(cols), loss_(0),
        e_(static_cast<size_t>(rows) * cols, Int(0)) {}

  const PadicContext& ctx() const { return ctx_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int loss() const { return loss_; }
  int trusted_digits() const { return ctx_.N - loss_; }

  Int& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const Int& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

  void set(int i, int j, const Int& v) { at(i, j) = mod_pos(v, ctx_.modulus); }
  void add_loss(int d);

  static PadicMatrix identity(const PadicContext& ctx, int n);
  static PadicMatrix from_rows(const PadicContext& ctx,
                               const std::vector<std::vector<Int>>& rows);

  PadicMatrix multiply(const PadicMatrix& other) const;
  PadicMatrix add_scaled_identity(const Int& c) const;  // this + c*I
  PadicMatrix scaled(const Int& c) const;

  // Exact division of all entries by p^k.  Entries whose trusted digits are
  // not divisible consume extra loss (the division is still performed on the
  // trusted part).  Absolute precision drops by k.
  PadicMatrix divided_by_p_pow(int k) const;

  // Horizontal / vertical concatenation (contexts and losses are merged; the
  // result's loss is the max of the two).
  static PadicMatrix hstack(const PadicMatrix& a, const PadicMatrix& b);
  static PadicMatrix vstack(const PadicMatrix& a, const PadicMatrix& b);

  PadicMatrix submatrix_cols(const std::vector<int>& cols) const;

  bool operator==(const PadicMatrix& o) const {
    return ctx_ == o.ctx_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }

 private:
  PadicContext ctx_;
  int rows_, cols_;
  int loss_;
  std::vector<Int> e_;
};

struct HowellForm {
  PadicMatrix H;                              // row-reduced form
  std::vector<std::pair<int, int>> pivots;    // (row, col) per pivot
  std::vector<int> pivot_valuations;          // valuation of each pivot
};

// Row-reduced form over Z/p^N.  Pivot choice: minimal valuation, ties broken
// by lowest column index then lowest row index; deterministic.
HowellForm howell_form(const PadicMatrix& M);

// Columns generate the free part of {v : Mv = 0 mod p^(N - loss_out)}.
// Columns are unit-normalized.  The output's loss reports the digits consumed.
PadicMatrix kernel_mod_pN(const PadicMatrix& M);

// Certified lower bound on the rank of any exact matrix congruent to M at the
// trusted precision (largest k with v_1 + ... + v_k < N - loss for the sorted
// Howell pivot valuations; the product of the first k pivots is the valuation
// of a k x k minor, which row operations preserve exactly).
int rank_lower_bound(const PadicMatrix& M);

// det(tI - M) by the division-free Berkowitz algorithm.  Coefficients are
// returned lowest-degree first, reduced mod p^N; trusted mod p^(N - loss).
std::vector<Int> charpoly_mod_pN(const PadicMatrix& M);

}  // namespace cobs
