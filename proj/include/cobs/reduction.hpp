// Griffiths-Dwork pole-order reduction over Z/p^W: the downward sweep that
// rewrites numerator/f^m * vol in the Griffiths basis.  Supports fused
// multi-column sweeps (all Frobenius columns ride one pole ladder).
#pragma once

#include <memory>

#include "cobs/griffiths.hpp"

namespace cobs {

// Pivot-complement mask at degree t over F_p: entry k is true iff the k-th
// monomial (descending grevlex) is a lead monomial of the Jacobian ideal.
std::vector<bool> nonstandard_mask(const HypersurfaceInput& input, const Int& p, int t);

class ReductionEngine {
 public:
  // W = working p-adic digits.  Chooses 64- or 128-bit Montgomery arithmetic
  // by the size of p^W (p^W < 2^126 required).
  ReductionEngine(const HypersurfaceInput& input, const GriffithsBasis& basis,
                  const Int& p, int W);
  ~ReductionEngine();

  int working_digits() const { return W_; }
  const Int& modulus() const { return modulus_; }

  struct Sweep {
    virtual ~Sweep() = default;
  };
  struct Impl;  // backend, selected by limb width

  // Begin a fused sweep at pole order m_top with ncols independent columns.
  std::unique_ptr<Sweep> start(int m_top, int ncols) const;
  int pole(const Sweep&) const;

  // Add coeff * x^mono to column col at the sweep's current pole order m
  // (deg mono must be m*d - n - 2).  coeff is a plain residue mod p^W.
  void inject(Sweep& s, int col, const Monomial& mono, const Int& coeff) const;

  // Process the current pole order and move to m-1: emit basis coordinates
  // (at pole <= n+1), cancel nonstandard monomials via the Jacobian ideal,
  // divide by (m-1).  Throws PrecisionExhausted if the denominator budget or
  // trusted digits run out.
  void step(Sweep& s) const;

  struct Result {
    // coords[col][basis index], residues mod p^W; the true coordinate of
    // column col is coords / p^{scale[col]}, trusted mod p^{W - loss[col]}.
    std::vector<std::vector<Int>> coords;
    std::vector<int> scale;
    std::vector<int> loss;
  };
  Result finish(Sweep& s) const;  // valid after the pole reaches 0

  // Convenience wrapper: reduce a single numerator from pole order m.
  Result reduce_single(const GradedPoly& numerator, int m) const;

 private:
  std::unique_ptr<Impl> impl_;
  int W_;
  Int modulus_;
};

}  // namespace cobs
