// Weil lifting: from the reciprocal characteristic polynomial of Frobenius
// known mod p^N to the exact integer polynomial, plus the cyclotomic split
// that feeds the obstruction stage.
#pragma once

#include "cobs/intpoly.hpp"

namespace cobs {

// Digits needed to lift the charpoly of Frobenius acting on m classes of
// weight 2r: the half of the coefficients that must be read off directly is
// bounded by binom(m, ceil(m/2)) * q^{r ceil(m/2)}.
int min_precision(int m, const Int& q, int r, int N0);

// Curve-mode analogue for H^1 of a genus-g curve (weight 1): coefficient
// bound binom(2g, g) * q^{g/2}, rounded up.
int min_precision_curve(int g, const Int& q, int N0);

// Exact integer lift of P(t) = det(1 - t*Frob) from residues mod `modulus`
// (= p^N).  Coefficients c_i, i <= m/2, are lifted to the symmetric
// interval; the rest follow from the functional equation
//   c_{m-i} = sign * q^{w(m/2 - i)} * c_i,  w = 1 (curve, r = 0) or 2r.
// The result must reduce back to the input mod `trusted` (= p^{N - loss})
// and pass a numeric root-norm sanity check (all complex roots of absolute
// value q^{-w/2} within 1e-6, checked on the squarefree part); otherwise
// InconsistentLift is thrown.
IntPoly weil_lift(const IntPoly& approx, int m, const Int& q, int r, int sign,
                  const Int& modulus, const Int& trusted);

struct CycFactor {
  long index = 0;  // i: which cyclotomic polynomial
  IntPoly phi;     // Phi_i
  int gamma = 0;   // multiplicity in chi
};

struct CyclotomicSplit {
  std::vector<CycFactor> factors;  // ascending index, gamma >= 1 only
  IntPoly h;                       // non-cyclotomic remainder
  long u = 1;                      // lcm of the factor indices
  int v = 0;                       // max deg Phi_i among the factors
};

// Splits an integer polynomial into its cyclotomic part and remainder by
// trial division with every Phi_i of degree <= deg chi, ascending i.
CyclotomicSplit cyclotomic_split(const IntPoly& chi);

}  // namespace cobs
