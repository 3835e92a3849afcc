// Graded multivariate polynomial pieces: grevlex order, homogeneous
// components, Macaulay multiplication matrices, and the input-text parser.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "cobs/intpoly.hpp"

namespace cobs {

struct Monomial {
  std::vector<int> e;  // exponents of x0..x_{k-1}

  int degree() const {
    int d = 0;
    for (int x : e) d += x;
    return d;
  }
  int vars() const { return static_cast<int>(e.size()); }
  bool operator==(const Monomial& o) const { return e == o.e; }
  bool operator<(const Monomial& o) const { return e < o.e; }  // storage order only
};

// Total order with x0 < x1 < ...: first by degree; within a degree, a > b iff
// the last nonzero entry of e(a) - e(b) is negative.  Returns -1, 0, +1 for
// a < b, a == b, a > b.
int grevlex_compare(const Monomial& a, const Monomial& b);

// All monomials of degree t in `vars` variables, in *descending* grevlex
// order (the order used for matrix rows/columns and reduction sweeps).
std::vector<Monomial> monomials_of_degree(int vars, int t);

// Index of m in monomials_of_degree(m.vars(), m.degree()); O(vars) closed form.
long grevlex_rank(const Monomial& m);

// Number of monomials of degree t in `vars` variables.
long monomial_count(int vars, int t);

// Homogeneous polynomial with integer coefficients (reduce mod p^N at the
// point of use).  Zero coefficients are never stored.
struct GradedPoly {
  int vars = 0;
  int degree = 0;                  // common degree of all monomials; 0 for the zero poly
  std::map<Monomial, Int> coeffs;  // keyed by exponent vector

  bool is_zero() const { return coeffs.empty(); }
  void add_term(const Monomial& m, const Int& c);
};

GradedPoly gp_mul(const GradedPoly& a, const GradedPoly& b);
GradedPoly gp_scale(const GradedPoly& a, const Int& c);
GradedPoly gp_add(const GradedPoly& a, const GradedPoly& b);
GradedPoly gp_derivative(const GradedPoly& a, int var);
GradedPoly gp_monomial_mul(const GradedPoly& a, const Monomial& m);

// Matrix of the multiplication map  (g_1..g_k) in (R_{t-e})^k  |->  sum g_i*gens_i
// into R_t, where e = common degree of the generators.  Rows are indexed by
// monomials_of_degree(vars, t); columns by generator-major blocks, each block
// indexed by monomials_of_degree(vars, t - e).  Entries are exact integers.
std::vector<std::vector<Int>> macaulay_matrix(const std::vector<GradedPoly>& gens, int t);

// --- Input text format -------------------------------------------------
//
//   poly      := term (('+' | '-') term)*
//   term      := [integer] factor*          (optional '*' between factors)
//   factor    := var ['^' integer]
//   var       := 'x' digits | one of x, y, z, w  (aliases for x0, x1, x2, x3)
//
// parse_homogeneous rejects non-homogeneous input; `vars` fixes the ambient
// variable count (exponent vectors are padded to it).
GradedPoly parse_homogeneous(const std::string& text, int vars);

// Univariate parser for the hyperelliptic mode (variable x or x0); returns
// dense coefficients, lowest degree first.
IntPoly parse_univariate(const std::string& text);

std::string gp_to_string(const GradedPoly& a);

}  // namespace cobs
