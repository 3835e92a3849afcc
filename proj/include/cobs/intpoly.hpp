// Dense univariate polynomials over Z (GMP coefficients), lowest degree
// first.  Supports the exact arithmetic needed for Weil lifting, cyclotomic
// splitting and the induced-structure characteristic polynomials.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cobs/arith.hpp"

namespace cobs {

using IntPoly = std::vector<Int>;  // coefficients, index = degree

void ip_trim(IntPoly& a);
int ip_deg(const IntPoly& a);  // -1 for the zero polynomial
IntPoly ip_add(const IntPoly& a, const IntPoly& b);
IntPoly ip_sub(const IntPoly& a, const IntPoly& b);
IntPoly ip_mul(const IntPoly& a, const IntPoly& b);
IntPoly ip_scale(const IntPoly& a, const Int& c);
Int ip_eval(const IntPoly& a, const Int& x);
IntPoly ip_derivative(const IntPoly& a);

// Division by a monic divisor; returns {quotient, remainder}.
std::pair<IntPoly, IntPoly> ip_divmod_monic(const IntPoly& a, const IntPoly& monic);

// Exact division test: quotient if divisor (monic) divides a exactly.
std::optional<IntPoly> ip_divide_exact(const IntPoly& a, const IntPoly& monic);

// n-th cyclotomic polynomial.
IntPoly cyclotomic(int n);

// Companion matrix (n x n, row-major) of a monic polynomial.
std::vector<std::vector<Int>> companion(const IntPoly& monic);

// Exact char poly det(tI - M) of an integer matrix, via Berkowitz.
IntPoly charpoly_exact(const std::vector<std::vector<Int>>& M);

// Exact rank of an integer matrix (fraction-free Bareiss elimination).
int rank_exact(std::vector<std::vector<Int>> M);

// Resultant of two integer polynomials (Sylvester determinant via Bareiss).
Int resultant(const IntPoly& a, const IntPoly& b);

// Discriminant of a univariate integer polynomial.
Int discriminant(const IntPoly& f);

// Smith normal form valuations: p-adic valuations of the elementary divisors
// of an integer matrix (exact, via gcd elimination).  Used by test oracles.
std::vector<Int> elementary_divisors(std::vector<std::vector<Int>> M);

// Exact gcd over Z (primitive subresultant PRS), primitive with positive lead.
IntPoly ip_gcd(IntPoly a, IntPoly b);

// Squarefree part f / gcd(f, f'), primitive with positive lead.
IntPoly ip_squarefree(const IntPoly& f);

// Pretty-printer matching the paper-style factor strings: "t - 1", "t^2 + 1".
std::string ip_to_string(const IntPoly& a, const std::string& var = "t");

}  // namespace cobs
