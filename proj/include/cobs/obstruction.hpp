// Per-cyclotomic-factor Tate spaces, the obstruction projection and the
// stacked maps pi_i, certified rank lower bounds, and the accumulated upper
// bound on the middle Picard number (resp. endomorphism rank).
#pragma once

#include <json.hpp>

#include "cobs/griffiths.hpp"
#include "cobs/padic.hpp"
#include "cobs/zeta.hpp"

namespace cobs {

// Coordinates of the middle cohomology outside F^r (pole order >= n+2-r) in
// the Griffiths basis ordering; the codomain of the obstruction projection.
// The polarization slot is never included.
std::vector<int> obstruction_rows(const GriffithsBasis& basis);

// 0/1 projection onto the given coordinates of a dim-dimensional space.
PadicMatrix projection_matrix(const PadicContext& ctx, int dim,
                              const std::vector<int>& rows);

// chi cleared of denominators: the primitive integer polynomial proportional
// to det(q^r t I - F), computed from the exact lift P(t) = det(1 - t F) as
// the primitive part of sum_j P_{m-j} q^{rj} t^j.
IntPoly scaled_charpoly(const IntPoly& P, const Int& q, int r);

struct TateFactor {
  long index = 0;  // cyclotomic index i
  IntPoly phi;
  int gamma = 0;
  int dim_Ti = 0;     // gamma * deg phi (declared, not observed)
  PadicMatrix basis;  // columns: approximate basis of T_{i,N}
  bool observed_mismatch = false;  // kernel dimension != dim_Ti
};

// Approximate basis of T_{i,N} = ker Phi_i(q^{-r} F) at precision N: the
// kernel of the cleared integer matrix sum_k phi_k q^{r(deg-k)} F^k mod p^N.
TateFactor tate_basis(const CycFactor& factor, int gamma_declared,
                      const std::vector<std::vector<Int>>& F, const Int& q,
                      int r, const PadicContext& ctx);

// Vertical stack of proj * (q^{-r} F)^j * basis for j = 0 .. deg Phi_i - 1,
// with the j-th block cleared by q^{rj} (i.e. proj * F^j * basis).
PadicMatrix pi_i_matrix(const TateFactor& factor,
                        const std::vector<std::vector<Int>>& F,
                        const PadicMatrix& proj);

struct FactorRecord {
  std::string factor;  // printed polynomial, e.g. "t - 1"
  int multiplicity = 0;
  int dim_Ti = 0;
  int dim_Li = 0;
  bool observed_mismatch = false;
  // True when every numerically visible pivot of pi_i was certified, i.e. the
  // rank lower bound cannot improve at this precision.
  bool rank_saturated = true;
};

struct ObstructionReport {
  int bound = 0;
  Int p;
  int precision = 0;
  int rank_T = 0;  // sum of gamma_i * deg Phi_i over cyclotomic factors
  std::vector<FactorRecord> records;
  std::string mode;
  bool galois = true;
  // All kernels had the declared dimension and all ranks saturated; when
  // false, the bound is still valid but more precision could sharpen it.
  bool saturated = true;

  nlohmann::json to_json() const;
};

struct ObstructionOptions {
  bool galois = true;  // per-factor bound; false = one pass on all of T~
  // Surface modes carry the polarization as an explicit basis slot; it is an
  // unconditionally liftable (t - 1) class reported as its own record.
  bool surface_polarization = false;
  std::string mode = "hypersurface";
};

ObstructionReport accumulate_bound(const CyclotomicSplit& split,
                                   const std::vector<std::vector<Int>>& F,
                                   const Int& q, int r, int N,
                                   const PadicMatrix& proj,
                                   const ObstructionOptions& opt = {});

}  // namespace cobs
