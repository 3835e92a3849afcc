// Griffiths basis of primitive cohomology of a smooth hypersurface, good
// prime checks, and the pole-order (Griffiths-Dwork) reduction engine.
#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "cobs/polyring.hpp"

namespace cobs {

enum class InputMode { hypersurface, jacobian_plane_curve, jacobian_hyperelliptic };

std::string mode_name(InputMode m);

struct HypersurfaceInput {
  InputMode mode = InputMode::hypersurface;
  GradedPoly f;  // homogeneous model (hypersurface / plane-curve modes)
  IntPoly hf;    // y^2 = hf(x) (hyperelliptic mode); squarefree, odd degree
  int n = 0;     // dimension of X
  int d = 0;     // degree of the model

  // Weight parameter of the cycle class group being bounded: r = n/2 for the
  // middle cohomology of an even-dimensional hypersurface, r = 1 for the
  // endomorphism obstruction on H^1 x H^1 of a curve.
  int r() const { return mode == InputMode::hypersurface ? n / 2 : 1; }
  int genus() const;  // curve modes only

  static HypersurfaceInput hypersurface(const GradedPoly& f);
  static HypersurfaceInput plane_curve(const GradedPoly& f);
  static HypersurfaceInput hyperelliptic(const IntPoly& f);
};

struct GoodPrime {
  bool ok = false;
  std::string reason;  // BadCharacteristic | DividesDegree | SingularReduction
};

GoodPrime good_prime_check(const HypersurfaceInput& input, const Int& p, int char_bound);

struct GriffithsBasis {
  int vars = 0, n = 0, d = 0;
  // Basis monomials x^{beta_i}, ordered by increasing grevlex: ascending
  // degree blocks (lowest degree = deepest filtration step first), ascending
  // grevlex within each block.
  std::vector<Monomial> monomials;
  std::vector<int> pole_orders;      // l_i = (deg beta_i + n + 2) / d
  std::vector<int> block_degrees;    // the degrees N_j present, ascending
  std::vector<int> filtration_cuts;  // entry k = dim F^{n-k}; non-decreasing
  bool polarization_slot = false;    // h^r appended in even dimension

  int size() const { return static_cast<int>(monomials.size()); }
  // Total middle-cohomology dimension including the polarization slot.
  int full_dim() const { return size() + (polarization_slot ? 1 : 0); }
};

GriffithsBasis griffiths_basis(const HypersurfaceInput& input, const Int& p);

nlohmann::json basis_manifest(const GriffithsBasis& basis);

}  // namespace cobs
