#pragma once

#include "pwalk/matrix.hpp"
#include "pwalk/mpoly.hpp"
#include "pwalk/walk.hpp"

#include <array>
#include <string>
#include <vector>

namespace pwalk {

class GeneratorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// x, y (d=2); x, y, z (d=3); x1..xd otherwise.
std::vector<std::string> default_coords(std::size_t d);

/// n -> gamma^n for unipotent gamma, as sum_j C(t, j) (gamma - I)^j x.
Walk unipotent_walk(const IntMatrix& gamma, std::vector<std::string> coords = {},
                    const std::string& time_var = "t");

/// Basis of sl_n used for adjoint matrices: (e, h, f) for n = 2; otherwise
/// E_ij (i != j, row-major) followed by E_ii - E_{i+1,i+1}.
std::vector<IntMatrix> sl_basis(std::size_t n);

/// Matrix of A -> g A g^{-1} on sl_n(Z) in sl_basis(n). Requires det g = 1.
IntMatrix adjoint_action_matrix(const IntMatrix& g);

/// Univariate coefficients (ascending) of a polynomial in at most one variable.
std::vector<Rational> univariate_coefficients(const MPoly& p);

struct XyPWalks {
  Walk s1;   // (x, y + H(t,x,z), z + t x)
  Walk s2;   // (x + H(t,y,z), y, z + t y)
  MPoly h;   // H(t, x, z) over (t, x, y, z)
  MPoly form;  // x y - P(z)
};

/// Symmetries of x y - P(z); P integer, P(0) = 0, deg P >= 2.
XyPWalks xy_minus_P_walks(const MPoly& p);

/// (x + P(y + t) - P(y), y + t); preserves x - P(y).
Walk bogolubov_walk(const MPoly& p);
MPoly bogolubov_form(const MPoly& p);

struct SignatureBlock {
  std::size_t a, b, c;  // 1-based: x_a, y_b, y_c
};

struct SignatureFormWalks {
  std::vector<std::string> coords;  // x1..xp, y1..yq
  MPoly form;                       // x1^2 + ... + xp^2 - y1^2 - ... - yq^2
  std::vector<SignatureBlock> blocks;
  std::vector<IntMatrix> matrices;  // two per block
  std::vector<Walk> walks;
};

/// The 3x3 action on (x, y, z) of A -> g A g^{-1} under (x,y,z) -> [[z, -(x+y)], [x-y, -z]].
IntMatrix signature_block_matrix(const IntMatrix& g);

/**
 * Unipotent generators preserving the signature (p, q) form, two per block
 * (a, b, c) from [[1,2],[0,1]] and [[1,0],[2,1]]. Blocks form an overlapping
 * chain: (a, 1, 2) for each a, then (1, b, b+1) for each b.
 */
SignatureFormWalks signature_form_walks(std::size_t p, std::size_t q);

}  // namespace pwalk
