#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistlab/common.hpp"

namespace twistlab {

// Generalized Pauli word on n sites of local dimension d.
//
// Conventions (fixed once, everything else derives from them):
//   X|j> = |j+1 mod d>,  Z|j> = w^j |j>,  w = exp(2*pi*i/d).
//   Canonical site order is X^x Z^z (X factors to the left).
//   The tracked phase is an exponent of zeta = exp(i*pi/d), so phase lives in
//   Z_{2d}.  zeta^2 = w; the odd exponents exist so that the Hermitian qubit
//   Y = i XZ (x=1, z=1, phase=1) is representable alongside the qudit
//   convention Y := ZX = w XZ (x=1, z=1, phase=2).
//   Reordering rule: Z^a X^b = w^{ab} X^b Z^a per site.
struct QuditPauli {
  int d = 2;
  int n = 0;
  std::vector<int> x;  // in [0,d)
  std::vector<int> z;  // in [0,d)
  int phase = 0;       // in [0,2d), exponent of zeta

  QuditPauli() = default;
  QuditPauli(int d_, int n_);

  static QuditPauli identity(int d, int n);
  // Single-site generators, exponent defaults to 1.
  static QuditPauli X(int d, int n, int site, int power = 1);
  static QuditPauli Z(int d, int n, int site, int power = 1);

  bool is_identity_up_to_phase() const;
  int weight() const;
  std::vector<int> support() const;

  QuditPauli dagger() const;
  // Word with sites relabeled: site k of the result carries the content of
  // site perm_inv[k]... given as: result site map[k] <- this site k.
  QuditPauli relabeled(const std::vector<int>& site_image) const;

  cxd phase_value() const;  // zeta^phase
  bool operator==(const QuditPauli& o) const = default;
};

// Product a*b with the reordering phase folded into the phase exponent.
QuditPauli pauli_mul(const QuditPauli& a, const QuditPauli& b);

// s with a.b = w^s b.a;  s = sum_k (z_a x_b - x_a z_b) mod d.  s=0 iff commute.
int commutation_exponent(const QuditPauli& a, const QuditPauli& b);

// Dense d^n x d^n unitary.  Throws ResourceError above the entry cap.
Eigen::MatrixXcd to_dense(const QuditPauli& p, std::int64_t dense_cap = (1 << 20));

// Text form "phase|X3^2 Z0 ..." (exponent omitted when 1, identity = "0|").
std::string to_string(const QuditPauli& p);
QuditPauli pauli_from_string(const std::string& s, int d, int n);

// A set of commuting generators with its rank over Z_d.
struct SymplecticBasis {
  int d = 2;
  int n = 0;
  std::vector<QuditPauli> generators;
  int rank = 0;
};

// First non-commuting pair among gens, if any.
std::optional<std::pair<int, int>> find_noncommuting_pair(
    const std::vector<QuditPauli>& gens);

// Order of the subgroup of Z_d^{2n} generated by the exponent vectors
// (phases ignored).  Prime d: d^rank by Gaussian elimination; composite d:
// Smith normal form of the generator lattice together with d*I.
std::uint64_t symplectic_group_order(const std::vector<QuditPauli>& gens, int d,
                                     int n);

// rank r with group order == d^r.  Requires pairwise commuting input
// (ContractError naming the offending pair otherwise); throws NumericError if
// the order is not an exact power of d (possible for composite d).
int symplectic_rank(const std::vector<QuditPauli>& gens);
SymplecticBasis make_symplectic_basis(std::vector<QuditPauli> gens);

// d^n / |group|: ground-space dimension of the commuting model -sum (g + h.c.)
// when a joint top eigenspace exists (checked against ED in tests).
std::uint64_t stabilizer_gsd(const std::vector<QuditPauli>& gens, int d, int n);

// Membership of the exponent vector of p in the group generated by gens
// (phases ignored).
bool in_symplectic_span(const QuditPauli& p, const std::vector<QuditPauli>& gens);

}  // namespace twistlab
