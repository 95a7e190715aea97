#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "twistlab/pauli.hpp"

namespace twistlab {

// ---------------------------------------------------------------------------
// Spin-coupling Hamiltonians
// ---------------------------------------------------------------------------

enum class Coupling {
  Exchange,     // S_i . S_j (spin operators, any S)
  PauliZZ,      // Z_i Z_j, Pauli normalization (spin-1/2 only)
  PauliX,       // X_i, Pauli normalization (spin-1/2 only)
  FieldZ,       // S^z_i
  Projector,    // total-spin projector on the listed 2 or 3 sites
  DenseBlock,   // explicit hermitian block on the listed sites
};

struct SpinTerm {
  Coupling kind;
  std::vector<int> sites;
  double coeff = 1.0;
  std::vector<int> sectors;  // Projector: doubled total-spin values 2s'
  Eigen::MatrixXcd block;    // DenseBlock: dim = (2S+1)^sites
};

struct SpinHamiltonian {
  int L = 0;
  int two_s = 1;  // doubled spin; local dimension 2S+1
  bool periodic = true;
  std::vector<SpinTerm> terms;
  std::string name;
  bool conserves_sz = true;
  bool translation_invariant = true;
  std::vector<std::string> warnings;
  int local_dim() const { return two_s + 1; }
};

// Transverse-field Ising chain H = -sum X_n - lambda sum Z_n Z_{n+1}; the
// dual-lattice form swaps the two couplings.
SpinHamiltonian build_tfim(int L, double lambda, bool dual = false);

// Majumdar-Ghosh chain: NN exchange 1, NNN exchange 1/2 (spin-1/2, periodic).
SpinHamiltonian build_mg(int L);

// H_D = sum S.S_{+1} + J S.S_{+2} + B sum S^z (spin-1/2, periodic).
SpinHamiltonian build_dimer_hd(int L, double J, double B);

// Staggered Heisenberg chain, bond (r,r+1) carries 1 + delta*(-1)^r
// (0-based bonds; the first bond gets 1+delta).
SpinHamiltonian build_staggered_heisenberg(int L, int two_s, double delta);

// Projector parent Hamiltonian selecting |Xi_{mn}> and |Xi_{nm}> as exact
// zero modes: three-site sectors s' > S and s' < |m-n|/2, two-site sectors
// s' > max(m,n).
SpinHamiltonian build_vbs_parent(int two_s, int m, int n, int L);

// ---------------------------------------------------------------------------
// Commuting Pauli (stabilizer-type) models
// ---------------------------------------------------------------------------

struct StabilizerModel {
  int d = 2;
  int n = 0;
  std::string lattice;
  std::vector<QuditPauli> terms;  // H = -sum (t + t^dag when t non-hermitian)
  std::vector<QuditPauli> symmetries;  // declared symmetry generators
  // Claimed logical representatives (verified by code analysis, not trusted).
  std::vector<QuditPauli> logical_x;
  std::vector<QuditPauli> logical_z;
  std::string name;
};

// 1D cluster model, terms X^-1_{n-1} Z_n X^-1_{n+1}; unique ground state.
StabilizerModel build_cluster_1d(int L, int d);

// 1D XYYX chain (Y := ZX for qudits); L terms, GSD d.
StabilizerModel build_wen_1d(int L, int d);

// Toric code on an Lx x Ly torus, qubits on the 2*Lx*Ly edges.
StabilizerModel build_toric(int Lx, int Ly);

// 2D XYYX plaquette model, one qubit per site of an Lx x Ly torus.
StabilizerModel build_wen_2d(int Lx, int Ly);

enum class GaugedIsingStage { GraphState, DecoratedToric };

// Gauged 2D Ising model: 3 qubits per unit cell (vertex + east/north links).
// GraphState keeps the full commuting set (unique ground state); the
// decorated-toric stage folds the weight-3 edge terms into plaquette ZZZZ
// products plus collinear pairs, giving GSD 4 on a torus.
StabilizerModel build_gauged_ising(int Lx, int Ly, GaugedIsingStage stage);

// Alternating XYXY... cycle word along a row/column of the 2D model when it
// closes; throws ContractError when the cycle length is odd.
QuditPauli wen2d_xyxy_string(const StabilizerModel& wen2d, int Lx, int Ly,
                             bool along_x, int line_index);

}  // namespace twistlab
