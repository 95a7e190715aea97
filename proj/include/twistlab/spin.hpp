#pragma once

#include <Eigen/Dense>
#include <map>

#include "twistlab/common.hpp"

namespace twistlab {

// Spin-S matrices in the basis |S,m> ordered by digit k = S - m (digit 0 is
// the highest-weight state).  Spin values are carried as doubled integers
// (two_s = 2S) so half-integer bookkeeping stays exact.

Eigen::MatrixXcd spin_z(int two_s);
Eigen::MatrixXcd spin_plus(int two_s);
Eigen::MatrixXcd spin_minus(int two_s);
Eigen::MatrixXcd spin_x(int two_s);
Eigen::MatrixXcd spin_y(int two_s);

// (S_tot)^2 on `arity` sites of spin two_s/2.
Eigen::MatrixXcd total_spin_squared(int two_s, int arity);

// Eigenprojectors of (S_tot)^2 keyed by doubled total spin 2s'.
// Sector identification tolerance is 1e-9 on the s(s+1) eigenvalues.
std::map<int, Eigen::MatrixXcd> spin_sector_projectors(int two_s, int arity);

}  // namespace twistlab
