#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "twistlab/models.hpp"

namespace twistlab {

// ---------------------------------------------------------------------------
// Operators acting on dense state vectors (site k = base-q digit with stride
// q^k, digit 0 = highest-weight spin state / computational |0>)
// ---------------------------------------------------------------------------

// per-site factors; identity blocks may be empty matrices
struct ProductOp {
  std::vector<Eigen::MatrixXcd> site_ops;
};

// site k's content moves to site image[k]
struct SitePermutation {
  std::vector<int> image;
};

using Operator =
    std::variant<QuditPauli, ProductOp, SitePermutation, Eigen::MatrixXcd>;

Eigen::VectorXcd apply_operator(const Operator& op, const Eigen::VectorXcd& v,
                                int local_dim, int n_sites);

// <bra_i| op |ket_j> for all pairs
Eigen::MatrixXcd expectation_matrix(const std::vector<Eigen::VectorXcd>& bras,
                                    const std::vector<Eigen::VectorXcd>& kets,
                                    const Operator& op, int local_dim,
                                    int n_sites);

// translation by k sites on a ring of length L
SitePermutation translation(int L, int k = 1);
// reflection about site 0 (site j -> L-j) or about the link (0,1)
// (site j -> L-1-j)
SitePermutation reflection_site(int L);
SitePermutation reflection_link(int L);

// ---------------------------------------------------------------------------
// Assembly
// ---------------------------------------------------------------------------

struct EdOptions {
  std::int64_t dim_cap = std::int64_t(1) << 20;
  int dense_threshold = 1024;  // dense solver at or below this dimension
  enum class Solver { Auto, Dense, Lanczos } solver = Solver::Auto;
  int k_max = 6;
  double degeneracy_tol = 1e-8;
  unsigned seed = 12345;
  int max_blocks = 120;       // lanczos block iterations
  double residual_tol = 1e-9;
};

// Matrix-free Hermitian operator on a restricted or full basis.
class AssembledOperator {
 public:
  std::int64_t dim() const { return dim_; }
  int full_dim() const { return full_dim_; }
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const { return matvec_(v); }
  Eigen::MatrixXcd dense() const;
  // embed a restricted vector back into the full Hilbert space
  Eigen::VectorXcd embed(const Eigen::VectorXcd& v) const;

  std::int64_t dim_ = 0;
  std::int64_t full_dim_ = 0;
  std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)> matvec_;
  std::vector<std::int64_t> basis_states_;  // empty when unrestricted
};

// sector: doubled total S^z value (sum of 2*m). Requires every term to
// conserve S^z; ContractError otherwise.
AssembledOperator assemble(const SpinHamiltonian& h,
                           std::optional<int> twice_sz_sector = std::nullopt,
                           const EdOptions& opts = {});
AssembledOperator assemble(const StabilizerModel& m, const EdOptions& opts = {});

// ---------------------------------------------------------------------------
// Ground-space extraction
// ---------------------------------------------------------------------------

struct GroundSpace {
  std::vector<double> energies;  // quasi-degenerate ground multiplet, sorted
  std::vector<Eigen::VectorXcd> basis;  // orthonormal, in the full space
  double degeneracy_tol = 1e-8;
  double gap = 0.0;  // distance from the highest kept to the first excluded
  int degeneracy() const { return static_cast<int>(energies.size()); }
};

GroundSpace ground_space(const AssembledOperator& op, const EdOptions& opts);
GroundSpace ground_space(const SpinHamiltonian& h, const EdOptions& opts = {},
                         std::optional<int> twice_sz_sector = std::nullopt);
GroundSpace ground_space(const StabilizerModel& m, const EdOptions& opts = {});

// lowest k eigenvalues only (no vectors kept beyond what the solver needs)
std::vector<double> lowest_eigenvalues(const AssembledOperator& op, int k,
                                       const EdOptions& opts = {});

}  // namespace twistlab
