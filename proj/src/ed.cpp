#include "twistlab/ed.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <random>
#include <unordered_map>

#include "twistlab/spin.hpp"

namespace twistlab {

namespace {

struct DigitCodec {
  int q;
  int n;
  std::vector<std::int64_t> stride;
  DigitCodec(int q_, int n_) : q(q_), n(n_), stride(n_) {
    std::int64_t s = 1;
    for (int k = 0; k < n; ++k) { stride[k] = s; s *= q; }
  }
  int digit(std::int64_t state, int k) const {
    return static_cast<int>((state / stride[k]) % q);
  }
  std::int64_t with_digit(std::int64_t state, int k, int val) const {
    return state + (static_cast<std::int64_t>(val) - digit(state, k)) * stride[k];
  }
};

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Operator application
// ---------------------------------------------------------------------------

namespace {

Eigen::VectorXcd apply_pauli_vec(const QuditPauli& p, const Eigen::VectorXcd& v,
                                 int n_sites) {
  if (p.n != n_sites) throw ShapeError("pauli site count mismatch");
  DigitCodec codec(p.d, n_sites);
  const std::int64_t dim = v.size();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
  std::vector<cxd> omega_pow(p.d);
  for (int k = 0; k < p.d; ++k) {
    double a = 2.0 * std::numbers::pi * k / p.d;
    omega_pow[k] = {std::cos(a), std::sin(a)};
  }
  std::vector<int> sites, xs, zs;
  for (int k = 0; k < p.n; ++k)
    if (p.x[k] != 0 || p.z[k] != 0) {
      sites.push_back(k);
      xs.push_back(p.x[k]);
      zs.push_back(p.z[k]);
    }
  const cxd pv = p.phase_value();
  const int w = static_cast<int>(sites.size());
  for (std::int64_t j = 0; j < dim; ++j) {
    if (v[j] == cxd(0)) continue;
    std::int64_t row = j;
    int zdot = 0;
    for (int k = 0; k < w; ++k) {
      int dig = codec.digit(j, sites[k]);
      zdot += zs[k] * dig;
      row = codec.with_digit(row, sites[k], (dig + xs[k]) % p.d);
    }
    out[row] += pv * omega_pow[zdot % p.d] * v[j];
  }
  return out;
}

Eigen::VectorXcd apply_product_vec(const ProductOp& op, const Eigen::VectorXcd& v,
                                   int q, int n_sites) {
  if (static_cast<int>(op.site_ops.size()) != n_sites)
    throw ShapeError("product operator has wrong site count");
  Eigen::VectorXcd cur = v;
  DigitCodec codec(q, n_sites);
  const std::int64_t dim = v.size();
  for (int site = 0; site < n_sites; ++site) {
    const auto& m = op.site_ops[site];
    if (m.size() == 0) continue;  // identity
    if (m.rows() != q || m.cols() != q)
      throw ShapeError("site operator dimension mismatch at site " +
                       std::to_string(site));
    Eigen::VectorXcd next = Eigen::VectorXcd::Zero(dim);
    const std::int64_t s = codec.stride[site];
    for (std::int64_t j = 0; j < dim; ++j) {
      if (cur[j] == cxd(0)) continue;
      int dig = codec.digit(j, site);
      std::int64_t base = j - dig * s;
      for (int r = 0; r < q; ++r) {
        cxd a = m(r, dig);
        if (a != cxd(0)) next[base + r * s] += a * cur[j];
      }
    }
    cur.swap(next);
  }
  return cur;
}

Eigen::VectorXcd apply_perm_vec(const SitePermutation& op,
                                const Eigen::VectorXcd& v, int q, int n_sites) {
  if (static_cast<int>(op.image.size()) != n_sites)
    throw ShapeError("permutation has wrong site count");
  DigitCodec codec(q, n_sites);
  const std::int64_t dim = v.size();
  Eigen::VectorXcd out(dim);
  for (std::int64_t j = 0; j < dim; ++j) {
    std::int64_t to = 0;
    for (int k = 0; k < n_sites; ++k)
      to += static_cast<std::int64_t>(codec.digit(j, k)) *
            codec.stride[op.image[k]];
    out[to] = v[j];
  }
  return out;
}

}  // namespace

Eigen::VectorXcd apply_operator(const Operator& op, const Eigen::VectorXcd& v,
                                int local_dim, int n_sites) {
  return std::visit(
      [&](const auto& o) -> Eigen::VectorXcd {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, QuditPauli>) {
          return apply_pauli_vec(o, v, n_sites);
        } else if constexpr (std::is_same_v<T, ProductOp>) {
          return apply_product_vec(o, v, local_dim, n_sites);
        } else if constexpr (std::is_same_v<T, SitePermutation>) {
          return apply_perm_vec(o, v, local_dim, n_sites);
        } else {
          if (o.cols() != v.size())
            throw ShapeError("dense operator dimension mismatch");
          return o * v;
        }
      },
      op);
}

Eigen::MatrixXcd expectation_matrix(const std::vector<Eigen::VectorXcd>& bras,
                                    const std::vector<Eigen::VectorXcd>& kets,
                                    const Operator& op, int local_dim,
                                    int n_sites) {
  Eigen::MatrixXcd out(bras.size(), kets.size());
  for (size_t j = 0; j < kets.size(); ++j) {
    Eigen::VectorXcd w = apply_operator(op, kets[j], local_dim, n_sites);
    for (size_t i = 0; i < bras.size(); ++i) out(i, j) = bras[i].dot(w);
  }
  return out;
}

SitePermutation translation(int L, int k) {
  SitePermutation p;
  p.image.resize(L);
  for (int s = 0; s < L; ++s) p.image[s] = ((s + k) % L + L) % L;
  return p;
}

SitePermutation reflection_site(int L) {
  SitePermutation p;
  p.image.resize(L);
  for (int s = 0; s < L; ++s) p.image[s] = (L - s) % L;
  return p;
}

SitePermutation reflection_link(int L) {
  SitePermutation p;
  p.image.resize(L);
  for (int s = 0; s < L; ++s) p.image[s] = L - 1 - s;
  return p;
}

// ---------------------------------------------------------------------------
// Assembly
// ---------------------------------------------------------------------------

Eigen::MatrixXcd AssembledOperator::dense() const {
  Eigen::MatrixXcd m(dim_, dim_);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim_);
  for (std::int64_t j = 0; j < dim_; ++j) {
    e[j] = 1.0;
    m.col(j) = matvec_(e);
    e[j] = 0.0;
  }
  return m;
}

Eigen::VectorXcd AssembledOperator::embed(const Eigen::VectorXcd& v) const {
  if (basis_states_.empty()) return v;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(full_dim_);
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(basis_states_.size());
       ++i)
    out[basis_states_[i]] = v[i];
  return out;
}

namespace {

bool term_conserves_sz(const SpinTerm& t, int two_s) {
  switch (t.kind) {
    case Coupling::Exchange:
    case Coupling::PauliZZ:
    case Coupling::FieldZ:
    case Coupling::Projector:
      return true;
    case Coupling::PauliX:
      return false;
    case Coupling::DenseBlock: {
      const int q = two_s + 1;
      const int r = static_cast<int>(t.sites.size());
      Eigen::MatrixXcd sz =
          Eigen::MatrixXcd::Zero(t.block.rows(), t.block.cols());
      DigitCodec codec(q, r);
      for (std::int64_t j = 0; j < t.block.rows(); ++j) {
        double m = 0;
        for (int k = 0; k < r; ++k) m += (two_s - 2 * codec.digit(j, k)) / 2.0;
        sz(j, j) = m;
      }
      return (t.block * sz - sz * t.block).cwiseAbs().maxCoeff() < 1e-12;
    }
  }
  return false;
}

// dense matrix of one coupling term on its own sites (first listed site is
// the fastest digit)
Eigen::MatrixXcd term_block(const SpinTerm& t, int two_s) {
  const int q = two_s + 1;
  const int r = static_cast<int>(t.sites.size());
  const std::int64_t bd = ipow(q, r);
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(bd, bd);
  auto sp = spin_plus(two_s), sm = spin_minus(two_s), sz = spin_z(two_s);
  switch (t.kind) {
    case Coupling::Exchange: {
      if (r != 2) throw ShapeError("exchange term needs two sites");
      for (int a = 0; a < q; ++a)
        for (int c = 0; c < q; ++c) {
          std::int64_t col = a + q * c;
          b(col, col) += t.coeff * sz(a, a).real() * sz(c, c).real();
          if (a > 0 && c < q - 1)  // S+_i S-_j / 2
            b(a - 1 + q * (c + 1), col) +=
                0.5 * t.coeff * sp(a - 1, a) * sm(c + 1, c);
          if (a < q - 1 && c > 0)  // S-_i S+_j / 2
            b(a + 1 + q * (c - 1), col) +=
                0.5 * t.coeff * sm(a + 1, a) * sp(c - 1, c);
        }
      break;
    }
    case Coupling::PauliZZ: {
      if (two_s != 1) throw ContractError("PauliZZ requires spin-1/2");
      for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c)
          b(a + 2 * c, a + 2 * c) = t.coeff * (1.0 - 2 * a) * (1.0 - 2 * c);
      break;
    }
    case Coupling::PauliX: {
      if (two_s != 1) throw ContractError("PauliX requires spin-1/2");
      b(0, 1) = b(1, 0) = t.coeff;
      break;
    }
    case Coupling::FieldZ: {
      for (int a = 0; a < q; ++a) b(a, a) = t.coeff * sz(a, a).real();
      break;
    }
    case Coupling::Projector: {
      auto sectors = spin_sector_projectors(two_s, r);
      for (int s2 : t.sectors) {
        auto it = sectors.find(s2);
        if (it == sectors.end())
          throw ContractError("projector sector 2s'=" + std::to_string(s2) +
                              " absent on " + std::to_string(r) + " sites");
        b += t.coeff * it->second;
      }
      break;
    }
    case Coupling::DenseBlock: {
      if (t.block.rows() != bd || t.block.cols() != bd)
        throw ShapeError("dense block dimension mismatch");
      b = t.coeff * t.block;
      break;
    }
  }
  return b;
}

}  // namespace

AssembledOperator assemble(const SpinHamiltonian& h,
                           std::optional<int> twice_sz_sector,
                           const EdOptions& opts) {
  const int q = h.local_dim();
  std::int64_t full_dim = 1;
  for (int k = 0; k < h.L; ++k) {
    full_dim *= q;
    if (full_dim > opts.dim_cap)
      throw ResourceError("dimension cap exceeded: " + std::to_string(q) + "^" +
                          std::to_string(h.L));
  }
  std::vector<std::int64_t> states;
  std::unordered_map<std::int64_t, std::int64_t> pos;
  if (twice_sz_sector) {
    for (const auto& t : h.terms)
      if (!term_conserves_sz(t, h.two_s))
        throw ContractError(h.name +
                            ": sector requested but a term does not conserve "
                            "total S^z");
    if ((h.L * h.two_s - *twice_sz_sector) % 2 != 0)
      throw ContractError("sector has wrong parity for this chain");
    const int digitsum = (h.L * h.two_s - *twice_sz_sector) / 2;
    DigitCodec codec(q, h.L);
    for (std::int64_t s = 0; s < full_dim; ++s) {
      int acc = 0;
      for (int k = 0; k < h.L; ++k) acc += codec.digit(s, k);
      if (acc == digitsum) {
        pos[s] = static_cast<std::int64_t>(states.size());
        states.push_back(s);
      }
    }
    if (states.empty()) throw ContractError("empty S^z sector");
  }

  const std::int64_t dim =
      twice_sz_sector ? static_cast<std::int64_t>(states.size()) : full_dim;

  std::vector<Eigen::Triplet<cxd>> trip;
  DigitCodec codec(q, h.L);
  for (const auto& t : h.terms) {
    Eigen::MatrixXcd b = term_block(t, h.two_s);
    const int r = static_cast<int>(t.sites.size());
    const std::int64_t bd = b.rows();
    std::vector<std::vector<std::pair<int, cxd>>> cols(bd);
    for (std::int64_t c = 0; c < bd; ++c)
      for (std::int64_t rr = 0; rr < bd; ++rr)
        if (b(rr, c) != cxd(0))
          cols[c].push_back({static_cast<int>(rr), b(rr, c)});
    auto scatter = [&](std::int64_t state, std::int64_t idx) {
      std::int64_t c = 0;
      for (int k = r - 1; k >= 0; --k)
        c = c * q + codec.digit(state, t.sites[k]);
      for (auto& [rr, amp] : cols[c]) {
        std::int64_t to = state;
        int rem = rr;
        for (int k = 0; k < r; ++k) {
          to = codec.with_digit(to, t.sites[k], rem % q);
          rem /= q;
        }
        if (twice_sz_sector) {
          auto it = pos.find(to);
          if (it == pos.end()) throw NumericError("sector leak in assembly");
          trip.emplace_back(it->second, idx, amp);
        } else {
          trip.emplace_back(to, idx, amp);
        }
      }
    };
    if (twice_sz_sector) {
      for (std::int64_t i = 0; i < dim; ++i) scatter(states[i], i);
    } else {
      for (std::int64_t s = 0; s < dim; ++s) scatter(s, s);
    }
  }
  auto mat = std::make_shared<Eigen::SparseMatrix<cxd>>(dim, dim);
  mat->setFromTriplets(trip.begin(), trip.end());

  AssembledOperator op;
  op.dim_ = dim;
  op.full_dim_ = full_dim;
  op.basis_states_ = std::move(states);
  op.matvec_ = [mat](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return (*mat) * v;
  };
  return op;
}

AssembledOperator assemble(const StabilizerModel& m, const EdOptions& opts) {
  std::int64_t dim = 1;
  for (int k = 0; k < m.n; ++k) {
    dim *= m.d;
    if (dim > opts.dim_cap)
      throw ResourceError("dimension cap exceeded: " + std::to_string(m.d) +
                          "^" + std::to_string(m.n));
  }
  struct TermAction {
    std::vector<int> sites, xs, zs;
    cxd phase;
  };
  auto actions = std::make_shared<std::vector<TermAction>>();
  for (const auto& t : m.terms) {
    auto add = [&](const QuditPauli& p) {
      TermAction a;
      a.phase = p.phase_value();
      for (int k = 0; k < p.n; ++k)
        if (p.x[k] != 0 || p.z[k] != 0) {
          a.sites.push_back(k);
          a.xs.push_back(p.x[k]);
          a.zs.push_back(p.z[k]);
        }
      actions->push_back(std::move(a));
    };
    add(t);
    if (!(t.dagger() == t)) add(t.dagger());
  }
  const int d = m.d;
  const int n = m.n;
  AssembledOperator op;
  op.dim_ = dim;
  op.full_dim_ = dim;
  op.matvec_ = [actions, d, n, dim](const Eigen::VectorXcd& v) {
    DigitCodec codec(d, n);
    std::vector<cxd> omega_pow(d);
    for (int k = 0; k < d; ++k) {
      double a = 2.0 * std::numbers::pi * k / d;
      omega_pow[k] = {std::cos(a), std::sin(a)};
    }
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    for (const auto& a : *actions) {
      const int w = static_cast<int>(a.sites.size());
      for (std::int64_t j = 0; j < dim; ++j) {
        std::int64_t row = j;
        int zdot = 0;
        for (int k = 0; k < w; ++k) {
          int dig = codec.digit(j, a.sites[k]);
          zdot += a.zs[k] * dig;
          row = codec.with_digit(row, a.sites[k], (dig + a.xs[k]) % d);
        }
        out[row] -= a.phase * omega_pow[zdot % d] * v[j];  // H = -sum terms
      }
    }
    return out;
  };
  return op;
}

// ---------------------------------------------------------------------------
// Eigensolvers
// ---------------------------------------------------------------------------

namespace {

struct EigResult {
  std::vector<double> values;
  std::vector<Eigen::VectorXcd> vectors;
};

EigResult dense_eig(const AssembledOperator& op, int k) {
  Eigen::MatrixXcd h = op.dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  EigResult r;
  const int keep = static_cast<int>(std::min<std::int64_t>(k, op.dim()));
  for (int i = 0; i < keep; ++i) {
    r.values.push_back(es.eigenvalues()(i));
    r.vectors.push_back(es.eigenvectors().col(i));
  }
  return r;
}

// Block Lanczos with full reorthogonalization against all stored blocks.
EigResult block_lanczos(const AssembledOperator& op, int k,
                        const EdOptions& opts) {
  const std::int64_t dim = op.dim();
  if (dim <= 2 * k + 4) return dense_eig(op, k);
  const int b = std::min<int>(k + 2, static_cast<int>(dim / 2));
  std::mt19937 rng(opts.seed);
  std::normal_distribution<double> gauss;

  auto orthonormalize = [](Eigen::MatrixXcd& w) -> Eigen::MatrixXcd {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(w);
    Eigen::MatrixXcd r = qr.matrixQR()
                             .topRows(w.cols())
                             .template triangularView<Eigen::Upper>();
    Eigen::MatrixXcd thinq = Eigen::MatrixXcd::Identity(w.rows(), w.cols());
    thinq = qr.householderQ() * thinq;
    w = thinq;
    return r;
  };

  Eigen::MatrixXcd q0(dim, b);
  for (std::int64_t i = 0; i < dim; ++i)
    for (int j = 0; j < b; ++j) q0(i, j) = cxd(gauss(rng), gauss(rng));
  orthonormalize(q0);

  std::vector<Eigen::MatrixXcd> qs{q0};
  std::vector<Eigen::MatrixXcd> as, bs;

  auto build_t = [&](int blocks) {
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(blocks * b, blocks * b);
    for (int i = 0; i < blocks; ++i) {
      t.block(i * b, i * b, b, b) = as[i];
      if (i + 1 < blocks) {
        t.block((i + 1) * b, i * b, b, b) = bs[i];
        t.block(i * b, (i + 1) * b, b, b) = bs[i].adjoint();
      }
    }
    return t;
  };

  double last_res = -1;
  for (int j = 0; j < opts.max_blocks; ++j) {
    Eigen::MatrixXcd w(dim, b);
    for (int c = 0; c < b; ++c) w.col(c) = op.apply(qs[j].col(c));
    Eigen::MatrixXcd aj = qs[j].adjoint() * w;
    aj = 0.5 * (aj + aj.adjoint().eval());
    as.push_back(aj);
    w -= qs[j] * aj;
    if (j > 0) w -= qs[j - 1] * bs[j - 1].adjoint();
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& qi : qs) w -= qi * (qi.adjoint() * w).eval();

    const int blocks = static_cast<int>(as.size());
    Eigen::MatrixXcd t = build_t(blocks);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(t);
    const double wnorm = w.norm();
    const bool exhausted = wnorm < 1e-9;
    const bool full = static_cast<std::int64_t>(blocks + 1) * b >= dim;
    Eigen::MatrixXcd rb;
    if (!exhausted) {
      Eigen::MatrixXcd wq = w;
      rb = orthonormalize(wq);
    }
    Eigen::MatrixXcd wq;
    if (!exhausted) {
      wq = w;
      rb = orthonormalize(wq);
    }
    if (static_cast<int>(t.rows()) >= k) {
      double res = 0;
      for (int i = 0; i < k; ++i) {
        Eigen::VectorXcd s = es.eigenvectors().col(i);
        double ri = exhausted ? 0.0 : (rb * s.tail(b)).norm();
        res = std::max(res, ri / std::max(1.0, std::abs(es.eigenvalues()(i))));
      }
      last_res = res;
      if (res < opts.residual_tol || exhausted || full ||
          j + 1 == opts.max_blocks) {
        if (res >= opts.residual_tol && !exhausted && !full)
          throw NumericError("lanczos failed to converge: residual " +
                             std::to_string(res) + " after " +
                             std::to_string(blocks) + " blocks");
        EigResult out;
        const int avail = static_cast<int>(t.rows());
        for (int i = 0; i < std::min(k, avail); ++i) {
          out.values.push_back(es.eigenvalues()(i));
          Eigen::VectorXcd vec = Eigen::VectorXcd::Zero(dim);
          for (int bl = 0; bl < blocks; ++bl)
            vec += qs[bl] * es.eigenvectors().col(i).segment(bl * b, b);
          vec.normalize();
          out.vectors.push_back(vec);
        }
        return out;
      }
    } else if (exhausted || full) {
      return dense_eig(op, k);
    }
    qs.push_back(wq);
    bs.push_back(rb);
  }
  throw NumericError("lanczos failed to converge, last residual " +
                     std::to_string(last_res));
}

}  // namespace

std::vector<double> lowest_eigenvalues(const AssembledOperator& op, int k,
                                       const EdOptions& opts) {
  if (op.dim() <= opts.dense_threshold &&
      opts.solver != EdOptions::Solver::Lanczos)
    return dense_eig(op, k).values;
  return block_lanczos(op, k, opts).values;
}

GroundSpace ground_space(const AssembledOperator& op, const EdOptions& opts) {
  bool use_dense = op.dim() <= opts.dense_threshold;
  if (opts.solver == EdOptions::Solver::Dense) use_dense = true;
  if (opts.solver == EdOptions::Solver::Lanczos) use_dense = false;
  const int k = static_cast<int>(std::min<std::int64_t>(opts.k_max, op.dim()));
  EigResult r = use_dense ? dense_eig(op, k) : block_lanczos(op, k, opts);

  const double e0 = r.values.at(0);
  GroundSpace g;
  g.degeneracy_tol = opts.degeneracy_tol;
  size_t i = 0;
  while (i < r.values.size() && r.values[i] - e0 <= opts.degeneracy_tol) ++i;
  if (i == r.values.size() && static_cast<std::int64_t>(i) < op.dim())
    throw ContractError("k_max too small: all " + std::to_string(i) +
                        " computed states fall inside the degeneracy window");
  for (size_t j = 0; j < i; ++j) {
    g.energies.push_back(r.values[j]);
    g.basis.push_back(op.embed(r.vectors[j]));
  }
  g.gap = (i < r.values.size()) ? r.values[i] - r.values[i - 1]
                                : std::numeric_limits<double>::infinity();
  for (size_t a = 0; a < g.basis.size(); ++a) {
    for (size_t c = 0; c < a; ++c)
      g.basis[a] -= g.basis[c].dot(g.basis[a]) * g.basis[c];
    g.basis[a].normalize();
  }
  return g;
}

GroundSpace ground_space(const SpinHamiltonian& h, const EdOptions& opts,
                         std::optional<int> twice_sz_sector) {
  return ground_space(assemble(h, twice_sz_sector, opts), opts);
}

GroundSpace ground_space(const StabilizerModel& m, const EdOptions& opts) {
  return ground_space(assemble(m, opts), opts);
}

}  // namespace twistlab
