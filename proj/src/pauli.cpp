#include "twistlab/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace twistlab {

namespace {

int mod(int a, int m) {
  int r = a % m;
  return r < 0 ? r + m : r;
}

void check_shapes(const QuditPauli& a, const QuditPauli& b) {
  if (a.d != b.d || a.n != b.n) {
    throw ShapeError("pauli shape mismatch: (d=" + std::to_string(a.d) +
                     ",n=" + std::to_string(a.n) + ") vs (d=" +
                     std::to_string(b.d) + ",n=" + std::to_string(b.n) + ")");
  }
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

// Rank over Z_p (p prime) of the (x|z) exponent matrix.
int gauss_rank_mod_p(std::vector<std::vector<int>> rows, int p) {
  const int ncols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  int rank = 0;
  for (int col = 0; col < ncols && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r][col] % p != 0) { pivot = r; break; }
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    // normalize pivot to 1
    int inv = 1;
    for (int t = 1; t < p; ++t)
      if (mod(rows[rank][col] * t, p) == 1) { inv = t; break; }
    for (int c = col; c < ncols; ++c) rows[rank][c] = mod(rows[rank][c] * inv, p);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][col] % p == 0) continue;
      int f = mod(rows[r][col], p);
      for (int c = col; c < ncols; ++c)
        rows[r][c] = mod(rows[r][c] - f * rows[rank][c], p);
    }
    ++rank;
  }
  return rank;
}

// Diagonal of the Smith normal form of an integer matrix.  Sizes here are
// tiny (at most ~120 x 108); smallest-pivot selection keeps entries small.
std::vector<long long> smith_diagonal(std::vector<std::vector<long long>> a) {
  const int nr = static_cast<int>(a.size());
  const int nc = nr ? static_cast<int>(a[0].size()) : 0;
  std::vector<long long> diag;
  int t = 0;
  while (t < nr && t < nc) {
    // locate smallest nonzero entry in the remaining block
    int pr = -1, pc = -1;
    long long best = 0;
    for (int r = t; r < nr; ++r)
      for (int c = t; c < nc; ++c) {
        long long v = std::llabs(a[r][c]);
        if (v != 0 && (pr < 0 || v < best)) { best = v; pr = r; pc = c; }
      }
    if (pr < 0) break;  // rest is zero
    std::swap(a[t], a[pr]);
    for (int r = 0; r < nr; ++r) std::swap(a[r][t], a[r][pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int r = t + 1; r < nr; ++r) {
        if (a[r][t] == 0) continue;
        long long q = a[r][t] / a[t][t];
        for (int c = t; c < nc; ++c) a[r][c] -= q * a[t][c];
        if (a[r][t] != 0) {  // remainder smaller than pivot: swap up
          std::swap(a[r], a[t]);
          clean = false;
        }
      }
      for (int c = t + 1; c < nc; ++c) {
        if (a[t][c] == 0) continue;
        long long q = a[t][c] / a[t][t];
        for (int r = t; r < nr; ++r) a[r][c] -= q * a[r][t];
        if (a[t][c] != 0) {
          for (int r = 0; r < nr; ++r) std::swap(a[r][c], a[r][t]);
          clean = false;
        }
      }
    }
    diag.push_back(std::llabs(a[t][t]));
    ++t;
  }
  return diag;
}

}  // namespace

QuditPauli::QuditPauli(int d_, int n_) : d(d_), n(n_), x(n_, 0), z(n_, 0) {
  if (d < 2) throw ContractError("local dimension must be >= 2");
  if (n < 0) throw ContractError("site count must be >= 0");
}

QuditPauli QuditPauli::identity(int d, int n) { return QuditPauli(d, n); }

QuditPauli QuditPauli::X(int d, int n, int site, int power) {
  QuditPauli p(d, n);
  p.x.at(site) = mod(power, d);
  return p;
}

QuditPauli QuditPauli::Z(int d, int n, int site, int power) {
  QuditPauli p(d, n);
  p.z.at(site) = mod(power, d);
  return p;
}

bool QuditPauli::is_identity_up_to_phase() const { return weight() == 0; }

int QuditPauli::weight() const {
  int w = 0;
  for (int k = 0; k < n; ++k)
    if (x[k] != 0 || z[k] != 0) ++w;
  return w;
}

std::vector<int> QuditPauli::support() const {
  std::vector<int> s;
  for (int k = 0; k < n; ++k)
    if (x[k] != 0 || z[k] != 0) s.push_back(k);
  return s;
}

QuditPauli QuditPauli::dagger() const {
  // (zeta^p X^x Z^z)^† = zeta^{-p} Z^{-z} X^{-x}
  //                    = zeta^{-p} w^{zx} X^{-x} Z^{-z}   (per site)
  QuditPauli r(d, n);
  int ph = -phase;
  for (int k = 0; k < n; ++k) {
    r.x[k] = mod(-x[k], d);
    r.z[k] = mod(-z[k], d);
    ph += 2 * z[k] * x[k];
  }
  r.phase = mod(ph, 2 * d);
  return r;
}

QuditPauli QuditPauli::relabeled(const std::vector<int>& site_image) const {
  if (static_cast<int>(site_image.size()) != n)
    throw ShapeError("relabel map length != n");
  QuditPauli r(d, n);
  r.phase = phase;
  for (int k = 0; k < n; ++k) {
    r.x.at(site_image[k]) = x[k];
    r.z.at(site_image[k]) = z[k];
  }
  return r;
}

cxd QuditPauli::phase_value() const {
  const double a = std::numbers::pi * phase / d;
  return {std::cos(a), std::sin(a)};
}

QuditPauli pauli_mul(const QuditPauli& a, const QuditPauli& b) {
  check_shapes(a, b);
  QuditPauli r(a.d, a.n);
  int ph = a.phase + b.phase;
  for (int k = 0; k < a.n; ++k) {
    // Z^{za} X^{xb} = w^{za*xb} X^{xb} Z^{za}
    ph += 2 * a.z[k] * b.x[k];
    r.x[k] = mod(a.x[k] + b.x[k], a.d);
    r.z[k] = mod(a.z[k] + b.z[k], a.d);
  }
  r.phase = mod(ph, 2 * a.d);
  return r;
}

int commutation_exponent(const QuditPauli& a, const QuditPauli& b) {
  check_shapes(a, b);
  long long s = 0;
  for (int k = 0; k < a.n; ++k) s += a.z[k] * b.x[k] - a.x[k] * b.z[k];
  return mod(static_cast<int>(s % a.d), a.d);
}

Eigen::MatrixXcd to_dense(const QuditPauli& p, std::int64_t dense_cap) {
  std::int64_t dim = 1;
  for (int k = 0; k < p.n; ++k) {
    dim *= p.d;
    if (dim > dense_cap)
      throw ResourceError("dense cap exceeded: d^n > " + std::to_string(dense_cap));
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  const double two_pi_over_d = 2.0 * std::numbers::pi / p.d;
  const cxd pv = p.phase_value();
  // Site k is the base-d digit of the index with stride d^k.
  std::vector<std::int64_t> stride(p.n, 1);
  for (int k = 1; k < p.n; ++k) stride[k] = stride[k - 1] * p.d;
  for (std::int64_t col = 0; col < dim; ++col) {
    std::int64_t row = 0;
    long long zdot = 0;
    for (int k = 0; k < p.n; ++k) {
      int digit = static_cast<int>((col / stride[k]) % p.d);
      zdot += static_cast<long long>(p.z[k]) * digit;
      int moved = (digit + p.x[k]) % p.d;
      row += moved * stride[k];
    }
    double ang = two_pi_over_d * static_cast<double>(zdot % p.d);
    m(row, col) = pv * cxd{std::cos(ang), std::sin(ang)};
  }
  return m;
}

std::string to_string(const QuditPauli& p) {
  std::ostringstream os;
  os << p.phase << "|";
  bool first = true;
  for (int k = 0; k < p.n; ++k) {
    if (p.x[k] != 0) {
      if (!first) os << ' ';
      os << 'X' << k;
      if (p.x[k] != 1) os << '^' << p.x[k];
      first = false;
    }
    if (p.z[k] != 0) {
      if (!first) os << ' ';
      os << 'Z' << k;
      if (p.z[k] != 1) os << '^' << p.z[k];
      first = false;
    }
  }
  return os.str();
}

QuditPauli pauli_from_string(const std::string& s, int d, int n) {
  auto bar = s.find('|');
  if (bar == std::string::npos) throw ContractError("pauli string: missing '|'");
  QuditPauli p(d, n);
  p.phase = mod(std::stoi(s.substr(0, bar)), 2 * d);
  std::istringstream is(s.substr(bar + 1));
  std::string tok;
  while (is >> tok) {
    if (tok.size() < 2 || (tok[0] != 'X' && tok[0] != 'Z'))
      throw ContractError("pauli string: bad token '" + tok + "'");
    auto caret = tok.find('^');
    int site = std::stoi(tok.substr(1, caret == std::string::npos
                                           ? std::string::npos
                                           : caret - 1));
    int power = caret == std::string::npos ? 1 : std::stoi(tok.substr(caret + 1));
    if (site < 0 || site >= n)
      throw ContractError("pauli string: site out of range in '" + tok + "'");
    int& slot = tok[0] == 'X' ? p.x[site] : p.z[site];
    slot = mod(slot + power, d);
  }
  return p;
}

std::optional<std::pair<int, int>> find_noncommuting_pair(
    const std::vector<QuditPauli>& gens) {
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j)
      if (commutation_exponent(gens[i], gens[j]) != 0)
        return std::make_pair(static_cast<int>(i), static_cast<int>(j));
  return std::nullopt;
}

std::uint64_t symplectic_group_order(const std::vector<QuditPauli>& gens, int d,
                                     int n) {
  if (gens.empty()) return 1;
  if (is_prime(d)) {
    std::vector<std::vector<int>> rows;
    rows.reserve(gens.size());
    for (const auto& g : gens) {
      std::vector<int> r(2 * n);
      for (int k = 0; k < n; ++k) { r[k] = g.x[k]; r[n + k] = g.z[k]; }
      rows.push_back(std::move(r));
    }
    int rank = gauss_rank_mod_p(std::move(rows), d);
    std::uint64_t order = 1;
    for (int i = 0; i < rank; ++i) order *= d;
    return order;
  }
  // Composite d: |G| = d^{2n} / prod(smith diag of [M; d*I]).
  const int m = static_cast<int>(gens.size());
  std::vector<std::vector<long long>> a(m + 2 * n,
                                        std::vector<long long>(2 * n, 0));
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < n; ++k) {
      a[i][k] = gens[i].x[k];
      a[i][n + k] = gens[i].z[k];
    }
  for (int j = 0; j < 2 * n; ++j) a[m + j][j] = d;
  auto diag = smith_diagonal(std::move(a));
  // lattice contains d*Z^{2n}, so exactly 2n nonzero invariant factors
  unsigned __int128 denom = 1;
  for (long long s : diag) denom *= static_cast<unsigned __int128>(s);
  unsigned __int128 num = 1;
  for (int j = 0; j < 2 * n; ++j) num *= static_cast<unsigned __int128>(d);
  if (denom == 0 || num % denom != 0)
    throw NumericError("smith normal form produced inconsistent group order");
  return static_cast<std::uint64_t>(num / denom);
}

int symplectic_rank(const std::vector<QuditPauli>& gens) {
  if (gens.empty()) return 0;
  if (auto bad = find_noncommuting_pair(gens)) {
    throw ContractError("generators " + std::to_string(bad->first) + " and " +
                        std::to_string(bad->second) + " do not commute");
  }
  const int d = gens[0].d, n = gens[0].n;
  std::uint64_t order = symplectic_group_order(gens, d, n);
  int r = 0;
  std::uint64_t v = 1;
  while (v < order) { v *= d; ++r; }
  if (v != order)
    throw NumericError("group order " + std::to_string(order) +
                       " is not a power of d=" + std::to_string(d) +
                       "; use symplectic_group_order/stabilizer_gsd");
  return r;
}

SymplecticBasis make_symplectic_basis(std::vector<QuditPauli> gens) {
  SymplecticBasis b;
  if (!gens.empty()) { b.d = gens[0].d; b.n = gens[0].n; }
  b.rank = symplectic_rank(gens);
  b.generators = std::move(gens);
  return b;
}

std::uint64_t stabilizer_gsd(const std::vector<QuditPauli>& gens, int d, int n) {
  if (auto bad = find_noncommuting_pair(gens)) {
    throw ContractError("generators " + std::to_string(bad->first) + " and " +
                        std::to_string(bad->second) + " do not commute");
  }
  std::uint64_t order = symplectic_group_order(gens, d, n);
  std::uint64_t dim = 1;
  for (int k = 0; k < n; ++k) dim *= d;
  if (dim % order != 0)
    throw NumericError("group order does not divide d^n");
  return dim / order;
}

bool in_symplectic_span(const QuditPauli& p, const std::vector<QuditPauli>& gens) {
  if (gens.empty()) return p.weight() == 0;
  const int d = gens[0].d, n = gens[0].n;
  std::uint64_t base = symplectic_group_order(gens, d, n);
  auto extended = gens;
  extended.push_back(p);
  return symplectic_group_order(extended, d, n) == base;
}

}  // namespace twistlab
