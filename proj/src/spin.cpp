#include "twistlab/spin.hpp"

#include <cmath>
#include <mutex>

namespace twistlab {

namespace {

// kron with explicit evaluation order, smallest site index = fastest digit
Eigen::MatrixXcd kron2(const Eigen::MatrixXcd& slow, const Eigen::MatrixXcd& fast) {
  Eigen::MatrixXcd out(slow.rows() * fast.rows(), slow.cols() * fast.cols());
  for (int i = 0; i < slow.rows(); ++i)
    for (int j = 0; j < slow.cols(); ++j)
      out.block(i * fast.rows(), j * fast.cols(), fast.rows(), fast.cols()) =
          slow(i, j) * fast;
  return out;
}

Eigen::MatrixXcd site_op(const Eigen::MatrixXcd& op, int site, int arity, int q) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int k = arity - 1; k >= 0; --k) {
    const Eigen::MatrixXcd& m =
        (k == site) ? op : Eigen::MatrixXcd::Identity(q, q).eval();
    out = kron2(out, m);
  }
  return out;
}

}  // namespace

Eigen::MatrixXcd spin_z(int two_s) {
  const int q = two_s + 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(q, q);
  for (int k = 0; k < q; ++k) m(k, k) = (two_s - 2 * k) / 2.0;
  return m;
}

Eigen::MatrixXcd spin_plus(int two_s) {
  const int q = two_s + 1;
  const double s = two_s / 2.0;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(q, q);
  for (int k = 1; k < q; ++k) {
    double mm = s - k;  // S+ |s,m> = sqrt(s(s+1)-m(m+1)) |s,m+1>
    m(k - 1, k) = std::sqrt(s * (s + 1) - mm * (mm + 1));
  }
  return m;
}

Eigen::MatrixXcd spin_minus(int two_s) { return spin_plus(two_s).adjoint(); }

Eigen::MatrixXcd spin_x(int two_s) {
  return 0.5 * (spin_plus(two_s) + spin_minus(two_s));
}

Eigen::MatrixXcd spin_y(int two_s) {
  return cxd(0, -0.5) * (spin_plus(two_s) - spin_minus(two_s));
}

Eigen::MatrixXcd total_spin_squared(int two_s, int arity) {
  const int q = two_s + 1;
  const int dim = static_cast<int>(std::pow(q, arity));
  Eigen::MatrixXcd sx = Eigen::MatrixXcd::Zero(dim, dim), sy = sx, sz = sx;
  for (int site = 0; site < arity; ++site) {
    sx += site_op(spin_x(two_s), site, arity, q);
    sy += site_op(spin_y(two_s), site, arity, q);
    sz += site_op(spin_z(two_s), site, arity, q);
  }
  return sx * sx + sy * sy + sz * sz;
}

std::map<int, Eigen::MatrixXcd> spin_sector_projectors(int two_s, int arity) {
  static std::mutex cache_mutex;
  static std::map<std::pair<int, int>, std::map<int, Eigen::MatrixXcd>> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find({two_s, arity});
    if (it != cache.end()) return it->second;
  }

  Eigen::MatrixXcd s2 = total_spin_squared(two_s, arity);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s2);
  std::map<int, Eigen::MatrixXcd> sectors;
  const int dim = static_cast<int>(s2.rows());
  for (int i = 0; i < dim; ++i) {
    double ev = es.eigenvalues()(i);
    // ev = s'(s'+1); doubled sector 2s' = round(sqrt(4 ev + 1) - 1)
    double ts = std::sqrt(4.0 * ev + 1.0) - 1.0;
    int two_sp = static_cast<int>(std::lround(ts));
    if (std::abs(ts - two_sp) > 1e-9)
      throw NumericError("spin sector identification failed at eigenvalue " +
                         std::to_string(ev));
    auto [it, fresh] = sectors.try_emplace(
        two_sp, Eigen::MatrixXcd::Zero(dim, dim));
    it->second += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    (void)fresh;
  }

  std::lock_guard<std::mutex> lock(cache_mutex);
  cache[{two_s, arity}] = sectors;
  return sectors;
}

}  // namespace twistlab
