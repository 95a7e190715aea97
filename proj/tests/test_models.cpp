#include <doctest.h>

#include "oracles.hpp"
#include "twistlab/ed.hpp"
#include "twistlab/models.hpp"

using namespace twistlab;

namespace {

Eigen::MatrixXcd dense_of(const SpinHamiltonian& h) {
  return assemble(h, std::nullopt).dense();
}

}  // namespace

TEST_CASE("tfim basics") {
  auto h = build_tfim(6, 0.0);
  auto g = ground_space(h);
  CHECK(g.degeneracy() == 1);
  CHECK(g.energies[0] == doctest::Approx(-6.0).epsilon(1e-12));
  CHECK(g.gap == doctest::Approx(2.0).epsilon(1e-10));

  CHECK_THROWS_AS(build_tfim(2, 1.0), ContractError);

  // dual form swaps the couplings
  auto d = build_tfim(5, 0.7, true);
  int nx = 0, nzz = 0;
  for (auto& t : d.terms) {
    if (t.kind == Coupling::PauliX) {
      CHECK(t.coeff == doctest::Approx(-0.7));
      ++nx;
    } else {
      CHECK(t.coeff == doctest::Approx(-1.0));
      ++nzz;
    }
  }
  CHECK(nx == 5);
  CHECK(nzz == 5);
}

TEST_CASE("tfim deep ordered phase: quasi-degenerate doublet") {
  const double lambda = 50;
  auto h = build_tfim(6, lambda);
  EdOptions o;
  o.k_max = 4;
  o.degeneracy_tol = 1e-6 * lambda;
  auto g = ground_space(h, o);
  CHECK(g.degeneracy() == 2);
  CHECK(g.energies[1] - g.energies[0] < 1e-6 * lambda);
  // one flipped spin breaks two bonds
  CHECK(std::abs(g.gap - 4 * lambda) / (4 * lambda) < 0.1);
}

TEST_CASE("tfim finite-size gap minimum sits near the self-dual point") {
  const int L = 8;
  EdOptions o;
  o.solver = EdOptions::Solver::Lanczos;
  o.k_max = 3;
  double best_lambda = 0, best_gap = 1e9;
  for (double lam = 0.5; lam <= 2.0 + 1e-9; lam += 0.05) {
    auto vals = lowest_eigenvalues(assemble(build_tfim(L, lam), std::nullopt), 2, o);
    double gap = vals[1] - vals[0];
    if (gap < best_gap) {
      best_gap = gap;
      best_lambda = lam;
    }
  }
  CHECK(std::abs(best_lambda - 1.0) < 0.1);
}

TEST_CASE("mg ground doublet") {
  auto h = build_mg(8);
  auto g = ground_space(h, {}, 0);  // singlet ground states live in Sz=0
  CHECK(g.degeneracy() == 2);
  CHECK(g.energies[1] - g.energies[0] < 1e-10);
  CHECK(g.energies[0] == doctest::Approx(-3.0).epsilon(1e-12));  // -3L/8

  // explicit singlet products are exact ground states
  auto L8 = oracles::mg_left(8), R8 = oracles::mg_right(8);
  Eigen::MatrixXcd hd = dense_of(h);
  CHECK((hd * L8 - g.energies[0] * L8).norm() < 1e-10);
  CHECK((hd * R8 - g.energies[0] * R8).norm() < 1e-10);
  // overlap magnitude 2^{1-L/2}
  CHECK(std::abs(L8.dot(R8)) == doctest::Approx(std::pow(2.0, 1 - 4)).epsilon(1e-10));

  CHECK_THROWS_AS(build_mg(7), ContractError);
}

TEST_CASE("mg translation swaps the two dimer states") {
  const int L = 6;
  auto T = translation(L);
  auto Lv = oracles::mg_left(L), Rv = oracles::mg_right(L);
  Eigen::VectorXcd tl = apply_operator(T, Lv, 2, L);
  // T|L> = |R> up to the sign of the wrapped bond orientation
  CHECK(std::min((tl - Rv).norm(), (tl + Rv).norm()) < 1e-12);

  // in the orthonormalized {|L>,|R>} basis T is purely off-diagonal
  auto g = ground_space(build_mg(L), {}, 0);
  Eigen::VectorXcd b0 = Lv.normalized();
  Eigen::VectorXcd b1 = (Rv - b0.dot(Rv) * b0).normalized();
  Eigen::MatrixXcd tmat = expectation_matrix({b0, b1}, {b0, b1}, T, 2, L);
  CHECK(std::abs(tmat(0, 0)) < 0.45);  // finite-L mixing stays subdominant
  CHECK(std::abs(tmat(0, 1)) > 0.85);
  (void)g;
}

TEST_CASE("dimer family") {
  auto mg = build_mg(8);
  auto hd = build_dimer_hd(8, 0.5, 0.0);
  CHECK((dense_of(mg) - dense_of(hd)).cwiseAbs().maxCoeff() < 1e-14);

  // approximate dimer-phase degeneracy away from the MG point
  auto h = build_dimer_hd(8, 0.4, 0.0);
  EdOptions o;
  o.k_max = 5;
  o.degeneracy_tol = 1e-2;
  auto g = ground_space(assemble(h, 0, o), o);
  CHECK(g.degeneracy() == 2);
  CHECK((g.energies[1] - g.energies[0]) < 1e-3 * g.gap);

  // U(1) symmetry: [H, total S^z] = 0
  auto hb = build_dimer_hd(8, 0.5, 0.1);
  Eigen::MatrixXcd hdense = dense_of(hb);
  SpinHamiltonian sz_ham;
  sz_ham.L = 8;
  sz_ham.two_s = 1;
  for (int j = 0; j < 8; ++j)
    sz_ham.terms.push_back({Coupling::FieldZ, {j}, 1.0, {}, {}});
  Eigen::MatrixXcd szm = dense_of(sz_ham);
  CHECK((hdense * szm - szm * hdense).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("staggered heisenberg reduces to the plain chain at delta=0") {
  auto h0 = build_staggered_heisenberg(8, 1, 0.0);
  SpinHamiltonian plain;
  plain.L = 8;
  plain.two_s = 1;
  for (int r = 0; r < 8; ++r)
    plain.terms.push_back({Coupling::Exchange, {r, (r + 1) % 8}, 1.0, {}, {}});
  CHECK((dense_of(h0) - dense_of(plain)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(build_staggered_heisenberg(6, 1, 1.5).warnings.size() == 1);
  CHECK_THROWS_AS(build_staggered_heisenberg(7, 1, 0.1), ContractError);
}

TEST_CASE("vbs parent hamiltonians") {
  SUBCASE("fully dimerized spin-1/2") {
    auto h = build_vbs_parent(1, 1, 0, 8);
    EdOptions o;
    o.k_max = 4;
    auto g = ground_space(assemble(h, 0, o), o);
    CHECK(g.degeneracy() == 2);
    CHECK(std::abs(g.energies[0]) < 1e-10);  // projector sum, zero modes
    Eigen::MatrixXcd hd = dense_of(h);
    CHECK((hd * oracles::mg_left(8)).norm() < 1e-9);
    CHECK((hd * oracles::mg_right(8)).norm() < 1e-9);
  }
  SUBCASE("AKLT point: unique ground state annihilated by 2-site projectors") {
    auto h = build_vbs_parent(2, 1, 1, 6);
    EdOptions o;
    o.k_max = 3;
    auto g = ground_space(assemble(h, 0, o), o);
    CHECK(g.degeneracy() == 1);
    CHECK(std::abs(g.energies[0]) < 1e-10);
    SpinHamiltonian p2;
    p2.L = 6;
    p2.two_s = 2;
    p2.terms.push_back({Coupling::Projector, {2, 3}, 1.0, {4}, {}});
    CHECK((dense_of(p2) * g.basis[0]).norm() < 1e-9);
  }
  SUBCASE("mixed S=3/2 pair") {
    auto h = build_vbs_parent(3, 2, 1, 6);
    EdOptions o;
    o.k_max = 4;
    o.dense_threshold = 512;  // 4^6 = 4096: exercise the sector route
    auto g = ground_space(assemble(h, 0, o), o);
    CHECK(g.degeneracy() == 2);
    CHECK(std::abs(g.energies[0]) < 1e-10);
    CHECK(std::abs(g.energies[1]) < 1e-10);
  }
  CHECK_THROWS_AS(build_vbs_parent(2, 2, 1, 6), ContractError);
}

TEST_CASE("positive semidefinite parent spectra") {
  for (auto [two_s, m, n] : std::vector<std::array<int, 3>>{
           {1, 1, 0}, {2, 2, 0}, {2, 1, 1}}) {
    auto h = build_vbs_parent(two_s, m, n, 6);
    EdOptions o;
    o.k_max = 3;
    auto vals = lowest_eigenvalues(assemble(h, std::nullopt, o), 1, o);
    CHECK(vals[0] > -1e-10);
  }
}

TEST_CASE("cluster chain") {
  auto c = build_cluster_1d(6, 2);
  CHECK(stabilizer_gsd(c.terms, 2, 6) == 1);
  auto g = ground_space(c);
  CHECK(g.degeneracy() == 1);
  CHECK(g.energies[0] == doctest::Approx(-6.0));

  auto c3 = build_cluster_1d(5, 3);
  CHECK(symplectic_rank(c3.terms) == 5);
  CHECK(stabilizer_gsd(c3.terms, 3, 5) == 1);

  // declared SPT symmetry generators exist when the alternation closes
  CHECK(build_cluster_1d(8, 3).symmetries.size() == 2);
  CHECK(build_cluster_1d(6, 3).symmetries.empty());
  CHECK(build_cluster_1d(6, 2).symmetries.size() == 2);
}

TEST_CASE("wen chain: five-qubit code at L=5") {
  auto w = build_wen_1d(5, 2);
  CHECK(symplectic_rank(w.terms) == 4);
  CHECK(stabilizer_gsd(w.terms, 2, 5) == 2);

  // equal to the XZZXI cyclic group after the on-site Y <-> Z relabeling
  // (conjugation by sqrt(X) on every site: (x,z) -> (x+z, z))
  std::vector<QuditPauli> relabeled;
  for (auto t : w.terms) {
    for (int k = 0; k < 5; ++k) t.x[k] = (t.x[k] + t.z[k]) % 2;
    t.phase = 0;
    relabeled.push_back(t);
  }
  std::vector<QuditPauli> fiveq;
  for (int s = 0; s < 5; ++s) {
    QuditPauli p = QuditPauli::identity(2, 5);
    p = pauli_mul(p, QuditPauli::X(2, 5, s));
    p = pauli_mul(p, QuditPauli::Z(2, 5, (s + 1) % 5));
    p = pauli_mul(p, QuditPauli::Z(2, 5, (s + 2) % 5));
    p = pauli_mul(p, QuditPauli::X(2, 5, (s + 3) % 5));
    fiveq.push_back(p);
  }
  for (auto& g : fiveq) CHECK(in_symplectic_span(g, relabeled));
  for (auto& g : relabeled) CHECK(in_symplectic_span(g, fiveq));
}

TEST_CASE("wen chain: odd length carries global logicals") {
  auto w = build_wen_1d(9, 2);
  CHECK(stabilizer_gsd(w.terms, 2, 9) == 2);
  QuditPauli gx = QuditPauli::identity(2, 9), gz = gx;
  for (int s = 0; s < 9; ++s) {
    gx = pauli_mul(gx, QuditPauli::X(2, 9, s));
    gz = pauli_mul(gz, QuditPauli::Z(2, 9, s));
  }
  for (auto& t : w.terms) {
    CHECK(commutation_exponent(gx, t) == 0);
    CHECK(commutation_exponent(gz, t) == 0);
  }
  CHECK(commutation_exponent(gx, gz) != 0);
}

TEST_CASE("wen chain qudit degeneracy") {
  auto w = build_wen_1d(6, 3);
  CHECK(stabilizer_gsd(w.terms, 3, 6) == 3);
  auto g = ground_space(w);
  CHECK(g.degeneracy() == 3);
  // composite d measured rather than assumed
  auto w4 = build_wen_1d(5, 4);
  CHECK(stabilizer_gsd(w4.terms, 4, 5) == 4);
}

TEST_CASE("toric code structure") {
  auto t33 = build_toric(3, 3);
  CHECK(t33.n == 18);
  CHECK(symplectic_rank(t33.terms) == 16);
  CHECK(stabilizer_gsd(t33.terms, 2, 18) == 4);
  // transverse loops anticommute within a pair and commute across pairs
  CHECK(commutation_exponent(t33.logical_x[0], t33.logical_z[0]) == 1);
  CHECK(commutation_exponent(t33.logical_x[1], t33.logical_z[1]) == 1);
  CHECK(commutation_exponent(t33.logical_x[0], t33.logical_z[1]) == 0);
  CHECK(commutation_exponent(t33.logical_x[0], t33.logical_x[1]) == 0);

  auto t22 = build_toric(2, 2);
  auto g = ground_space(t22);
  CHECK(g.degeneracy() == 4);
  for (double e : g.energies) CHECK(e == doctest::Approx(-8.0));
}

TEST_CASE("wen 2d parity table") {
  CHECK(stabilizer_gsd(build_wen_2d(4, 4).terms, 2, 16) == 4);
  CHECK(stabilizer_gsd(build_wen_2d(4, 3).terms, 2, 12) == 2);
  CHECK(stabilizer_gsd(build_wen_2d(3, 3).terms, 2, 9) == 2);
  // ED cross-check at the smallest size
  auto g = ground_space(build_wen_2d(3, 3));
  CHECK(g.degeneracy() == 2);

  // no XYXY string closes on an odd cycle
  auto w = build_wen_2d(3, 3);
  CHECK_THROWS_AS(wen2d_xyxy_string(w, 3, 3, true, 0), ContractError);
  // operator-existence check: the alternation forced onto an odd cycle puts
  // two equal letters next to each other and stops commuting somewhere
  QuditPauli bad = QuditPauli::identity(2, 9);
  for (int k = 0; k < 3; ++k) {
    int idx = k * 3;  // column 0 of row k
    if (k % 2 == 0)
      bad = pauli_mul(bad, QuditPauli::X(2, 9, idx));
    else
      bad = pauli_mul(bad, pauli_mul(QuditPauli::Z(2, 9, idx), QuditPauli::X(2, 9, idx)));
  }
  bool violates = false;
  for (auto& t : w.terms)
    if (commutation_exponent(bad, t) != 0) violates = true;
  CHECK(violates);
}

TEST_CASE("gauged ising stages") {
  auto graph = build_gauged_ising(2, 2, GaugedIsingStage::GraphState);
  CHECK(stabilizer_gsd(graph.terms, 2, graph.n) == 1);
  auto g = ground_space(graph);
  CHECK(g.degeneracy() == 1);

  auto dec32 = build_gauged_ising(3, 2, GaugedIsingStage::DecoratedToric);
  CHECK(stabilizer_gsd(dec32.terms, 2, dec32.n) == 4);
  auto dec33 = build_gauged_ising(3, 3, GaugedIsingStage::DecoratedToric);
  CHECK(stabilizer_gsd(dec33.terms, 2, dec33.n) == 4);
  // the kept weight-3 edge word is a centralizer element outside the group
  auto& xzx = dec33.logical_z[0];
  CHECK(xzx.weight() == 3);
  for (auto& t : dec33.terms) CHECK(commutation_exponent(xzx, t) == 0);
  CHECK(!in_symplectic_span(xzx, dec33.terms));
  CHECK(commutation_exponent(xzx, dec33.symmetries[0]) != 0);
}

TEST_CASE("assembled spin hamiltonians are hermitian") {
  for (const SpinHamiltonian& h :
       {build_tfim(6, 1.3), build_mg(6), build_dimer_hd(6, 0.3, 0.2),
        build_staggered_heisenberg(6, 2, 0.15), build_vbs_parent(2, 2, 0, 6)}) {
    Eigen::MatrixXcd hd = dense_of(h);
    CHECK((hd - hd.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("ed degeneracy equals symplectic gsd across small stabilizer models") {
  auto check_model = [](const StabilizerModel& m) {
    EdOptions o;
    o.k_max = static_cast<int>(stabilizer_gsd(m.terms, m.d, m.n)) + 2;
    auto g = ground_space(m, o);
    CHECK(g.degeneracy() ==
          static_cast<int>(stabilizer_gsd(m.terms, m.d, m.n)));
  };
  check_model(build_cluster_1d(5, 2));
  check_model(build_cluster_1d(7, 2));
  check_model(build_cluster_1d(5, 3));
  check_model(build_wen_1d(5, 2));
  check_model(build_wen_1d(8, 2));
  check_model(build_wen_1d(5, 3));
  check_model(build_wen_1d(5, 4));
}
