#include "twistlab/models.hpp"

#include <cmath>

#include "twistlab/spin.hpp"

namespace twistlab {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw ContractError(msg);
}

void check_commuting_terms(const StabilizerModel& m) {
  if (auto bad = find_noncommuting_pair(m.terms))
    throw NumericError(m.name + ": terms " + std::to_string(bad->first) +
                       " and " + std::to_string(bad->second) +
                       " do not commute");
  for (size_t s = 0; s < m.symmetries.size(); ++s)
    for (size_t t = 0; t < m.terms.size(); ++t)
      if (commutation_exponent(m.symmetries[s], m.terms[t]) != 0)
        throw NumericError(m.name + ": declared symmetry " + std::to_string(s) +
                           " fails on term " + std::to_string(t));
}

QuditPauli word(int d, int n,
                std::initializer_list<std::tuple<char, int, int>> factors) {
  QuditPauli p = QuditPauli::identity(d, n);
  for (auto [kind, site, power] : factors) {
    switch (kind) {
      case 'X': p = pauli_mul(p, QuditPauli::X(d, n, site, power)); break;
      case 'Z': p = pauli_mul(p, QuditPauli::Z(d, n, site, power)); break;
      case 'Y': {  // qudit Y := ZX
        QuditPauli y = pauli_mul(QuditPauli::Z(d, n, site), QuditPauli::X(d, n, site));
        QuditPauli f = QuditPauli::identity(d, n);
        int reps = ((power % d) + d) % d;
        for (int r = 0; r < reps; ++r) f = pauli_mul(f, y);
        p = pauli_mul(p, f);
        break;
      }
      default: throw ContractError("unknown factor kind");
    }
  }
  return p;
}

}  // namespace

SpinHamiltonian build_tfim(int L, double lambda, bool dual) {
  require(L >= 3, "tfim: L >= 3 required");
  SpinHamiltonian h;
  h.L = L;
  h.two_s = 1;
  h.name = dual ? "tfim-dual" : "tfim";
  h.conserves_sz = false;
  const double cx = dual ? lambda : 1.0;
  const double czz = dual ? 1.0 : lambda;
  for (int n = 0; n < L; ++n) {
    h.terms.push_back({Coupling::PauliX, {n}, -cx, {}, {}});
    h.terms.push_back({Coupling::PauliZZ, {n, (n + 1) % L}, -czz, {}, {}});
  }
  return h;
}

SpinHamiltonian build_mg(int L) {
  require(L % 2 == 0, "mg: parity error, L must be even");
  require(L >= 6, "mg: L >= 6 required");
  SpinHamiltonian h;
  h.L = L;
  h.two_s = 1;
  h.name = "mg";
  for (int j = 0; j < L; ++j) {
    h.terms.push_back({Coupling::Exchange, {j, (j + 1) % L}, 1.0, {}, {}});
    h.terms.push_back({Coupling::Exchange, {j, (j + 2) % L}, 0.5, {}, {}});
  }
  return h;
}

SpinHamiltonian build_dimer_hd(int L, double J, double B) {
  require(L % 2 == 0, "dimer: parity error, L must be even");
  require(L >= 4, "dimer: L >= 4 required");
  SpinHamiltonian h;
  h.L = L;
  h.two_s = 1;
  h.name = "dimer-hd";
  for (int j = 0; j < L; ++j) {
    h.terms.push_back({Coupling::Exchange, {j, (j + 1) % L}, 1.0, {}, {}});
    if (J != 0.0)
      h.terms.push_back({Coupling::Exchange, {j, (j + 2) % L}, J, {}, {}});
    if (B != 0.0) h.terms.push_back({Coupling::FieldZ, {j}, B, {}, {}});
  }
  return h;
}

SpinHamiltonian build_staggered_heisenberg(int L, int two_s, double delta) {
  require(L % 2 == 0, "staggered-heisenberg: parity error, L must be even");
  require(two_s >= 1, "staggered-heisenberg: 2S >= 1 required");
  SpinHamiltonian h;
  h.L = L;
  h.two_s = two_s;
  h.name = "staggered-heisenberg";
  h.translation_invariant = (delta == 0.0);
  if (std::abs(delta) > 1.0)
    h.warnings.push_back("|delta| > 1 flips the sign of a bond coupling");
  for (int r = 0; r < L; ++r) {
    double c = 1.0 + delta * (r % 2 == 0 ? 1.0 : -1.0);
    h.terms.push_back({Coupling::Exchange, {r, (r + 1) % L}, c, {}, {}});
  }
  return h;
}

SpinHamiltonian build_vbs_parent(int two_s, int m, int n, int L) {
  require(m >= 0 && n >= 0, "vbs-parent: m,n >= 0 required");
  require(m + n == two_s, "vbs-parent: m + n = 2S violated");
  require(L % 2 == 0 || m == n, "vbs-parent: parity error, L must be even");
  require(L >= 4, "vbs-parent: L >= 4 required");
  SpinHamiltonian h;
  h.L = L;
  h.two_s = two_s;
  h.name = "vbs-parent";

  const int diff = 2 * std::abs(m - n) / 2 + std::abs(m - n) % 2;  // |m-n|
  for (int i = 0; i < L; ++i) {
    std::vector<int> tri_sites{i, (i + 1) % L, (i + 2) % L};
    std::vector<int> tri;  // doubled sectors 2s'
    // three-site sectors s' > S, and s' < |m-n|/2 (2s' < |m-n|)
    for (int t = (3 * two_s) % 2; t <= 3 * two_s; t += 2)
      if (t > two_s || t < diff) tri.push_back(t);
    if (!tri.empty())
      h.terms.push_back({Coupling::Projector, tri_sites, 1.0, tri, {}});
    // two-site sectors s' > max(m,n)
    std::vector<int> two;
    for (int t = 0; t <= 2 * two_s; t += 2)
      if (t > 2 * std::max(m, n)) two.push_back(t);
    if (!two.empty())
      h.terms.push_back({Coupling::Projector, {i, (i + 1) % L}, 1.0, two, {}});
  }
  return h;
}

StabilizerModel build_cluster_1d(int L, int d) {
  require(L >= 3, "cluster1d: L >= 3 required");
  StabilizerModel m;
  m.d = d;
  m.n = L;
  m.name = "cluster1d";
  m.lattice = "chain L=" + std::to_string(L);
  for (int s = 0; s < L; ++s)
    m.terms.push_back(word(d, L, {{'X', (s - 1 + L) % L, -1},
                                  {'Z', s, 1},
                                  {'X', (s + 1) % L, -1}}));
  // Z I Z^-1 I ... and its one-site shift close when the alternation wraps
  // consistently: any even L for d=2, multiples of 4 otherwise.
  if ((d == 2 && L % 2 == 0) || L % 4 == 0) {
    for (int offset = 0; offset < 2; ++offset) {
      QuditPauli sym = QuditPauli::identity(d, L);
      for (int s = offset, sign = 1; s < L; s += 2, sign = -sign)
        sym = pauli_mul(sym, QuditPauli::Z(d, L, s, sign));
      m.symmetries.push_back(sym);
    }
  }
  check_commuting_terms(m);
  return m;
}

StabilizerModel build_wen_1d(int L, int d) {
  require(L >= 5, "wen1d: L >= 5 required");
  StabilizerModel m;
  m.d = d;
  m.n = L;
  m.name = "wen1d";
  m.lattice = "chain L=" + std::to_string(L);
  // term_n = K_n K^dag_{n+1} for cluster words K_n = X^-1_{n-1} Z_n X^-1_{n+1};
  // equals X_{n-1} Y_n Y_{n+1} X_{n+2} at d=2 and keeps the family commuting
  // and \otimes X symmetric for every d.
  auto cluster = [&](int s) {
    return word(d, L, {{'X', (s - 1 + L) % L, -1},
                       {'Z', s, 1},
                       {'X', (s + 1) % L, -1}});
  };
  for (int s = 0; s < L; ++s)
    m.terms.push_back(pauli_mul(cluster(s), cluster((s + 1) % L).dagger()));
  // broken Z_d symmetry generator
  QuditPauli gx = QuditPauli::identity(d, L);
  for (int s = 0; s < L; ++s) gx = pauli_mul(gx, QuditPauli::X(d, L, s));
  m.symmetries.push_back(gx);
  m.logical_x.push_back(gx);
  // the preserved SPT generators survive the spectrum folding
  if ((d == 2 && L % 2 == 0) || L % 4 == 0) {
    for (int offset = 0; offset < 2; ++offset) {
      QuditPauli sym = QuditPauli::identity(d, L);
      for (int s = offset, sign = 1; s < L; s += 2, sign = -sign)
        sym = pauli_mul(sym, QuditPauli::Z(d, L, s, sign));
      m.symmetries.push_back(sym);
    }
  }
  // a single cluster word acts as logical Z; global Z works for odd L
  m.logical_z.push_back(cluster(0));
  if (L % 2 == 1) {
    QuditPauli gz = QuditPauli::identity(d, L);
    for (int s = 0; s < L; ++s) gz = pauli_mul(gz, QuditPauli::Z(d, L, s));
    m.logical_z.push_back(gz);
  }
  check_commuting_terms(m);
  return m;
}

namespace {

// Toric-code edge indexing on an Lx x Ly torus: horizontal edge from vertex
// (i,j) to (i+1,j) is i*Ly+j; vertical edge from (i,j) to (i,j+1) is
// Lx*Ly + i*Ly+j.
struct ToricIndex {
  int Lx, Ly;
  int h(int i, int j) const {
    return ((i % Lx + Lx) % Lx) * Ly + ((j % Ly + Ly) % Ly);
  }
  int v(int i, int j) const { return Lx * Ly + h(i, j); }
};

}  // namespace

StabilizerModel build_toric(int Lx, int Ly) {
  require(Lx >= 2 && Ly >= 2, "toric: Lx,Ly >= 2 required");
  StabilizerModel m;
  m.d = 2;
  m.n = 2 * Lx * Ly;
  m.name = "toric";
  m.lattice = "torus " + std::to_string(Lx) + "x" + std::to_string(Ly);
  ToricIndex ix{Lx, Ly};
  for (int i = 0; i < Lx; ++i)
    for (int j = 0; j < Ly; ++j) {
      m.terms.push_back(word(2, m.n, {{'X', ix.h(i, j), 1},
                                      {'X', ix.h(i - 1, j), 1},
                                      {'X', ix.v(i, j), 1},
                                      {'X', ix.v(i, j - 1), 1}}));
      m.terms.push_back(word(2, m.n, {{'Z', ix.h(i, j), 1},
                                      {'Z', ix.h(i, j + 1), 1},
                                      {'Z', ix.v(i, j), 1},
                                      {'Z', ix.v(i + 1, j), 1}}));
    }
  // logical pairs: (X on v-edges along a row, Z on v-edges down a column)
  // and (X on h-edges down a column, Z on h-edges along a row)
  QuditPauli xr = QuditPauli::identity(2, m.n), zc = xr, xc = xr, zr = xr;
  for (int i = 0; i < Lx; ++i) {
    xr = pauli_mul(xr, QuditPauli::X(2, m.n, ix.v(i, 0)));
    zr = pauli_mul(zr, QuditPauli::Z(2, m.n, ix.h(i, 0)));
  }
  for (int j = 0; j < Ly; ++j) {
    zc = pauli_mul(zc, QuditPauli::Z(2, m.n, ix.v(0, j)));
    xc = pauli_mul(xc, QuditPauli::X(2, m.n, ix.h(0, j)));
  }
  m.logical_x = {xr, xc};
  m.logical_z = {zc, zr};
  check_commuting_terms(m);
  return m;
}

StabilizerModel build_wen_2d(int Lx, int Ly) {
  require(Lx >= 3 && Ly >= 3, "wen2d: Lx,Ly >= 3 required");
  StabilizerModel m;
  m.d = 2;
  m.n = Lx * Ly;
  m.name = "wen2d";
  m.lattice = "torus " + std::to_string(Lx) + "x" + std::to_string(Ly);
  auto site = [&](int i, int j) {
    return ((i % Lx + Lx) % Lx) * Ly + ((j % Ly + Ly) % Ly);
  };
  for (int i = 0; i < Lx; ++i)
    for (int j = 0; j < Ly; ++j)
      m.terms.push_back(word(2, m.n, {{'X', site(i, j), 1},
                                      {'Y', site(i - 1, j), 1},
                                      {'Y', site(i, j + 1), 1},
                                      {'X', site(i - 1, j + 1), 1}}));
  const bool ex = Lx % 2 == 0, ey = Ly % 2 == 0;
  QuditPauli gx = QuditPauli::identity(2, m.n), gz = gx;
  for (int s = 0; s < m.n; ++s) {
    gx = pauli_mul(gx, QuditPauli::X(2, m.n, s));
    gz = pauli_mul(gz, QuditPauli::Z(2, m.n, s));
  }
  auto zline = [&](bool along_x, int k) {
    QuditPauli p = QuditPauli::identity(2, m.n);
    int len = along_x ? Lx : Ly;
    for (int t = 0; t < len; ++t)
      p = pauli_mul(p, QuditPauli::Z(2, m.n, along_x ? site(t, k) : site(k, t)));
    return p;
  };
  if (ex && ey) {
    m.logical_x = {wen2d_xyxy_string(m, Lx, Ly, true, 0),
                   wen2d_xyxy_string(m, Lx, Ly, false, 0)};
    m.logical_z = {zline(false, 0), zline(true, 0)};
  } else if (ex != ey) {
    m.symmetries.push_back(gx);
    m.logical_x = {gx};
    m.logical_z = {ey ? zline(true, 0) : zline(false, 0)};  // odd direction
  } else {
    m.symmetries.push_back(gx);
    m.logical_x = {gx};
    m.logical_z = {zline(false, 0)};
  }
  check_commuting_terms(m);
  return m;
}

QuditPauli wen2d_xyxy_string(const StabilizerModel& wen2d, int Lx, int Ly,
                             bool along_x, int line_index) {
  const int len = along_x ? Lx : Ly;
  if (len % 2 != 0)
    throw ContractError(
        "wen2d: XYXY string cannot close on an odd cycle of length " +
        std::to_string(len));
  auto site = [&](int i, int j) { return (i % Lx) * Ly + (j % Ly); };
  QuditPauli s = QuditPauli::identity(2, wen2d.n);
  for (int k = 0; k < len; ++k) {
    int idx = along_x ? site(k, line_index) : site(line_index, k);
    if (k % 2 == 0) {
      s = pauli_mul(s, QuditPauli::X(2, wen2d.n, idx));
    } else {
      s = pauli_mul(s, word(2, wen2d.n, {{'Y', idx, 1}}));
    }
  }
  return s;
}

StabilizerModel build_gauged_ising(int Lx, int Ly, GaugedIsingStage stage) {
  require(Lx >= 2 && Ly >= 2, "gauged-ising: Lx,Ly >= 2 required");
  StabilizerModel m;
  m.d = 2;
  m.n = 3 * Lx * Ly;
  m.name = stage == GaugedIsingStage::GraphState ? "gauged-ising-graph"
                                                 : "decorated-toric";
  m.lattice = "torus " + std::to_string(Lx) + "x" + std::to_string(Ly) +
              " (3 qubits/cell)";
  auto cell = [&](int i, int j) {
    return 3 * (((i % Lx + Lx) % Lx) * Ly + ((j % Ly + Ly) % Ly));
  };
  auto qv = [&](int i, int j) { return cell(i, j); };      // vertex
  auto qe = [&](int i, int j) { return cell(i, j) + 1; };  // east link
  auto qn = [&](int i, int j) { return cell(i, j) + 2; };  // north link

  auto edge_term_e = [&](int i, int j) {
    return word(2, m.n,
                {{'X', qv(i, j), 1}, {'Z', qe(i, j), 1}, {'X', qv(i + 1, j), 1}});
  };
  auto edge_term_n = [&](int i, int j) {
    return word(2, m.n,
                {{'X', qv(i, j), 1}, {'Z', qn(i, j), 1}, {'X', qv(i, j + 1), 1}});
  };
  auto star_term = [&](int i, int j) {
    return word(2, m.n, {{'Z', qv(i, j), 1},
                         {'X', qe(i, j), 1},
                         {'X', qe(i - 1, j), 1},
                         {'X', qn(i, j), 1},
                         {'X', qn(i, j - 1), 1}});
  };

  for (int i = 0; i < Lx; ++i)
    for (int j = 0; j < Ly; ++j) m.terms.push_back(star_term(i, j));

  if (stage == GaugedIsingStage::GraphState) {
    for (int i = 0; i < Lx; ++i)
      for (int j = 0; j < Ly; ++j) {
        m.terms.push_back(edge_term_e(i, j));
        m.terms.push_back(edge_term_n(i, j));
      }
  } else {
    // fold the weight-3 edge terms: plaquette products ZZZZ plus the two
    // collinear edge-pair products through every vertex
    for (int i = 0; i < Lx; ++i)
      for (int j = 0; j < Ly; ++j) {
        QuditPauli plaq =
            pauli_mul(pauli_mul(edge_term_e(i, j), edge_term_n(i + 1, j)),
                      pauli_mul(edge_term_e(i, j + 1), edge_term_n(i, j)));
        m.terms.push_back(plaq);
        m.terms.push_back(pauli_mul(edge_term_e(i - 1, j), edge_term_e(i, j)));
        m.terms.push_back(pauli_mul(edge_term_n(i, j - 1), edge_term_n(i, j)));
      }
    // broken symmetry: X on every link qubit
    QuditPauli gx = QuditPauli::identity(2, m.n);
    for (int i = 0; i < Lx; ++i)
      for (int j = 0; j < Ly; ++j)
        gx = pauli_mul(pauli_mul(gx, QuditPauli::X(2, m.n, qe(i, j))),
                       QuditPauli::X(2, m.n, qn(i, j)));
    m.symmetries.push_back(gx);
    m.logical_z.push_back(edge_term_e(0, 0));
  }
  check_commuting_terms(m);
  return m;
}

}  // namespace twistlab
