#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "projective.h"

using namespace sl4;

namespace {

// Independent brute-force count of P^3(Z/N): enumerate primitive tuples and
// quotient by units directly.
int64_t brute_point_count(int64_t N) {
  std::set<std::array<int64_t, 4>> classes;
  std::vector<int64_t> units;
  for (int64_t u = 1; u < N; u++)
    if (std::gcd(u, N) == 1) units.push_back(u);
  std::array<int64_t, 4> x;
  for (x[0] = 0; x[0] < N; x[0]++)
    for (x[1] = 0; x[1] < N; x[1]++)
      for (x[2] = 0; x[2] < N; x[2]++)
        for (x[3] = 0; x[3] < N; x[3]++) {
          int64_t g = std::gcd(std::gcd(x[0], x[1]), std::gcd(x[2], std::gcd(x[3], N)));
          if (g != 1) continue;
          std::array<int64_t, 4> best = x;
          for (int64_t u : units) {
            std::array<int64_t, 4> c = {u * x[0] % N, u * x[1] % N, u * x[2] % N, u * x[3] % N};
            if (c < best) best = c;
          }
          classes.insert(best);
        }
  return static_cast<int64_t>(classes.size());
}

Mat4 random_gamma0(std::mt19937_64& rng, int64_t N) {
  // Random element of the level-N congruence subgroup: a bottom-row lift of
  // [0:0:0:1] composed from elementary operations that keep the bottom row
  // congruent to (0,0,0,*).
  Mat4 g = Mat4::identity();
  std::uniform_int_distribution<int> row(0, 3), coef(-2, 2);
  for (int s = 0; s < 10; s++) {
    int i = row(rng), j = row(rng);
    if (i == j) continue;
    Int c = coef(rng);
    if (i == 3) c *= N;  // keep the bottom row congruent
    for (int k = 0; k < 4; k++) g.at(i, k) += c * g.at(j, k);
  }
  return g;
}

}  // namespace

TEST_CASE("point counts") {
  ProjSpace p2(2);
  CHECK(p2.size() == 15);
  ProjSpace p11(11);
  CHECK(p11.size() == 1464);
  CHECK(ProjSpace::count_formula(11) == 1464);
  // composite level: brute-force oracle, then the closed form
  int64_t brute12 = brute_point_count(12);
  ProjSpace p12(12);
  CHECK(static_cast<int64_t>(p12.size()) == brute12);
  CHECK(ProjSpace::count_formula(12) == brute12);
  CHECK(brute12 == 4800);
  ProjSpace p9(9);
  CHECK(static_cast<int64_t>(p9.size()) == brute_point_count(9));
  CHECK_THROWS_AS(ProjSpace(1), InvalidLevel);
}

TEST_CASE("bottom row and right action") {
  ProjSpace ps(7);
  CHECK(ps.point(ps.bottom_row(Mat4::identity())) == std::array<uint16_t, 4>{0, 0, 0, 1});

  Mat4 g = bottom_row_lift({2, 3, 0, 1}, 7);
  uint32_t idx = ps.bottom_row(g);
  CHECK(ps.point(idx) == ps.canonicalize({2, 3, 0, 1}));

  // constant on left cosets of the congruence subgroup
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; t++) {
    Mat4 gamma = random_gamma0(rng, 7);
    CHECK(gamma.det() == 1);
    CHECK(ps.bottom_row(gamma * g) == idx);
  }

  // right action: identity, congruence-subgroup invariance of [0:0:0:1]
  uint32_t base = ps.index_of({0, 0, 0, 1});
  CHECK(ps.act(base, Mat4::identity()) == base);
  for (int t = 0; t < 40; t++) {
    Mat4 gamma = random_gamma0(rng, 7);
    CHECK(ps.act(base, gamma) == base);
  }
  // action law (a g) h == a (g h)
  std::uniform_int_distribution<uint32_t> dpt(0, ps.size() - 1);
  for (int t = 0; t < 60; t++) {
    Mat4 a = random_gamma0(rng, 7), b = random_gamma0(rng, 7);
    uint32_t x = dpt(rng);
    CHECK(ps.act(ps.act(x, a), b) == ps.act(x, a * b));
  }
}

TEST_CASE("orbit decomposition") {
  ProjSpace ps(5);
  // trivial group: every point an orientable singleton orbit
  SignedGroup triv;
  triv.elems = {Mat4::identity()};
  triv.signs = {1};
  OrbitTable t = orbit_decompose(ps, triv, "trivial");
  CHECK(t.orbits.size() == ps.size());
  for (const auto& o : t.orbits) {
    CHECK(o.orientable);
    CHECK(o.members.size() == 1);
    CHECK(o.signs[0] == 1);
  }

  // {+-identity} with -identity marked orientation-reversing: scalar matrices
  // act trivially, so every orbit is a non-orientable singleton.
  SignedGroup pm;
  pm.elems = {Mat4::identity(), Mat4::scalar(-1)};
  pm.signs = {1, -1};
  OrbitTable t2 = orbit_decompose(ps, pm, "pm");
  CHECK(t2.orbits.size() == ps.size());
  for (const auto& o : t2.orbits) CHECK(!o.orientable);

  // non-closed group rejected (a shear is not an involution)
  SignedGroup bad;
  Mat4 shear = Mat4::identity();
  shear.at(0, 1) = 1;
  bad.elems = {Mat4::identity(), shear};
  bad.signs = {1, 1};
  CHECK_THROWS_AS(orbit_decompose(ps, bad, "bad"), InvalidGroup);
}

TEST_CASE("orbit partition and witnesses with a signed permutation group") {
  // The eight signed permutations of coordinates 1,2 (det +1 combinations),
  // extended by identity on 3,4: a small closed group with characters.
  std::vector<Mat4> elems;
  auto mk = [](int a, int b, bool swap) {
    Mat4 m;
    if (!swap) {
      m.at(0, 0) = a;
      m.at(1, 1) = b;
    } else {
      m.at(0, 1) = b;
      m.at(1, 0) = a;
    }
    m.at(2, 2) = 1;
    m.at(3, 3) = 1;
    return m;
  };
  SignedGroup g;
  for (bool swap : {false, true})
    for (int a : {1, -1})
      for (int b : {1, -1}) {
        Mat4 m = mk(a, b, swap);
        if (m.det() != 1) continue;
        g.elems.push_back(m);
        // character: sign of the permutation on the +-pairs {e1},{e2}: the
        // swap is a transposition.
        g.signs.push_back(swap ? -1 : 1);
      }
  ProjSpace ps(7);
  OrbitTable t = orbit_decompose(ps, g, "sp2");
  size_t total = 0;
  for (const auto& o : t.orbits) {
    total += o.members.size();
    CHECK(g.elems.size() % o.members.size() == 0);
    for (size_t i = 0; i < o.members.size(); i++) {
      // witness soundness
      CHECK(ps.act(o.base, g.elems[o.witness[i]]) == o.members[i]);
      if (o.orientable) CHECK(o.signs[i] == g.signs[o.witness[i]]);
    }
  }
  CHECK(total == ps.size());
}
