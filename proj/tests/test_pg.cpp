#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "boserep/gf.hpp"
#include "boserep/pg.hpp"

using namespace boserep;
using gf::Code;
using pg::Vec;

namespace {

Vec random_nonzero_vec(std::mt19937_64& rng, const gf::SmallField& F, int n) {
  Vec v;
  v.n = static_cast<uint8_t>(n);
  do {
    for (int i = 0; i < n; ++i) v.c[i] = static_cast<Code>(rng() % F.q);
  } while (pg::is_zero(v));
  return v;
}

}  // namespace

TEST_CASE("normalize scales the first nonzero coordinate to 1") {
  auto s = gf::field_tower(3, 1);
  const auto& F = s.f_q;
  CHECK(pg::normalize(F, pg::make_vec({0, 2, 1})) == pg::make_vec({0, 1, 2}));
  CHECK(pg::normalize(F, pg::make_vec({1, 2, 1})) == pg::make_vec({1, 2, 1}));
  CHECK_THROWS_AS(pg::normalize(F, pg::make_vec({0, 0, 0})), std::invalid_argument);

  std::mt19937_64 rng(0);
  for (int t = 0; t < 200; ++t) {
    Vec v = random_nonzero_vec(rng, F, 9);
    CHECK(pg::normalize(F, pg::normalize(F, v)) == pg::normalize(F, v));
  }
}

TEST_CASE("point rank/unrank is a lexicographic bijection") {
  auto s = gf::field_tower(2, 2);
  const auto& F = s.f_q;
  uint64_t n = pg::n_points(F.q, 8);
  CHECK(n == 87381);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 500; ++t) {
    uint64_t id = rng() % n;
    Vec v = pg::unrank_point(F, 8, id);
    CHECK(pg::rank_point(F, v) == id);
    CHECK(pg::normalize(F, v) == v);
  }
  // order is lexicographic on coordinate vectors under the element order
  for (int t = 0; t < 200; ++t) {
    uint64_t a = rng() % (n - 1);
    Vec va = pg::unrank_point(F, 8, a), vb = pg::unrank_point(F, 8, a + 1);
    bool less = false;
    for (int i = 0; i < 9; ++i) {
      if (va.c[i] == vb.c[i]) continue;
      less = F.lex_rank_of(va.c[i]) < F.lex_rank_of(vb.c[i]);
      break;
    }
    CHECK(less);
  }
}

TEST_CASE("ambient point counts") {
  CHECK(pg::n_points(3, 8) == 9841);
  CHECK(pg::n_points(27, 2) == 757);
  CHECK(pg::n_points(5, 8) == 488281);
  auto s4 = gf::field_tower(2, 2);
  // a plane over GF(4) has 21 points
  auto e0 = pg::make_vec({1, 0, 0, 0, 0, 0, 0, 0, 0});
  auto e1 = pg::make_vec({0, 1, 0, 0, 0, 0, 0, 0, 0});
  auto e2 = pg::make_vec({0, 0, 1, 0, 0, 0, 0, 0, 0});
  auto plane = pg::span_points(s4.f_q, {e0, e1, e2});
  CHECK(pg::points_of(s4.f_q, plane).size() == 21);
}

TEST_CASE("span and meet satisfy the dimension theorem") {
  auto s = gf::field_tower(3, 1);
  const auto& F = s.f_q;
  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    std::vector<Vec> ra, rb;
    int ka = 1 + static_cast<int>(rng() % 4), kb = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < ka; ++i) ra.push_back(random_nonzero_vec(rng, F, 9));
    for (int i = 0; i < kb; ++i) rb.push_back(random_nonzero_vec(rng, F, 9));
    auto A = pg::span_points(F, ra), B = pg::span_points(F, rb);
    auto U = pg::span(F, A, B), M = pg::meet(F, A, B);
    CHECK(U.dim() == A.dim() + B.dim() - M.dim());
    if (!M.empty()) {
      CHECK(pg::sub_contains(F, A, M));
      CHECK(pg::sub_contains(F, B, M));
    }
  }
  // span(P, P) is the point itself
  Vec p = pg::normalize(F, random_nonzero_vec(rng, F, 9));
  auto sp = pg::span_points(F, {p, p});
  CHECK(sp.dim() == 0);
  // two distinct hyperplanes of an 8-dimensional space meet in dimension 6
  auto h1 = pg::subspace_from_dual(F, {pg::make_vec({1, 0, 0, 0, 0, 0, 0, 0, 0})});
  auto h2 = pg::subspace_from_dual(F, {pg::make_vec({0, 1, 0, 0, 0, 0, 0, 0, 2})});
  CHECK(h1.dim() == 7);
  CHECK(pg::meet(F, h1, h2).dim() == 6);
  CHECK_THROWS_AS(pg::meet(F, h1, pg::point_subspace(F, pg::make_vec({1, 0, 0}))),
                  std::invalid_argument);
}

TEST_CASE("canonical form is independent of the spanning set") {
  auto s = gf::field_tower(5, 1);
  const auto& F = s.f_q;
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    std::vector<Vec> rows;
    for (int i = 0; i < 3; ++i) rows.push_back(random_nonzero_vec(rng, F, 9));
    auto S = pg::span_points(F, rows);
    auto pts = pg::points_of(F, S);
    // re-span from a shuffled selection of its points
    std::shuffle(pts.begin(), pts.end(), rng);
    std::vector<Vec> sel(pts.begin(), pts.begin() + std::min<size_t>(pts.size(), 7));
    auto S2 = pg::span_points(F, sel);
    if (S2.dim() == S.dim()) CHECK(S2 == S);
    CHECK(pg::sub_contains(F, S, S2));
  }
}

TEST_CASE("line through two points has q+1 collinear points") {
  auto s = gf::field_tower(3, 1);
  const auto& Fq3 = s.f_q3;
  std::mt19937_64 rng(4);
  for (int t = 0; t < 40; ++t) {
    Vec a = pg::normalize(Fq3, random_nonzero_vec(rng, Fq3, 3));
    Vec b;
    do {
      b = pg::normalize(Fq3, random_nonzero_vec(rng, Fq3, 3));
    } while (a == b);
    auto L = pg::span_points(Fq3, {a, b});
    CHECK(L.dim() == 1);
    auto pts = pg::points_of(Fq3, L);
    CHECK(pts.size() == 28);
    for (const auto& p : pts) CHECK(pg::det3(Fq3, a, b, p) == 0);
  }
}

TEST_CASE("semilinear collineation action") {
  auto s = gf::field_tower(3, 1);
  const auto& Fq3 = s.f_q3;
  // (x, y, z) -> (z^q, x^q, y^q)
  pg::Collineation phi;
  phi.m.rows = phi.m.cols = 3;
  phi.m.at(0, 1) = 1;
  phi.m.at(1, 2) = 1;
  phi.m.at(2, 0) = 1;
  phi.frob_power = 1;
  phi.frob_table = &s.frob_q_t;

  // the subplane {(x, x^q, x^{q^2})} is fixed pointwise
  for (Code x = 1; x < s.q3; ++x) {
    Vec v = pg::make_vec({x, s.frobenius(x, 1), s.frobenius(x, 2)});
    CHECK(pg::apply(Fq3, phi, v) == pg::normalize(Fq3, v));
  }
  // identity collineation fixes every point
  pg::Collineation id;
  id.m = pg::mat_identity(3);
  uint64_t n = pg::n_points(s.q3, 2);
  CHECK(n == 757);
  std::vector<uint32_t> orbit_size(n, 0);
  for (uint64_t i = 0; i < n; ++i) {
    Vec v = pg::unrank_point(Fq3, 2, i);
    CHECK(pg::apply(Fq3, id, v) == v);
    // phi applied three times is the identity
    Vec w = pg::apply(Fq3, phi, pg::apply(Fq3, phi, pg::apply(Fq3, phi, v)));
    CHECK(w == v);
    // orbit sizes divide 3
    Vec v1 = pg::apply(Fq3, phi, v);
    orbit_size[i] = (v1 == v) ? 1 : 3;
  }
  uint64_t fixed = std::count(orbit_size.begin(), orbit_size.end(), 1u);
  CHECK((n - fixed) % 3 == 0);
}

TEST_CASE("matrix inverse and dual round trips") {
  auto s = gf::field_tower(2, 2);
  const auto& F = s.f_q;
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    pg::Mat m;
    m.rows = m.cols = 9;
    do {
      for (int i = 0; i < 81; ++i) m.a[i] = static_cast<Code>(rng() % F.q);
    } while ([&] {
      auto copy = m;
      return pg::rref(F, copy.a.data(), 9, 9) != 9;
    }());
    auto mi = pg::mat_inverse(F, m);
    CHECK(pg::mat_mul(F, m, mi) == pg::mat_identity(9));
  }
  // dual of a subspace: hyperplanes through it, and back
  for (int t = 0; t < 30; ++t) {
    std::vector<Vec> rows;
    for (int i = 0; i < 3; ++i) rows.push_back(random_nonzero_vec(rng, F, 9));
    auto S = pg::span_points(F, rows);
    auto D = pg::dual_of(F, S);
    CHECK(D.dim() == 7 - S.dim());
    std::vector<Vec> duals;
    for (int i = 0; i < D.basis.rows; ++i) duals.push_back(pg::row_of(D.basis, i));
    auto S2 = pg::subspace_from_dual(F, duals);
    CHECK(S2 == S);
  }
}
