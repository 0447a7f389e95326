#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "boserep/reduction.hpp"

using namespace boserep;
using gf::Code;
using pg::Vec;
using reduction::PointType2;
using reduction::PointType8;

namespace {

const reduction::ReductionContext& ctx3() {
  static auto c = reduction::build_context(3, 1);
  return c;
}
const reduction::ReductionContext& ctx4() {
  static auto c = reduction::build_context(2, 2);
  return c;
}

std::map<PointType2, uint64_t> count2(const reduction::ReductionContext& c) {
  std::map<PointType2, uint64_t> m;
  for (auto t : c.pg2_type) ++m[t];
  return m;
}

std::map<PointType8, uint64_t> count8(const reduction::ReductionContext& c) {
  std::map<PointType8, uint64_t> m;
  for (auto t : c.pg8_type) ++m[t];
  return m;
}

}  // namespace

TEST_CASE("big_theta basics") {
  const auto& c = ctx3();
  CHECK(reduction::big_theta(c.spec, 1, 0, 0) ==
        pg::make_vec({1, 0, 0, 0, 0, 0, 0, 0, 0}));
  CHECK_THROWS_AS(reduction::big_theta(c.spec, 0, 0, 0), std::invalid_argument);

  // the normalized Theta-images of (lambda, 0, 0) form a plane of 13 points
  std::set<Vec> pts;
  for (Code lam = 1; lam < c.q3; ++lam)
    pts.insert(pg::normalize(c.Fq(), reduction::big_theta(c.spec, lam, 0, 0)));
  CHECK(pts.size() == 13);
  auto sp = pg::span_points(c.Fq(), {pts.begin(), pts.end()});
  CHECK(sp.dim() == 2);
}

TEST_CASE("sigma matches phi through Theta") {
  const auto& c = ctx3();
  std::mt19937_64 rng(7);
  // random triples
  for (int t = 0; t < 100; ++t) {
    Code x = static_cast<Code>(rng() % c.q3), y = static_cast<Code>(rng() % c.q3),
         z = static_cast<Code>(rng() % c.q3);
    if (x == 0 && y == 0 && z == 0) continue;
    auto lhs = pg::apply(c.Fq(), c.sigma, reduction::big_theta(c.spec, x, y, z));
    auto rhs = pg::normalize(
        c.Fq(), reduction::big_theta(c.spec, c.spec.frobenius(z, 1), c.spec.frobenius(x, 1),
                                     c.spec.frobenius(y, 1)));
    CHECK(lhs == rhs);
  }
  // all 757 spread representatives
  for (uint32_t id = 0; id < c.n2; ++id) {
    Vec v = c.pg2_point(id);
    auto lhs = pg::apply(c.Fq(), c.sigma, reduction::big_theta(c.spec, v.c[0], v.c[1], v.c[2]));
    auto rhs = pg::normalize(c.Fq(),
                             reduction::big_theta(c.spec, c.spec.frobenius(v.c[2], 1),
                                                  c.spec.frobenius(v.c[0], 1),
                                                  c.spec.frobenius(v.c[1], 1)));
    CHECK(lhs == rhs);
  }
  // M^3 is the identity matrix for the canonical Frobenius matrix
  auto m3 = pg::mat_mul(c.Fq(), c.sigma.m, pg::mat_mul(c.Fq(), c.sigma.m, c.sigma.m));
  CHECK(m3 == pg::mat_identity(9));
  // sigma fixes the plane {Theta(x, x^q, x^{q^2})} pointwise
  for (Code x = 1; x < c.q3; ++x) {
    Vec v = reduction::big_theta(c.spec, x, c.spec.frobenius(x, 1), c.spec.frobenius(x, 2));
    CHECK(pg::apply(c.Fq(), c.sigma, v) == pg::normalize(c.Fq(), v));
  }
}

TEST_CASE("spread partitions PG(8,q) and sigma has order 3") {
  for (const auto* c : {&ctx3(), &ctx4()}) {
    CHECK(c->spread.size() == c->n2);
    // the partition is enforced at build time; check orbit structure here
    uint64_t moved = 0;
    for (uint32_t pid = 0; pid < c->n8; ++pid) {
      uint32_t p1 = c->sigma_map[pid];
      if (p1 == pid) continue;
      ++moved;
      uint32_t p2 = c->sigma_map[p1];
      CHECK(p2 != pid);
      CHECK(c->sigma_map[p2] == pid);
    }
    CHECK(moved % 3 == 0);
  }
}

TEST_CASE("point type census of PG(2,q^3)") {
  auto m3 = count2(ctx3());
  CHECK(m3[PointType2::TypeI] == 13);
  CHECK(m3[PointType2::TypeII] == 312);
  CHECK(m3[PointType2::TypeIII] == 432);

  auto m4 = count2(ctx4());
  CHECK(m4[PointType2::TypeI] == 21);
  CHECK(m4[PointType2::TypeII] == 1260);
  CHECK(m4[PointType2::TypeIII] == 2880);
  CHECK(m4[PointType2::TypeI] + m4[PointType2::TypeII] + m4[PointType2::TypeIII] == 4161);

  // (1,1,1) is fixed by (x,y,z) -> (z^q,x^q,y^q)
  const auto& c = ctx3();
  uint32_t id = c.pg2_id(pg::make_vec({1, 1, 1}));
  CHECK(c.pg2_type[id] == PointType2::TypeI);
}

TEST_CASE("line type census of PG(2,q^3)") {
  std::map<PointType2, uint64_t> m;
  for (auto t : ctx3().pg2_line_type) ++m[t];
  CHECK(m[PointType2::TypeI] == 13);
  CHECK(m[PointType2::TypeII] == 312);
  CHECK(m[PointType2::TypeIII] == 432);
}

TEST_CASE("six point types of PG(8,q)") {
  auto m3 = count8(ctx3());
  CHECK(m3[PointType8::Fixed] == 13);
  CHECK(m3[PointType8::Icolinear] == 39);
  CHECK(m3[PointType8::Itriangle] == 117);
  CHECK(m3[PointType8::IIcolinear] == 312);
  CHECK(m3[PointType8::IItriangle] == 3744);
  CHECK(m3[PointType8::IIItriangle] == 5616);

  // every point of a type-III spread plane is a triangle point
  const auto& c = ctx3();
  for (uint32_t id = 0; id < c.n2; ++id) {
    if (c.pg2_type[id] != PointType2::TypeIII) continue;
    for (uint32_t pid : pg::point_ids_of(c.Fq(), c.spread[id]))
      CHECK(c.pg8_type[pid] == PointType8::IIItriangle);
    break;
  }
}

TEST_CASE("six point types of PG(8,q) at q=5") {
  auto c = reduction::build_context(5, 1);
  auto m = count8(c);
  CHECK(m[PointType8::Fixed] == 31);
  CHECK(m[PointType8::Icolinear] == 186);
  CHECK(m[PointType8::Itriangle] == 744);
  CHECK(m[PointType8::IIcolinear] == 3720);
  CHECK(m[PointType8::IItriangle] == 111600);
  CHECK(m[PointType8::IIItriangle] == 372000);
  uint64_t total = 0;
  for (auto [t, n] : m) total += n;
  CHECK(total == 488281);
}

TEST_CASE("back map") {
  const auto& c = ctx3();
  // a single point of a spread plane maps back to that point alone
  uint32_t id = 123 % c.n2;
  auto pts = pg::points_of(c.Fq(), c.spread[id]);
  CHECK(reduction::back_map(c, {pts[0]}) == std::vector<uint32_t>{id});
  CHECK(reduction::back_map_sub(c, c.spread[id]) == std::vector<uint32_t>{id});

  // the 5-space of a line maps back to the q^3+1 points of the line
  uint32_t lid = 77;
  auto h5 = c.h5_of_line(lid);
  CHECK(h5.dim() == 5);
  auto expect = c.pg2_line_point_ids(lid);
  std::sort(expect.begin(), expect.end());
  CHECK(reduction::back_map_sub(c, h5) == expect);
}

TEST_CASE("incidence geometry of spread planes and 5-spaces") {
  const auto& c = ctx3();
  std::mt19937_64 rng(11);
  // any two spread planes span a 5-space with q^3+1 spread planes inside;
  // any two such 5-spaces meet in a spread plane
  for (int t = 0; t < 50; ++t) {
    uint32_t a = static_cast<uint32_t>(rng() % c.n2);
    uint32_t b = static_cast<uint32_t>(rng() % c.n2);
    if (a == b) continue;
    auto s5 = pg::span(c.Fq(), c.spread[a], c.spread[b]);
    CHECK(s5.dim() == 5);
    uint32_t lid = c.pg2_line_through(a, b);
    uint32_t inside = 0;
    for (uint32_t pid : c.pg2_line_point_ids(lid))
      if (pg::sub_contains(c.Fq(), s5, c.spread[pid])) ++inside;
    CHECK(inside == c.q3 + 1);
  }
  for (int t = 0; t < 50; ++t) {
    uint32_t l1 = static_cast<uint32_t>(rng() % c.n2);
    uint32_t l2 = static_cast<uint32_t>(rng() % c.n2);
    if (l1 == l2) continue;
    auto m = pg::meet(c.Fq(), c.h5_of_line(l1), c.h5_of_line(l2));
    CHECK(m.dim() == 2);
    // the meet is the spread plane of the common point
    Vec d1 = c.pg2_point(l1), d2 = c.pg2_point(l2);
    Vec common = pg::normalize(c.Fq3(), pg::cross3(c.Fq3(), d1, d2));
    CHECK(m == c.spread[c.pg2_id(common)]);
  }
}

TEST_CASE("the 5-space family is a dual spread") {
  const auto& c = ctx3();
  std::mt19937_64 rng(13);
  // every 7-space contains exactly one of the line 5-spaces
  for (int t = 0; t < 20; ++t) {
    Vec d;
    d.n = 9;
    do {
      for (int i = 0; i < 9; ++i) d.c[i] = static_cast<Code>(rng() % c.q);
    } while (pg::is_zero(d));
    auto h7 = pg::subspace_from_dual(c.Fq(), {d});
    REQUIRE(h7.dim() == 7);
    uint32_t inside = 0;
    for (uint32_t lid = 0; lid < c.n2; ++lid)
      if (pg::sub_contains(c.Fq(), h7, c.h5_of_line(lid))) ++inside;
    CHECK(inside == 1);
  }
}

TEST_CASE("GF(q)-sublines become 2-reguli") {
  const auto& c = ctx3();
  // take a type-I line and its q+1 subplane points
  for (uint32_t lid = 0; lid < c.n2; ++lid) {
    if (c.pg2_line_type[lid] != PointType2::TypeI) continue;
    std::vector<uint32_t> sub;
    for (uint32_t pid : c.pg2_line_point_ids(lid))
      if (c.pg2_type[pid] == PointType2::TypeI) sub.push_back(pid);
    REQUIRE(sub.size() == c.q + 1);
    // through each point of one plane there is a transversal line meeting
    // the two other planes; all q^2+q+1 of them must meet every plane
    const auto& Fq = c.Fq();
    auto s5 = pg::span(Fq, c.spread[sub[0]], c.spread[sub[1]]);
    uint32_t count = 0;
    for (const auto& X : pg::points_of(Fq, c.spread[sub[0]])) {
      auto z = pg::meet(Fq, pg::span_point(Fq, c.spread[sub[1]], X), c.spread[sub[2]]);
      REQUIRE(z.dim() == 0);
      auto line = pg::span_point(Fq, z, X);
      bool meets_all = true;
      for (uint32_t pid : sub)
        if (pg::meet(Fq, line, c.spread[pid]).dim() != 0) meets_all = false;
      if (meets_all) ++count;
      CHECK(pg::sub_contains(Fq, s5, line));
    }
    CHECK(count == c.q * c.q + c.q + 1);
    break;
  }
}

TEST_CASE("transversal planes of the type-I spread planes") {
  const auto& c = ctx3();
  const auto& Fq = c.Fq();
  CHECK(c.ruling_planes.size() == 13);
  std::vector<pg::Subspace> type1;
  for (uint32_t id = 0; id < c.n2; ++id)
    if (c.pg2_type[id] == PointType2::TypeI) type1.push_back(c.spread[id]);
  for (size_t i = 0; i < c.ruling_planes.size(); ++i) {
    for (size_t j = i + 1; j < c.ruling_planes.size(); ++j)
      CHECK(pg::meet(Fq, c.ruling_planes[i], c.ruling_planes[j]).empty());
    for (const auto& alpha : type1)
      CHECK(pg::meet(Fq, c.ruling_planes[i], alpha).dim() == 0);
  }
}

TEST_CASE("conjugate collineation variant builds and partitions") {
  auto c = reduction::build_context(3, 1, true);
  auto m = count8(c);
  // same orbit census as the standard choice
  CHECK(m[PointType8::Fixed] == 13);
  CHECK(m[PointType8::IIItriangle] == 5616);
}
