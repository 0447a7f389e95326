#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "boserep/linsets.hpp"

using namespace boserep;
using fixed::LineClass;
using fixed::PlaneClass;
using linsets::LinearSetKind;
using pg::Subspace;
using reduction::PointType2;

namespace {

struct Bundle {
  reduction::ReductionContext ctx;
  fixed::FixedSubspaces fs;
};

const Bundle& b3() {
  static Bundle* b = [] {
    auto* r = new Bundle{reduction::build_context(3, 1), {}};
    r->fs = fixed::enumerate_fixed(r->ctx);
    return r;
  }();
  return *b;
}

const Bundle& b4() {
  static Bundle* b = [] {
    auto* r = new Bundle{reduction::build_context(2, 2), {}};
    r->fs = fixed::enumerate_fixed(r->ctx);
    return r;
  }();
  return *b;
}

// whether a plane's back image lies on one line of PG(2,q^3)
bool back_image_collinear(const reduction::ReductionContext& ctx, const Subspace& pl) {
  auto ids = reduction::back_map_sub(ctx, pl);
  return linsets::collinear_set(ctx, ids);
}

}  // namespace

TEST_CASE("weight identity and basic images") {
  const auto& [ctx, fs] = b3();
  // single point source
  auto pt = pg::point_subspace(ctx.Fq(), ctx.pg8_point(42));
  auto ls = linsets::linear_set(ctx, pt);
  CHECK(ls.rank == 1);
  CHECK(ls.points.size() == 1);
  CHECK(ls.weight.begin()->second == 1);

  // the ptwise-fixed plane maps onto the q^2+q+1 type-I points, weight 1
  auto ls2 = linsets::linear_set(ctx, fs.ptwise_planes[0]);
  CHECK(ls2.points.size() == 13);
  for (uint32_t id : ls2.points) {
    CHECK(ctx.pg2_type[id] == PointType2::TypeI);
    CHECK(ls2.weight[id] == 1);
  }
  auto cls2 = linsets::classify_linear_set(ctx, ls2);
  CHECK(cls2.kind == LinearSetKind::FqSubplane);
}

TEST_CASE("subline machinery") {
  const auto& [ctx, fs] = b3();
  // the back image of a ptwise-fixed line is a subline of q+1 type-I points
  for (size_t i = 0; i < fs.lines.size(); ++i) {
    if (fs.line_class[i] != LineClass::PtwiseFixed) continue;
    auto ls = linsets::linear_set(ctx, fs.lines[i]);
    CHECK(ls.rank == 2);
    CHECK(ls.points.size() == 4);
    auto cls = linsets::classify_linear_set(ctx, ls);
    CHECK(cls.kind == LinearSetKind::FqLine);
    CHECK(cls.type_counts == std::array<int64_t, 3>{4, 0, 0});
    break;
  }
  // a full line of PG(2,q^3) is not a subline
  auto full = ctx.pg2_line_point_ids(5);
  auto sub = linsets::subline_through(ctx, full[0], full[1], full[2]);
  CHECK(sub.size() == 4);
  CHECK(sub != std::set<uint32_t>(full.begin(), full.end()));
}

TEST_CASE("Table 1 rows hold exhaustively at q=3") {
  const auto& [ctx, fs] = b3();
  const int64_t q = 3, g = 1, n = 0, v = 13;

  // fixed points: single type-I points
  for (uint32_t pid : fs.fixed_point_ids) {
    auto ls = linsets::linear_set(ctx, pg::point_subspace(ctx.Fq(), ctx.pg8_point(pid)));
    auto cls = linsets::classify_linear_set(ctx, ls);
    CHECK(cls.kind == LinearSetKind::SinglePoint);
    CHECK(ctx.pg2_type[ls.points[0]] == PointType2::TypeI);
  }

  // fixed lines by class
  for (size_t i = 0; i < fs.lines.size(); ++i) {
    auto ls = linsets::linear_set(ctx, fs.lines[i]);
    auto cls = linsets::classify_linear_set(ctx, ls);
    switch (fs.line_class[i]) {
      case LineClass::PtwiseFixed:
        CHECK(cls.kind == LinearSetKind::FqLine);
        CHECK(cls.type_counts == std::array<int64_t, 3>{q + 1, 0, 0});
        break;
      case LineClass::FixedI:
        CHECK(cls.kind == LinearSetKind::SinglePoint);
        CHECK(ctx.pg2_type[ls.points[0]] == PointType2::TypeI);
        CHECK(ls.weight[ls.points[0]] == 2);
        break;
      case LineClass::FixedII:
        CHECK(cls.kind == LinearSetKind::FqLine);
        CHECK(cls.type_counts == std::array<int64_t, 3>{n + 1, q - n, 0});
        break;
    }
  }

  // fixed planes by class
  for (size_t i = 0; i < fs.planes.size(); ++i) {
    auto ls = linsets::linear_set(ctx, fs.planes[i]);
    auto cls = linsets::classify_linear_set(ctx, ls);
    switch (fs.plane_class[i]) {
      case PlaneClass::PtwiseFixed:
        CHECK(cls.kind == LinearSetKind::FqSubplane);
        CHECK(cls.type_counts == std::array<int64_t, 3>{v, 0, 0});
        break;
      case PlaneClass::SplaneI:
        CHECK(cls.kind == LinearSetKind::SinglePoint);
        break;
      case PlaneClass::FixedII1:
        CHECK(cls.kind == LinearSetKind::Club);
        CHECK(cls.type_counts == std::array<int64_t, 3>{g - n, q * q - g + n + 1, 0});
        REQUIRE(cls.head.has_value());
        CHECK(ctx.pg2_type[*cls.head] == PointType2::TypeI);
        break;
      case PlaneClass::FixedII2:
        CHECK(cls.kind == LinearSetKind::Scattered);
        CHECK(cls.type_counts == std::array<int64_t, 3>{g, v - g, 0});
        break;
      case PlaneClass::FixedIII:
        CHECK(cls.kind == LinearSetKind::FqSubplane);
        CHECK(cls.type_counts ==
              std::array<int64_t, 3>{g, g * (q - n), v - g * (q - n + 1)});
        break;
      case PlaneClass::H1:
        CHECK(cls.kind == LinearSetKind::Club);
        CHECK(cls.type_counts == std::array<int64_t, 3>{q + 1, q * q - q, 0});
        REQUIRE(cls.head.has_value());
        CHECK(ctx.pg2_type[*cls.head] == PointType2::TypeI);
        break;
      case PlaneClass::H2:
        // scattered on a line inside a type-I 5-space, a subplane otherwise
        if (back_image_collinear(ctx, fs.planes[i]))
          CHECK(cls.kind == LinearSetKind::Scattered);
        else
          CHECK(cls.kind == LinearSetKind::FqSubplane);
        CHECK(cls.type_counts == std::array<int64_t, 3>{q + 1 + n, q * q - n, 0});
        break;
    }
  }

  // the hwise-fixed 5-space gives the rank-6 set of all type I and II points
  auto ls6 = linsets::linear_set(ctx, fs.hwise_5spaces[0]);
  CHECK(ls6.rank == 6);
  auto cls6 = linsets::classify_linear_set(ctx, ls6);
  CHECK(cls6.kind == LinearSetKind::Rank6AllTypeIandII);
  for (uint32_t id : ls6.points)
    CHECK(ls6.weight[id] == (ctx.pg2_type[id] == PointType2::TypeI ? 2 : 1));
}

TEST_CASE("Table 1 rows on samples at q=4") {
  const auto& [ctx, fs] = b4();
  const int64_t q = 4, g = 3, n = 1, v = 21;
  std::mt19937_64 rng(29);
  std::map<PlaneClass, int> seen;
  int scattered_h2 = 0, subplane_h2 = 0;
  for (int t = 0; t < 400; ++t) {
    size_t i = rng() % fs.planes.size();
    if (seen[fs.plane_class[i]] > 25) continue;
    ++seen[fs.plane_class[i]];
    auto ls = linsets::linear_set(ctx, fs.planes[i]);
    auto cls = linsets::classify_linear_set(ctx, ls);
    switch (fs.plane_class[i]) {
      case PlaneClass::PtwiseFixed:
        CHECK(cls.kind == LinearSetKind::FqSubplane);
        break;
      case PlaneClass::SplaneI:
        CHECK(cls.kind == LinearSetKind::SinglePoint);
        break;
      case PlaneClass::FixedII1:
        CHECK(cls.kind == LinearSetKind::Club);
        CHECK(cls.type_counts == std::array<int64_t, 3>{g - n, q * q - g + n + 1, 0});
        REQUIRE(cls.head.has_value());
        CHECK(ctx.pg2_type[*cls.head] == PointType2::TypeI);
        break;
      case PlaneClass::FixedII2:
        CHECK(cls.kind == LinearSetKind::Scattered);
        CHECK(cls.type_counts == std::array<int64_t, 3>{g, v - g, 0});
        break;
      case PlaneClass::FixedIII:
        CHECK(cls.kind == LinearSetKind::FqSubplane);
        CHECK(cls.type_counts ==
              std::array<int64_t, 3>{g, g * (q - n), v - g * (q - n + 1)});
        break;
      case PlaneClass::H1:
        CHECK(cls.kind == LinearSetKind::Club);
        CHECK(cls.type_counts == std::array<int64_t, 3>{q + 1, q * q - q, 0});
        break;
      case PlaneClass::H2:
        CHECK(cls.type_counts == std::array<int64_t, 3>{q + 1 + n, q * q - n, 0});
        if (back_image_collinear(ctx, fs.planes[i])) {
          CHECK(cls.kind == LinearSetKind::Scattered);
          ++scattered_h2;
        } else {
          CHECK(cls.kind == LinearSetKind::FqSubplane);
          ++subplane_h2;
        }
        break;
    }
  }
  // Every h-plane inside a type-I 5-space picks up a fixed-I line through
  // the axis point and is therefore an h1-plane, so the scattered branch of
  // the h2 dichotomy is empty here and all sampled h2 images are subplanes.
  CHECK(scattered_h2 == 0);
  CHECK(subplane_h2 > 0);
}

TEST_CASE("no h2-plane lies in a type-I 5-space at q=3") {
  const auto& [ctx, fs] = b3();
  for (size_t i = 0; i < fs.planes.size(); ++i) {
    if (fs.plane_class[i] != PlaneClass::H2) continue;
    CHECK_FALSE(back_image_collinear(ctx, fs.planes[i]));
  }
}

TEST_CASE("unique fixed transversal plane over a fixed subplane") {
  const auto& [ctx, fs] = b3();
  // the rational subplane: exactly one fixed plane maps onto it
  std::vector<uint32_t> rational;
  for (uint32_t id = 0; id < ctx.n2; ++id)
    if (ctx.pg2_type[id] == PointType2::TypeI) rational.push_back(id);
  CHECK(linsets::lemma24_check(ctx, rational) == 1);

  // back images of fixed-III planes: one fixed transversal plane each
  int done = 0;
  for (size_t i = 0; i < fs.planes.size() && done < 5; ++i) {
    if (fs.plane_class[i] != PlaneClass::FixedIII) continue;
    ++done;
    auto ids = reduction::back_map_sub(ctx, fs.planes[i]);
    REQUIRE(linsets::is_fq_subplane(ctx, ids));
    CHECK(linsets::lemma24_check(ctx, ids) == 1);
  }
}

TEST_CASE("three fixed transversal planes when g=3") {
  const auto& [ctx, fs] = b4();
  std::vector<uint32_t> rational;
  for (uint32_t id = 0; id < ctx.n2; ++id)
    if (ctx.pg2_type[id] == PointType2::TypeI) rational.push_back(id);
  CHECK(linsets::lemma24_check(ctx, rational) == 3);

  int done = 0;
  for (size_t i = 0; i < fs.planes.size() && done < 3; ++i) {
    if (fs.plane_class[i] != PlaneClass::FixedIII) continue;
    ++done;
    auto ids = reduction::back_map_sub(ctx, fs.planes[i]);
    CHECK(linsets::lemma24_check(ctx, ids) == 3);
  }
}
