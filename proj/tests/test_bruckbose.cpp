#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "boserep/bruckbose.hpp"

using namespace boserep;
using gf::Code;
using pg::Subspace;
using pg::Vec;
using reduction::PointType2;

namespace {

const bruckbose::BruckBoseContext& bb3() {
  static auto* c = new bruckbose::BruckBoseContext(bruckbose::build_bb_context(3, 1));
  return *c;
}

}  // namespace

TEST_CASE("the alternating form lands in GF(q) and detects types I and II") {
  const auto& ctx = bb3();
  const auto& s = ctx.spec;
  // all 729 pairs: value in the subfield, zero exactly on types I and II
  int zeros = 0;
  for (Code x = 0; x < s.q3; ++x)
    for (Code y = 0; y < s.q3; ++y) {
      Code f = bruckbose::f_eval(s, x, y);
      CHECK(s.in_mid_subfield(f));
      uint32_t id = ctx.pg2_id(pg::normalize(s.f_q3, pg::make_vec({x, y, 1})));
      bool type12 = ctx.pg2_type[id] != PointType2::TypeIII;
      CHECK((f == 0) == type12);
      if (f == 0) ++zeros;
    }
  CHECK(zeros == 297);

  // subfield pairs have coinciding conjugates, so the form vanishes
  for (Code x = 0; x < s.q; ++x)
    for (Code y = 0; y < s.q; ++y) CHECK(bruckbose::f_eval(s, x, y) == 0);
}

TEST_CASE("the form factors through the coordinate bracket") {
  const auto& ctx = bb3();
  const auto& s = ctx.spec;
  const auto& F = s.f_q3;
  // witness with x1 y2 - x2 y1 = 1 pins the scalar
  Code tau = s.tau, tau2 = F.mul(tau, tau);
  Code beta = bruckbose::f_eval(s, tau, tau2);
  CHECK(beta != 0);
  CHECK(s.in_mid_subfield(beta));
  for (Code x = 0; x < s.q3; ++x)
    for (Code y = 0; y < s.q3; ++y) {
      auto tx = s.theta(x), ty = s.theta(y);
      Code bracket = s.f_q.sub(s.f_q.mul(tx[1], ty[2]), s.f_q.mul(tx[2], ty[1]));
      CHECK(bruckbose::f_eval(s, x, y) == F.mul(beta, bracket));
    }
}

TEST_CASE("the model map intertwines the two collineations") {
  const auto& ctx = bb3();
  for (uint32_t pid6 = 0; pid6 < ctx.n6; ++pid6) {
    uint32_t img6 = ctx.varphi_map[pid6];
    CHECK(ctx.model_pg2[img6] == ctx.phi_map[ctx.model_pg2[pid6]]);
    CHECK(ctx.at_infinity[img6] == ctx.at_infinity[pid6]);
  }
}

TEST_CASE("affine quadric points are exactly the affine I- and II-points") {
  const auto& ctx = bb3();
  const auto& Fq = ctx.Fq();
  size_t on_quadric = 0;
  for (uint32_t pid = 0; pid < ctx.n6; ++pid) {
    if (ctx.at_infinity[pid]) continue;
    bool on = ctx.quadric.eval(Fq, ctx.pg6_point(pid)) == 0;
    bool type12 = ctx.pg2_type[ctx.model_pg2[pid]] != PointType2::TypeIII;
    CHECK(on == type12);
    if (on) ++on_quadric;
  }
  CHECK(on_quadric == 297);
}

TEST_CASE("singular locus of the quadric is the fixed plane") {
  const auto& ctx = bb3();
  const auto& Fq = ctx.Fq();
  size_t singular = 0;
  for (uint32_t pid = 0; pid < ctx.n6; ++pid) {
    Vec X = ctx.pg6_point(pid);
    if (ctx.quadric.eval(Fq, X) != 0) continue;
    bool sing = true;
    for (int j = 0; j < 7 && sing; ++j) {
      Vec ej{};
      ej.n = 7;
      ej.c[j] = 1;
      if (ctx.quadric.polar(Fq, X, ej) != 0) sing = false;
    }
    if (!sing) continue;
    ++singular;
    CHECK(pg::contains(Fq, ctx.pi_fix, X));
  }
  CHECK(singular == 13);  // q^2+q+1

  // base: cut with the 3-space x0 = y0 = z = 0, disjoint from the vertex
  auto base3 = pg::subspace_from_dual(
      Fq, {pg::make_vec({1, 0, 0, 0, 0, 0, 0}), pg::make_vec({0, 0, 0, 1, 0, 0, 0}),
           pg::make_vec({0, 0, 0, 0, 0, 0, 1})});
  REQUIRE(base3.dim() == 3);
  CHECK(pg::meet(Fq, base3, ctx.pi_fix).empty());
  auto slice = bruckbose::slice_quadric(Fq, ctx.quadric, base3);
  CHECK(slice.zero.size() == 16);  // (q+1)^2, the hyperbolic count
  CHECK(slice.radical.empty());
}

TEST_CASE("quadric slices over the lines of the small plane") {
  const auto& ctx = bb3();
  const auto& Fq = ctx.Fq();
  const int64_t q = ctx.q;
  // infinite spread planes: type-I planes lie on the quadric, type-II planes
  // cut non-degenerate conics
  int planes1 = 0, planes2 = 0;
  for (uint32_t pid2 : ctx.pg2_line_point_ids(ctx.linf_id)) {
    Vec P = ctx.pg2_point(pid2);
    auto plane = ctx.inf_spread_plane(P.c[0], P.c[1]);
    auto slice = bruckbose::slice_quadric(Fq, ctx.quadric, plane);
    if (ctx.pg2_type[pid2] == PointType2::TypeI) {
      ++planes1;
      CHECK(slice.zero.size() == 13);  // the whole plane
    } else {
      ++planes2;
      CHECK(slice.zero.size() == static_cast<size_t>(q) + 1);
      // non-degenerate: no singular point on it, and not a line
      for (const auto& r : slice.radical) {
        bool on = ctx.quadric.eval(Fq, r) == 0;
        CHECK_FALSE(on);
      }
      auto sp = pg::span_points(Fq, slice.zero);
      CHECK(sp.dim() == 2);
    }
  }
  CHECK(planes1 == 4);
  CHECK(planes2 == 24);

  // the three clause shapes over affine lines
  int clause2 = 0, clause3 = 0, clause4 = 0;
  for (uint32_t lid = 0; lid < ctx.n2; ++lid) {
    if (lid == ctx.linf_id) continue;
    auto lt = ctx.pg2_line_type[lid];
    if (lt == PointType2::TypeI) continue;
    uint32_t inf_pt = UINT32_MAX;
    for (uint32_t pid : ctx.pg2_line_point_ids(lid)) {
      Vec P = ctx.pg2_point(pid);
      if (P.c[2] == 0) inf_pt = pid;
    }
    auto it = ctx.pg2_type[inf_pt];
    if (it == PointType2::TypeIII) continue;
    auto s3 = ctx.line_3space(lid);
    auto slice = bruckbose::slice_quadric(Fq, ctx.quadric, s3);
    // affine I / II points inside the 3-space
    std::vector<Vec> affI, affII;
    for (const auto& X : slice.zero) {
      uint32_t pid6 = ctx.pg6_id(X);
      if (ctx.at_infinity[pid6]) continue;
      if (ctx.pg2_type[ctx.model_pg2[pid6]] == PointType2::TypeI) affI.push_back(X);
      else affII.push_back(X);
    }
    if (lt == PointType2::TypeII && it == PointType2::TypeI) {
      ++clause2;
      CHECK(affI.empty());
      CHECK(affII.size() == static_cast<size_t>(q * q));
      auto sp = pg::span_points(Fq, affII);
      CHECK(sp.dim() == 2);
      auto at_inf = pg::meet(Fq, sp, ctx.sigma_inf);
      CHECK(at_inf.dim() == 1);
      CHECK(pg::points_of(Fq, sp).size() - pg::points_of(Fq, at_inf).size() == affII.size());
    } else if (lt == PointType2::TypeII && it == PointType2::TypeII) {
      ++clause3;
      CHECK(affI.size() == 1);
      CHECK(affII.size() == static_cast<size_t>(q * q - 1));
      // quadratic cone with the affine I-point as vertex
      CHECK(slice.zero.size() == static_cast<size_t>(q * q + q + 1));
      REQUIRE(slice.radical.size() == 1);
      CHECK(slice.radical[0] == affI[0]);
      for (const auto& X : slice.zero) {
        if (X == affI[0]) continue;
        for (const auto& Y : pg::line_points(Fq, affI[0], X))
          CHECK(ctx.quadric.eval(Fq, Y) == 0);
      }
    } else if (lt == PointType2::TypeIII && it == PointType2::TypeII) {
      ++clause4;
      CHECK(affI.empty());
      CHECK(affII.size() == static_cast<size_t>(q * q + q));
      // hyperbolic: (q+1)^2 points, no singular point
      CHECK(slice.zero.size() == static_cast<size_t>((q + 1) * (q + 1)));
      CHECK(slice.radical.empty());
    }
  }
  CHECK(clause2 == 96);
  CHECK(clause3 == 216);
  CHECK(clause4 == 432);
}

TEST_CASE("fixed points of the induced map across the case split") {
  struct Case { uint32_t p, k; uint64_t expect; size_t extra; };
  for (auto c : {Case{3, 1, 13, 0}, Case{2, 2, 31, 2}, Case{5, 1, 31, 0}}) {
    auto ctx = bruckbose::build_bb_context(c.p, c.k);
    auto rep = bruckbose::fixed_points_pg6(ctx);
    CHECK(rep.ok);
    CHECK(rep.fixed_ids.size() == c.expect);  // q^2 + gq + g
    CHECK(rep.extra_lines.size() == c.extra);
  }
}

TEST_CASE("fixed lines at infinity behave like a type-I 5-space") {
  struct Case { uint32_t p, k; size_t ptwise, fixed1, fixed2, reguli; };
  for (auto c : {Case{3, 1, 1, 4, 8, 1}, Case{2, 2, 3, 15, 60, 3}, Case{5, 1, 1, 6, 20, 1}}) {
    auto ctx = bruckbose::build_bb_context(c.p, c.k);
    auto inf = bruckbose::sigma_inf_fixed_lines(ctx);
    CHECK(inf.ptwise.size() == c.ptwise);
    CHECK(inf.fixed1.size() == c.fixed1);
    CHECK(inf.fixed2.size() == c.fixed2);
    REQUIRE(inf.reguli.size() == c.reguli);
    for (const auto& reg : inf.reguli) {
      REQUIRE(reg.size() == ctx.q + 1);
      CHECK(fixed::verify_regulus(ctx.Fq(), reg).has_value());
    }
  }
}

TEST_CASE("affine fixed lines arise from the pencil construction") {
  // present when q is not -1 mod 3, absent at q=5
  {
    const auto& ctx = bb3();
    auto aff = bruckbose::affine_fixed_lines(ctx);
    CHECK(aff.ptwise.size() == 12);  // q^2+q affine lines of the fixed plane
    CHECK(!aff.fixed2.empty());
    auto pencil = bruckbose::pencil_construction_lines(ctx);
    CHECK(std::set<Subspace>(aff.fixed2.begin(), aff.fixed2.end()) ==
          std::set<Subspace>(pencil.begin(), pencil.end()));
    // every such line is invariant
    for (const auto& l : aff.fixed2)
      CHECK(pg::apply_sub(ctx.Fq(), ctx.varphi, l) == l);
  }
  {
    auto ctx = bruckbose::build_bb_context(2, 2);
    auto aff = bruckbose::affine_fixed_lines(ctx);
    CHECK(aff.ptwise.size() == 20);
    CHECK(aff.fixed2.size() == 160);
    auto pencil = bruckbose::pencil_construction_lines(ctx);
    CHECK(std::set<Subspace>(aff.fixed2.begin(), aff.fixed2.end()) ==
          std::set<Subspace>(pencil.begin(), pencil.end()));
    // with the literal vertex the pencil lines are not even invariant here:
    // the induced map is a homology centred at the other fixed point of m
    auto literal = bruckbose::pencil_construction_lines(ctx, true);
    std::set<Subspace> truth(aff.fixed2.begin(), aff.fixed2.end());
    for (const auto& t : literal) CHECK_FALSE(truth.count(t));
  }
  {
    auto ctx = bruckbose::build_bb_context(5, 1);
    auto aff = bruckbose::affine_fixed_lines(ctx);
    CHECK(aff.ptwise.size() == 30);
    CHECK(aff.fixed2.empty());
    CHECK(bruckbose::pencil_construction_lines(ctx).empty());
  }
}

TEST_CASE("slicing the 9-coordinate model reproduces the quadric picture") {
  auto ctx8 = reduction::build_context(3, 1);
  auto fs = fixed::enumerate_fixed(ctx8);
  auto rep = bruckbose::slicing_crosscheck(ctx8, fs);
  INFO(rep.failure);
  CHECK(rep.ok);
  CHECK(rep.fit_dimension == 1);
  CHECK(rep.affine_quadric_points == 297);
  CHECK(rep.total_quadric_points == 445);
  CHECK(rep.singular_points == 13);
}
