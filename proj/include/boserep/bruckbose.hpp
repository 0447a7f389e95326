#pragma once

// The PG(6,q) model of PG(2,q^3): affine points are (theta(x), theta(y), 1),
// the hyperplane at infinity carries the induced 2-spread, and the order-3
// map here is the diagonal one (x,y,z) -> (x^q, y^q, z^q) fixing the
// rational subplane {(x,y,z) : x,y,z in GF(q)}.  The headline fact checked
// by this module: the affine I- and II-points are exactly the affine points
// of one degenerate quadric.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "boserep/fixed.hpp"
#include "boserep/reduction.hpp"

namespace boserep::bruckbose {

using gf::Code;
using pg::Subspace;
using pg::Vec;
using reduction::PointType2;

/// Quadratic form in n variables, coefficients indexed over monomials
/// v_i v_j with i <= j.
struct QuadForm {
  int nvars = 0;
  std::vector<Code> coef;

  static int index(int nvars, int i, int j) {
    return i * nvars - i * (i - 1) / 2 + (j - i);
  }
  Code at(int i, int j) const { return coef[index(nvars, i, j)]; }

  Code eval(const gf::SmallField& F, const Vec& v) const {
    Code s = 0;
    for (int i = 0; i < nvars; ++i) {
      if (!v.c[i]) continue;
      for (int j = i; j < nvars; ++j)
        s = F.add(s, F.mul(at(i, j), F.mul(v.c[i], v.c[j])));
    }
    return s;
  }

  /// Polar form B(x,y) = Q(x+y) - Q(x) - Q(y); the right notion of
  /// singularity in every characteristic.
  Code polar(const gf::SmallField& F, const Vec& x, const Vec& y) const {
    Code s = 0;
    for (int i = 0; i < nvars; ++i)
      for (int j = i; j < nvars; ++j) {
        Code t = (i == j) ? F.mul(F.add(1, 1), F.mul(x.c[i], y.c[i]))
                          : F.add(F.mul(x.c[i], y.c[j]), F.mul(x.c[j], y.c[i]));
        s = F.add(s, F.mul(at(i, j), t));
      }
    return s;
  }
};

struct BruckBoseContext {
  gf::FieldSpec spec;
  gf::Params params;
  uint32_t q = 0, q3 = 0;
  uint32_t n2 = 0;  // points of PG(2,q^3)
  uint32_t n6 = 0;  // points of PG(6,q)

  pg::Collineation phi_diag;  // on PG(2,q^3)
  pg::Collineation varphi;    // on PG(6,q): block diagonal (A, A, 1)

  std::vector<PointType2> pg2_type;       // under the diagonal collineation
  std::vector<PointType2> pg2_line_type;  // line at infinity is type I
  std::vector<uint32_t> phi_map;

  Subspace pi_fix;     // {(a,0,0,b,0,0,c)}
  Subspace sigma_inf;  // hyperplane: last coordinate 0
  uint32_t linf_id = 0;  // dual id of the line z = 0

  // per PG(6,q) point: the PG(2,q^3) point it models (affine points) or the
  // infinite point whose spread plane contains it
  std::vector<uint32_t> model_pg2;
  std::vector<bool> at_infinity;
  std::vector<uint32_t> varphi_map;

  QuadForm quadric;  // x1 y2 - x2 y1 in coordinates (x0,x1,x2,y0,y1,y2,z)

  const gf::SmallField& Fq() const { return spec.f_q; }
  const gf::SmallField& Fq3() const { return spec.f_q3; }

  Vec pg6_point(uint32_t id) const { return pg::unrank_point(spec.f_q, 6, id); }
  uint32_t pg6_id(const Vec& v) const {
    return static_cast<uint32_t>(pg::rank_point(spec.f_q, v));
  }
  Vec pg2_point(uint32_t id) const { return pg::unrank_point(spec.f_q3, 2, id); }
  uint32_t pg2_id(const Vec& v) const {
    return static_cast<uint32_t>(pg::rank_point(spec.f_q3, v));
  }

  Vec affine_embed(Code x, Code y) const {
    Vec v;
    v.n = 7;
    auto tx = spec.theta(x), ty = spec.theta(y);
    for (int i = 0; i < 3; ++i) {
      v.c[i] = tx[i];
      v.c[3 + i] = ty[i];
    }
    v.c[6] = 1;
    return v;
  }

  /// Spread plane at infinity of the point (x, y, 0) of the infinite line.
  Subspace inf_spread_plane(Code x, Code y) const {
    const auto& F3 = spec.f_q3;
    Code tau = spec.tau, tau2 = F3.mul(tau, tau);
    auto row = [&](Code s) {
      Vec v;
      v.n = 7;
      auto tx = spec.theta(F3.mul(s, x)), ty = spec.theta(F3.mul(s, y));
      for (int i = 0; i < 3; ++i) {
        v.c[i] = tx[i];
        v.c[3 + i] = ty[i];
      }
      v.c[6] = 0;
      return v;
    };
    return pg::span_points(spec.f_q, {row(1), row(tau), row(tau2)});
  }

  std::vector<uint32_t> pg2_line_point_ids(uint32_t line_id) const {
    Vec d = pg::unrank_point(spec.f_q3, 2, line_id);
    auto L = pg::subspace_from_dual(spec.f_q3, {d});
    return pg::point_ids_of(spec.f_q3, L);
  }

  uint32_t pg2_line_through(uint32_t a, uint32_t b) const {
    Vec d = pg::cross3(spec.f_q3, pg2_point(a), pg2_point(b));
    return static_cast<uint32_t>(pg::rank_point(spec.f_q3, pg::normalize(spec.f_q3, d)));
  }

  /// The 3-space modelling a line of PG(2,q^3) other than the infinite one:
  /// the span of the spread plane of its infinite point with one affine point.
  Subspace line_3space(uint32_t line_id) const;
};

/// The alternating-sum form whose vanishing characterises types I and II:
/// (x y^q + x^q y^{q^2} + x^{q^2} y) - (x y^{q^2} + x^q y + x^{q^2} y^q).
inline Code f_eval(const gf::FieldSpec& s, Code x, Code y) {
  const auto& F = s.f_q3;
  Code xq = s.frobenius(x, 1), xq2 = s.frobenius(x, 2);
  Code yq = s.frobenius(y, 1), yq2 = s.frobenius(y, 2);
  Code lhs = F.add(F.add(F.mul(x, yq), F.mul(xq, yq2)), F.mul(xq2, y));
  Code rhs = F.add(F.add(F.mul(x, yq2), F.mul(xq, y)), F.mul(xq2, yq));
  return F.sub(lhs, rhs);
}

inline BruckBoseContext build_bb_context(uint32_t p, uint32_t k) {
  BruckBoseContext ctx;
  ctx.spec = gf::field_tower(p, k);
  ctx.params = ctx.spec.params;
  ctx.q = ctx.spec.q;
  ctx.q3 = ctx.spec.q3;
  ctx.n2 = static_cast<uint32_t>(pg::n_points(ctx.q3, 2));
  ctx.n6 = static_cast<uint32_t>(pg::n_points(ctx.q, 6));
  const auto& Fq = ctx.Fq();
  const auto& Fq3 = ctx.Fq3();

  ctx.phi_diag.m = pg::mat_identity(3);
  ctx.phi_diag.frob_power = 1;
  ctx.phi_diag.frob_table = &ctx.spec.frob_q_t;

  auto A = gf::frobenius_matrix(ctx.spec);
  ctx.varphi.m.rows = ctx.varphi.m.cols = 7;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      ctx.varphi.m.at(i, j) = A[i][j];
      ctx.varphi.m.at(3 + i, 3 + j) = A[i][j];
    }
  ctx.varphi.m.at(6, 6) = 1;

  // classification of PG(2,q^3) under the diagonal collineation
  ctx.phi_map.resize(ctx.n2);
  ctx.pg2_type.resize(ctx.n2);
  for (uint32_t id = 0; id < ctx.n2; ++id)
    ctx.phi_map[id] = ctx.pg2_id(pg::apply(Fq3, ctx.phi_diag, ctx.pg2_point(id)));
  for (uint32_t id = 0; id < ctx.n2; ++id) {
    uint32_t i1 = ctx.phi_map[id];
    if (i1 == id) {
      ctx.pg2_type[id] = PointType2::TypeI;
      continue;
    }
    uint32_t i2 = ctx.phi_map[i1];
    Code d = pg::det3(Fq3, ctx.pg2_point(id), ctx.pg2_point(i1), ctx.pg2_point(i2));
    ctx.pg2_type[id] = (d == 0) ? PointType2::TypeII : PointType2::TypeIII;
  }
  ctx.pg2_line_type.resize(ctx.n2);
  for (uint32_t lid = 0; lid < ctx.n2; ++lid) {
    int on_sub = 0;
    for (uint32_t pid : ctx.pg2_line_point_ids(lid))
      if (ctx.pg2_type[pid] == PointType2::TypeI) ++on_sub;
    ctx.pg2_line_type[lid] = (on_sub == static_cast<int>(ctx.q) + 1) ? PointType2::TypeI
                             : (on_sub == 1)                         ? PointType2::TypeII
                                                                     : PointType2::TypeIII;
  }
  ctx.linf_id = ctx.pg2_id(pg::make_vec({0, 0, 1}));
  if (ctx.pg2_line_type[ctx.linf_id] != PointType2::TypeI)
    throw std::runtime_error("line at infinity is not of type I");

  // pi_fix = {(a,0,0,b,0,0,c)} and the hyperplane at infinity z = 0
  {
    Vec e0{}, e1{}, e2{};
    e0.n = e1.n = e2.n = 7;
    e0.c[0] = 1;
    e1.c[3] = 1;
    e2.c[6] = 1;
    ctx.pi_fix = pg::span_points(Fq, {e0, e1, e2});
    Vec d{};
    d.n = 7;
    d.c[6] = 1;
    ctx.sigma_inf = pg::subspace_from_dual(Fq, {d});
  }

  // model map: affine points from affine PG(2,q^3) coordinates, infinite
  // points from the induced spread
  ctx.model_pg2.assign(ctx.n6, UINT32_MAX);
  ctx.at_infinity.assign(ctx.n6, false);
  for (Code x = 0; x < ctx.q3; ++x)
    for (Code y = 0; y < ctx.q3; ++y) {
      uint32_t pid6 = ctx.pg6_id(pg::normalize(Fq, ctx.affine_embed(x, y)));
      uint32_t pid2 = ctx.pg2_id(pg::normalize(Fq3, pg::make_vec({x, y, 1})));
      if (ctx.model_pg2[pid6] != UINT32_MAX)
        throw std::runtime_error("affine model map is not injective");
      ctx.model_pg2[pid6] = pid2;
    }
  for (uint32_t pid2 : ctx.pg2_line_point_ids(ctx.linf_id)) {
    Vec P = ctx.pg2_point(pid2);
    auto plane = ctx.inf_spread_plane(P.c[0], P.c[1]);
    if (plane.dim() != 2) throw std::runtime_error("infinite spread element is not a plane");
    for (uint32_t pid6 : pg::point_ids_of(Fq, plane)) {
      if (ctx.model_pg2[pid6] != UINT32_MAX)
        throw std::runtime_error("infinite spread overlaps the affine model");
      ctx.model_pg2[pid6] = pid2;
      ctx.at_infinity[pid6] = true;
    }
  }
  for (uint32_t pid6 = 0; pid6 < ctx.n6; ++pid6)
    if (ctx.model_pg2[pid6] == UINT32_MAX)
      throw std::runtime_error("model map does not cover PG(6,q)");

  ctx.varphi_map.resize(ctx.n6);
  for (uint32_t pid6 = 0; pid6 < ctx.n6; ++pid6)
    ctx.varphi_map[pid6] = ctx.pg6_id(pg::apply(Fq, ctx.varphi, ctx.pg6_point(pid6)));

  // the degenerate quadric x1 y2 - x2 y1
  ctx.quadric.nvars = 7;
  ctx.quadric.coef.assign(28, 0);
  ctx.quadric.coef[QuadForm::index(7, 1, 5)] = 1;
  ctx.quadric.coef[QuadForm::index(7, 2, 4)] = Fq.neg(1);

  return ctx;
}

inline Subspace BruckBoseContext::line_3space(uint32_t line_id) const {
  if (line_id == linf_id) throw std::invalid_argument("the infinite line has no 3-space");
  auto pts = pg2_line_point_ids(line_id);
  uint32_t inf_pt = UINT32_MAX, affine_pt = UINT32_MAX;
  for (uint32_t pid : pts) {
    Vec P = pg2_point(pid);
    if (P.c[2] == 0) inf_pt = pid;
    else if (affine_pt == UINT32_MAX) affine_pt = pid;
  }
  if (inf_pt == UINT32_MAX) throw std::runtime_error("line misses the infinite line");
  Vec Pinf = pg2_point(inf_pt);
  auto plane = inf_spread_plane(Pinf.c[0], Pinf.c[1]);
  Vec Paff = pg2_point(affine_pt);
  // normalize so the last homogeneous coordinate is 1
  Code inv = spec.f_q3.inv(Paff.c[2]);
  auto s3 = pg::span_point(spec.f_q, plane,
                           affine_embed(spec.f_q3.mul(Paff.c[0], inv),
                                        spec.f_q3.mul(Paff.c[1], inv)));
  if (s3.dim() != 3) throw std::runtime_error("line model is not a 3-space");
  return s3;
}

/// Fixed points of the induced map: q^2 + gq + g of them, the fixed plane
/// plus g-1 extra pointwise-fixed lines at infinity.
struct FixedPointReport {
  std::vector<uint32_t> fixed_ids;
  bool plane_fixed = false;
  std::vector<Subspace> extra_lines;
  bool ok = false;
};

inline FixedPointReport fixed_points_pg6(const BruckBoseContext& ctx) {
  const auto& Fq = ctx.Fq();
  FixedPointReport r;
  for (uint32_t pid = 0; pid < ctx.n6; ++pid)
    if (ctx.varphi_map[pid] == pid) r.fixed_ids.push_back(pid);
  r.plane_fixed = true;
  std::set<uint32_t> fixed(r.fixed_ids.begin(), r.fixed_ids.end());
  std::vector<uint32_t> extra;
  for (uint32_t pid : r.fixed_ids)
    if (!pg::contains(Fq, ctx.pi_fix, ctx.pg6_point(pid))) extra.push_back(pid);
  for (uint32_t pid : pg::point_ids_of(Fq, ctx.pi_fix))
    if (!fixed.count(pid)) r.plane_fixed = false;
  // group the leftovers into lines at infinity
  std::set<uint32_t> left(extra.begin(), extra.end());
  while (!left.empty()) {
    uint32_t a = *left.begin();
    left.erase(left.begin());
    bool found_pair = false;
    for (uint32_t b : left) {
      auto l = pg::span_points(Fq, {ctx.pg6_point(a), ctx.pg6_point(b)});
      auto ids = pg::point_ids_of(Fq, l);
      if (std::all_of(ids.begin(), ids.end(), [&](uint32_t x) {
            return ctx.varphi_map[x] == x && !pg::contains(Fq, ctx.pi_fix, ctx.pg6_point(x));
          })) {
        for (uint32_t x : ids) left.erase(x);
        if (!pg::sub_contains(Fq, ctx.sigma_inf, l)) return r;  // ok stays false
        r.extra_lines.push_back(l);
        found_pair = true;
        break;
      }
    }
    if (!found_pair) return r;
  }
  uint64_t expect = static_cast<uint64_t>(ctx.q) * ctx.q +
                    static_cast<uint64_t>(ctx.params.g) * ctx.q + ctx.params.g;
  r.ok = r.plane_fixed && r.fixed_ids.size() == expect &&
         r.extra_lines.size() == static_cast<size_t>(ctx.params.g) - 1;
  return r;
}

/// Restriction of a quadratic form to a subspace given by its echelon basis;
/// diagonal coefficients come from values, off-diagonal ones from the polar.
inline QuadForm restrict_form(const gf::SmallField& F, const QuadForm& Q, const Subspace& s) {
  int r = s.basis.rows;
  QuadForm out;
  out.nvars = r;
  out.coef.assign(r * (r + 1) / 2, 0);
  for (int i = 0; i < r; ++i) {
    Vec bi = pg::row_of(s.basis, i);
    out.coef[QuadForm::index(r, i, i)] = Q.eval(F, bi);
    for (int j = i + 1; j < r; ++j)
      out.coef[QuadForm::index(r, i, j)] = Q.polar(F, bi, pg::row_of(s.basis, j));
  }
  return out;
}

/// Points of the subspace on the quadric, together with the radical points
/// of the restricted form (the singular directions).
struct QuadricSlice {
  std::vector<Vec> zero;     // quadric points inside the subspace
  std::vector<Vec> radical;  // projective radical of the restriction
};

inline QuadricSlice slice_quadric(const gf::SmallField& F, const QuadForm& Q,
                                  const Subspace& s) {
  QuadricSlice out;
  for (const auto& X : pg::points_of(F, s))
    if (Q.eval(F, X) == 0) out.zero.push_back(X);
  auto R = restrict_form(F, Q, s);
  int r = s.basis.rows;
  pg::Mat bm;
  bm.rows = bm.cols = static_cast<uint8_t>(r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Vec ei{}, ej{};
      ei.n = ej.n = static_cast<uint8_t>(r);
      ei.c[i] = 1;
      ej.c[j] = 1;
      bm.at(i, j) = R.polar(F, ei, ej);
    }
  auto rad = pg::nullspace(F, bm);
  for (const auto& u : pg::points_of(F, rad)) {
    // map local radical coordinates back to the ambient space
    Vec X{};
    X.n = s.basis.cols;
    for (int i = 0; i < r; ++i)
      X = pg::vec_add(F, X, pg::vec_scale(F, u.c[i], pg::row_of(s.basis, i)));
    out.radical.push_back(pg::normalize(F, X));
  }
  return out;
}

// --- fixed lines of the model -------------------------------------------------

struct InfinityLines {
  std::vector<Subspace> ptwise, fixed1, fixed2;
  std::vector<std::vector<Subspace>> reguli;  // the fixed-I lines grouped
};

/// Fixed lines of the induced map inside the hyperplane at infinity,
/// classified as at a type-I 5-space: pointwise-fixed ruling lines, lines
/// inside type-I spread planes, and the rest.
inline InfinityLines sigma_inf_fixed_lines(const BruckBoseContext& ctx) {
  const auto& Fq = ctx.Fq();
  InfinityLines out;
  std::vector<uint32_t> inf_fixed;
  for (uint32_t pid : pg::point_ids_of(Fq, ctx.sigma_inf))
    if (ctx.varphi_map[pid] == pid) inf_fixed.push_back(pid);

  std::set<Subspace> lines;
  for (size_t i = 0; i < inf_fixed.size(); ++i)
    for (size_t j = i + 1; j < inf_fixed.size(); ++j) {
      auto l = pg::span_points(Fq, {ctx.pg6_point(inf_fixed[i]), ctx.pg6_point(inf_fixed[j])});
      auto ids = pg::point_ids_of(Fq, l);
      if (std::all_of(ids.begin(), ids.end(),
                      [&](uint32_t x) { return ctx.varphi_map[x] == x; }))
        out.ptwise.push_back(l);
    }
  std::sort(out.ptwise.begin(), out.ptwise.end());
  out.ptwise.erase(std::unique(out.ptwise.begin(), out.ptwise.end()), out.ptwise.end());

  for (uint32_t pid : pg::point_ids_of(Fq, ctx.sigma_inf)) {
    uint32_t p1 = ctx.varphi_map[pid];
    if (p1 == pid || p1 < pid || ctx.varphi_map[p1] < pid) continue;
    uint32_t p2 = ctx.varphi_map[p1];
    auto orbit_span =
        pg::span_points(Fq, {ctx.pg6_point(pid), ctx.pg6_point(p1), ctx.pg6_point(p2)});
    if (orbit_span.dim() != 1) continue;
    lines.insert(orbit_span);
  }
  for (const auto& l : lines) {
    uint32_t rep = ctx.pg6_id(pg::row_of(l.basis, 0));
    Vec P2 = ctx.pg2_point(ctx.model_pg2[rep]);
    auto plane = ctx.inf_spread_plane(P2.c[0], P2.c[1]);
    if (pg::sub_contains(Fq, plane, l))
      out.fixed1.push_back(l);
    else
      out.fixed2.push_back(l);
  }

  // group the fixed-I lines into reguli by the pointwise-fixed lines they meet
  std::map<std::vector<size_t>, std::vector<Subspace>> groups;
  for (const auto& m : out.fixed1) {
    std::vector<size_t> key;
    for (size_t i = 0; i < out.ptwise.size(); ++i)
      if (!pg::meet(Fq, m, out.ptwise[i]).empty()) key.push_back(i);
    groups[key].push_back(m);
  }
  for (auto& [k, v] : groups) out.reguli.push_back(v);
  return out;
}

struct AffineLines {
  std::vector<Subspace> ptwise;  // affine lines of the fixed plane
  std::vector<Subspace> fixed2;  // the remaining affine fixed lines
};

/// All affine fixed lines: the affine lines of the fixed plane, and the
/// orbit lines of affine points with collinear orbits.
inline AffineLines affine_fixed_lines(const BruckBoseContext& ctx) {
  const auto& Fq = ctx.Fq();
  AffineLines out;
  for (const auto& X : pg::points_of(Fq, ctx.pi_fix)) {
    if (pg::contains(Fq, ctx.sigma_inf, X)) continue;
    for (const auto& Y : pg::points_of(Fq, ctx.pi_fix)) {
      if (X == Y) continue;
      out.ptwise.push_back(pg::span_points(Fq, {X, Y}));
    }
  }
  std::sort(out.ptwise.begin(), out.ptwise.end());
  out.ptwise.erase(std::unique(out.ptwise.begin(), out.ptwise.end()), out.ptwise.end());

  std::set<Subspace> others;
  for (uint32_t pid = 0; pid < ctx.n6; ++pid) {
    if (ctx.at_infinity[pid]) continue;
    uint32_t p1 = ctx.varphi_map[pid];
    if (p1 == pid || p1 < pid || ctx.varphi_map[p1] < pid) continue;
    uint32_t p2 = ctx.varphi_map[p1];
    auto l = pg::span_points(Fq, {ctx.pg6_point(pid), ctx.pg6_point(p1), ctx.pg6_point(p2)});
    if (l.dim() != 1) continue;
    if (pg::sub_contains(Fq, ctx.pi_fix, l)) continue;
    others.insert(l);
  }
  out.fixed2.assign(others.begin(), others.end());
  return out;
}

/// Pencil construction for the affine fixed lines: take a fixed-I line m at
/// infinity meeting the fixed plane in X, an affine line of the fixed plane
/// through X, and the pencil through the centre of the collineation induced
/// on their span.  The centre is X itself when q = 0 mod 3 (an elation with
/// the affine line as axis) and the second fixed point of m when q = 1 mod 3
/// (a homology); `literal_vertex` forces X in both cases.
inline std::vector<Subspace> pencil_construction_lines(const BruckBoseContext& ctx,
                                                       bool literal_vertex = false) {
  const auto& Fq = ctx.Fq();
  auto inf = sigma_inf_fixed_lines(ctx);
  std::set<Subspace> out;
  for (const auto& m : inf.fixed1) {
    auto x = pg::meet(Fq, m, ctx.pi_fix);
    if (x.dim() != 0) continue;
    Vec X = pg::row_of(x.basis, 0);
    Vec C = X;
    if (ctx.params.n == 1 && !literal_vertex) {
      for (const auto& P : pg::points_of(Fq, m)) {
        uint32_t id = ctx.pg6_id(P);
        if (ctx.varphi_map[id] == id && !(P == X)) { C = P; break; }
      }
    }
    for (const auto& Y : pg::points_of(Fq, ctx.pi_fix)) {
      if (pg::contains(Fq, ctx.sigma_inf, Y) || Y == X) continue;
      auto ell = pg::span_points(Fq, {X, Y});
      auto plane = pg::span(Fq, m, ell);
      if (plane.dim() != 2) continue;
      // the pencil through the centre within this plane, minus m and ell
      for (const auto& Z : pg::points_of(Fq, plane)) {
        if (pg::contains(Fq, m, Z) || pg::contains(Fq, ell, Z)) continue;
        auto t = pg::span_points(Fq, {C, Z});
        if (pg::sub_contains(Fq, ctx.pi_fix, t)) continue;
        if (pg::sub_contains(Fq, ctx.sigma_inf, t)) continue;
        out.insert(t);
      }
    }
  }
  return {out.begin(), out.end()};
}

// --- cross-check against the 9-coordinate model --------------------------------

namespace detail {

inline std::vector<std::vector<Code>> dyn_nullspace(const gf::SmallField& F,
                                                    std::vector<Code> a, int rows, int cols) {
  int rank = pg::rref(F, a.data(), rows, cols);
  std::vector<int> pivots;
  std::vector<bool> is_piv(cols, false);
  for (int r = 0; r < rank; ++r) {
    int c = 0;
    while (a[r * cols + c] == 0) ++c;
    pivots.push_back(c);
    is_piv[c] = true;
  }
  std::vector<std::vector<Code>> out;
  for (int fc = 0; fc < cols; ++fc) {
    if (is_piv[fc]) continue;
    std::vector<Code> v(cols, 0);
    v[fc] = 1;
    for (int r = 0; r < rank; ++r) v[pivots[r]] = F.neg(a[r * cols + fc]);
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

struct SlicingReport {
  bool ok = false;
  std::string failure;
  int fit_dimension = 0;
  size_t affine_quadric_points = 0;
  size_t total_quadric_points = 0;
  size_t singular_points = 0;
};

/// Build the 6-space model by slicing the 9-coordinate representation with a
/// 6-space over a type-I 5-space, and verify that the affine I- and
/// II-points picked out there are again the affine part of one quadric with
/// the fixed plane as its singular locus.
inline SlicingReport slicing_crosscheck(const reduction::ReductionContext& ctx8,
                                        const fixed::FixedSubspaces& fs) {
  const auto& Fq = ctx8.Fq();
  SlicingReport rep;
  auto fail = [&](const std::string& why) {
    rep.failure = why;
    return rep;
  };

  uint32_t linf = UINT32_MAX;
  for (uint32_t lid = 0; lid < ctx8.n2; ++lid)
    if (ctx8.pg2_line_type[lid] == PointType2::TypeI) { linf = lid; break; }
  auto sigma_inf8 = ctx8.h5_of_line(linf);
  Vec anchor{};
  bool found = false;
  for (uint32_t pid : fs.fixed_point_ids)
    if (!pg::contains(Fq, sigma_inf8, ctx8.pg8_point(pid))) {
      anchor = ctx8.pg8_point(pid);
      found = true;
      break;
    }
  if (!found) return fail("no fixed point off the 5-space");
  auto pi6 = pg::span_point(Fq, sigma_inf8, anchor);
  if (pi6.dim() != 6) return fail("slice is not a 6-space");
  if (!(pg::apply_sub(Fq, ctx8.sigma, pi6) == pi6)) return fail("slice is not invariant");

  // every affine point of the small plane meets the slice in one point
  auto linf_ids = ctx8.pg2_line_point_ids(linf);
  std::set<uint32_t> linf_pts(linf_ids.begin(), linf_ids.end());
  std::set<Vec> affine12;  // sliced type I and II points
  std::set<Vec> affine_all;
  for (uint32_t id = 0; id < ctx8.n2; ++id) {
    if (linf_pts.count(id)) continue;
    auto m = pg::meet(Fq, ctx8.spread[id], pi6);
    if (m.dim() != 0) return fail("spread plane does not slice to a point");
    Vec X = pg::row_of(m.basis, 0);
    affine_all.insert(X);
    if (ctx8.pg2_type[id] != PointType2::TypeIII) affine12.insert(X);
  }
  if (affine_all.size() != static_cast<size_t>(ctx8.q3) * ctx8.q3)
    return fail("sliced affine model is not a bijection");

  // fit one quadratic form in the local coordinates of the slice
  std::array<int, 7> piv{};
  for (int r = 0; r < 7; ++r) {
    int c = 0;
    while (pi6.basis.at(r, c) == 0) ++c;
    piv[r] = c;
  }
  auto local = [&](const Vec& X) {
    Vec u{};
    u.n = 7;
    for (int i = 0; i < 7; ++i) u.c[i] = X.c[piv[i]];
    return u;
  };
  std::vector<Code> rows;
  for (const auto& X : affine12) {
    Vec u = local(X);
    for (int i = 0; i < 7; ++i)
      for (int j = i; j < 7; ++j) rows.push_back(Fq.mul(u.c[i], u.c[j]));
  }
  auto sols = detail::dyn_nullspace(Fq, rows, static_cast<int>(affine12.size()), 28);
  rep.fit_dimension = static_cast<int>(sols.size());
  if (sols.empty()) return fail("no quadratic form vanishes on the sliced points");
  QuadForm Q;
  Q.nvars = 7;
  Q.coef = sols[0];

  size_t affine_on = 0;
  std::set<Vec> zero;
  for (const auto& X : pg::points_of(Fq, pi6))
    if (Q.eval(Fq, local(X)) == 0) {
      zero.insert(X);
      if (!pg::contains(Fq, sigma_inf8, X)) {
        ++affine_on;
        if (!affine12.count(X)) return fail("quadric contains a sliced type-III point");
      }
    }
  rep.total_quadric_points = zero.size();
  rep.affine_quadric_points = affine_on;
  if (affine_on != affine12.size()) return fail("quadric misses sliced points");

  // singular locus must be the pointwise-fixed plane (it lies in the slice)
  const auto& pifix = fs.ptwise_planes[0];
  if (!pg::sub_contains(Fq, pi6, pifix)) return fail("fixed plane escapes the slice");
  size_t sing = 0;
  for (const auto& X : pg::points_of(Fq, pi6)) {
    Vec u = local(X);
    if (Q.eval(Fq, u) != 0) continue;
    bool singular = true;
    for (int j = 0; j < 7 && singular; ++j) {
      Vec ej{};
      ej.n = 7;
      ej.c[j] = 1;
      if (Q.polar(Fq, u, ej) != 0) singular = false;
    }
    if (!singular) continue;
    ++sing;
    if (!pg::contains(Fq, pifix, X)) return fail("singular point off the fixed plane");
  }
  rep.singular_points = sing;
  if (sing != static_cast<size_t>(ctx8.q) * ctx8.q + ctx8.q + 1)
    return fail("singular locus has the wrong size");

  rep.ok = rep.fit_dimension == 1;
  if (!rep.ok) rep.failure = "fitted form is not unique";
  return rep;
}

}  // namespace boserep::bruckbose
