#pragma once

// Field reduction of PG(2,q^3) into PG(8,q): the coordinate map Theta, the
// regular 2-spread carrying the correspondence, the induced order-3
// projectivity sigma, the back-map B, and the orbit-type classification of
// points on both sides.

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "boserep/gf.hpp"
#include "boserep/pg.hpp"

namespace boserep::reduction {

using gf::Code;
using pg::Subspace;
using pg::Vec;

/// Orbit shape of a point (or line) of PG(2,q^3) under the order-3
/// collineation: fixed / collinear triple / triangle.
enum class PointType2 : uint8_t { TypeI, TypeII, TypeIII };

/// The six point types of PG(8,q): spread-plane type crossed with the
/// orbit shape under sigma.
enum class PointType8 : uint8_t {
  Fixed,
  Icolinear,
  Itriangle,
  IIcolinear,
  IItriangle,
  IIItriangle
};

inline const char* name(PointType2 t) {
  switch (t) {
    case PointType2::TypeI: return "I";
    case PointType2::TypeII: return "II";
    default: return "III";
  }
}

inline const char* name(PointType8 t) {
  switch (t) {
    case PointType8::Fixed: return "fixed";
    case PointType8::Icolinear: return "I:";
    case PointType8::Itriangle: return "I..";
    case PointType8::IIcolinear: return "II:";
    case PointType8::IItriangle: return "II..";
    default: return "III..";
  }
}

/// (theta(x), theta(y), theta(z)) as a 9-vector over GF(q).
inline Vec big_theta(const gf::FieldSpec& s, Code x, Code y, Code z) {
  if (x == 0 && y == 0 && z == 0) throw std::invalid_argument("zero triple");
  Vec v;
  v.n = 9;
  auto tx = s.theta(x), ty = s.theta(y), tz = s.theta(z);
  for (int i = 0; i < 3; ++i) {
    v.c[i] = tx[i];
    v.c[3 + i] = ty[i];
    v.c[6 + i] = tz[i];
  }
  return v;
}

/// The 9x9 matrix of sigma: block matrix with the Frobenius matrix A in
/// block positions (1,2), (2,3), (3,1) and zero blocks elsewhere, acting on
/// row vectors.  Satisfies sigma(Theta(x,y,z)) = Theta(z^q, x^q, y^q).
inline pg::Collineation build_sigma(const gf::FieldSpec& s) {
  auto A = gf::frobenius_matrix(s);
  pg::Collineation c;
  c.m.rows = c.m.cols = 9;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      c.m.at(i, 3 + j) = A[i][j];      // block (1,2)
      c.m.at(3 + i, 6 + j) = A[i][j];  // block (2,3)
      c.m.at(6 + i, j) = A[i][j];      // block (3,1)
    }
  return c;
}

/// The order-3 collineation of PG(2,q^3): (x,y,z) -> (z^q, x^q, y^q).
/// With `conjugate` set, its square is used instead (the conjugate case,
/// kept out of all golden comparisons).
inline pg::Collineation build_phi(const gf::FieldSpec& s, bool conjugate = false) {
  pg::Collineation c;
  c.m.rows = c.m.cols = 3;
  if (!conjugate) {
    c.m.at(0, 1) = 1;
    c.m.at(1, 2) = 1;
    c.m.at(2, 0) = 1;
    c.frob_power = 1;
  } else {
    // (x,y,z) -> (y^{q^2}, z^{q^2}, x^{q^2})
    c.m.at(0, 2) = 1;
    c.m.at(1, 0) = 1;
    c.m.at(2, 1) = 1;
    c.frob_power = 2;
  }
  c.frob_table = &s.frob_q_t;
  return c;
}

struct ReductionContext {
  gf::FieldSpec spec;
  gf::Params params;
  uint32_t q = 0, q3 = 0;
  uint32_t n2 = 0;  // number of points of PG(2,q^3), also spread size
  uint32_t n8 = 0;  // number of points of PG(8,q)

  pg::Collineation phi;    // on PG(2,q^3)
  pg::Collineation sigma;  // on PG(8,q)

  std::vector<Subspace> spread;           // spread plane of each PG(2,q^3) point id
  std::vector<uint32_t> point_to_splane;  // PG(8,q) id -> PG(2,q^3) id
  std::vector<uint32_t> phi_map;          // PG(2,q^3) id -> image id
  std::vector<uint32_t> sigma_map;        // PG(8,q) id -> image id
  std::vector<PointType2> pg2_type;       // per PG(2,q^3) point
  std::vector<PointType2> pg2_line_type;  // per PG(2,q^3) line (dual point id)
  std::vector<PointType8> pg8_type;       // per PG(8,q) point

  std::vector<Subspace> ruling_planes;  // the transversal plane system of the type-I spread planes

  const gf::SmallField& Fq() const { return spec.f_q; }
  const gf::SmallField& Fq3() const { return spec.f_q3; }

  Vec pg2_point(uint32_t id) const { return pg::unrank_point(spec.f_q3, 2, id); }
  uint32_t pg2_id(const Vec& v) const {
    return static_cast<uint32_t>(pg::rank_point(spec.f_q3, v));
  }
  Vec pg8_point(uint32_t id) const { return pg::unrank_point(spec.f_q, 8, id); }
  uint32_t pg8_id(const Vec& v) const {
    return static_cast<uint32_t>(pg::rank_point(spec.f_q, v));
  }

  /// Points of the line with the given dual id.
  std::vector<uint32_t> pg2_line_point_ids(uint32_t line_id) const {
    Vec d = pg::unrank_point(spec.f_q3, 2, line_id);
    auto L = pg::subspace_from_dual(spec.f_q3, {d});
    return pg::point_ids_of(spec.f_q3, L);
  }

  uint32_t pg2_line_through(uint32_t a, uint32_t b) const {
    Vec d = pg::cross3(spec.f_q3, pg2_point(a), pg2_point(b));
    return static_cast<uint32_t>(pg::rank_point(spec.f_q3, pg::normalize(spec.f_q3, d)));
  }

  /// The 5-space spanned by the spread planes of the given line's points.
  Subspace h5_of_line(uint32_t line_id) const {
    auto ids = pg2_line_point_ids(line_id);
    auto s5 = pg::span(spec.f_q, spread[ids[0]], spread[ids[1]]);
    // two disjoint spread planes span it already; the rest must fall inside
    return s5;
  }
};

inline PointType2 classify_orbit2(const ReductionContext& ctx, uint32_t id) {
  uint32_t i1 = ctx.phi_map[id];
  if (i1 == id) return PointType2::TypeI;
  uint32_t i2 = ctx.phi_map[i1];
  Code d = pg::det3(ctx.Fq3(), ctx.pg2_point(id), ctx.pg2_point(i1), ctx.pg2_point(i2));
  return d == 0 ? PointType2::TypeII : PointType2::TypeIII;
}

namespace detail {

// members of the 5-space pencil spanned by system[i0] and system[j]
inline std::vector<size_t> pencil_members(const gf::SmallField& F,
                                          const std::vector<Subspace>& system, size_t i0,
                                          size_t j) {
  auto s5 = pg::span(F, system[i0], system[j]);
  if (s5.dim() != 5) throw std::runtime_error("ruling planes do not span a 5-space");
  std::vector<size_t> mem;
  for (size_t k = 0; k < system.size(); ++k)
    if (pg::sub_contains(F, s5, system[k])) mem.push_back(k);
  return mem;
}

// transversal line through X in system[i0] to the regulus listed in mem
inline Subspace ruling_line_through(const gf::SmallField& F,
                                    const std::vector<Subspace>& system, size_t i0,
                                    const std::vector<size_t>& mem, const Vec& X) {
  const Subspace* a = nullptr;
  const Subspace* b = nullptr;
  for (size_t k : mem) {
    if (k == i0) continue;
    if (!a) a = &system[k];
    else if (!b) { b = &system[k]; break; }
  }
  if (!a || !b) throw std::runtime_error("pencil too small for a transversal");
  auto z = pg::meet(F, pg::span_point(F, *a, X), *b);
  if (z.dim() != 0) throw std::runtime_error("transversal point not unique");
  auto line = pg::span_point(F, z, X);
  if (line.dim() != 1) throw std::runtime_error("degenerate transversal line");
  return line;
}

}  // namespace detail

/// The plane through a point X of system[i0] meeting every member of a
/// pairwise-disjoint ruling system in one point: the span of two ruling
/// lines of 5-space pencils through X.
inline Subspace transversal_plane(const gf::SmallField& F, const std::vector<Subspace>& system,
                                  size_t i0, const Vec& X) {
  if (system.size() < 3) throw std::invalid_argument("ruling system too small");
  size_t ja = (i0 == 0) ? 1 : 0;
  auto mema = detail::pencil_members(F, system, i0, ja);
  size_t jb = system.size();
  for (size_t j = 0; j < system.size(); ++j) {
    if (j == i0) continue;
    if (std::find(mema.begin(), mema.end(), j) == mema.end()) { jb = j; break; }
  }
  if (jb == system.size()) throw std::runtime_error("degenerate ruling system");
  auto memb = detail::pencil_members(F, system, i0, jb);
  auto l1 = detail::ruling_line_through(F, system, i0, mema, X);
  auto l2 = detail::ruling_line_through(F, system, i0, memb, X);
  auto T = pg::span(F, l1, l2);
  if (T.dim() != 2) throw std::runtime_error("transversal plane has wrong dimension");
  for (const auto& pl : system)
    if (pg::meet(F, T, pl).dim() != 0)
      throw std::runtime_error("transversal plane misses a ruling plane");
  return T;
}

/// Transversal-plane system of a pairwise-disjoint plane family that forms
/// one ruling system of a Segre variety: one transversal plane through each
/// point of system[0].
inline std::vector<Subspace> second_ruling_system(const gf::SmallField& F,
                                                  const std::vector<Subspace>& system) {
  std::vector<Subspace> out;
  auto pts = pg::points_of(F, system[0]);
  out.reserve(pts.size());
  for (const auto& X : pts) out.push_back(transversal_plane(F, system, 0, X));
  return out;
}

/// Build the full reduction context for q = p^k.  Validates the spread
/// partition and the naturality of sigma with respect to phi.
inline ReductionContext build_context(uint32_t p, uint32_t k, bool conjugate_phi = false) {
  ReductionContext ctx;
  ctx.spec = gf::field_tower(p, k);
  ctx.params = ctx.spec.params;
  ctx.q = ctx.spec.q;
  ctx.q3 = ctx.spec.q3;
  ctx.n2 = static_cast<uint32_t>(pg::n_points(ctx.q3, 2));
  ctx.n8 = static_cast<uint32_t>(pg::n_points(ctx.q, 8));
  ctx.phi = build_phi(ctx.spec, conjugate_phi);
  ctx.sigma = build_sigma(ctx.spec);
  if (conjugate_phi) {
    // sigma must match phi; the conjugate projectivity is the square
    ctx.sigma.m = pg::mat_mul(ctx.Fq(), ctx.sigma.m, ctx.sigma.m);
  }

  const auto& Fq = ctx.Fq();
  const auto& Fq3 = ctx.Fq3();
  Code tau = ctx.spec.tau;
  Code tau2 = Fq3.mul(tau, tau);

  // spread planes: the GF(q)-span of {(x,y,z), tau(x,y,z), tau^2(x,y,z)}
  ctx.spread.resize(ctx.n2);
  ctx.point_to_splane.assign(ctx.n8, UINT32_MAX);
  for (uint32_t id = 0; id < ctx.n2; ++id) {
    Vec v = ctx.pg2_point(id);
    Code x = v.c[0], y = v.c[1], z = v.c[2];
    std::vector<Vec> rows = {
        big_theta(ctx.spec, x, y, z),
        big_theta(ctx.spec, Fq3.mul(tau, x), Fq3.mul(tau, y), Fq3.mul(tau, z)),
        big_theta(ctx.spec, Fq3.mul(tau2, x), Fq3.mul(tau2, y), Fq3.mul(tau2, z))};
    auto plane = pg::span_points(Fq, rows);
    if (plane.dim() != 2) throw std::runtime_error("spread element is not a plane");
    ctx.spread[id] = plane;
    for (uint32_t pid : pg::point_ids_of(Fq, plane)) {
      if (ctx.point_to_splane[pid] != UINT32_MAX)
        throw std::runtime_error("spread planes are not pairwise disjoint");
      ctx.point_to_splane[pid] = id;
    }
  }
  for (uint32_t pid = 0; pid < ctx.n8; ++pid)
    if (ctx.point_to_splane[pid] == UINT32_MAX)
      throw std::runtime_error("spread does not cover PG(8,q)");

  // phi orbits and the three point types of PG(2,q^3)
  ctx.phi_map.resize(ctx.n2);
  ctx.pg2_type.resize(ctx.n2);
  for (uint32_t id = 0; id < ctx.n2; ++id)
    ctx.phi_map[id] = ctx.pg2_id(pg::apply(Fq3, ctx.phi, ctx.pg2_point(id)));
  for (uint32_t id = 0; id < ctx.n2; ++id) ctx.pg2_type[id] = classify_orbit2(ctx, id);

  // line types: a line is classified by how many subplane points it carries
  ctx.pg2_line_type.resize(ctx.n2);
  for (uint32_t lid = 0; lid < ctx.n2; ++lid) {
    int fixed_on_line = 0;
    for (uint32_t pid : ctx.pg2_line_point_ids(lid))
      if (ctx.pg2_type[pid] == PointType2::TypeI) ++fixed_on_line;
    if (fixed_on_line == static_cast<int>(ctx.q) + 1)
      ctx.pg2_line_type[lid] = PointType2::TypeI;
    else if (fixed_on_line == 1)
      ctx.pg2_line_type[lid] = PointType2::TypeII;
    else if (fixed_on_line == 0)
      ctx.pg2_line_type[lid] = PointType2::TypeIII;
    else
      throw std::runtime_error("line meets the fixed subplane in an impossible count");
  }

  // naturality: the spread plane of the phi-image is the sigma-image plane
  for (uint32_t id = 0; id < ctx.n2; ++id) {
    auto img = pg::apply_sub(Fq, ctx.sigma, ctx.spread[id]);
    if (!(img == ctx.spread[ctx.phi_map[id]]))
      throw std::runtime_error("sigma does not intertwine with phi on the spread");
  }

  // sigma orbits and the six point types of PG(8,q)
  ctx.sigma_map.resize(ctx.n8);
  ctx.pg8_type.resize(ctx.n8);
  for (uint32_t pid = 0; pid < ctx.n8; ++pid)
    ctx.sigma_map[pid] = ctx.pg8_id(pg::apply(Fq, ctx.sigma, ctx.pg8_point(pid)));
  for (uint32_t pid = 0; pid < ctx.n8; ++pid) {
    uint32_t p1 = ctx.sigma_map[pid];
    PointType2 base = ctx.pg2_type[ctx.point_to_splane[pid]];
    if (p1 == pid) {
      if (base != PointType2::TypeI)
        throw std::runtime_error("fixed point outside a type-I spread plane");
      ctx.pg8_type[pid] = PointType8::Fixed;
      continue;
    }
    uint32_t p2 = ctx.sigma_map[p1];
    std::vector<Vec> orbit = {ctx.pg8_point(pid), ctx.pg8_point(p1), ctx.pg8_point(p2)};
    auto sp = pg::span_points(Fq, orbit);
    bool collinear = sp.dim() == 1;
    switch (base) {
      case PointType2::TypeI:
        ctx.pg8_type[pid] = collinear ? PointType8::Icolinear : PointType8::Itriangle;
        break;
      case PointType2::TypeII:
        ctx.pg8_type[pid] = collinear ? PointType8::IIcolinear : PointType8::IItriangle;
        break;
      default:
        if (collinear) throw std::runtime_error("collinear orbit inside a type-III spread plane");
        ctx.pg8_type[pid] = PointType8::IIItriangle;
    }
  }

  // the transversal planes of the type-I spread planes (second ruling
  // system of the Segre variety they form)
  std::vector<Subspace> type1_planes;
  for (uint32_t id = 0; id < ctx.n2; ++id)
    if (ctx.pg2_type[id] == PointType2::TypeI) type1_planes.push_back(ctx.spread[id]);
  ctx.ruling_planes = second_ruling_system(Fq, type1_planes);

  return ctx;
}

/// B(K): the PG(2,q^3) points whose spread plane meets the point set K.
inline std::vector<uint32_t> back_map(const ReductionContext& ctx,
                                      const std::vector<Vec>& pts) {
  std::set<uint32_t> out;
  for (const auto& p : pts) out.insert(ctx.point_to_splane[ctx.pg8_id(p)]);
  return {out.begin(), out.end()};
}

inline std::vector<uint32_t> back_map_sub(const ReductionContext& ctx, const Subspace& s) {
  return back_map(ctx, pg::points_of(ctx.Fq(), s));
}

}  // namespace boserep::reduction
