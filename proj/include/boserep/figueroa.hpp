#pragma once

// The non-Desarguesian plane of order q^3 built from the orbit structure:
// type-I and type-II lines are kept, every type-III line is replaced by a
// block assembled from the type-II points of one line and the cross-orbit
// intersections over the type-III pencil.  Also the scroll picture of those
// blocks for q != 1 mod 3: a plane of transversal points for the type-II
// part, and q+1 ruling planes through a tangent conic for the type-III part.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "boserep/fixed.hpp"
#include "boserep/reduction.hpp"

namespace boserep::figueroa {

using gf::Code;
using pg::Subspace;
using pg::Vec;
using reduction::PointType2;
using reduction::PointType8;
using reduction::ReductionContext;

/// Image of a line under the order-3 collineation (dual action has the same
/// coordinate formula as the point action).
inline uint32_t phi_line(const ReductionContext& ctx, uint32_t lid) {
  return static_cast<uint32_t>(
      pg::rank_point(ctx.Fq3(), pg::apply(ctx.Fq3(), ctx.phi, ctx.pg2_point(lid))));
}

/// Intersection point of two distinct lines given by dual ids.
inline uint32_t line_meet(const ReductionContext& ctx, uint32_t l1, uint32_t l2) {
  Vec p = pg::cross3(ctx.Fq3(), ctx.pg2_point(l1), ctx.pg2_point(l2));
  return ctx.pg2_id(pg::normalize(ctx.Fq3(), p));
}

/// The q^2+q+1 type-II points on the line joining the two orbit images of a
/// type-III point.
inline std::vector<uint32_t> e_set(const ReductionContext& ctx, uint32_t g_id) {
  if (ctx.pg2_type[g_id] != PointType2::TypeIII)
    throw std::invalid_argument("expected a type-III point");
  uint32_t g1 = ctx.phi_map[g_id], g2 = ctx.phi_map[g1];
  uint32_t lid = ctx.pg2_line_through(g1, g2);
  std::vector<uint32_t> out;
  for (uint32_t pid : ctx.pg2_line_point_ids(lid))
    if (ctx.pg2_type[pid] == PointType2::TypeII) out.push_back(pid);
  return out;
}

/// { l^phi meet l^phi^2 : l a type-III line through the point }.
inline std::vector<uint32_t> f_set(const ReductionContext& ctx, uint32_t g_id) {
  if (ctx.pg2_type[g_id] != PointType2::TypeIII)
    throw std::invalid_argument("expected a type-III point");
  const auto& F = ctx.Fq3();
  // lines through the point: dual points of the dual line with this kernel
  auto pencil = pg::subspace_from_dual(F, {ctx.pg2_point(g_id)});
  std::set<uint32_t> out;
  for (const auto& d : pg::points_of(F, pencil)) {
    uint32_t lid = ctx.pg2_id(d);
    if (ctx.pg2_line_type[lid] != PointType2::TypeIII) continue;
    uint32_t l1 = phi_line(ctx, lid);
    uint32_t l2 = phi_line(ctx, l1);
    out.insert(line_meet(ctx, l1, l2));
  }
  return {out.begin(), out.end()};
}

struct FigBlock {
  uint32_t g_point = 0;
  std::vector<uint32_t> e_part, f_part, points;  // sorted ids
};

inline FigBlock fig_block(const ReductionContext& ctx, uint32_t g_id) {
  FigBlock b;
  b.g_point = g_id;
  b.e_part = e_set(ctx, g_id);
  b.f_part = f_set(ctx, g_id);
  std::set<uint32_t> pts(b.e_part.begin(), b.e_part.end());
  pts.insert(b.f_part.begin(), b.f_part.end());
  b.points.assign(pts.begin(), pts.end());
  if (b.points.size() != static_cast<size_t>(ctx.q3) + 1)
    throw std::runtime_error("block size differs from q^3+1");
  if (pts.count(g_id)) throw std::runtime_error("defining point lies in its own block");
  uint32_t g1 = ctx.phi_map[g_id];
  if (!pts.count(g1) || !pts.count(ctx.phi_map[g1]))
    throw std::runtime_error("orbit images missing from the block");
  return b;
}

struct IncidencePlane {
  uint32_t num_points = 0;
  std::vector<std::vector<uint32_t>> lines;           // sorted point ids
  std::vector<std::vector<uint32_t>> point_to_lines;  // per point, sorted line indices
};

/// Assemble the plane: type-I and type-II lines unchanged, one block per
/// type-III line, indexed by recovering the defining point from the line.
inline IncidencePlane build_figueroa(const ReductionContext& ctx) {
  IncidencePlane P;
  P.num_points = ctx.n2;
  P.lines.reserve(ctx.n2);
  for (uint32_t lid = 0; lid < ctx.n2; ++lid) {
    if (ctx.pg2_line_type[lid] != PointType2::TypeIII) {
      P.lines.push_back(ctx.pg2_line_point_ids(lid));
      continue;
    }
    // l = (g^phi)(g^phi^2) has l meet l^phi = g^phi^2
    uint32_t g2 = line_meet(ctx, lid, phi_line(ctx, lid));
    uint32_t g = ctx.phi_map[g2];
    auto block = fig_block(ctx, g);
    if (ctx.pg2_line_through(ctx.phi_map[g], g2) != lid)
      throw std::runtime_error("block index does not recover its line");
    P.lines.push_back(block.points);
  }
  P.point_to_lines.resize(P.num_points);
  for (uint32_t li = 0; li < P.lines.size(); ++li)
    for (uint32_t pid : P.lines[li]) P.point_to_lines[pid].push_back(li);
  return P;
}

struct AxiomCheck {
  bool ok = true;
  std::string failure;
  uint64_t lines_checked = 0;
  uint64_t point_degree = 0;  // common number of lines through a point
};

/// Exhaustive projective-plane axioms via incidence bitsets: any two lines
/// meet in exactly one point; any two points lie on exactly one line (by
/// coverage plus double counting).
inline AxiomCheck verify_plane_axioms(const IncidencePlane& P) {
  AxiomCheck r;
  const uint32_t n = P.num_points;
  const size_t words = (n + 63) / 64;
  std::vector<uint64_t> mask(P.lines.size() * words, 0);
  for (size_t li = 0; li < P.lines.size(); ++li)
    for (uint32_t pid : P.lines[li]) mask[li * words + pid / 64] |= 1ull << (pid % 64);

  if (P.lines.size() != n) {
    r.ok = false;
    r.failure = "line count differs from point count";
    return r;
  }
  const size_t line_size = P.lines[0].size();
  for (const auto& l : P.lines)
    if (l.size() != line_size) {
      r.ok = false;
      r.failure = "line sizes are not constant";
      return r;
    }

  // two lines meet in exactly one point
  for (size_t i = 0; i < P.lines.size() && r.ok; ++i) {
    const uint64_t* a = &mask[i * words];
    for (size_t j = i + 1; j < P.lines.size(); ++j) {
      const uint64_t* b = &mask[j * words];
      uint64_t cnt = 0;
      for (size_t w = 0; w < words; ++w) cnt += static_cast<uint64_t>(__builtin_popcountll(a[w] & b[w]));
      ++r.lines_checked;
      if (cnt != 1) {
        r.ok = false;
        r.failure = "lines " + std::to_string(i) + " and " + std::to_string(j) + " meet in " +
                    std::to_string(cnt) + " points";
        break;
      }
    }
  }
  if (!r.ok) return r;

  // each point pair covered at least once, and the pair count matches the
  // total exactly, so each pair is covered exactly once
  r.point_degree = P.point_to_lines.empty() ? 0 : P.point_to_lines[0].size();
  std::vector<uint64_t> cover(words);
  for (uint32_t pid = 0; pid < n; ++pid) {
    if (P.point_to_lines[pid].size() != r.point_degree) {
      r.ok = false;
      r.failure = "point " + std::to_string(pid) + " has unexpected degree";
      return r;
    }
    std::fill(cover.begin(), cover.end(), 0);
    for (uint32_t li : P.point_to_lines[pid])
      for (size_t w = 0; w < words; ++w) cover[w] |= mask[li * words + w];
    uint64_t covered = 0;
    for (size_t w = 0; w < words; ++w) covered += static_cast<uint64_t>(__builtin_popcountll(cover[w]));
    if (covered != n) {
      r.ok = false;
      r.failure = "point " + std::to_string(pid) + " is not collinear with every point";
      return r;
    }
  }
  uint64_t pair_count = static_cast<uint64_t>(P.lines.size()) * (line_size * (line_size - 1) / 2);
  if (pair_count != static_cast<uint64_t>(n) * (n - 1) / 2) {
    r.ok = false;
    r.failure = "pair double count mismatch";
  }
  return r;
}

// --- conics --------------------------------------------------------------

/// A conic of a plane of PG(8,q), stored as a quadratic form in the plane's
/// echelon coordinates together with its rational points.
struct Conic {
  std::array<Code, 6> coeffs{};  // u0^2, u0u1, u0u2, u1^2, u1u2, u2^2
  std::vector<Vec> points;       // ambient coordinates
};

namespace detail {

inline std::array<int, 3> plane_pivots(const Subspace& plane) {
  std::array<int, 3> piv{};
  for (int r = 0; r < 3; ++r) {
    int c = 0;
    while (plane.basis.at(r, c) == 0) ++c;
    piv[r] = c;
  }
  return piv;
}

inline std::array<Code, 3> local_coords(const Subspace& plane, const std::array<int, 3>& piv,
                                        const Vec& X) {
  return {X.c[piv[0]], X.c[piv[1]], X.c[piv[2]]};
}

inline Code eval_form(const gf::SmallField& F, const std::array<Code, 6>& a,
                      const std::array<Code, 3>& u) {
  Code s = 0;
  s = F.add(s, F.mul(a[0], F.mul(u[0], u[0])));
  s = F.add(s, F.mul(a[1], F.mul(u[0], u[1])));
  s = F.add(s, F.mul(a[2], F.mul(u[0], u[2])));
  s = F.add(s, F.mul(a[3], F.mul(u[1], u[1])));
  s = F.add(s, F.mul(a[4], F.mul(u[1], u[2])));
  s = F.add(s, F.mul(a[5], F.mul(u[2], u[2])));
  return s;
}

// row of the linear system for "the polar form of u and w vanishes";
// together with Q(u) = 0 this is the double-root tangency condition and it
// is valid in every characteristic
inline std::array<Code, 6> polar_row(const gf::SmallField& F, const std::array<Code, 3>& u,
                                     const std::array<Code, 3>& w) {
  auto two = F.add(1, 1);
  return {F.mul(two, F.mul(u[0], w[0])),
          F.add(F.mul(u[0], w[1]), F.mul(u[1], w[0])),
          F.add(F.mul(u[0], w[2]), F.mul(u[2], w[0])),
          F.mul(two, F.mul(u[1], w[1])),
          F.add(F.mul(u[1], w[2]), F.mul(u[2], w[1])),
          F.mul(two, F.mul(u[2], w[2]))};
}

inline std::array<Code, 6> point_row(const gf::SmallField& F, const std::array<Code, 3>& u) {
  return {F.mul(u[0], u[0]), F.mul(u[0], u[1]), F.mul(u[0], u[2]),
          F.mul(u[1], u[1]), F.mul(u[1], u[2]), F.mul(u[2], u[2])};
}

}  // namespace detail

/// The unique non-degenerate conic of the plane through three points with
/// prescribed tangent lines at the second and third.  The five linear
/// conditions must cut out a one-dimensional space of forms; anything else
/// (or a degenerate solution) throws.
inline Conic conic_through(const gf::SmallField& F, const Subspace& plane, const Vec& P1,
                           const Vec& P2, const Vec& P3, const Subspace& tangent_at_P2,
                           const Subspace& tangent_at_P3) {
  if (plane.dim() != 2) throw std::invalid_argument("conic carrier must be a plane");
  auto piv = detail::plane_pivots(plane);
  auto u1 = detail::local_coords(plane, piv, P1);
  auto u2 = detail::local_coords(plane, piv, P2);
  auto u3 = detail::local_coords(plane, piv, P3);
  {
    // triangle precondition
    Vec a = pg::make_vec({u1[0], u1[1], u1[2]});
    Vec b = pg::make_vec({u2[0], u2[1], u2[2]});
    Vec c = pg::make_vec({u3[0], u3[1], u3[2]});
    if (pg::det3(F, a, b, c) == 0) throw std::invalid_argument("points do not form a triangle");
  }
  auto second_point = [&](const Subspace& t, const Vec& on) {
    if (t.dim() != 1 || !pg::contains(F, t, on) || !pg::sub_contains(F, plane, t))
      throw std::invalid_argument("tangent must be a plane line through its contact point");
    for (const auto& X : pg::points_of(F, t))
      if (!(X == pg::normalize(F, on))) return X;
    throw std::logic_error("line with one point");
  };
  auto w2 = detail::local_coords(plane, piv, second_point(tangent_at_P2, P2));
  auto w3 = detail::local_coords(plane, piv, second_point(tangent_at_P3, P3));
  if (pg::contains(F, tangent_at_P2, P1) || pg::contains(F, tangent_at_P2, P3) ||
      pg::contains(F, tangent_at_P3, P1) || pg::contains(F, tangent_at_P3, P2))
    throw std::invalid_argument("tangent line passes through another defining point");

  pg::Mat sys;
  sys.rows = 5;
  sys.cols = 6;
  auto fill = [&](int r, const std::array<Code, 6>& row) {
    for (int j = 0; j < 6; ++j) sys.at(r, j) = row[j];
  };
  fill(0, detail::point_row(F, u1));
  fill(1, detail::point_row(F, u2));
  fill(2, detail::point_row(F, u3));
  fill(3, detail::polar_row(F, u2, w2));
  fill(4, detail::polar_row(F, u3, w3));
  auto sol = pg::nullspace(F, sys);
  if (sol.dim() != 0)
    throw std::runtime_error("conic conditions do not determine a unique form");
  Conic c;
  for (int j = 0; j < 6; ++j) c.coeffs[j] = sol.basis.at(0, j);

  for (const auto& X : pg::points_of(F, plane))
    if (detail::eval_form(F, c.coeffs, detail::local_coords(plane, piv, X)) == 0)
      c.points.push_back(X);
  if (c.points.size() != F.q + 1) throw std::runtime_error("degenerate conic: wrong point count");

  // non-degeneracy: the radical of the polar form avoids the conic
  pg::Mat bm;
  bm.rows = bm.cols = 3;
  std::array<std::array<Code, 3>, 3> e{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      auto row = detail::polar_row(F, e[i], e[j]);
      Code val = 0;
      for (int t = 0; t < 6; ++t) val = F.add(val, F.mul(row[t], c.coeffs[t]));
      bm.at(i, j) = val;
    }
  auto radical = pg::nullspace(F, bm);
  for (int i = 0; i < radical.basis.rows; ++i) {
    auto rv = pg::row_of(radical.basis, i);
    std::array<Code, 3> u{rv.c[0], rv.c[1], rv.c[2]};
    if (detail::eval_form(F, c.coeffs, u) == 0)
      throw std::runtime_error("degenerate conic: singular rational point");
  }
  return c;
}

// --- the scroll picture ----------------------------------------------------

struct ScrollResult {
  uint32_t g_point = 0;
  Subspace beta;
  std::vector<Subspace> scroll;  // the q+1 transversal planes through the conic
  Subspace gamma, gamma_s, gamma_s2, pifix;
  bool gamma_in_scroll = false;
  bool gamma_s_in_scroll = false;
  bool gamma_s2_in_scroll = false;
  bool pifix_in_scroll = false;
  std::vector<uint32_t> b_beta;          // back image of beta
  std::vector<uint32_t> b_scroll_rest;   // back image of the scroll minus the fixed plane
  bool beta_matches_e = false;
  bool scroll_matches_f = false;
  bool unique_point_property = false;
  bool scroll_planes_disjoint = false;
  bool scroll_rules_system = false;      // each scroll plane meets every orbit-span plane once
};

/// The block of a type-III point as geometry: the plane of II:-points over
/// its line for the type-II part, and the q+1 transversal planes meeting the
/// tangent conic for the type-III part.  Defined only for q != 1 mod 3.
inline ScrollResult scroll_representation(const ReductionContext& ctx,
                                          const fixed::FixedSubspaces& fs, uint32_t g_id,
                                          size_t point_choice = 0) {
  if (ctx.params.n == 1)
    throw std::invalid_argument("no scroll construction when q = 1 mod 3");
  if (ctx.pg2_type[g_id] != PointType2::TypeIII)
    throw std::invalid_argument("expected a type-III point");
  const auto& Fq = ctx.Fq();

  ScrollResult r;
  r.g_point = g_id;
  uint32_t g1 = ctx.phi_map[g_id], g2 = ctx.phi_map[g1];
  r.gamma = ctx.spread[g_id];
  r.gamma_s = ctx.spread[g1];
  r.gamma_s2 = ctx.spread[g2];
  r.pifix = fs.ptwise_planes[0];

  // the system of orbit-span planes through gamma
  auto G = fixed::planes_through_splane3(ctx, g_id);

  // pick a point of gamma, span its orbit plane, find the fixed point in it
  auto gamma_pts = pg::points_of(Fq, r.gamma);
  const Vec& P = gamma_pts[point_choice % gamma_pts.size()];
  uint32_t pid = ctx.pg8_id(P);
  uint32_t p1 = ctx.sigma_map[pid], p2 = ctx.sigma_map[p1];
  Vec Ps = ctx.pg8_point(p1), Ps2 = ctx.pg8_point(p2);
  auto pi = pg::span_points(Fq, {P, Ps, Ps2});
  size_t pi_index = std::find(G.begin(), G.end(), pi) - G.begin();
  if (pi_index == G.size()) throw std::runtime_error("orbit plane missing from the system");
  Vec A{};
  bool found_fixed = false;
  for (uint32_t x : pg::point_ids_of(Fq, pi))
    if (ctx.sigma_map[x] == x) {
      A = ctx.pg8_point(x);
      found_fixed = true;
      break;
    }
  if (!found_fixed) throw std::runtime_error("orbit plane has no fixed point");

  // the conic with tangents joining P to its orbit images
  auto t2 = pg::span_points(Fq, {P, Ps});
  auto t3 = pg::span_points(Fq, {P, Ps2});
  auto conic = conic_through(Fq, pi, A, Ps, Ps2, t2, t3);

  // the transversal plane through each conic point
  std::set<Subspace> scroll_set;
  for (const auto& C : conic.points)
    scroll_set.insert(reduction::transversal_plane(Fq, G, pi_index, C));
  r.scroll.assign(scroll_set.begin(), scroll_set.end());

  r.gamma_in_scroll = scroll_set.count(r.gamma) > 0;
  r.gamma_s_in_scroll = scroll_set.count(r.gamma_s) > 0;
  r.gamma_s2_in_scroll = scroll_set.count(r.gamma_s2) > 0;
  r.pifix_in_scroll = scroll_set.count(r.pifix) > 0;

  r.scroll_planes_disjoint = true;
  for (size_t i = 0; i < r.scroll.size(); ++i)
    for (size_t j = i + 1; j < r.scroll.size(); ++j)
      if (!pg::meet(Fq, r.scroll[i], r.scroll[j]).empty()) r.scroll_planes_disjoint = false;
  r.scroll_rules_system = true;
  for (const auto& D : r.scroll)
    for (const auto& pl : G)
      if (pg::meet(Fq, D, pl).dim() != 0) r.scroll_rules_system = false;

  // beta: the II:-points of the 5-space over the line joining the images
  uint32_t m_lid = ctx.pg2_line_through(g1, g2);
  auto h5 = ctx.h5_of_line(m_lid);
  std::vector<Vec> colinear_pts;
  for (uint32_t x : pg::point_ids_of(Fq, h5))
    if (ctx.pg8_type[x] == PointType8::IIcolinear) colinear_pts.push_back(ctx.pg8_point(x));
  r.beta = pg::span_points(Fq, colinear_pts);
  if (r.beta.dim() != 2 ||
      colinear_pts.size() != static_cast<size_t>(ctx.q) * ctx.q + ctx.q + 1)
    throw std::runtime_error("II:-points of the 5-space do not form a plane");
  for (const auto& pl : G)
    if (pg::meet(Fq, r.beta, pl).dim() != 0)
      throw std::runtime_error("beta is not a transversal plane of the system");

  // back images
  r.b_beta = reduction::back_map_sub(ctx, r.beta);
  std::vector<Vec> rest_pts;
  for (const auto& D : r.scroll) {
    if (D == r.pifix) continue;
    for (const auto& X : pg::points_of(Fq, D)) rest_pts.push_back(X);
  }
  r.b_scroll_rest = reduction::back_map(ctx, rest_pts);
  r.beta_matches_e = (r.b_beta == e_set(ctx, g_id));
  r.scroll_matches_f = (r.b_scroll_rest == f_set(ctx, g_id));

  // every block point except the two orbit images corresponds to a unique
  // point of beta together with the scroll minus the fixed plane
  std::map<uint32_t, int> hits;
  for (const auto& X : pg::points_of(Fq, r.beta)) ++hits[ctx.point_to_splane[ctx.pg8_id(X)]];
  for (const auto& X : rest_pts) ++hits[ctx.point_to_splane[ctx.pg8_id(X)]];
  r.unique_point_property = true;
  for (uint32_t b : fig_block(ctx, g_id).points) {
    if (b == g1 || b == g2) continue;
    if (hits[b] != 1) r.unique_point_property = false;
  }
  return r;
}

}  // namespace boserep::figueroa
