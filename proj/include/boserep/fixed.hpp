#pragma once

// Enumeration and classification of every sigma-fixed point, line and plane
// of PG(8,q), plus the 5-spaces fixed hyperplane-wise.  Fixed lines and
// planes are generated structurally (orbit spans and containment filters);
// completeness is certified by matching the closed-form counts, which turns
// the classification statements into the completeness proof.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "boserep/reduction.hpp"

namespace boserep::fixed {

using gf::Code;
using pg::Subspace;
using pg::Vec;
using reduction::PointType2;
using reduction::PointType8;
using reduction::ReductionContext;

enum class LineClass : uint8_t { PtwiseFixed, FixedI, FixedII };
enum class PlaneClass : uint8_t { PtwiseFixed, SplaneI, FixedII1, FixedII2, FixedIII, H1, H2 };

inline const char* name(LineClass c) {
  switch (c) {
    case LineClass::PtwiseFixed: return "ptwise-fixed line";
    case LineClass::FixedI: return "fixed-I-line";
    default: return "fixed-II-line";
  }
}

inline const char* name(PlaneClass c) {
  switch (c) {
    case PlaneClass::PtwiseFixed: return "ptwise-fixed plane";
    case PlaneClass::SplaneI: return "S_I-plane";
    case PlaneClass::FixedII1: return "fixed-II1-plane";
    case PlaneClass::FixedII2: return "fixed-II2-plane";
    case PlaneClass::FixedIII: return "fixed-III-plane";
    case PlaneClass::H1: return "h1-plane";
    default: return "h2-plane";
  }
}

/// Point composition of a subspace: counts per PointType8.
using Composition = std::array<int64_t, 6>;

inline Composition composition_of(const ReductionContext& ctx, const Subspace& s) {
  Composition c{};
  for (uint32_t pid : pg::point_ids_of(ctx.Fq(), s))
    ++c[static_cast<size_t>(ctx.pg8_type[pid])];
  return c;
}

struct FixedSubspaces {
  std::vector<uint32_t> fixed_point_ids;
  std::vector<Subspace> ptwise_planes;  // g of them
  std::vector<Subspace> hwise_5spaces;  // g of them
  std::vector<Subspace> lines;
  std::vector<LineClass> line_class;
  std::vector<Subspace> planes;
  std::vector<PlaneClass> plane_class;

  int64_t count_lines(LineClass c) const {
    return std::count(line_class.begin(), line_class.end(), c);
  }
  int64_t count_planes(PlaneClass c) const {
    return std::count(plane_class.begin(), plane_class.end(), c);
  }
};

namespace detail {

/// Group fixed points of an order-3 projectivity into pointwise-fixed
/// planes.  Two fixed points lie in the same plane exactly when the line
/// joining them is fixed pointwise.
inline std::vector<Subspace> group_into_ptwise_planes(
    const gf::SmallField& F, const std::vector<Vec>& fixed_pts,
    const std::function<bool(const Vec&)>& is_fixed) {
  std::vector<bool> used(fixed_pts.size(), false);
  std::vector<Subspace> out;
  for (size_t i = 0; i < fixed_pts.size(); ++i) {
    if (used[i]) continue;
    std::vector<Vec> members = {fixed_pts[i]};
    used[i] = true;
    for (size_t j = i + 1; j < fixed_pts.size(); ++j) {
      if (used[j]) continue;
      int on_line = 0;
      for (const auto& p : pg::line_points(F, fixed_pts[i], fixed_pts[j]))
        if (is_fixed(p)) ++on_line;
      if (on_line == static_cast<int>(F.q) + 1) {
        members.push_back(fixed_pts[j]);
        used[j] = true;
      }
    }
    auto plane = pg::span_points(F, members);
    if (plane.dim() != 2 || members.size() != F.q * static_cast<size_t>(F.q) + F.q + 1)
      throw std::runtime_error("fixed points do not assemble into planes");
    out.push_back(plane);
  }
  return out;
}

inline uint64_t expected_line_count(const gf::Params& pr, LineClass c) {
  uint64_t q = pr.q, v = q * q + q + 1;
  switch (c) {
    case LineClass::PtwiseFixed:
    case LineClass::FixedI:
      return pr.g * v;
    default:
      return pr.g * (q * q * q - q) * v / (q - pr.n);
  }
}

inline uint64_t expected_plane_count(const gf::Params& pr, PlaneClass c) {
  uint64_t q = pr.q, v = q * q + q + 1;
  int64_t n = pr.n, g = pr.g;
  switch (c) {
    case PlaneClass::PtwiseFixed: return g;
    case PlaneClass::SplaneI: return v;
    case PlaneClass::FixedII1: return g * (q - 2 + g - n) * (q + 1) * v;
    case PlaneClass::FixedII2: return (q * q * q - q) * v;
    case PlaneClass::FixedIII:
      return q * q * q * (q * q - 1) * (q - 1) * v / (v - g * (q - n + 1));
    case PlaneClass::H1: return g * (n + 1) * (q + 1) * v;
    default: return g * (n + 1) * (q * q - 1 + n) * v;
  }
}

}  // namespace detail

/// Expected Table 3 row: composition in the order
/// (fixed, I:, I.., II:, II.., III..).
inline Composition expected_composition(const gf::Params& pr, LineClass c) {
  int64_t q = pr.q, n = pr.n;
  switch (c) {
    case LineClass::PtwiseFixed: return {q + 1, 0, 0, 0, 0, 0};
    case LineClass::FixedI: return {n + 1, q - n, 0, 0, 0, 0};
    default: return {n + 1, 0, 0, q - n, 0, 0};
  }
}

inline Composition expected_composition(const gf::Params& pr, PlaneClass c) {
  int64_t q = pr.q, n = pr.n, g = pr.g;
  int64_t v = q * q + q + 1, k = q - n + 1;
  switch (c) {
    case PlaneClass::PtwiseFixed: return {v, 0, 0, 0, 0, 0};
    case PlaneClass::SplaneI: return {g, g * (q - n), v - g * k, 0, 0, 0};
    case PlaneClass::FixedII1: return {g, q - n, 0, (g - 1) * (q - n), v - g * k, 0};
    case PlaneClass::FixedII2: return {g, 0, 0, g * (q - n), v - g * k, 0};
    case PlaneClass::FixedIII: return {g, 0, 0, g * (q - n), 0, v - g * k};
    case PlaneClass::H1: return {q + 1 + n, q - n, 0, q * q - q, 0, 0};
    default: return {q + 1 + n, 0, 0, q * q - n, 0, 0};
  }
}

/// Expected Table 4 row: fixed lines by class in the container,
/// (ptwise-fixed, fixed-I, fixed-II).
inline std::array<int64_t, 3> expected_fixed_lines(const gf::Params& pr, PlaneClass c) {
  int64_t q = pr.q, n = pr.n, g = pr.g;
  switch (c) {
    case PlaneClass::PtwiseFixed: return {q * q + q + 1, 0, 0};
    case PlaneClass::SplaneI: return {0, g, 0};
    case PlaneClass::FixedII1: return {0, 1, g - 1};
    case PlaneClass::FixedII2: return {0, 0, g};
    case PlaneClass::FixedIII: return {0, 0, g};
    case PlaneClass::H1: return {1, 1, q - 1 + n};
    default: return {1, 0, q + n};
  }
}

/// Enumerate and classify all fixed subspaces.  Throws on any structural
/// violation: an invariant line or plane whose composition matches no class,
/// or a class count differing from its closed form.
inline FixedSubspaces enumerate_fixed(const ReductionContext& ctx) {
  const auto& Fq = ctx.Fq();
  const auto& pr = ctx.params;
  const int64_t q = pr.q;
  FixedSubspaces fs;

  // fixed points, grouped into the g pointwise-fixed planes
  std::vector<Vec> fixed_pts;
  for (uint32_t pid = 0; pid < ctx.n8; ++pid)
    if (ctx.sigma_map[pid] == pid) {
      fs.fixed_point_ids.push_back(pid);
      fixed_pts.push_back(ctx.pg8_point(pid));
    }
  if (fs.fixed_point_ids.size() != static_cast<size_t>(pr.g) * (q * q + q + 1))
    throw std::runtime_error("fixed point count differs from its closed form");
  auto sigma_fixed = [&](const Vec& v) {
    uint32_t id = ctx.pg8_id(pg::normalize(Fq, v));
    return ctx.sigma_map[id] == id;
  };
  fs.ptwise_planes = detail::group_into_ptwise_planes(Fq, fixed_pts, sigma_fixed);
  if (fs.ptwise_planes.size() != static_cast<size_t>(pr.g))
    throw std::runtime_error("pointwise-fixed plane count differs from g");
  // each must be a transversal plane of the type-I spread planes
  for (const auto& pl : fs.ptwise_planes) {
    for (uint32_t id = 0; id < ctx.n2; ++id) {
      if (ctx.pg2_type[id] != PointType2::TypeI) continue;
      if (pg::meet(Fq, pl, ctx.spread[id]).dim() != 0)
        throw std::runtime_error("pointwise-fixed plane is not a transversal plane");
    }
  }

  // 5-spaces fixed hyperplane-wise: pointwise-fixed planes of the action on
  // hyperplanes; a hyperplane h maps to h * (M^{-1})^T
  {
    pg::Collineation dual;
    dual.m = pg::mat_transpose(pg::mat_inverse(Fq, ctx.sigma.m));
    std::vector<Vec> fixed_duals;
    for (uint32_t did = 0; did < ctx.n8; ++did) {
      Vec d = pg::unrank_point(Fq, 8, did);
      if (pg::apply(Fq, dual, d) == d) fixed_duals.push_back(d);
    }
    auto dual_fixed = [&](const Vec& v) {
      return pg::apply(Fq, dual, pg::normalize(Fq, v)) == pg::normalize(Fq, v);
    };
    auto dual_planes = detail::group_into_ptwise_planes(Fq, fixed_duals, dual_fixed);
    if (dual_planes.size() != static_cast<size_t>(pr.g))
      throw std::runtime_error("hyperplane-wise-fixed 5-space count differs from g");
    for (const auto& dp : dual_planes) {
      std::vector<Vec> rows;
      for (int i = 0; i < dp.basis.rows; ++i) rows.push_back(pg::row_of(dp.basis, i));
      auto s5 = pg::subspace_from_dual(Fq, rows);
      if (s5.dim() != 5) throw std::runtime_error("dual plane does not cut out a 5-space");
      fs.hwise_5spaces.push_back(s5);
    }
  }

  // fixed lines: the lines of the pointwise-fixed planes, plus the orbit
  // line of every colinear-type point
  std::set<Subspace> line_set;
  for (const auto& pl : fs.ptwise_planes) {
    auto pts = pg::points_of(Fq, pl);
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = i + 1; j < pts.size(); ++j)
        line_set.insert(pg::span_points(Fq, {pts[i], pts[j]}));
  }
  for (uint32_t pid = 0; pid < ctx.n8; ++pid) {
    auto t = ctx.pg8_type[pid];
    if (t != PointType8::Icolinear && t != PointType8::IIcolinear) continue;
    uint32_t p1 = ctx.sigma_map[pid];
    if (p1 < pid || ctx.sigma_map[p1] < pid) continue;  // one span per orbit
    line_set.insert(pg::span_points(Fq, {ctx.pg8_point(pid), ctx.pg8_point(p1)}));
  }
  for (const auto& l : line_set) {
    if (l.dim() != 1) throw std::runtime_error("degenerate fixed line candidate");
    auto comp = composition_of(ctx, l);
    LineClass cls;
    if (comp == expected_composition(pr, LineClass::PtwiseFixed))
      cls = LineClass::PtwiseFixed;
    else if (comp == expected_composition(pr, LineClass::FixedI))
      cls = LineClass::FixedI;
    else if (comp == expected_composition(pr, LineClass::FixedII))
      cls = LineClass::FixedII;
    else
      throw std::runtime_error("invariant line matches no line class");
    fs.lines.push_back(l);
    fs.line_class.push_back(cls);
  }
  for (auto cls : {LineClass::PtwiseFixed, LineClass::FixedI, LineClass::FixedII})
    if (static_cast<uint64_t>(fs.count_lines(cls)) != detail::expected_line_count(pr, cls))
      throw std::runtime_error(std::string("count of ") + name(cls) +
                               "s differs from its closed form");

  // fixed planes: pointwise-fixed ones, type-I spread planes, orbit spans of
  // triangle points, and spans of a pointwise-fixed line with a fixed line
  // meeting it
  std::set<Subspace> plane_set(fs.ptwise_planes.begin(), fs.ptwise_planes.end());
  for (uint32_t id = 0; id < ctx.n2; ++id)
    if (ctx.pg2_type[id] == PointType2::TypeI) plane_set.insert(ctx.spread[id]);
  for (uint32_t pid = 0; pid < ctx.n8; ++pid) {
    auto t = ctx.pg8_type[pid];
    if (t != PointType8::Itriangle && t != PointType8::IItriangle &&
        t != PointType8::IIItriangle)
      continue;
    uint32_t p1 = ctx.sigma_map[pid];
    uint32_t p2 = ctx.sigma_map[p1];
    if (p1 < pid || p2 < pid) continue;
    auto pl = pg::span_points(Fq, {ctx.pg8_point(pid), ctx.pg8_point(p1), ctx.pg8_point(p2)});
    if (pl.dim() != 2) throw std::runtime_error("triangle orbit does not span a plane");
    plane_set.insert(pl);
  }
  {
    std::vector<size_t> ptwise_line_idx;
    for (size_t i = 0; i < fs.lines.size(); ++i)
      if (fs.line_class[i] == LineClass::PtwiseFixed) ptwise_line_idx.push_back(i);
    for (size_t i : ptwise_line_idx)
      for (size_t j = 0; j < fs.lines.size(); ++j) {
        if (fs.line_class[j] == LineClass::PtwiseFixed) continue;
        if (pg::meet(Fq, fs.lines[i], fs.lines[j]).dim() != 0) continue;
        auto pl = pg::span(Fq, fs.lines[i], fs.lines[j]);
        if (pl.dim() == 2) plane_set.insert(pl);
      }
  }
  for (const auto& pl : plane_set) {
    auto comp = composition_of(ctx, pl);
    std::optional<PlaneClass> cls;
    for (auto c : {PlaneClass::PtwiseFixed, PlaneClass::SplaneI, PlaneClass::FixedII1,
                   PlaneClass::FixedII2, PlaneClass::FixedIII, PlaneClass::H1, PlaneClass::H2})
      if (comp == expected_composition(pr, c)) { cls = c; break; }
    if (!cls) throw std::runtime_error("invariant plane matches no plane class");
    if (!(pg::apply_sub(Fq, ctx.sigma, pl) == pl))
      throw std::runtime_error("plane candidate is not sigma-invariant");
    fs.planes.push_back(pl);
    fs.plane_class.push_back(*cls);
  }
  for (auto cls : {PlaneClass::PtwiseFixed, PlaneClass::SplaneI, PlaneClass::FixedII1,
                   PlaneClass::FixedII2, PlaneClass::FixedIII, PlaneClass::H1, PlaneClass::H2})
    if (static_cast<uint64_t>(fs.count_planes(cls)) != detail::expected_plane_count(pr, cls))
      throw std::runtime_error(std::string("count of ") + name(cls) +
                               "s differs from its closed form");

  // h-planes must sit inside a hyperplane-wise-fixed 5-space
  for (size_t i = 0; i < fs.planes.size(); ++i) {
    if (fs.plane_class[i] != PlaneClass::H1 && fs.plane_class[i] != PlaneClass::H2) continue;
    bool inside = false;
    for (const auto& s5 : fs.hwise_5spaces)
      if (pg::sub_contains(Fq, s5, fs.planes[i])) inside = true;
    if (!inside) throw std::runtime_error("h-plane outside every hwise-fixed 5-space");
  }

  return fs;
}

/// Fixed lines (by class) contained in a subspace: Table 4 row of the container.
inline std::array<int64_t, 3> fixed_lines_in(const ReductionContext& ctx,
                                             const FixedSubspaces& fs, const Subspace& s) {
  std::array<int64_t, 3> out{0, 0, 0};
  for (size_t i = 0; i < fs.lines.size(); ++i)
    if (pg::sub_contains(ctx.Fq(), s, fs.lines[i]))
      ++out[static_cast<size_t>(fs.line_class[i])];
  return out;
}

// --- reguli ------------------------------------------------------------------

/// The unique line through X meeting two disjoint lines of a common 3-space.
inline Subspace transversal_through(const gf::SmallField& F, const Vec& X, const Subspace& l1,
                                    const Subspace& l2) {
  auto t = pg::meet(F, pg::span_point(F, l1, X), pg::span_point(F, l2, X));
  if (t.dim() != 1) throw std::runtime_error("transversal line is not unique");
  return t;
}

/// Check whether q+1 pairwise-disjoint lines of a common 3-space form a
/// regulus; on success returns the opposite regulus (the q+1 common
/// transversals).
inline std::optional<std::vector<Subspace>> verify_regulus(const gf::SmallField& F,
                                                           const std::vector<Subspace>& lines) {
  if (lines.size() != F.q + 1) return std::nullopt;
  auto s3 = pg::span(F, lines[0], lines[1]);
  if (s3.dim() != 3) return std::nullopt;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (!pg::sub_contains(F, s3, lines[i])) return std::nullopt;
    for (size_t j = i + 1; j < lines.size(); ++j)
      if (!pg::meet(F, lines[i], lines[j]).empty()) return std::nullopt;
  }
  // every common transversal meets lines[0], and through each of its points
  // there is exactly one line meeting lines[1] and lines[2]
  std::vector<Subspace> opposite;
  for (const auto& X : pg::points_of(F, lines[0])) {
    auto t = transversal_through(F, X, lines[1], lines[2]);
    bool meets_all = true;
    for (const auto& l : lines)
      if (pg::meet(F, t, l).empty()) { meets_all = false; break; }
    if (meets_all) opposite.push_back(t);
  }
  if (opposite.size() != F.q + 1) return std::nullopt;
  return opposite;
}

/// The regulus determined by three pairwise-disjoint lines of a 3-space:
/// the common transversals of their transversals.
inline std::vector<Subspace> regulus_of(const gf::SmallField& F, const Subspace& l0,
                                        const Subspace& l1, const Subspace& l2) {
  std::vector<Subspace> trans;
  for (const auto& X : pg::points_of(F, l0)) trans.push_back(transversal_through(F, X, l1, l2));
  std::vector<Subspace> reg;
  for (const auto& Y : pg::points_of(F, trans[0])) {
    auto r = transversal_through(F, Y, trans[1], trans[2]);
    bool meets_all = true;
    for (const auto& t : trans)
      if (pg::meet(F, r, t).empty()) { meets_all = false; break; }
    if (meets_all) reg.push_back(r);
  }
  if (reg.size() != F.q + 1) throw std::runtime_error("three skew lines span no regulus");
  return reg;
}

// --- linear congruences -------------------------------------------------------

enum class CongruenceKind : uint8_t { Elliptic, Parabolic, Hyperbolic };

inline const char* name(CongruenceKind k) {
  switch (k) {
    case CongruenceKind::Elliptic: return "elliptic";
    case CongruenceKind::Parabolic: return "parabolic";
    default: return "hyperbolic";
  }
}

struct CongruenceResult {
  CongruenceKind kind;
  std::vector<Subspace> axes;  // empty / {axis} / {axis1, axis2}
};

/// Classify the fixed-I and fixed-II lines inside the 3-space where a
/// hyperplane-wise-fixed 5-space meets a type-I 5-space, by checking the
/// geometric definition of the three congruence kinds.
inline CongruenceResult congruence_classify(const ReductionContext& ctx,
                                            const FixedSubspaces& fs, const Subspace& sigma3,
                                            int regulus_samples, uint64_t seed) {
  const auto& Fq = ctx.Fq();
  const auto& pr = ctx.params;
  const int64_t q = pr.q;
  if (sigma3.dim() != 3) throw std::invalid_argument("expected a 3-space");

  std::vector<Subspace> family;  // fixed-I and fixed-II lines inside
  std::vector<Subspace> ptwise;  // pointwise-fixed lines inside
  for (size_t i = 0; i < fs.lines.size(); ++i) {
    if (!pg::sub_contains(Fq, sigma3, fs.lines[i])) continue;
    if (fs.line_class[i] == LineClass::PtwiseFixed)
      ptwise.push_back(fs.lines[i]);
    else
      family.push_back(fs.lines[i]);
  }
  if (static_cast<int64_t>(ptwise.size()) != pr.n + 1)
    throw std::runtime_error("unexpected number of pointwise-fixed lines in the 3-space");

  if (pr.n == -1) {
    // elliptic: a regular spread of the 3-space
    if (static_cast<int64_t>(family.size()) != q * q + 1)
      throw std::runtime_error("family is not a spread candidate");
    std::set<uint32_t> covered;
    for (const auto& l : family) {
      for (size_t j = 0; j < family.size(); ++j)
        if (!(family[j] == l) && !pg::meet(Fq, l, family[j]).empty())
          throw std::runtime_error("spread lines are not pairwise disjoint");
      for (uint32_t pid : pg::point_ids_of(Fq, l)) covered.insert(pid);
    }
    if (covered.size() != pg::point_ids_of(Fq, sigma3).size())
      throw std::runtime_error("spread does not cover the 3-space");
    std::mt19937_64 rng(seed);
    for (int t = 0; t < regulus_samples; ++t) {
      size_t a = rng() % family.size(), b = rng() % family.size(), c = rng() % family.size();
      if (a == b || a == c || b == c) { --t; continue; }
      auto reg = regulus_of(Fq, family[a], family[b], family[c]);
      for (const auto& r : reg)
        if (std::find(family.begin(), family.end(), r) == family.end())
          throw std::runtime_error("regulus escapes the spread: not regular");
    }
    return {CongruenceKind::Elliptic, {}};
  }

  if (pr.n == 0) {
    // parabolic with axis the unique pointwise-fixed line
    const Subspace& axis = ptwise[0];
    if (static_cast<int64_t>(family.size()) + 1 != q * q + q + 1)
      throw std::runtime_error("wrong congruence size");
    for (const auto& l : family)
      if (pg::meet(Fq, l, axis).empty())
        throw std::runtime_error("congruence line misses the axis");
    for (size_t i = 0; i < family.size(); ++i)
      for (size_t j = i + 1; j < family.size(); ++j) {
        auto m = pg::meet(Fq, family[i], family[j]);
        if (m.empty()) continue;
        if (m.dim() != 0 || !pg::sub_contains(Fq, axis, m))
          throw std::runtime_error("two congruence lines meet off the axis");
      }
    // the family must contain a regulus: the fixed-I lines form one
    std::vector<Subspace> reg_lines;
    for (size_t i = 0; i < fs.lines.size(); ++i)
      if (fs.line_class[i] == LineClass::FixedI && pg::sub_contains(Fq, sigma3, fs.lines[i]))
        reg_lines.push_back(fs.lines[i]);
    if (!verify_regulus(Fq, reg_lines))
      throw std::runtime_error("congruence contains no regulus");
    return {CongruenceKind::Parabolic, {axis}};
  }

  // hyperbolic: exactly the (q+1)^2 lines meeting both pointwise-fixed lines
  std::set<Subspace> expect;
  for (const auto& X : pg::points_of(Fq, ptwise[0]))
    for (const auto& Y : pg::points_of(Fq, ptwise[1]))
      expect.insert(pg::span_points(Fq, {X, Y}));
  if (expect.size() != static_cast<size_t>((q + 1) * (q + 1)))
    throw std::runtime_error("join count is not (q+1)^2");
  std::set<Subspace> got(family.begin(), family.end());
  if (got != expect)
    throw std::runtime_error("family is not the set of lines meeting both axes");
  return {CongruenceKind::Hyperbolic, {ptwise[0], ptwise[1]}};
}

// --- structure of the fixed-I lines and planes around a 5-space ---------------

/// The transversal planes of the type-I spread planes that meet every
/// fixed-I line of the given hyperplane-wise-fixed 5-space.
inline std::vector<Subspace> ruling_planes_of_hwise(const ReductionContext& ctx,
                                                    const FixedSubspaces& fs,
                                                    const Subspace& hwise) {
  const auto& Fq = ctx.Fq();
  std::vector<Subspace> flines;
  for (size_t i = 0; i < fs.lines.size(); ++i)
    if (fs.line_class[i] == LineClass::FixedI && pg::sub_contains(Fq, hwise, fs.lines[i]))
      flines.push_back(fs.lines[i]);
  std::vector<Subspace> out;
  for (const auto& rp : ctx.ruling_planes) {
    bool meets_all = true;
    for (const auto& l : flines)
      if (pg::meet(Fq, rp, l).empty()) { meets_all = false; break; }
    if (meets_all) out.push_back(rp);
  }
  return out;
}

/// Orbit-span planes through a type-III spread plane: one per point, all
/// fixed-III planes.
inline std::vector<Subspace> planes_through_splane3(const ReductionContext& ctx,
                                                    uint32_t gamma_id) {
  const auto& Fq = ctx.Fq();
  std::vector<Subspace> out;
  for (uint32_t pid : pg::point_ids_of(Fq, ctx.spread[gamma_id])) {
    uint32_t p1 = ctx.sigma_map[pid], p2 = ctx.sigma_map[p1];
    out.push_back(
        pg::span_points(Fq, {ctx.pg8_point(pid), ctx.pg8_point(p1), ctx.pg8_point(p2)}));
  }
  return out;
}

// --- census -------------------------------------------------------------------

struct Cell {
  std::string table, row, col;
  int64_t expected = 0, computed = 0;
  bool pass = false;
};

struct Census {
  gf::Params params;
  std::vector<Cell> cells;
  bool all_pass() const {
    for (const auto& c : cells)
      if (!c.pass) return false;
    return true;
  }
};

namespace detail {

inline void push_cell(Census& cs, const std::string& table, const std::string& row,
                      const std::string& col, int64_t expected, int64_t computed) {
  cs.cells.push_back({table, row, col, expected, computed, expected == computed});
}

template <typename T>
std::vector<T> sample_of(const std::vector<T>& all, size_t want, std::mt19937_64& rng) {
  if (all.size() <= want) return all;
  std::vector<T> out;
  std::set<size_t> seen;
  while (out.size() < want) {
    size_t i = rng() % all.size();
    if (seen.insert(i).second) out.push_back(all[i]);
  }
  return out;
}

}  // namespace detail

static constexpr const char* kType8Names[6] = {"fixed-point", "I:-point",  "I..-point",
                                               "II:-point",   "II..-point", "III..-point"};

/// Fill every Table 2/3/4 cell by direct counting and compare against the
/// closed forms.  Containers are checked exhaustively when q = 3 (or when
/// there are at most `sample_count` of them), otherwise on a seeded sample.
inline Census census(const ReductionContext& ctx, const FixedSubspaces& fs,
                     int sample_count = 30, uint64_t seed = 0) {
  const auto& Fq = ctx.Fq();
  const auto& pr = ctx.params;
  const int64_t q = pr.q, g = pr.g, n = pr.n;
  const int64_t v = q * q + q + 1;
  Census cs;
  cs.params = pr;
  std::mt19937_64 rng(seed);
  bool exhaustive = (q == 3);

  // ---- Table 2: global counts
  std::array<int64_t, 3> splanes{};
  for (auto t : ctx.pg2_type) ++splanes[static_cast<size_t>(t)];
  detail::push_cell(cs, "2", "S_I-plane", "count", v, splanes[0]);
  detail::push_cell(cs, "2", "S_II-plane", "count", v * (q * q * q - q), splanes[1]);
  detail::push_cell(cs, "2", "S_III-plane", "count", q * q * q * (q - 1) * (q - 1) * (q + 1),
                    splanes[2]);

  std::array<int64_t, 6> pts{};
  for (auto t : ctx.pg8_type) ++pts[static_cast<size_t>(t)];
  const std::array<int64_t, 6> pts_expect = {
      g * v,
      g * (q - n) * v,
      (v - g * (q - n + 1)) * v,
      g * v * (q * q * q - q),
      v * (q * q * q - q) * (v - g),
      q * q * q * (q * q - 1) * (q * q * q - 1)};
  for (int i = 0; i < 6; ++i)
    detail::push_cell(cs, "2", kType8Names[i], "count", pts_expect[i], pts[i]);

  for (auto cls : {LineClass::PtwiseFixed, LineClass::FixedI, LineClass::FixedII})
    detail::push_cell(cs, "2", name(cls), "count",
                      static_cast<int64_t>(detail::expected_line_count(pr, cls)),
                      fs.count_lines(cls));
  for (auto cls : {PlaneClass::PtwiseFixed, PlaneClass::FixedII1, PlaneClass::FixedII2,
                   PlaneClass::FixedIII, PlaneClass::H1, PlaneClass::H2})
    detail::push_cell(cs, "2", name(cls), "count",
                      static_cast<int64_t>(detail::expected_plane_count(pr, cls)),
                      fs.count_planes(cls));
  detail::push_cell(cs, "2", "hwise-fixed-5-space", "count", g,
                    static_cast<int64_t>(fs.hwise_5spaces.size()));

  // ---- Tables 3 and 4 per container
  auto check_composition = [&](const std::string& row, const std::vector<Subspace>& containers,
                               const Composition& expect) {
    auto chosen = exhaustive ? containers
                             : detail::sample_of(containers, static_cast<size_t>(sample_count), rng);
    Composition seen = expect;
    bool ok = !chosen.empty() || containers.empty();
    for (const auto& s : chosen) {
      auto comp = composition_of(ctx, s);
      if (comp != expect) { seen = comp; ok = false; break; }
    }
    for (int i = 0; i < 6; ++i)
      detail::push_cell(cs, "3", row, kType8Names[i], expect[i], ok ? expect[i] : seen[i]);
  };
  auto check_fixed_lines = [&](const std::string& row, const std::vector<Subspace>& containers,
                               const std::array<int64_t, 3>& expect) {
    auto chosen = exhaustive ? containers
                             : detail::sample_of(containers, static_cast<size_t>(sample_count), rng);
    std::array<int64_t, 3> seen = expect;
    bool ok = !chosen.empty() || containers.empty();
    for (const auto& s : chosen) {
      auto got = fixed_lines_in(ctx, fs, s);
      if (got != expect) { seen = got; ok = false; break; }
    }
    const char* cols[3] = {"ptwise-fixed line", "fixed-I-line", "fixed-II-line"};
    for (int i = 0; i < 3; ++i)
      detail::push_cell(cs, "4", row, cols[i], expect[i], ok ? expect[i] : seen[i]);
  };

  // lines as containers (Table 3 rows)
  for (auto cls : {LineClass::PtwiseFixed, LineClass::FixedI, LineClass::FixedII}) {
    std::vector<Subspace> containers;
    for (size_t i = 0; i < fs.lines.size(); ++i)
      if (fs.line_class[i] == cls) containers.push_back(fs.lines[i]);
    check_composition(name(cls), containers, expected_composition(pr, cls));
  }

  // spread planes as containers
  std::vector<Subspace> s1, s2, s3;
  for (uint32_t id = 0; id < ctx.n2; ++id) {
    if (ctx.pg2_type[id] == PointType2::TypeI) s1.push_back(ctx.spread[id]);
    else if (ctx.pg2_type[id] == PointType2::TypeII) s2.push_back(ctx.spread[id]);
    else s3.push_back(ctx.spread[id]);
  }
  check_composition("S_I-plane", s1, expected_composition(pr, PlaneClass::SplaneI));
  check_composition("S_II-plane", s2, {0, 0, 0, g, v - g, 0});
  check_composition("S_III-plane", s3, {0, 0, 0, 0, 0, v});
  check_fixed_lines("S_I-plane", s1, expected_fixed_lines(pr, PlaneClass::SplaneI));
  check_fixed_lines("S_II-plane", s2, {0, 0, 0});
  check_fixed_lines("S_III-plane", s3, {0, 0, 0});

  // fixed planes as containers
  for (auto cls : {PlaneClass::PtwiseFixed, PlaneClass::FixedII1, PlaneClass::FixedII2,
                   PlaneClass::FixedIII, PlaneClass::H1, PlaneClass::H2}) {
    std::vector<Subspace> containers;
    for (size_t i = 0; i < fs.planes.size(); ++i)
      if (fs.plane_class[i] == cls) containers.push_back(fs.planes[i]);
    check_composition(name(cls), containers, expected_composition(pr, cls));
    check_fixed_lines(name(cls), containers, expected_fixed_lines(pr, cls));
  }

  // 5-spaces of lines, by line type
  std::vector<Subspace> h1c, h2c, h3c;
  {
    std::vector<uint32_t> l1, l2, l3;
    for (uint32_t lid = 0; lid < ctx.n2; ++lid) {
      if (ctx.pg2_line_type[lid] == PointType2::TypeI) l1.push_back(lid);
      else if (ctx.pg2_line_type[lid] == PointType2::TypeII) l2.push_back(lid);
      else l3.push_back(lid);
    }
    auto pick = [&](const std::vector<uint32_t>& ids) {
      auto chosen = exhaustive ? ids : detail::sample_of(ids, static_cast<size_t>(sample_count), rng);
      std::vector<Subspace> out;
      for (uint32_t lid : chosen) out.push_back(ctx.h5_of_line(lid));
      return out;
    };
    h1c = pick(l1);
    h2c = pick(l2);
    h3c = pick(l3);
  }
  check_fixed_lines("H_I-5-space", h1c, {g, g * (q + 1), g * (q * q * q - q) / (q - n)});
  check_fixed_lines("H_II-5-space", h2c, {0, g, 0});
  check_fixed_lines("H_III-5-space", h3c, {0, 0, 0});

  // hyperplane-wise fixed 5-spaces
  check_composition("hwise-fixed-5-space", fs.hwise_5spaces,
                    {(n + 1) * v, (q - n) * v, 0, (q * q * q - q) * v, 0, 0});
  check_fixed_lines("hwise-fixed-5-space", fs.hwise_5spaces,
                    {(n + 1) * v, v, (q * q * q - q) * v / (q - n)});

  return cs;
}

}  // namespace boserep::fixed
