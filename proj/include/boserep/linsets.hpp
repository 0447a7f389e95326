#pragma once

// Linear sets of PG(2,q^3) arising from subspaces of PG(8,q) through the
// back-map B, with rank and weight structure, and their classification into
// the kinds that occur for invariant subspaces: points, sublines, subplanes,
// clubs and scattered sets.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "boserep/fixed.hpp"
#include "boserep/reduction.hpp"

namespace boserep::linsets {

using gf::Code;
using pg::Subspace;
using pg::Vec;
using reduction::PointType2;
using reduction::ReductionContext;

struct LinearSet {
  Subspace source;
  int rank = 0;                   // source projective dim + 1
  std::vector<uint32_t> points;   // PG(2,q^3) ids, sorted
  std::map<uint32_t, int> weight; // per point: dim(source meet spread plane) + 1
};

enum class LinearSetKind : uint8_t {
  SinglePoint,
  FqLine,
  FqSubplane,
  Club,
  Scattered,
  Rank6AllTypeIandII,
  Other
};

inline const char* name(LinearSetKind k) {
  switch (k) {
    case LinearSetKind::SinglePoint: return "single point";
    case LinearSetKind::FqLine: return "GF(q)-subline";
    case LinearSetKind::FqSubplane: return "GF(q)-subplane";
    case LinearSetKind::Club: return "club";
    case LinearSetKind::Scattered: return "scattered";
    case LinearSetKind::Rank6AllTypeIandII: return "rank-6 all type I and II";
    default: return "other";
  }
}

/// Exact B-image with weights; the weight of a point counts how much of the
/// source sits inside its spread plane.
inline LinearSet linear_set(const ReductionContext& ctx, const Subspace& src) {
  if (src.empty()) throw std::invalid_argument("empty source subspace");
  LinearSet ls;
  ls.source = src;
  ls.rank = src.dim() + 1;
  std::map<uint32_t, uint32_t> hits;
  for (uint32_t pid : pg::point_ids_of(ctx.Fq(), src)) ++hits[ctx.point_to_splane[pid]];
  uint64_t weight_sum = 0;
  for (auto [id, cnt] : hits) {
    // cnt = (q^w - 1)/(q - 1)
    int w = 0;
    uint64_t c = 0, p = 1;
    while (c < cnt) { c += p; p *= ctx.q; ++w; }
    if (c != cnt) throw std::runtime_error("spread trace is not a subspace point count");
    ls.points.push_back(id);
    ls.weight[id] = w;
    weight_sum += cnt;
  }
  if (weight_sum != pg::n_points(ctx.q, src.dim()))
    throw std::runtime_error("weight identity violated");
  return ls;
}

/// All points of PG(2,q^3) on the line through two given points.
inline bool collinear_set(const ReductionContext& ctx, const std::vector<uint32_t>& ids) {
  if (ids.size() <= 2) return true;
  Vec a = ctx.pg2_point(ids[0]), b = ctx.pg2_point(ids[1]);
  for (size_t i = 2; i < ids.size(); ++i)
    if (pg::det3(ctx.Fq3(), a, b, ctx.pg2_point(ids[i])) != 0) return false;
  return true;
}

/// The GF(q)-subline through three distinct collinear points: the image of
/// PG(1,q) under the projectivity sending a standard frame to the three
/// parameters.
inline std::set<uint32_t> subline_through(const ReductionContext& ctx, uint32_t a, uint32_t b,
                                          uint32_t c) {
  const auto& F = ctx.Fq3();
  Vec A = ctx.pg2_point(a), B = ctx.pg2_point(b), C = ctx.pg2_point(c);
  auto line = pg::span_points(F, {A, B});
  if (!pg::contains(F, line, C)) throw std::invalid_argument("points not collinear");
  // coordinates of a point on the line with respect to (E0, E1)
  Vec E0 = pg::row_of(line.basis, 0), E1 = pg::row_of(line.basis, 1);
  auto coords = [&](const Vec& X) -> std::pair<Code, Code> {
    // reduce X against the echelon rows of the line
    int p0 = 0, p1 = 0;
    while (E0.c[p0] == 0) ++p0;
    while (E1.c[p1] == 0) ++p1;
    Code u = X.c[p0], v = X.c[p1];
    // E1 has zero at p0 and E0 has zero at p1 in echelon form
    return {u, v};
  };
  auto [a0, a1] = coords(A);
  auto [b0, b1] = coords(B);
  auto [c0, c1] = coords(C);
  // solve alpha*(a0,a1) + beta*(b0,b1) = (c0,c1)
  Code det = F.sub(F.mul(a0, b1), F.mul(a1, b0));
  if (det == 0) throw std::runtime_error("degenerate frame on the line");
  Code alpha = F.div(F.sub(F.mul(c0, b1), F.mul(c1, b0)), det);
  Code beta = F.div(F.sub(F.mul(a0, c1), F.mul(a1, c0)), det);
  // columns alpha*A~, beta*B~ map (1:0),(0:1),(1:1) to A,B,C
  Code m00 = F.mul(alpha, a0), m10 = F.mul(alpha, a1);
  Code m01 = F.mul(beta, b0), m11 = F.mul(beta, b1);
  std::set<uint32_t> out;
  auto emit = [&](Code u, Code v) {
    Code x = F.add(F.mul(m00, u), F.mul(m01, v));
    Code y = F.add(F.mul(m10, u), F.mul(m11, v));
    Vec P = pg::vec_add(F, pg::vec_scale(F, x, E0), pg::vec_scale(F, y, E1));
    out.insert(ctx.pg2_id(pg::normalize(F, P)));
  };
  for (Code u = 0; u < ctx.q; ++u) emit(1, u);  // the GF(q)-rational parameters
  emit(0, 1);
  return out;
}

/// Combinatorial subplane test: q^2+q+1 points such that every secant line
/// meets the set in a GF(q)-subline of q+1 points.
inline bool is_fq_subplane(const ReductionContext& ctx, const std::vector<uint32_t>& ids) {
  const uint64_t v = static_cast<uint64_t>(ctx.q) * ctx.q + ctx.q + 1;
  if (ids.size() != v) return false;
  std::map<uint32_t, std::vector<uint32_t>> by_line;
  for (size_t i = 0; i < ids.size(); ++i)
    for (size_t j = i + 1; j < ids.size(); ++j)
      by_line[ctx.pg2_line_through(ids[i], ids[j])].push_back(0);
  if (by_line.size() != v) return false;
  for (auto& [lid, pairs] : by_line)
    if (pairs.size() != static_cast<size_t>(ctx.q) * (ctx.q + 1) / 2) return false;
  // each secant meets the set in exactly q+1 points forming a subline
  std::set<uint32_t> idset(ids.begin(), ids.end());
  for (auto& [lid, pairs] : by_line) {
    std::vector<uint32_t> on;
    for (uint32_t pid : ctx.pg2_line_point_ids(lid))
      if (idset.count(pid)) on.push_back(pid);
    if (on.size() != static_cast<size_t>(ctx.q) + 1) return false;
    auto sub = subline_through(ctx, on[0], on[1], on[2]);
    if (!std::includes(sub.begin(), sub.end(), on.begin(), on.end())) return false;
  }
  return true;
}

struct Classified {
  LinearSetKind kind = LinearSetKind::Other;
  std::optional<uint32_t> head;            // club head, when present
  std::array<int64_t, 3> type_counts{};    // Type I / II / III points
};

inline Classified classify_linear_set(const ReductionContext& ctx, const LinearSet& ls) {
  if (ls.rank > 6) throw std::invalid_argument("rank above 6 not classified");
  Classified out;
  for (uint32_t id : ls.points) ++out.type_counts[static_cast<size_t>(ctx.pg2_type[id])];

  const int64_t q = ctx.q;
  const int64_t v = q * q + q + 1;
  const int64_t nI = out.type_counts[0], nII = out.type_counts[1], nIII = out.type_counts[2];
  const int64_t sz = static_cast<int64_t>(ls.points.size());
  auto all_weight_one = [&] {
    for (auto [id, w] : ls.weight)
      if (w != 1) return false;
    return true;
  };

  if (sz == 1) {
    out.kind = LinearSetKind::SinglePoint;
    return out;
  }

  if (ls.rank == 2) {
    if (sz == q + 1 && all_weight_one() && collinear_set(ctx, ls.points)) {
      // cross-ratio closure: the subline through any three is the whole set
      auto sub = subline_through(ctx, ls.points[0], ls.points[1], ls.points[2]);
      if (std::set<uint32_t>(ls.points.begin(), ls.points.end()) == sub) {
        out.kind = LinearSetKind::FqLine;
        return out;
      }
    }
    out.kind = LinearSetKind::Other;
    return out;
  }

  if (ls.rank == 3) {
    bool on_line = collinear_set(ctx, ls.points);
    if (on_line && sz == q * q + 1) {
      // club: one point of weight two, the head, everything else weight one
      std::vector<uint32_t> heads;
      bool weights_ok = true;
      for (auto [id, w] : ls.weight) {
        if (w == 2) heads.push_back(id);
        else if (w != 1) weights_ok = false;
      }
      if (weights_ok && heads.size() == 1) {
        out.kind = LinearSetKind::Club;
        out.head = heads[0];
        return out;
      }
    }
    if (on_line && sz == v && all_weight_one()) {
      out.kind = LinearSetKind::Scattered;
      return out;
    }
    if (!on_line && sz == v && all_weight_one() && is_fq_subplane(ctx, ls.points)) {
      out.kind = LinearSetKind::FqSubplane;
      return out;
    }
    out.kind = LinearSetKind::Other;
    return out;
  }

  if (ls.rank == 6) {
    int64_t expectI = v, expectII = v * (q * q * q - q);
    if (nI == expectI && nII == expectII && nIII == 0) {
      out.kind = LinearSetKind::Rank6AllTypeIandII;
      return out;
    }
  }
  out.kind = LinearSetKind::Other;
  return out;
}

/// Count the sigma-fixed members of the transversal plane system of the
/// spread planes over a phi-fixed GF(q)-subplane.
inline int lemma24_check(const ReductionContext& ctx, const std::vector<uint32_t>& subplane) {
  const auto& Fq = ctx.Fq();
  std::vector<Subspace> system;
  for (uint32_t id : subplane) system.push_back(ctx.spread[id]);
  auto second = reduction::second_ruling_system(Fq, system);
  int fixed_count = 0;
  for (const auto& pl : second)
    if (pg::apply_sub(Fq, ctx.sigma, pl) == pl) ++fixed_count;
  return fixed_count;
}

}  // namespace boserep::linsets
