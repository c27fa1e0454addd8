#pragma once

// OFF export of polytopes with exact coordinates written as "p/q". Faces
// are listed for polygons and 3-polytopes; 2D polytopes are written with
// one face, 3D polytopes with one face per facet (vertices in cyclic order).

#include "polytope.hpp"

#include <ostream>
#include <sstream>
#include <string>

namespace toricox {

namespace detail {

// Orders the vertex indices of a planar convex face cyclically. `normal` is
// the face normal (rational, ambient rank 3) or empty for rank 2.
inline std::vector<std::size_t> cyclic_order(const std::vector<RatVec>& pts, std::vector<std::size_t> idx) {
  if (idx.size() < 3) return idx;
  // walk: next vertex is the one with all others on one side of the edge
  const std::size_t n = pts.front().size();
  auto edge_ok = [&](std::size_t a, std::size_t b) {
    // a-b is an edge iff the other points of the face lie in a closed half-plane
    RatVec ab = pts[b] - pts[a];
    int side = 0;
    for (auto c : idx) {
      if (c == a || c == b) continue;
      RatVec ac = pts[c] - pts[a];
      // sign of the component of ac orthogonal to ab inside the face plane:
      // use a third face point to fix the orientation in 3D
      Rational s;
      if (n == 2) {
        s = ab[0] * ac[1] - ab[1] * ac[0];
      } else {
        RatVec cr{ab[1] * ac[2] - ab[2] * ac[1], ab[2] * ac[0] - ab[0] * ac[2], ab[0] * ac[1] - ab[1] * ac[0]};
        // project onto a fixed normal of the face
        RatVec u = pts[idx[1]] - pts[idx[0]], w = pts[idx[2]] - pts[idx[0]];
        RatVec nn{u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]};
        for (std::size_t k = 3; is_zero(nn) && k < idx.size(); ++k) {
          w = pts[idx[k]] - pts[idx[0]];
          nn = {u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]};
        }
        s = dot(cr, nn);
      }
      int sg = sgn(s);
      if (sg == 0) continue;
      if (side == 0) side = sg;
      else if (sg != side) return 0;
    }
    return side;
  };
  std::vector<std::size_t> out{idx.front()};
  std::vector<bool> used(pts.size(), false);
  used[idx.front()] = true;
  int orientation = 0;
  while (out.size() < idx.size()) {
    bool advanced = false;
    for (auto c : idx) {
      if (used[c]) continue;
      int s = edge_ok(out.back(), c);
      if (s == 0 || (orientation != 0 && s != orientation)) continue;
      orientation = s;
      out.push_back(c);
      used[c] = true;
      advanced = true;
      break;
    }
    if (!advanced) break;
  }
  return out;
}

} // namespace detail

/// OFF text for a 2- or 3-dimensional polytope in rank 2 or 3.
inline std::string to_off(const RationalPolytope& p) {
  const std::size_t n = p.ambient_rank();
  if (n != 2 && n != 3) throw InputRejected("OFF export needs a polytope in rank 2 or 3");
  const auto& vs = p.vertices();
  std::vector<std::vector<std::size_t>> faces;
  if (p.dimension() == 2 && n == 2) {
    std::vector<std::size_t> all(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) all[i] = i;
    faces.push_back(detail::cyclic_order(vs, all));
  } else if (p.dimension() == 3) {
    for (auto h : p.facet_indices()) {
      std::vector<std::size_t> on;
      for (std::size_t i = 0; i < vs.size(); ++i)
        if (dot(p.halfspaces()[h].normal, vs[i]) + p.halfspaces()[h].offset == 0) on.push_back(i);
      faces.push_back(detail::cyclic_order(vs, on));
    }
  }
  std::ostringstream os;
  os << "OFF\n" << vs.size() << ' ' << faces.size() << " 0\n";
  for (const auto& v : vs) {
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << to_string(v[i]);
    if (n == 2) os << " 0";
    os << '\n';
  }
  for (const auto& f : faces) {
    os << f.size();
    for (auto i : f) os << ' ' << i;
    os << '\n';
  }
  return os.str();
}

} // namespace toricox
