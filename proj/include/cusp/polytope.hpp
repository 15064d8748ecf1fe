#pragma once

#include "cusp/linalg.hpp"
#include "cusp/rational.hpp"

#include <optional>

namespace cusp {

// normal . x <= bound (or < when strict).  Strictness is honored by point
// filters only; volumes and vertices work with the closure.
struct HalfSpace {
  Vec normal;
  Rat bound;
  bool strict = false;
};

struct Polytope {
  int dim = 0;
  std::vector<HalfSpace> hs;

  Polytope() = default;
  Polytope(int d, std::vector<HalfSpace> h) : dim(d), hs(std::move(h)) {}

  bool contains(const Vec& x, bool honor_strict = true) const;

  mutable std::optional<std::vector<Vec>> cached_vertices;
  mutable std::optional<Rat> cached_volume;
};

struct UnboundedError : ToolkitError {
  using ToolkitError::ToolkitError;
};

// Lattice {z * basis + origin : z integral}; rows are the generators.
struct LatticeBasis {
  Mat basis;
  Vec origin;

  static LatticeBasis standard(int d);
};

// Exact vertex set (deduplicated, lexicographically sorted).
// Throws UnboundedError when a recession direction exists.
std::vector<Vec> vertices(const Polytope& P);

// Exact Lebesgue measure via fan triangulation of the boundary.
Rat volume(const Polytope& P);

// All lattice points in P, in original coordinates, lexicographically sorted.
std::vector<Vec> lattice_points(const Polytope& P, const LatticeBasis& L);

// vol(P cap Q) == vol(P), decided exactly.
bool is_subset(const Polytope& P, const Polytope& Q);

Polytope intersect(const Polytope& P, const Polytope& Q);
Polytope scale(const Polytope& P, const Rat& q);

struct UnionVolume {
  Rat volume;
  int passes = 0;       // trips through the splitting loop
  int kept = 0;         // final disjoint pieces
  int dropped_contained = 0;
};

UnionVolume union_volume(const std::vector<Polytope>& parts);

// Drop halfspaces that do not support a facet; vertices are unchanged.
Polytope prune_redundant(const Polytope& P);

// Per-coordinate exact bounds; nullopt when empty, throws when unbounded.
std::optional<std::vector<std::pair<Rat, Rat>>> bounding_box(const Polytope& P);

}  // namespace cusp
