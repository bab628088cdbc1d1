#pragma once

#include <vector>

namespace ggp {

/// Largest ambient dimension the hull engine accepts.
inline constexpr int kMaxHullDim = 8;

/// Sign of det[p1 - p0, ..., pd - p0] for d+1 points of R^d (pts[0..d]).
/// A floating-point evaluation is trusted when it clears a forward error
/// bound; otherwise the determinant is recomputed in exact rational
/// arithmetic, so the returned sign is always exact for the given doubles.
int orientation(const double* const* pts, int d);

/// orientation() specialised to the plane: sign of (b - a) x (c - a).
int orient2d(const double* a, const double* b, const double* c);

/// Exact rank of the vectors q - base, q in others.
int exact_affine_rank(const double* base, const std::vector<const double*>& others, int d);

}  // namespace ggp
