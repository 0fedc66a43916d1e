#pragma once

// The affine group of the complex line: elements (a, b) with a != 0 acting by
// x |-> a*x + b, multiplied by (g1,g2)(h1,h2) = (g1*h1, g1*h2 + g2).
// Orientation-preserving rigid motions of the plane are exactly the elements
// with |a|^2 = 1; rotation angles are never represented, only the unit-modulus
// scalar itself.

#include <cstddef>
#include <string>
#include <utility>

#include "congr/errors.hpp"
#include "congr/gaussian.hpp"

namespace congr {

struct AffineElement {
  GaussianRational a;  // linear part (scaling/rotation)
  GaussianRational b;  // translation part

  AffineElement() : a(GaussianRational(1)), b() {}

  AffineElement(GaussianRational lin, GaussianRational trans)
      : a(std::move(lin)), b(std::move(trans)) {
    if (a.is_zero()) throw ValidationError("affine element with zero linear part");
  }

  static AffineElement identity() { return AffineElement(); }

  friend bool operator==(const AffineElement& g, const AffineElement& h) {
    return g.a == h.a && g.b == h.b;
  }
  friend bool operator!=(const AffineElement& g, const AffineElement& h) { return !(g == h); }
};

// A rigid motion is an affine element with unit-modulus linear part.
using RigidMotion = AffineElement;

// The same pair read as a point of the group plane C^2 minus the vertical
// axis {(0, z)}; coset detection works in this picture.
using PlanePoint = AffineElement;

inline AffineElement mul(const AffineElement& g, const AffineElement& h) {
  return AffineElement(g.a * h.a, g.a * h.b + g.b);
}

inline AffineElement inv(const AffineElement& g) {
  GaussianRational ia = GaussianRational(1) / g.a;
  return AffineElement(ia, -(ia * g.b));
}

inline GaussianRational act(const AffineElement& g, const GaussianRational& x) {
  return g.a * x + g.b;
}

inline bool is_rigid(const AffineElement& g) { return g.a.norm_sq() == 1; }

// true iff g fixes z, i.e. g lies in the stabiliser torus of z.
inline bool in_torus(const AffineElement& g, const GaussianRational& z) {
  return act(g, z) == z;
}

// true iff g is a pure translation (the unipotent subgroup).
inline bool in_unipotent(const AffineElement& g) {
  return g.a == GaussianRational(1);
}

// Rotation by the unit scalar u about the given centre: (u, centre*(1-u)).
inline AffineElement embed_rotation(const GaussianRational& u, const GaussianRational& center) {
  if (u.norm_sq() != 1) {
    throw ValidationError("embed_rotation: scalar " + to_string(u) + " is not unit-modulus");
  }
  return AffineElement(u, center * (GaussianRational(1) - u));
}

inline AffineElement embed_translation(const GaussianRational& t) {
  return AffineElement(GaussianRational(1), t);
}

inline int compare(const AffineElement& g, const AffineElement& h) {
  int c = compare(g.a, h.a);
  if (c != 0) return c;
  return compare(g.b, h.b);
}

inline bool lex_less(const AffineElement& g, const AffineElement& h) {
  return compare(g, h) < 0;
}

inline std::size_t hash_value(const AffineElement& g) noexcept {
  return detail::hash_combine(hash_value(g.a), hash_value(g.b));
}

struct AffineHash {
  std::size_t operator()(const AffineElement& g) const noexcept { return hash_value(g); }
};

inline std::string to_string(const AffineElement& g) {
  return "[a=" + to_string(g.a) + " b=" + to_string(g.b) + "]";
}

}  // namespace congr
