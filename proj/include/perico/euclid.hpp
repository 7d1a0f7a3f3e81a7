#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "perico/errors.hpp"

namespace perico::euclid {

using Rational = boost::rational<long long>;
using RatVec = std::array<Rational, 2>;
using RatMat = std::array<std::array<Rational, 2>, 2>;  // row-major

Rational parse_fraction(const std::string& text);
std::string format_fraction(const Rational& q);
double to_double(const Rational& q);

// Planar isometry with exact rational entries: x -> P*x + t.
// The point part must be orthogonal with determinant +-1.
struct Isometry {
  RatMat point_part;
  RatVec translation;

  static Isometry identity();
  static Isometry from_translation(const RatVec& t);
  // Rotation by the angle whose (cos, sin) = (c, s); requires c^2+s^2 = 1.
  static Isometry rotation(const Rational& c, const Rational& s);
  // Reflection across the line through the origin with direction (c, s)
  // written for the double-angle form: matrix [[c, s], [s, -c]], c^2+s^2=1.
  static Isometry reflection(const Rational& c, const Rational& s);

  bool is_translation() const;
  bool is_identity() const;
};

bool operator==(const Isometry& a, const Isometry& b);
bool operator!=(const Isometry& a, const Isometry& b);
bool operator<(const Isometry& a, const Isometry& b);  // canonical-form order

void validate(const Isometry& g);  // throws ArgumentError if not orthogonal
Isometry compose(const Isometry& a, const Isometry& b);  // a then-apply-after b: x -> a(b(x))
Isometry inverse(const Isometry& g);
RatVec apply(const Isometry& g, const RatVec& x);

struct Lattice {
  RatVec b1, b2;
};

Rational det(const Lattice& l);
Rational norm2(const RatVec& v);
Rational dot(const RatVec& a, const RatVec& b);

// Enumerates the word ball of the generated group up to word_bound and
// returns a basis of the lattice of pure translations found there.
// Throws ArgumentError("not a wallpaper group at this bound") when fewer
// than two independent translations exist in the ball, and
// ArgumentError("non-discrete") when two distinct elements agree to 1e-9
// at the probe points.
Lattice translation_subgroup(const std::vector<Isometry>& generators, int word_bound);

// Lagrange-Gauss reduction; same lattice, |b1| <= |b2| <= |b2 +- b1|.
Lattice reduce_basis(const Lattice& l);

// Reduction that also reports the unimodular change of basis U with
// reduced = [b1 b2] * U (columns of U are the reduced vectors in the
// original basis coordinates).
struct ReducedBasis {
  Lattice basis;
  std::array<std::array<long long, 2>, 2> transform;  // columns
};
ReducedBasis reduce_basis_tracked(const Lattice& l);

// Integer sublattice diag(A, B) in the reduced basis, pulled back to the
// coordinates of the input basis. Minimal A*B (then minimal A) such that
// the shortest nonzero sublattice vector has length >= L.
struct SublatticeChoice {
  std::array<std::array<long long, 2>, 2> mat;  // columns = sublattice generators
  long long a = 1, b = 1;
  long long index = 1;
  double shortest = 0.0;
};
SublatticeChoice sublattice_for_length(const Lattice& l, double min_length);

// Corners base, base+b1, base+b1+b2, base+b2 in order.
std::array<RatVec, 4> fundamental_parallelogram(const Lattice& l, const RatVec& base);

// Column-style Hermite form of an integer 2x2 matrix with nonzero
// determinant: returns lower-triangular [[d1,0],[k,d2]] with d1,d2 > 0 and
// 0 <= k < d2 spanning the same column lattice.
std::array<std::array<long long, 2>, 2> hermite_form(
    const std::array<std::array<long long, 2>, 2>& cols);

}  // namespace perico::euclid
