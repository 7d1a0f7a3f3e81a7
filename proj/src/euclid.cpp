#include "perico/euclid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>

namespace perico::euclid {

Rational parse_fraction(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(std::stoll(text), 1);
    }
    long long num = std::stoll(text.substr(0, slash));
    long long den = std::stoll(text.substr(slash + 1));
    if (den == 0) throw ArgumentError("fraction with zero denominator: " + text);
    return Rational(num, den);
  } catch (const std::invalid_argument&) {
    throw ArgumentError("malformed fraction: " + text);
  } catch (const std::out_of_range&) {
    throw ArgumentError("fraction out of range: " + text);
  }
}

std::string format_fraction(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

Isometry Isometry::identity() {
  return {{{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}},
          {Rational(0), Rational(0)}};
}

Isometry Isometry::from_translation(const RatVec& t) {
  Isometry g = identity();
  g.translation = t;
  return g;
}

Isometry Isometry::rotation(const Rational& c, const Rational& s) {
  Isometry g{{{{c, -s}, {s, c}}}, {Rational(0), Rational(0)}};
  validate(g);
  return g;
}

Isometry Isometry::reflection(const Rational& c, const Rational& s) {
  Isometry g{{{{c, s}, {s, -c}}}, {Rational(0), Rational(0)}};
  validate(g);
  return g;
}

bool Isometry::is_translation() const {
  return point_part == identity().point_part;
}

bool Isometry::is_identity() const {
  return is_translation() && translation[0].numerator() == 0 &&
         translation[1].numerator() == 0;
}

bool operator==(const Isometry& a, const Isometry& b) {
  return a.point_part == b.point_part && a.translation == b.translation;
}
bool operator!=(const Isometry& a, const Isometry& b) { return !(a == b); }

bool operator<(const Isometry& a, const Isometry& b) {
  auto key = [](const Isometry& g) {
    return std::array<Rational, 6>{g.point_part[0][0], g.point_part[0][1],
                                   g.point_part[1][0], g.point_part[1][1],
                                   g.translation[0],   g.translation[1]};
  };
  return key(a) < key(b);
}

void validate(const Isometry& g) {
  const auto& p = g.point_part;
  Rational c00 = p[0][0] * p[0][0] + p[0][1] * p[0][1];
  Rational c11 = p[1][0] * p[1][0] + p[1][1] * p[1][1];
  Rational c01 = p[0][0] * p[1][0] + p[0][1] * p[1][1];
  if (c00 != Rational(1) || c11 != Rational(1) || c01 != Rational(0)) {
    throw ArgumentError("point part is not orthogonal");
  }
}

Isometry compose(const Isometry& a, const Isometry& b) {
  Isometry r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r.point_part[i][j] =
          a.point_part[i][0] * b.point_part[0][j] + a.point_part[i][1] * b.point_part[1][j];
  for (int i = 0; i < 2; ++i)
    r.translation[i] = a.point_part[i][0] * b.translation[0] +
                       a.point_part[i][1] * b.translation[1] + a.translation[i];
  return r;
}

Isometry inverse(const Isometry& g) {
  // Orthogonal point part: inverse is the transpose.
  Isometry r;
  r.point_part = {{{g.point_part[0][0], g.point_part[1][0]},
                   {g.point_part[0][1], g.point_part[1][1]}}};
  for (int i = 0; i < 2; ++i)
    r.translation[i] =
        -(r.point_part[i][0] * g.translation[0] + r.point_part[i][1] * g.translation[1]);
  return r;
}

RatVec apply(const Isometry& g, const RatVec& x) {
  return {g.point_part[0][0] * x[0] + g.point_part[0][1] * x[1] + g.translation[0],
          g.point_part[1][0] * x[0] + g.point_part[1][1] * x[1] + g.translation[1]};
}

Rational det(const Lattice& l) { return l.b1[0] * l.b2[1] - l.b1[1] * l.b2[0]; }
Rational norm2(const RatVec& v) { return v[0] * v[0] + v[1] * v[1]; }
Rational dot(const RatVec& a, const RatVec& b) { return a[0] * b[0] + a[1] * b[1]; }

namespace {

RatVec sub(const RatVec& a, const RatVec& b) { return {a[0] - b[0], a[1] - b[1]}; }
RatVec scale(const Rational& s, const RatVec& v) { return {s * v[0], s * v[1]}; }

long long round_nearest(const Rational& q) {
  // Round half toward zero, deterministically.
  long long n = q.numerator(), d = q.denominator();
  long long quotient = n / d;
  long long rem = n % d;
  if (std::llabs(rem) * 2 > d) quotient += (n > 0 ? 1 : -1);
  return quotient;
}

// Euclid on one row: column operations preserving the spanned lattice,
// terminating with v[row] == 0.
void euclid_reduce(std::array<long long, 2>& b, std::array<long long, 2>& v, int row) {
  while (v[row] != 0) {
    long long q = b[row] / v[row];
    b = {b[0] - q * v[0], b[1] - q * v[1]};
    std::swap(b, v);
  }
}

// Insert vector v into a partial basis of at most two integer columns,
// preserving the spanned lattice.
void lattice_insert(std::vector<std::array<long long, 2>>& basis,
                    std::array<long long, 2> v) {
  for (auto& b : basis) {
    int row = (b[0] != 0) ? 0 : 1;
    euclid_reduce(b, v, row);
  }
  if ((v[0] != 0 || v[1] != 0) && basis.size() < 2) basis.push_back(v);
}

}  // namespace

std::array<std::array<long long, 2>, 2> hermite_form(
    const std::array<std::array<long long, 2>, 2>& m) {
  long long d = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  if (d == 0) throw ArgumentError("singular matrix has no Hermite form");
  std::vector<std::array<long long, 2>> basis;
  lattice_insert(basis, {m[0][0], m[1][0]});
  lattice_insert(basis, {m[0][1], m[1][1]});
  // Lower-triangularize: eliminate the row-0 entry of the second column.
  std::array<long long, 2> c0 = basis[0], c1 = basis[1];
  euclid_reduce(c0, c1, 0);
  if (c0[0] < 0) { c0[0] = -c0[0]; c0[1] = -c0[1]; }
  if (c1[1] < 0) { c1[0] = -c1[0]; c1[1] = -c1[1]; }
  // Reduce the sub-diagonal entry into [0, d2).
  long long k = ((c0[1] % c1[1]) + c1[1]) % c1[1];
  c0[1] = k;
  return {{{c0[0], 0}, {k, c1[1]}}};  // row-major: [[d1, 0], [k, d2]]
}

Lattice translation_subgroup(const std::vector<Isometry>& generators, int word_bound) {
  std::vector<Isometry> gens;
  for (const auto& g : generators) {
    validate(g);
    gens.push_back(g);
    Isometry gi = inverse(g);
    if (gi != g) gens.push_back(gi);
  }
  std::map<std::array<Rational, 6>, Isometry> seen;
  auto key = [](const Isometry& g) {
    return std::array<Rational, 6>{g.point_part[0][0], g.point_part[0][1],
                                   g.point_part[1][0], g.point_part[1][1],
                                   g.translation[0],   g.translation[1]};
  };
  std::vector<Isometry> frontier{Isometry::identity()};
  seen.emplace(key(frontier[0]), frontier[0]);
  for (int depth = 0; depth < word_bound; ++depth) {
    std::vector<Isometry> next;
    for (const auto& w : frontier) {
      for (const auto& g : gens) {
        Isometry e = compose(w, g);
        if (seen.emplace(key(e), e).second) next.push_back(e);
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }

  // Accumulation probe: two distinct elements within 1e-9 at three probe points.
  std::vector<std::array<double, 6>> images;
  images.reserve(seen.size());
  const RatVec probes[3] = {{Rational(0), Rational(0)},
                            {Rational(1), Rational(0)},
                            {Rational(0), Rational(1)}};
  for (const auto& [k, g] : seen) {
    std::array<double, 6> im{};
    for (int p = 0; p < 3; ++p) {
      RatVec y = apply(g, probes[p]);
      im[2 * p] = to_double(y[0]);
      im[2 * p + 1] = to_double(y[1]);
    }
    images.push_back(im);
  }
  std::sort(images.begin(), images.end());
  for (size_t i = 0; i + 1 < images.size(); ++i) {
    double m = 0;
    for (int j = 0; j < 6; ++j) m = std::max(m, std::fabs(images[i][j] - images[i + 1][j]));
    if (m < 1e-9) throw ArgumentError("non-discrete: accumulation detected in the word ball");
  }

  // Collect pure translations and scale to a common denominator.
  std::vector<RatVec> translations;
  long long denom = 1;
  for (const auto& [k, g] : seen) {
    if (g.is_translation() && !g.is_identity()) {
      translations.push_back(g.translation);
      denom = std::lcm(denom, g.translation[0].denominator());
      denom = std::lcm(denom, g.translation[1].denominator());
    }
  }
  std::vector<std::array<long long, 2>> basis;
  for (const auto& t : translations) {
    std::array<long long, 2> v{(t[0] * denom).numerator(), (t[1] * denom).numerator()};
    lattice_insert(basis, v);
  }
  if (basis.size() < 2) {
    throw ArgumentError("not a wallpaper group at this bound: translation rank < 2");
  }
  Lattice l{{Rational(basis[0][0], denom), Rational(basis[0][1], denom)},
            {Rational(basis[1][0], denom), Rational(basis[1][1], denom)}};
  return reduce_basis(l);
}

ReducedBasis reduce_basis_tracked(const Lattice& l) {
  if (det(l).numerator() == 0) throw ArgumentError("lattice basis is singular");
  RatVec b1 = l.b1, b2 = l.b2;
  std::array<long long, 2> u1{1, 0}, u2{0, 1};  // columns of U
  for (;;) {
    if (norm2(b2) < norm2(b1)) {
      std::swap(b1, b2);
      std::swap(u1, u2);
    }
    long long q = round_nearest(dot(b1, b2) / norm2(b1));
    if (q == 0) break;
    b2 = sub(b2, scale(Rational(q), b1));
    u2 = {u2[0] - q * u1[0], u2[1] - q * u1[1]};
  }
  return {{b1, b2}, {{{u1[0], u2[0]}, {u1[1], u2[1]}}}};  // row-major U
}

Lattice reduce_basis(const Lattice& l) { return reduce_basis_tracked(l).basis; }

SublatticeChoice sublattice_for_length(const Lattice& l, double min_length) {
  if (min_length <= 0) throw ArgumentError("minimum length must be positive");
  ReducedBasis red = reduce_basis_tracked(l);
  const RatVec& r1 = red.basis.b1;
  const RatVec& r2 = red.basis.b2;
  double n1 = std::sqrt(to_double(norm2(r1)));
  double n2 = std::sqrt(to_double(norm2(r2)));
  // Reduced bases have angle in [60, 120] degrees, so the shortest vector of
  // (A r1, B r2) is at least sin(60) * min(A n1, B n2); this bounds the scan.
  long long a_max = std::max<long long>(1, (long long)std::ceil(2.0 * min_length / (0.866 * n1)) + 1);
  long long b_max = std::max<long long>(1, (long long)std::ceil(2.0 * min_length / (0.866 * n2)) + 1);

  auto shortest_of = [&](long long a, long long b) {
    Lattice sub{scale(Rational(a), r1), scale(Rational(b), r2)};
    Lattice s = reduce_basis(sub);
    return std::sqrt(to_double(norm2(s.b1)));
  };

  std::optional<SublatticeChoice> best;
  for (long long a = 1; a <= a_max; ++a) {
    for (long long b = 1; b <= b_max; ++b) {
      if (best && a * b > best->index) continue;
      double sv = shortest_of(a, b);
      if (sv + 1e-15 < min_length) continue;
      bool better = !best || a * b < best->index || (a * b == best->index && a < best->a);
      if (better) {
        SublatticeChoice c;
        c.a = a;
        c.b = b;
        c.index = a * b;
        c.shortest = sv;
        // Columns: A * u1, B * u2 in the input basis coordinates.
        c.mat = {{{a * red.transform[0][0], b * red.transform[0][1]},
                  {a * red.transform[1][0], b * red.transform[1][1]}}};
        best = c;
      }
    }
  }
  if (!best) throw ResourceError("sublattice scan bound exhausted");  // unreachable
  // When reduction merely swapped the input vectors, report A and B in the
  // input order so that A scales the first input basis vector.
  if (red.transform[0][0] == 0 && red.transform[1][1] == 0) {
    std::swap(best->a, best->b);
    for (auto& row : best->mat) std::swap(row[0], row[1]);
  }
  return *best;
}

std::array<RatVec, 4> fundamental_parallelogram(const Lattice& l, const RatVec& base) {
  if (det(l).numerator() == 0) throw ArgumentError("lattice basis is singular");
  RatVec p1{base[0] + l.b1[0], base[1] + l.b1[1]};
  RatVec p2{base[0] + l.b1[0] + l.b2[0], base[1] + l.b1[1] + l.b2[1]};
  RatVec p3{base[0] + l.b2[0], base[1] + l.b2[1]};
  return {base, p1, p2, p3};
}

}  // namespace perico::euclid
