#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "perico/errors.hpp"

namespace perico::hyp {

using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

// Real 2x2 matrix with unit determinant acting on the upper half-plane;
// disc-model geometry goes through the Cayley transform.
struct MoebiusMatrix {
  double a = 1, b = 0, c = 0, d = 1;
  std::string word;  // optional generator word

  static MoebiusMatrix identity();
  double trace() const { return a + d; }
};

enum class IsometryClass { Elliptic, Parabolic, Hyperbolic };

struct ClassifyResult {
  IsometryClass cls;
  double length;  // translation length; 0 for elliptic/parabolic
};

MoebiusMatrix normalized(const MoebiusMatrix& m);  // det->1, canonical sign
MoebiusMatrix multiply(const MoebiusMatrix& x, const MoebiusMatrix& y);
MoebiusMatrix inverse(const MoebiusMatrix& m);
bool approx_equal(const MoebiusMatrix& x, const MoebiusMatrix& y, double tol = 1e-7);

ClassifyResult classify_and_length(const MoebiusMatrix& m);

// Poincare-disc points and the half-plane action.
Complex disc_to_halfplane(Complex p);
Complex halfplane_to_disc(Complex w);
Complex apply_halfplane(const MoebiusMatrix& m, Complex w);
Complex apply_disc(const MoebiusMatrix& m, Complex p);
double hyperbolic_distance(Complex p, Complex q);  // disc model

struct FuchsianPresentation {
  std::vector<std::string> generators;  // single-letter names
  std::vector<std::string> relators;    // words such as "xx", "xyz", "x^2"
  int genus = 0;
  std::vector<int> periods;
  // Generator carrying each period, aligned with `periods`.
  std::vector<std::string> period_generators;
  std::map<std::string, MoebiusMatrix> matrices;
  // Designated vertex rotation and edge step for tessellation inputs.
  std::string vertex_rotation = "z";
  std::string edge_step = "x";
};

void validate(const FuchsianPresentation& pres, double tol = 1e-6);

// Word syntax: letters with optional ^k or ^-k exponents, e.g. "xz^3y^-1".
struct Letter {
  std::string gen;
  int exponent = 1;
};
std::vector<Letter> parse_word(const std::string& word);
MoebiusMatrix evaluate_word(const FuchsianPresentation& pres, const std::string& word);

// Standard von Dyck triangle group: generators x, y, z of orders p, q, r
// with x*y*z = 1, realized by rotations about the vertices of a hyperbolic
// triangle with angles pi/p, pi/q, pi/r; the z-vertex sits at the disc origin.
FuchsianPresentation triangle_group(int p, int q, int r);

struct CosetTable {
  int degree = 0;
  std::map<std::string, std::vector<int>> perm;  // generator -> image, 0-based

  int act(int coset, const std::string& gen, int exponent = 1) const;
  int act_word(int coset, const std::string& word) const;
};

void validate_table(const FuchsianPresentation& pres, const CosetTable& table);

// HLT coset enumeration with deterministic definition order. Throws
// ResourceError when the coset allocation budget is exhausted.
CosetTable todd_coxeter(const FuchsianPresentation& pres,
                        const std::vector<std::string>& subgroup_generators,
                        int max_cosets);

// True iff every cycle of each period generator's coset permutation has
// length exactly that generator's period.
bool is_torsion_free(const FuchsianPresentation& pres, const CosetTable& table);

// Representative word for each coset (BFS from coset 0 in generator order).
std::vector<std::string> coset_representatives(const FuchsianPresentation& pres,
                                               const CosetTable& table);

struct SubgroupSearchBudget {
  int max_image_degree = 10;    // scan degree for permutation images
  long long max_index = 2000;   // regular-action degree cap
  int word_ball = 24;           // word-length bound for the short-element scan
  int max_cosets = 100000;
};

struct ShortElement {
  std::string word;
  double length;
};

struct AvoidCertificate {
  std::vector<ShortElement> excluded;  // enumerated elements with Tr < L, all outside T
  int word_bound = 0;
  double displacement_bound = 0;
  double threshold = 0;
  long long index = 0;
};

// Searches finite-index subgroups (via transitive permutation images taken
// to their regular action, intersecting images when needed) until one is
// torsion free and contains none of the enumerated translation lengths < L.
std::pair<CosetTable, AvoidCertificate> subgroup_avoiding_short(
    const FuchsianPresentation& pres, double min_length,
    const SubgroupSearchBudget& budget = {});

// Transitive constituent of the product action containing (0, 0); realizes
// the intersection of the two subgroups.
CosetTable intersect_tables(const FuchsianPresentation& pres, const CosetTable& t1,
                            const CosetTable& t2);

struct Signature {
  int genus = 0;
  std::vector<int> periods;
};

// Genus of the quotient surface of a torsion-free index-N subgroup,
// g_T = (N/2) * [2g - 2 + sum(1 - 1/m_i)] + 1; exact arithmetic.
long long riemann_hurwitz_genus(const Signature& sig, long long index);

struct ColourBudget {
  long long ringel_youngs = 0;
  BigInt thomassen_threshold;  // 2^(14g + 6)
};
ColourBudget colour_budget(long long genus);

}  // namespace perico::hyp
