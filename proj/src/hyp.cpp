#include "perico/hyp.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <functional>
#include <numbers>
#include <numeric>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

namespace perico::hyp {

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs_diff(const MoebiusMatrix& x, const MoebiusMatrix& y) {
  return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b), std::abs(x.c - y.c),
                   std::abs(x.d - y.d)});
}

}  // namespace

MoebiusMatrix MoebiusMatrix::identity() { return MoebiusMatrix{}; }

MoebiusMatrix normalized(const MoebiusMatrix& m) {
  double det = m.a * m.d - m.b * m.c;
  if (det <= 1e-12) throw ArgumentError("matrix determinant must be positive");
  double s = 1.0 / std::sqrt(det);
  MoebiusMatrix r{m.a * s, m.b * s, m.c * s, m.d * s, m.word};
  for (double v : {r.a, r.b, r.c, r.d}) {
    if (std::abs(v) > 1e-12) {
      if (v < 0) {
        r.a = -r.a;
        r.b = -r.b;
        r.c = -r.c;
        r.d = -r.d;
      }
      break;
    }
  }
  return r;
}

MoebiusMatrix multiply(const MoebiusMatrix& x, const MoebiusMatrix& y) {
  return MoebiusMatrix{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                       x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d, ""};
}

MoebiusMatrix inverse(const MoebiusMatrix& m) {
  double det = m.a * m.d - m.b * m.c;
  if (std::abs(det) <= 1e-12) throw ArgumentError("matrix is singular");
  return MoebiusMatrix{m.d / det, -m.b / det, -m.c / det, m.a / det, ""};
}

bool approx_equal(const MoebiusMatrix& x, const MoebiusMatrix& y, double tol) {
  return max_abs_diff(normalized(x), normalized(y)) <= tol;
}

ClassifyResult classify_and_length(const MoebiusMatrix& m) {
  // The identity is a rotation by zero, not a parabolic.
  if (approx_equal(m, MoebiusMatrix::identity(), 1e-9))
    return {IsometryClass::Elliptic, 0.0};
  double t = std::abs(normalized(m).trace());
  if (t < 2.0 - 1e-9) return {IsometryClass::Elliptic, 0.0};
  if (t <= 2.0 + 1e-9) return {IsometryClass::Parabolic, 0.0};
  return {IsometryClass::Hyperbolic, 2.0 * std::acosh(t / 2.0)};
}

Complex disc_to_halfplane(Complex p) {
  return Complex(0, 1) * (Complex(1, 0) + p) / (Complex(1, 0) - p);
}

Complex halfplane_to_disc(Complex w) {
  return (w - Complex(0, 1)) / (w + Complex(0, 1));
}

Complex apply_halfplane(const MoebiusMatrix& m, Complex w) {
  return (m.a * w + m.b) / (m.c * w + m.d);
}

Complex apply_disc(const MoebiusMatrix& m, Complex p) {
  return halfplane_to_disc(apply_halfplane(m, disc_to_halfplane(p)));
}

double hyperbolic_distance(Complex p, Complex q) {
  double num = 2.0 * std::norm(p - q);
  double den = (1.0 - std::norm(p)) * (1.0 - std::norm(q));
  if (den <= 0) throw ArgumentError("points must lie inside the unit disc");
  return std::acosh(1.0 + num / den);
}

std::vector<Letter> parse_word(const std::string& word) {
  std::vector<Letter> out;
  size_t i = 0;
  while (i < word.size()) {
    char c = word[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (!std::isalpha(static_cast<unsigned char>(c)))
      throw ArgumentError(std::string("bad character in word: ") + c);
    Letter letter{std::string(1, c), 1};
    ++i;
    if (i < word.size() && word[i] == '^') {
      ++i;
      int sign = 1;
      if (i < word.size() && word[i] == '-') {
        sign = -1;
        ++i;
      }
      if (i >= word.size() || !std::isdigit(static_cast<unsigned char>(word[i])))
        throw ArgumentError("expected digits after '^' in word: " + word);
      int val = 0;
      while (i < word.size() && std::isdigit(static_cast<unsigned char>(word[i]))) {
        val = val * 10 + (word[i] - '0');
        ++i;
      }
      letter.exponent = sign * val;
    }
    out.push_back(letter);
  }
  return out;
}

MoebiusMatrix evaluate_word(const FuchsianPresentation& pres, const std::string& word) {
  MoebiusMatrix acc = MoebiusMatrix::identity();
  for (const Letter& letter : parse_word(word)) {
    auto it = pres.matrices.find(letter.gen);
    if (it == pres.matrices.end())
      throw ArgumentError("no matrix for generator " + letter.gen);
    MoebiusMatrix step = letter.exponent < 0 ? inverse(it->second) : it->second;
    for (int k = 0; k < std::abs(letter.exponent); ++k) acc = multiply(acc, step);
  }
  acc.word = word;
  return acc;
}

void validate(const FuchsianPresentation& pres, double tol) {
  if (pres.genus < 0) throw ArgumentError("genus must be nonnegative");
  if (pres.periods.size() != pres.period_generators.size())
    throw ArgumentError("periods and period_generators must align");
  for (int m : pres.periods)
    if (m < 2) throw ArgumentError("periods must be at least 2");
  for (const std::string& g : pres.period_generators)
    if (std::find(pres.generators.begin(), pres.generators.end(), g) ==
        pres.generators.end())
      throw ArgumentError("period generator not declared: " + g);
  if (pres.matrices.empty()) return;
  for (const std::string& g : pres.generators) {
    auto it = pres.matrices.find(g);
    if (it == pres.matrices.end()) throw ArgumentError("no matrix for generator " + g);
    double det = it->second.a * it->second.d - it->second.b * it->second.c;
    if (std::abs(det - 1.0) > tol)
      throw ArgumentError("generator matrix must have unit determinant: " + g);
  }
  for (const std::string& rel : pres.relators) {
    MoebiusMatrix val = evaluate_word(pres, rel);
    if (!approx_equal(val, MoebiusMatrix::identity(), tol))
      throw ArgumentError("relator does not evaluate to the identity: " + rel);
  }
  for (size_t i = 0; i < pres.periods.size(); ++i) {
    MoebiusMatrix g = pres.matrices.at(pres.period_generators[i]);
    ClassifyResult cr = classify_and_length(g);
    if (cr.cls != IsometryClass::Elliptic)
      throw ArgumentError("period generator must be elliptic: " + pres.period_generators[i]);
  }
}

namespace {

// Rotation by theta about the half-plane point u + iv.
MoebiusMatrix rotation_about(Complex hp, double theta) {
  double u = hp.real(), v = hp.imag();
  if (v <= 0) throw ArgumentError("rotation centre must lie in the upper half-plane");
  double s = std::sqrt(v);
  MoebiusMatrix g{s, u / s, 0, 1 / s, ""};
  double c = std::cos(theta / 2), sn = std::sin(theta / 2);
  MoebiusMatrix rot{c, sn, -sn, c, ""};
  return multiply(multiply(g, rot), inverse(g));
}

}  // namespace

FuchsianPresentation triangle_group(int p, int q, int r) {
  if (p < 2 || q < 2 || r < 2) throw ArgumentError("triangle periods must be at least 2");
  double A = kPi / p, B = kPi / q, C = kPi / r;
  if (1.0 / p + 1.0 / q + 1.0 / r >= 1.0 - 1e-12)
    throw ArgumentError("triangle group is not hyperbolic");

  // Side lengths from the hyperbolic law of cosines; a = d(Y,Z), b = d(X,Z).
  double cosh_a = (std::cos(B) * std::cos(C) + std::cos(A)) / (std::sin(B) * std::sin(C));
  double cosh_b = (std::cos(A) * std::cos(C) + std::cos(B)) / (std::sin(A) * std::sin(C));
  double a = std::acosh(cosh_a), b = std::acosh(cosh_b);

  Complex zc(0, 0);
  Complex xc(std::tanh(b / 2), 0);
  Complex yc = std::polar(std::tanh(a / 2), C);
  Complex zh = disc_to_halfplane(zc);
  Complex xh = disc_to_halfplane(xc);
  Complex yh = disc_to_halfplane(yc);

  double best = 1e9;
  MoebiusMatrix bx, by, bz;
  for (int sx : {1, -1})
    for (int sy : {1, -1})
      for (int sz : {1, -1}) {
        MoebiusMatrix mx = rotation_about(xh, sx * 2 * kPi / p);
        MoebiusMatrix my = rotation_about(yh, sy * 2 * kPi / q);
        MoebiusMatrix mz = rotation_about(zh, sz * 2 * kPi / r);
        MoebiusMatrix prod = multiply(multiply(mx, my), mz);
        MoebiusMatrix id = MoebiusMatrix::identity();
        MoebiusMatrix nid{-1, 0, 0, -1, ""};
        double res = std::min(max_abs_diff(prod, id), max_abs_diff(prod, nid));
        if (res < best) {
          best = res;
          bx = mx;
          by = my;
          bz = mz;
        }
      }
  if (best > 1e-6) throw ArgumentError("triangle construction failed to close");

  FuchsianPresentation pres;
  pres.generators = {"x", "y", "z"};
  pres.relators = {"x^" + std::to_string(p), "y^" + std::to_string(q),
                   "z^" + std::to_string(r), "xyz"};
  pres.genus = 0;
  pres.periods = {p, q, r};
  pres.period_generators = {"x", "y", "z"};
  bx.word = "x";
  by.word = "y";
  bz.word = "z";
  pres.matrices = {{"x", bx}, {"y", by}, {"z", bz}};
  pres.vertex_rotation = "z";
  pres.edge_step = "x";
  return pres;
}

int CosetTable::act(int coset, const std::string& gen, int exponent) const {
  auto it = perm.find(gen);
  if (it == perm.end()) throw ArgumentError("unknown generator: " + gen);
  const std::vector<int>& p = it->second;
  if (coset < 0 || coset >= degree) throw ArgumentError("coset out of range");
  if (exponent >= 0) {
    for (int k = 0; k < exponent; ++k) coset = p[coset];
    return coset;
  }
  std::vector<int> inv(degree);
  for (int i = 0; i < degree; ++i) inv[p[i]] = i;
  for (int k = 0; k < -exponent; ++k) coset = inv[coset];
  return coset;
}

int CosetTable::act_word(int coset, const std::string& word) const {
  for (const Letter& letter : parse_word(word)) coset = act(coset, letter.gen, letter.exponent);
  return coset;
}

void validate_table(const FuchsianPresentation& pres, const CosetTable& table) {
  if (table.degree <= 0) throw ArgumentError("coset table must be nonempty");
  for (const std::string& g : pres.generators) {
    auto it = table.perm.find(g);
    if (it == table.perm.end()) throw ArgumentError("table is missing generator " + g);
    if ((int)it->second.size() != table.degree)
      throw ArgumentError("permutation size mismatch for " + g);
    std::vector<bool> seen(table.degree, false);
    for (int v : it->second) {
      if (v < 0 || v >= table.degree || seen[v])
        throw ArgumentError("column is not a permutation: " + g);
      seen[v] = true;
    }
  }
  for (const std::string& rel : pres.relators)
    for (int c = 0; c < table.degree; ++c)
      if (table.act_word(c, rel) != c)
        throw ArgumentError("relator does not stabilize cosets: " + rel);
}

namespace {

// Letters as column indices: generator gi forward = 2*gi, inverse = 2*gi+1.
std::vector<int> word_columns(const FuchsianPresentation& pres, const std::string& word) {
  std::vector<int> cols;
  for (const Letter& letter : parse_word(word)) {
    auto it = std::find(pres.generators.begin(), pres.generators.end(), letter.gen);
    if (it == pres.generators.end())
      throw ArgumentError("word uses undeclared generator: " + letter.gen);
    int gi = (int)(it - pres.generators.begin());
    int col = letter.exponent >= 0 ? 2 * gi : 2 * gi + 1;
    for (int k = 0; k < std::abs(letter.exponent); ++k) cols.push_back(col);
  }
  return cols;
}

struct Enumerator {
  int ncols;
  int cap;
  std::vector<std::vector<int>> table;
  std::vector<int> parent;
  std::deque<std::pair<int, int>> pending;
  long long coincidences = 0;
  long long defined = 0;

  explicit Enumerator(int ngens, int max_cosets) : ncols(2 * ngens), cap(max_cosets) {
    define_coset();
  }

  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  int define_coset() {
    if ((int)table.size() >= cap)
      throw ResourceError("coset enumeration exceeded its budget");
    table.emplace_back(ncols, -1);
    parent.push_back((int)parent.size());
    ++defined;
    return (int)table.size() - 1;
  }

  void coincide(int a, int b) {
    pending.emplace_back(a, b);
    while (!pending.empty()) {
      auto [x, y] = pending.front();
      pending.pop_front();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      if (y < x) std::swap(x, y);
      parent[y] = x;
      ++coincidences;
      for (int col = 0; col < ncols; ++col) {
        int d = table[y][col];
        if (d == -1) continue;
        d = find(d);
        int e = table[x][col];
        if (e == -1) {
          table[x][col] = d;
          int back = table[d][col ^ 1];
          if (back == -1)
            table[d][col ^ 1] = x;
          else
            pending.emplace_back(find(back), x);
        } else {
          pending.emplace_back(find(e), d);
        }
      }
    }
  }

  void deduce(int c, int col, int d) {
    c = find(c);
    d = find(d);
    int e = table[c][col];
    if (e != -1 && find(e) != d) {
      coincide(find(e), d);
      return;
    }
    table[c][col] = d;
    int f = table[d][col ^ 1];
    if (f != -1 && find(f) != c)
      coincide(find(f), c);
    else
      table[d][col ^ 1] = c;
  }

  void scan_and_fill(int c, const std::vector<int>& w) {
    if (w.empty()) return;
    int f = find(c), b = find(c);
    int i = 0, j = (int)w.size() - 1;
    while (true) {
      while (i <= j && table[f][w[i]] != -1) {
        f = find(table[f][w[i]]);
        ++i;
      }
      if (i > j) {
        if (f != b) coincide(f, b);
        return;
      }
      while (j >= i && table[b][w[j] ^ 1] != -1) {
        b = find(table[b][w[j] ^ 1]);
        --j;
      }
      if (j < i) {
        if (f != b) coincide(f, b);
        return;
      }
      if (i == j) {
        deduce(f, w[i], b);
        return;
      }
      int n = define_coset();
      table[f][w[i]] = n;
      table[n][w[i] ^ 1] = f;
      f = n;
      ++i;
    }
  }
};

}  // namespace

CosetTable todd_coxeter(const FuchsianPresentation& pres,
                        const std::vector<std::string>& subgroup_generators,
                        int max_cosets) {
  if (pres.generators.empty()) throw ArgumentError("presentation has no generators");
  std::vector<std::vector<int>> relators;
  for (const std::string& rel : pres.relators) relators.push_back(word_columns(pres, rel));

  Enumerator en((int)pres.generators.size(), max_cosets);
  for (const std::string& w : subgroup_generators)
    en.scan_and_fill(en.find(0), word_columns(pres, w));

  while (true) {
    long long before_def = en.defined, before_co = en.coincidences;
    for (int c = 0; c < (int)en.table.size(); ++c) {
      if (en.find(c) != c) continue;
      for (const auto& rel : relators) {
        if (en.find(c) != c) break;
        en.scan_and_fill(c, rel);
      }
      if (en.find(c) != c) continue;
      for (int col = 0; col < en.ncols; ++col) {
        if (en.table[c][col] != -1) continue;
        int n = en.define_coset();
        en.table[c][col] = n;
        en.table[n][col ^ 1] = c;
      }
    }
    if (en.defined == before_def && en.coincidences == before_co) break;
  }

  // Standardize: BFS from the root in column order.
  int root = en.find(0);
  std::vector<int> order;
  std::map<int, int> newid;
  newid[root] = 0;
  order.push_back(root);
  for (size_t head = 0; head < order.size(); ++head) {
    int c = order[head];
    for (int col = 0; col < en.ncols; ++col) {
      int d = en.find(en.table[c][col]);
      if (!newid.count(d)) {
        newid[d] = (int)order.size();
        order.push_back(d);
      }
    }
  }

  CosetTable out;
  out.degree = (int)order.size();
  for (size_t gi = 0; gi < pres.generators.size(); ++gi) {
    std::vector<int> p(out.degree);
    for (int c = 0; c < out.degree; ++c)
      p[c] = newid.at(en.find(en.table[order[c]][2 * (int)gi]));
    out.perm[pres.generators[gi]] = std::move(p);
  }
  return out;
}

bool is_torsion_free(const FuchsianPresentation& pres, const CosetTable& table) {
  for (size_t i = 0; i < pres.periods.size(); ++i) {
    const std::vector<int>& p = table.perm.at(pres.period_generators[i]);
    int m = pres.periods[i];
    std::vector<bool> seen(table.degree, false);
    for (int s = 0; s < table.degree; ++s) {
      if (seen[s]) continue;
      int len = 0, c = s;
      do {
        seen[c] = true;
        c = p[c];
        ++len;
      } while (c != s);
      if (len != m) return false;
    }
  }
  return true;
}

std::vector<std::string> coset_representatives(const FuchsianPresentation& pres,
                                               const CosetTable& table) {
  std::vector<std::string> rep(table.degree);
  std::vector<bool> seen(table.degree, false);
  std::deque<int> queue;
  seen[0] = true;
  queue.push_back(0);
  while (!queue.empty()) {
    int c = queue.front();
    queue.pop_front();
    for (const std::string& g : pres.generators) {
      const std::vector<int>& p = table.perm.at(g);
      int d = p[c];
      if (!seen[d]) {
        seen[d] = true;
        rep[d] = rep[c] + g;
        queue.push_back(d);
      }
      std::vector<int> inv(table.degree);
      for (int i = 0; i < table.degree; ++i) inv[p[i]] = i;
      int e = inv[c];
      if (!seen[e]) {
        seen[e] = true;
        rep[e] = rep[c] + g + "^-1";
        queue.push_back(e);
      }
    }
  }
  return rep;
}

namespace {

struct BallElement {
  MoebiusMatrix m;
  std::string word;
  double displacement;
};

std::array<long long, 4> matrix_key(const MoebiusMatrix& m) {
  MoebiusMatrix n = normalized(m);
  auto q = [](double v) { return (long long)std::llround(v * 1e7); };
  return {q(n.a), q(n.b), q(n.c), q(n.d)};
}

// All group elements reachable while the basepoint displacement stays below
// expand_bound; complete for elements with displacement <= the collect bound
// provided the bound slack covers one fundamental-domain step.
std::vector<BallElement> enumerate_ball(const FuchsianPresentation& pres,
                                        double expand_bound, int word_bound,
                                        size_t element_cap) {
  std::vector<std::pair<std::string, MoebiusMatrix>> steps;
  for (const std::string& g : pres.generators) {
    MoebiusMatrix m = pres.matrices.at(g);
    steps.emplace_back(g, m);
    steps.emplace_back(g + "^-1", inverse(m));
  }
  std::vector<BallElement> out;
  std::set<std::array<long long, 4>> seen;
  std::deque<std::pair<BallElement, int>> queue;  // element, word length
  BallElement id{MoebiusMatrix::identity(), "", 0.0};
  seen.insert(matrix_key(id.m));
  out.push_back(id);
  queue.emplace_back(id, 0);
  while (!queue.empty()) {
    auto [cur, len] = queue.front();
    queue.pop_front();
    if (len >= word_bound) continue;
    for (const auto& [name, sm] : steps) {
      MoebiusMatrix next = multiply(cur.m, sm);
      auto key = matrix_key(next);
      if (seen.count(key)) continue;
      seen.insert(key);
      double disp = hyperbolic_distance(Complex(0, 0), apply_disc(next, Complex(0, 0)));
      if (disp > expand_bound) continue;
      BallElement el{next, cur.word + name, disp};
      out.push_back(el);
      if (out.size() > element_cap)
        throw ResourceError("short-element enumeration exceeded its budget");
      queue.emplace_back(el, len + 1);
    }
  }
  return out;
}

using Perm = std::vector<int>;

int perm_order(const Perm& p) {
  int n = (int)p.size();
  std::vector<bool> seen(n, false);
  long long ord = 1;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    int len = 0, c = s;
    do {
      seen[c] = true;
      c = p[c];
      ++len;
    } while (c != s);
    ord = std::lcm(ord, (long long)len);
  }
  return (int)ord;
}

Perm perm_inverse(const Perm& p) {
  Perm inv(p.size());
  for (size_t i = 0; i < p.size(); ++i) inv[p[i]] = (int)i;
  return inv;
}

// Left-to-right composition: (compose(f, g))(i) = g[f[i]].
Perm perm_compose(const Perm& f, const Perm& g) {
  Perm r(f.size());
  for (size_t i = 0; i < f.size(); ++i) r[i] = g[f[i]];
  return r;
}

bool orbit_transitive(const std::vector<Perm>& gens, int n) {
  std::vector<bool> seen(n, false);
  std::deque<int> queue{0};
  seen[0] = true;
  int count = 1;
  while (!queue.empty()) {
    int c = queue.front();
    queue.pop_front();
    for (const Perm& p : gens) {
      if (!seen[p[c]]) {
        seen[p[c]] = true;
        ++count;
        queue.push_back(p[c]);
      }
    }
  }
  return count == n;
}

// Partitions of n whose parts have lcm exactly `order`, each yielding the
// canonical permutation with consecutive cycles.
void partitions_with_lcm(int n, int order, int max_part, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
  if (n == 0) {
    long long l = 1;
    for (int part : cur) l = std::lcm(l, (long long)part);
    if (l == order) out.push_back(cur);
    return;
  }
  for (int part = std::min(n, max_part); part >= 1; --part) {
    if (order % part != 0) continue;
    cur.push_back(part);
    partitions_with_lcm(n - part, order, part, cur, out);
    cur.pop_back();
  }
}

Perm partition_to_perm(const std::vector<int>& parts, int n) {
  Perm p(n);
  int base = 0;
  for (int part : parts) {
    for (int i = 0; i < part; ++i) p[base + i] = base + (i + 1) % part;
    base += part;
  }
  return p;
}

// All permutations of [0, n) with every nontrivial cycle length dividing
// `order`, generated by choosing the cycle through the smallest free point.
void order_dividing_perms(int n, int order, Perm& acc, std::vector<bool>& used,
                          std::vector<Perm>& out) {
  int start = -1;
  for (int i = 0; i < n; ++i)
    if (!used[i]) {
      start = i;
      break;
    }
  if (start == -1) {
    out.push_back(acc);
    return;
  }
  used[start] = true;
  // fixed point
  acc[start] = start;
  order_dividing_perms(n, order, acc, used, out);
  // cycles of each divisor length > 1
  std::vector<int> free;
  for (int i = start + 1; i < n; ++i)
    if (!used[i]) free.push_back(i);
  for (int d = 2; d <= order; ++d) {
    if (order % d != 0 || (int)free.size() < d - 1) continue;
    // ordered selections of d-1 distinct free points
    std::vector<int> chosen;
    std::vector<bool> taken(free.size(), false);
    std::function<void()> rec = [&]() {
      if ((int)chosen.size() == d - 1) {
        int prev = start;
        for (int v : chosen) {
          acc[prev] = v;
          used[v] = true;
          prev = v;
        }
        acc[prev] = start;
        order_dividing_perms(n, order, acc, used, out);
        for (int v : chosen) used[v] = false;
        return;
      }
      for (size_t t = 0; t < free.size(); ++t) {
        if (taken[t]) continue;
        taken[t] = true;
        chosen.push_back(free[t]);
        rec();
        chosen.pop_back();
        taken[t] = false;
      }
    };
    rec();
  }
  used[start] = false;
}

// Closure of the generated permutation group, BFS order; empty when the
// cap is exceeded.
std::vector<Perm> group_closure(const std::vector<Perm>& gens, long long cap) {
  int n = (int)gens.front().size();
  Perm id(n);
  for (int i = 0; i < n; ++i) id[i] = i;
  std::vector<Perm> elems{id};
  std::set<Perm> seen{id};
  for (size_t head = 0; head < elems.size(); ++head) {
    Perm cur = elems[head];
    for (const Perm& g : gens) {
      Perm next = perm_compose(cur, g);
      if (seen.insert(next).second) {
        elems.push_back(next);
        if ((long long)elems.size() > cap) return {};
      }
    }
  }
  return elems;
}

CosetTable regular_action_table(const FuchsianPresentation& pres,
                                const std::vector<std::string>& gen_names,
                                const std::vector<Perm>& images) {
  std::vector<Perm> elems = group_closure(images, 1LL << 30);
  std::map<Perm, int> index;
  for (size_t i = 0; i < elems.size(); ++i) index[elems[i]] = (int)i;
  CosetTable raw;
  raw.degree = (int)elems.size();
  for (size_t gi = 0; gi < gen_names.size(); ++gi) {
    std::vector<int> p(raw.degree);
    for (int i = 0; i < raw.degree; ++i)
      p[i] = index.at(perm_compose(elems[i], images[gi]));
    raw.perm[gen_names[gi]] = std::move(p);
  }
  // Standardize numbering by BFS from the identity coset.
  std::vector<int> order{0};
  std::map<int, int> newid{{0, 0}};
  for (size_t head = 0; head < order.size(); ++head)
    for (const std::string& g : pres.generators) {
      int d = raw.perm.at(g)[order[head]];
      if (!newid.count(d)) {
        newid[d] = (int)order.size();
        order.push_back(d);
      }
    }
  CosetTable out;
  out.degree = raw.degree;
  for (const auto& [g, p] : raw.perm) {
    std::vector<int> np(out.degree);
    for (int c = 0; c < out.degree; ++c) np[c] = newid.at(p[order[c]]);
    out.perm[g] = std::move(np);
  }
  return out;
}

}  // namespace

CosetTable intersect_tables(const FuchsianPresentation& pres, const CosetTable& t1,
                            const CosetTable& t2) {
  std::map<std::pair<int, int>, int> id;
  std::vector<std::pair<int, int>> order{{0, 0}};
  id[{0, 0}] = 0;
  for (size_t head = 0; head < order.size(); ++head) {
    auto [c1, c2] = order[head];
    for (const std::string& g : pres.generators) {
      std::pair<int, int> next{t1.perm.at(g)[c1], t2.perm.at(g)[c2]};
      if (!id.count(next)) {
        id[next] = (int)order.size();
        order.push_back(next);
      }
    }
  }
  CosetTable out;
  out.degree = (int)order.size();
  for (const std::string& g : pres.generators) {
    std::vector<int> p(out.degree);
    for (int c = 0; c < out.degree; ++c) {
      auto [c1, c2] = order[c];
      p[c] = id.at({t1.perm.at(g)[c1], t2.perm.at(g)[c2]});
    }
    out.perm[g] = std::move(p);
  }
  return out;
}

std::pair<CosetTable, AvoidCertificate> subgroup_avoiding_short(
    const FuchsianPresentation& pres, double min_length,
    const SubgroupSearchBudget& budget) {
  if (pres.genus != 0 || pres.periods.size() != 3)
    throw ArgumentError("subgroup search supports (0; p, q, r) signatures only");
  if (pres.matrices.empty())
    throw ArgumentError("subgroup search needs generator matrices");
  if (min_length <= 0) throw ArgumentError("min_length must be positive");

  // Find the length-3 relator listing the three period generators once each.
  std::vector<std::string> triple;
  for (const std::string& rel : pres.relators) {
    std::vector<Letter> letters = parse_word(rel);
    if (letters.size() != 3) continue;
    bool ok = true;
    std::set<std::string> names;
    for (const Letter& l : letters) {
      if (l.exponent != 1) ok = false;
      names.insert(l.gen);
    }
    std::set<std::string> want(pres.period_generators.begin(),
                               pres.period_generators.end());
    if (ok && names == want) {
      for (const Letter& l : letters) triple.push_back(l.gen);
      break;
    }
  }
  if (triple.size() != 3)
    throw ArgumentError("presentation lacks the three-generator product relator");

  auto period_of = [&](const std::string& g) {
    for (size_t i = 0; i < pres.periods.size(); ++i)
      if (pres.period_generators[i] == g) return pres.periods[i];
    throw ArgumentError("no period for generator " + g);
  };
  int pa = period_of(triple[0]);
  int pc = period_of(triple[2]);
  int pb = period_of(triple[1]);

  // Geometry bounds for the short-element certificate.
  double step_bound = 0;
  for (const std::string& g : pres.generators) {
    double d = hyperbolic_distance(
        Complex(0, 0), apply_disc(pres.matrices.at(g), Complex(0, 0)));
    step_bound = std::max(step_bound, d);
  }
  double collect_bound = min_length + 2 * step_bound;
  double expand_bound = collect_bound + step_bound + 0.5;
  std::vector<BallElement> ball =
      enumerate_ball(pres, expand_bound, budget.word_ball, 400000);

  std::vector<ShortElement> shorts;
  for (const BallElement& el : ball) {
    if (el.word.empty()) continue;
    ClassifyResult cr = classify_and_length(el.m);
    if (cr.cls == IsometryClass::Hyperbolic && cr.length < min_length - 1e-9)
      shorts.push_back({el.word, cr.length});
  }
  std::sort(shorts.begin(), shorts.end(), [](const ShortElement& a, const ShortElement& b) {
    return a.length < b.length || (a.length == b.length && a.word < b.word);
  });

  auto admit = [&](const CosetTable& table) {
    if (!is_torsion_free(pres, table)) return false;
    for (const ShortElement& s : shorts)
      if (table.act_word(0, s.word) == 0) return false;
    return true;
  };
  auto certify = [&](const CosetTable& table) {
    AvoidCertificate cert;
    cert.excluded = shorts;
    cert.word_bound = budget.word_ball;
    cert.displacement_bound = collect_bound;
    cert.threshold = min_length;
    cert.index = table.degree;
    return std::make_pair(table, cert);
  };

  std::vector<CosetTable> torsion_free_pool;
  for (int n = 2; n <= budget.max_image_degree; ++n) {
    std::vector<std::vector<int>> c_parts;
    std::vector<int> scratch;
    partitions_with_lcm(n, pc, n, scratch, c_parts);
    std::sort(c_parts.begin(), c_parts.end());
    for (const auto& parts : c_parts) {
      Perm cz = partition_to_perm(parts, n);
      Perm cz_inv = perm_inverse(cz);
      std::vector<Perm> a_cands;
      Perm acc(n);
      std::vector<bool> used(n, false);
      order_dividing_perms(n, pa, acc, used, a_cands);
      for (const Perm& ax : a_cands) {
        if (perm_order(ax) != pa) continue;
        // a*b*c = 1 pointwise (left-to-right) forces b.
        Perm bx(n);
        Perm ax_inv = perm_inverse(ax);
        for (int i = 0; i < n; ++i) bx[i] = cz_inv[ax_inv[i]];
        if (perm_order(bx) != pb) continue;
        if (!orbit_transitive({ax, cz}, n)) continue;
        std::vector<Perm> images;
        std::vector<std::string> names;
        for (const std::string& g : pres.generators) {
          names.push_back(g);
          if (g == triple[0])
            images.push_back(ax);
          else if (g == triple[1])
            images.push_back(bx);
          else
            images.push_back(cz);
        }
        long long degree_cap = std::min<long long>(budget.max_index, budget.max_cosets);
        std::vector<Perm> closure = group_closure(images, degree_cap);
        if (closure.empty()) continue;
        CosetTable table = regular_action_table(pres, names, images);
        if ((long long)table.degree > degree_cap) continue;
        if (admit(table)) return certify(table);
        if (is_torsion_free(pres, table) && torsion_free_pool.size() < 12)
          torsion_free_pool.push_back(table);
      }
    }
  }
  for (size_t i = 0; i < torsion_free_pool.size(); ++i)
    for (size_t j = i + 1; j < torsion_free_pool.size(); ++j) {
      CosetTable meet = intersect_tables(pres, torsion_free_pool[i], torsion_free_pool[j]);
      if ((long long)meet.degree > std::min<long long>(budget.max_index, budget.max_cosets))
        continue;
      if (admit(meet)) return certify(meet);
    }
  std::string detail = shorts.empty()
                           ? "no short elements enumerated"
                           : "largest excluded element " + shorts.back().word +
                                 " of length " + std::to_string(shorts.back().length);
  throw ResourceError("no admissible subgroup found within the search budget (" + detail +
                      ")");
}

long long riemann_hurwitz_genus(const Signature& sig, long long index) {
  if (index <= 0) throw ArgumentError("index must be positive");
  if (sig.genus < 0) throw ArgumentError("genus must be nonnegative");
  using Rat = boost::multiprecision::cpp_rational;
  Rat chi = 2 * sig.genus - 2;
  for (int m : sig.periods) {
    if (m < 2) throw ArgumentError("periods must be at least 2");
    chi += Rat(m - 1, m);
  }
  Rat g = Rat(index, 2) * chi + 1;
  if (boost::multiprecision::denominator(g) != 1)
    throw ArgumentError("index is incompatible with the signature");
  BigInt num = boost::multiprecision::numerator(g);
  if (num < 0) throw ArgumentError("index is incompatible with the signature");
  return num.convert_to<long long>();
}

ColourBudget colour_budget(long long genus) {
  if (genus < 1) throw ArgumentError("genus must be at least 1");
  BigInt disc = 1 + 48 * BigInt(genus);
  BigInt root = boost::multiprecision::sqrt(disc);
  ColourBudget out;
  out.ringel_youngs = ((7 + root) / 2).convert_to<long long>();
  out.thomassen_threshold = boost::multiprecision::pow(BigInt(2), (unsigned)(14 * genus + 6));
  return out;
}

}  // namespace perico::hyp
