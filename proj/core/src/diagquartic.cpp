#include "k3aut/diagquartic.hpp"

#include "k3aut/normal_form.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace k3aut {

namespace {

bool is_rational_square(const Rat& r) {
  Rat a = r;
  a.canonicalize();
  return a >= 0 && mpz_perfect_square_p(a.get_num().get_mpz_t()) && mpz_perfect_square_p(a.get_den().get_mpz_t());
}

}  // namespace

bool admissible_c(const Rat& c) {
  if (c == 0) throw std::invalid_argument("c must be nonzero");
  const Rat a = abs(c);
  return !is_rational_square(a) && !is_rational_square(a / 2);
}

// ---------------------------------------------------------------- NFElem

NFElem::NFElem(Rat c) : c_(std::move(c)) {
  c_.canonicalize();
  if (c_ == 0) throw std::invalid_argument("c must be nonzero");
}

NFElem NFElem::from_rat(const Rat& c, const Rat& r) {
  NFElem e(c);
  e.x_[0] = r;
  e.x_[0].canonicalize();
  return e;
}

NFElem NFElem::monomial(const Rat& c, unsigned m, unsigned e) {
  if (e > 3) throw std::invalid_argument("gamma exponent out of range");
  NFElem r(c);
  m %= 8;
  r.x_[4 * (m % 4) + e] = m >= 4 ? -1 : 1;
  return r;
}

bool NFElem::is_zero() const {
  return std::all_of(x_.begin(), x_.end(), [](const Rat& v) { return v == 0; });
}

void NFElem::check_same(const NFElem& o) const {
  if (c_ != o.c_) throw std::invalid_argument("elements of different fields");
}

NFElem NFElem::operator+(const NFElem& o) const {
  NFElem r = *this;
  r += o;
  return r;
}

NFElem& NFElem::operator+=(const NFElem& o) {
  check_same(o);
  for (std::size_t t = 0; t < 16; ++t)
    if (o.x_[t] != 0) x_[t] += o.x_[t];
  return *this;
}

NFElem NFElem::operator-() const {
  NFElem r = *this;
  for (Rat& v : r.x_)
    if (v != 0) v = -v;
  return r;
}

NFElem NFElem::operator-(const NFElem& o) const { return *this + (-o); }

NFElem NFElem::operator*(const NFElem& o) const {
  check_same(o);
  NFElem r(c_);
  for (unsigned s = 0; s < 16; ++s) {
    if (x_[s] == 0) continue;
    for (unsigned t = 0; t < 16; ++t) {
      if (o.x_[t] == 0) continue;
      unsigned i = s / 4 + t / 4;
      unsigned j = s % 4 + t % 4;
      Rat v = x_[s] * o.x_[t];
      if (j >= 4) {
        j -= 4;
        v *= c_;
      }
      if (i >= 4) {
        i -= 4;
        v = -v;
      }
      r.x_[4 * i + j] += v;
    }
  }
  return r;
}

NFElem NFElem::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  // Column t of the multiplication matrix is this * basis_t.
  RatMat m(16, 16);
  for (unsigned t = 0; t < 16; ++t) {
    const NFElem col = *this * monomial(c_, t / 4, t % 4);
    for (unsigned s = 0; s < 16; ++s) m(s, t) = col.x_[s];
  }
  const RatMat inv = k3aut::inverse(m);  // throws std::domain_error for a zero divisor
  NFElem r(c_);
  for (unsigned s = 0; s < 16; ++s) r.x_[s] = inv(s, 0);
  return r;
}

NFElem NFElem::galois(unsigned a, unsigned k) const {
  if (a % 2 == 0) throw std::invalid_argument("zeta must map to a primitive 8th root of unity");
  NFElem r(c_);
  for (unsigned s = 0; s < 16; ++s) {
    if (x_[s] == 0) continue;
    const unsigned i = s / 4, j = s % 4;
    NFElem m = monomial(c_, (a * i + 2 * k * j) % 8, j);
    for (unsigned t = 0; t < 16; ++t)
      if (m.x_[t] != 0) r.x_[t] += m.x_[t] * x_[s];
  }
  return r;
}

std::string NFElem::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (unsigned s = 0; s < 16; ++s) {
    if (x_[s] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << x_[s].get_str();
    if (s / 4) os << "*z^" << s / 4;
    if (s % 4) os << "*g^" << s % 4;
  }
  return first ? "0" : os.str();
}

// ---------------------------------------------------------------- lines

namespace {

NFElem dot4(const NFVec& a, const NFVec& b) {
  NFElem s(a[0].param());
  for (std::size_t i = 0; i < 4; ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

NFVec galois_vec(const NFVec& v, const GaloisAutomorphism& g) {
  return {v[0].galois(g.a, g.k), v[1].galois(g.a, g.k), v[2].galois(g.a, g.k), v[3].galois(g.a, g.k)};
}

}  // namespace

bool line_on_surface(const LineP3& l, const Rat& c) {
  static const long binom[5] = {1, 4, 6, 4, 1};
  const NFVec& P = l.span[0];
  const NFVec& Q = l.span[1];
  const NFElem one = NFElem::from_rat(c, 1);
  const NFElem weights[4] = {one, -one, NFElem::from_rat(c, -c), NFElem::from_rat(c, c)};
  for (int a = 0; a <= 4; ++a) {
    // coefficient of s^a t^(4-a)
    NFElem total(c);
    for (std::size_t v = 0; v < 4; ++v) {
      NFElem term = NFElem::from_rat(c, binom[a]) * weights[v];
      for (int e = 0; e < a; ++e) term = term * P[v];
      for (int e = a; e < 4; ++e) term = term * Q[v];
      total += term;
    }
    if (!total.is_zero()) return false;
  }
  return true;
}

bool point_on_line(const LineP3& l, const NFVec& p) {
  return dot4(l.equations[0], p).is_zero() && dot4(l.equations[1], p).is_zero();
}

std::vector<LineP3> diagonal_lines(const Rat& c) {
  if (!admissible_c(c)) throw std::invalid_argument("c is not admissible");
  const NFElem one = NFElem::from_rat(c, 1);
  const NFElem zero(c);
  std::vector<LineP3> out;
  for (unsigned fam = 0; fam < 3; ++fam)
    for (unsigned ia = 0; ia < 4; ++ia)
      for (unsigned ib = 0; ib < 4; ++ib) {
        // Fourth roots of 1, c and -c respectively.
        const unsigned shift = fam == 2 ? 1 : 0;
        const unsigned ge = fam == 0 ? 0 : 1;
        const NFElem a = NFElem::monomial(c, 2 * ia + shift, ge);
        const NFElem b = NFElem::monomial(c, 2 * ib + shift, ge);
        LineP3 l;
        l.family = fam;
        l.alpha = ia;
        l.beta = ib;
        static const char* names[3] = {"x=a*y,z=b*w", "x=a*z,y=b*w", "x=a*w,y=b*z"};
        l.tag = std::string(names[fam]) + " a=" + a.to_string() + " b=" + b.to_string();
        switch (fam) {
          case 0:
            l.span = {NFVec{a, one, zero, zero}, NFVec{zero, zero, b, one}};
            l.equations = {NFVec{one, -a, zero, zero}, NFVec{zero, zero, one, -b}};
            break;
          case 1:
            l.span = {NFVec{a, zero, one, zero}, NFVec{zero, b, zero, one}};
            l.equations = {NFVec{one, zero, -a, zero}, NFVec{zero, one, zero, -b}};
            break;
          default:
            l.span = {NFVec{a, zero, zero, one}, NFVec{zero, b, one, zero}};
            l.equations = {NFVec{one, zero, zero, -a}, NFVec{zero, one, -b, zero}};
            break;
        }
        if (!line_on_surface(l, c)) throw std::logic_error("line " + l.tag + " is not on the surface");
        out.push_back(std::move(l));
      }
  return out;
}

NFElem determinant4(const std::array<NFVec, 4>& m) {
  NFElem det(m[0][0].param());
  std::array<int, 4> p{0, 1, 2, 3};
  do {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (p[i] > p[j]) ++inv;
    bool zero = false;
    for (int i = 0; i < 4 && !zero; ++i) zero = m[i][p[i]].is_zero();
    if (zero) continue;
    NFElem term = m[0][p[0]] * m[1][p[1]] * m[2][p[2]] * m[3][p[3]];
    det += inv % 2 ? -term : term;
  } while (std::next_permutation(p.begin(), p.end()));
  return det;
}

IntMat incidence_gram(const std::vector<LineP3>& lines, unsigned threads) {
  const std::size_t n = lines.size();
  IntMat g(n, n);
  for (std::size_t i = 0; i < n; ++i) g(i, i) = -2;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<int> meet(pairs.size(), 0);
  std::vector<int> dup(pairs.size(), 0);
  auto work = [&](std::size_t w, std::size_t nw) {
    for (std::size_t t = w; t < pairs.size(); t += nw) {
      const auto& [i, j] = pairs[t];
      if (point_on_line(lines[i], lines[j].span[0]) && point_on_line(lines[i], lines[j].span[1])) {
        dup[t] = 1;
        continue;
      }
      meet[t] = determinant4({lines[i].span[0], lines[i].span[1], lines[j].span[0], lines[j].span[1]}).is_zero();
    }
  };
  const unsigned nw = std::max(1u, threads);
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < nw; ++w) pool.emplace_back(work, w, nw);
  work(0, nw);
  for (auto& t : pool) t.join();
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    if (dup[t]) throw std::invalid_argument("duplicate lines");
    if (meet[t]) g(pairs[t].first, pairs[t].second) = g(pairs[t].second, pairs[t].first) = 1;
  }
  return g;
}

std::vector<GaloisAutomorphism> galois_group() {
  std::vector<GaloisAutomorphism> out;
  for (unsigned a : {1u, 3u, 5u, 7u})
    for (unsigned k = 0; k < 4; ++k) out.push_back({a, k});
  return out;
}

std::vector<std::vector<std::size_t>> galois_permutations(const std::vector<LineP3>& lines) {
  std::vector<std::vector<std::size_t>> perms;
  for (const GaloisAutomorphism& g : galois_group()) {
    std::vector<std::size_t> p(lines.size());
    std::vector<char> hit(lines.size(), 0);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const NFVec P = galois_vec(lines[i].span[0], g);
      const NFVec Q = galois_vec(lines[i].span[1], g);
      std::size_t found = lines.size();
      for (std::size_t j = 0; j < lines.size() && found == lines.size(); ++j)
        if (point_on_line(lines[j], P) && point_on_line(lines[j], Q)) found = j;
      if (found == lines.size() || hit[found]) throw std::logic_error("automorphism does not permute the lines");
      hit[found] = 1;
      p[i] = found;
    }
    perms.push_back(std::move(p));
  }
  return perms;
}

// ---------------------------------------------------------------- Picard lattice

PicardData build_picard(const IntMat& gram48, const std::vector<std::vector<std::size_t>>& perms) {
  const std::size_t n = gram48.rows();
  const IntMat K = integer_kernel(gram48);
  const std::size_t k = K.rows();
  const std::size_t r = n - k;
  const SmithForm sf = smith_normal_form(K);
  for (std::size_t i = 0; i < k; ++i)
    if (sf.D(i, i) != 1) throw std::logic_error("radical is not saturated");
  const IntMat Vinv = inverse_unimodular(sf.V);
  PicardData pd;
  pd.gram48 = gram48;
  pd.galois_perms = perms;
  pd.line_images = sf.V.block(0, k, n, r);
  pd.lifts = Vinv.block(k, 0, r, n);
  pd.picard = Lattice(pd.lifts * gram48 * pd.lifts.transpose());
  if (pd.line_images * pd.picard.gram() * pd.line_images.transpose() != gram48)
    throw std::logic_error("class map does not preserve intersection numbers");
  for (const auto& p : perms) {
    if (p.size() != n) throw std::invalid_argument("permutation has wrong length");
    IntMat P(n, n);
    for (std::size_t i = 0; i < n; ++i) P(i, p[i]) = 1;
    const IntMat g = (pd.lifts * P * pd.line_images).transpose();
    if (g.transpose() * pd.picard.gram() * g != pd.picard.gram())
      throw std::logic_error("Galois action does not preserve the Picard lattice form");
    pd.galois_matrices.push_back(g);
  }
  return pd;
}

IntVec hyperplane_class(const PicardData& pic, const std::vector<LineP3>& lines) {
  IntVec h(pic.picard.rank(), Int(0));
  for (std::size_t i = 0; i < lines.size(); ++i)
    if (lines[i].family == 0 && lines[i].alpha == 0) h = h + pic.line_images.row(i);
  if (pic.picard.norm(h) != 4) throw std::logic_error("hyperplane class does not have square 4");
  for (std::size_t i = 0; i < lines.size(); ++i)
    if (pic.picard.pair(h, pic.line_images.row(i)) != 1) throw std::logic_error("a line does not have degree 1");
  return h;
}

std::vector<IntVec> conic_classes(const PicardData& pic, const IntVec& H) {
  const Lattice& L = pic.picard;
  const std::size_t r = L.rank();
  if (L.norm(H) != 4) throw std::invalid_argument("H must have square 4");
  IntMat Hrow(1, r);
  Hrow.set_row(0, H);
  const Sublattice K = orthogonal_complement(L, Hrow);
  // D = D0 + u with D0 = l_0 + l_1 of degree 2 and u in H-perp; then
  // D - H/2 = (x - centre) K for the coordinates x of u.
  const IntVec D0 = pic.line_images.row(0) + pic.line_images.row(1);
  RatVec m0(r);
  for (std::size_t i = 0; i < r; ++i) m0[i] = Rat(D0[i]) - Rat(H[i]) / 2;
  RatVec minus_m0 = m0;
  for (Rat& v : minus_m0) v = -v;
  const auto centre = solve_row(to_rat(K.basis), minus_m0);
  if (!centre) throw std::logic_error("D0 - H/2 is not orthogonal to H");
  const Lattice KL = K.lattice();
  std::set<IntVec> line_pairs;
  for (std::size_t i = 0; i < pic.gram48.rows(); ++i)
    for (std::size_t j = i + 1; j < pic.gram48.rows(); ++j)
      if (pic.gram48(i, j) == 1) line_pairs.insert(pic.line_images.row(i) + pic.line_images.row(j));
  std::vector<IntVec> out;
  for (const IntVec& x : vectors_near(KL, *centre, Rat(3))) {
    RatVec y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = Rat(x[i]) - (*centre)[i];
    if (pair(y, to_rat(KL.gram()), y) != -3) continue;
    const IntVec D = D0 + row_times(x, K.basis);
    if (L.norm(D) != -2 || L.pair(D, H) != 2) throw std::logic_error("conic candidate has wrong invariants");
    if (!line_pairs.count(D)) out.push_back(D);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::size_t>> permutation_orbits(const std::vector<std::vector<std::size_t>>& perms,
                                                         std::size_t n) {
  std::vector<std::vector<std::size_t>> orbits;
  std::vector<char> seen(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> orb{s};
    seen[s] = 1;
    for (std::size_t q = 0; q < orb.size(); ++q)
      for (const auto& p : perms)
        if (!seen[p[orb[q]]]) {
          seen[p[orb[q]]] = 1;
          orb.push_back(p[orb[q]]);
        }
    std::sort(orb.begin(), orb.end());
    orbits.push_back(std::move(orb));
  }
  return orbits;
}

std::vector<GaloisOrbit> class_orbits(const PicardData& pic, const std::vector<IntVec>& classes) {
  std::map<IntVec, std::size_t> index;
  for (std::size_t i = 0; i < classes.size(); ++i) index.emplace(classes[i], i);
  std::vector<std::vector<std::size_t>> perms;
  for (const IntMat& g : pic.galois_matrices) {
    std::vector<std::size_t> p(classes.size());
    for (std::size_t i = 0; i < classes.size(); ++i) {
      auto it = index.find(g * classes[i]);
      if (it == index.end()) throw std::logic_error("class set is not Galois-stable");
      p[i] = it->second;
    }
    perms.push_back(std::move(p));
  }
  std::vector<GaloisOrbit> out;
  for (const auto& orb : permutation_orbits(perms, classes.size())) {
    std::map<std::size_t, std::size_t> local;
    for (std::size_t t = 0; t < orb.size(); ++t) local[orb[t]] = t;
    std::vector<IntVec> cls;
    for (std::size_t i : orb) cls.push_back(classes[i]);
    std::vector<std::vector<std::size_t>> lp;
    for (const auto& p : perms) {
      std::vector<std::size_t> q(orb.size());
      for (std::size_t t = 0; t < orb.size(); ++t) q[t] = local.at(p[orb[t]]);
      lp.push_back(std::move(q));
    }
    out.push_back(make_orbit(pic.picard, std::move(cls), std::move(lp)));
  }
  return out;
}

DiagonalQuartic build_diagonal_quartic(const Rat& c, unsigned threads) {
  DiagonalQuartic d;
  d.c = c;
  d.lines = diagonal_lines(c);
  const IntMat g48 = incidence_gram(d.lines, threads);
  d.pic = build_picard(g48, galois_permutations(d.lines));
  d.H = hyperplane_class(d.pic, d.lines);
  d.fixed = fixed_sublattice(d.pic.picard, GroupAction{d.pic.galois_matrices, {}});
  std::vector<IntVec> line_classes;
  for (std::size_t i = 0; i < d.lines.size(); ++i) line_classes.push_back(d.pic.line_images.row(i));
  d.line_orbits = class_orbits(d.pic, line_classes);
  d.conics = conic_classes(d.pic, d.H);
  d.conic_orbits = class_orbits(d.pic, d.conics);
  return d;
}

}  // namespace k3aut
